//! Closed-form predictions and the numerical integrals behind them.

mod elliptic;
mod geodesics;
mod mass;
mod negbin;
mod pfc;

pub use elliptic::{continuum_betweenness, elliptic_e};
pub use geodesics::{
    beta_optimal_correction, expected_geodesic_cardinality, expected_two_hop_exact,
    geodesic_recursion_numeric, GeodesicQuery, RECURSION_MAX_R,
};
pub use mass::{connectivity_mass, expected_isolated, isolation_mass, visible_ball_measure};
pub use negbin::{negbin_fit, NegBinFit};
pub use pfc::{pfc_closed_form, PfcDomainSpec, PfcGeometry, PfcValue, ShellRegime, REGIME_FACTOR};
