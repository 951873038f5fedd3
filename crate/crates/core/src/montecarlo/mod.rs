//! Reproducible Monte Carlo experiments.
//!
//! Trial `k` of grid point `g` always runs on the substream
//! `derive_seed(derive_seed(master, g), k)`; trials may run on any number of
//! threads but are summed in index order, so output never depends on the
//! scheduler.

mod connectivity;
mod geodesics;
mod profile;

pub use connectivity::{estimate_pfc, isolated_vs_disconnected, IsolationRow};
pub use geodesics::{geodesic_experiment, geodesic_trial, sigma_distribution, GeodesicRow, SigmaDistribution};
pub use profile::{betweenness_profile, ProfileBin, MAX_PROFILE_VERTICES, PROBE_ANGLES};

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::geometry::Domain;
use crate::graph::ConnectionModel;
use crate::rng::{derive_seed, RandomState};

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
}

impl Estimate {
    /// Proportion of `hits` among `trials` with the binomial standard error.
    pub fn from_bernoulli(hits: usize, trials: usize) -> Self {
        let n = trials.max(1) as f64;
        let p = hits as f64 / n;
        Self {
            mean: p,
            std_error: (p * (1.0 - p) / n).sqrt(),
            trials,
        }
    }

    /// Sample mean with standard error `s / sqrt(n)`.
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len();
        if n == 0 {
            return Self {
                mean: f64::NAN,
                std_error: f64::NAN,
                trials: 0,
            };
        }
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = if n > 1 {
            xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Self {
            mean,
            std_error: (var / n as f64).sqrt(),
            trials: n,
        }
    }

    /// `|self - value|` in units of the standard error (infinite if the
    /// error is zero and the values differ).
    pub fn z_score(&self, value: f64) -> f64 {
        let d = (self.mean - value).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.std_error
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub domain: Domain,
    pub model: ConnectionModel,
    pub rhos: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    pub respect_visibility: bool,
    /// Histogram bins, where an experiment uses them.
    pub bins: usize,
}

impl ExperimentConfig {
    pub fn new(domain: Domain, model: ConnectionModel, rhos: Vec<f64>, trials: usize, master_seed: u64) -> Self {
        Self {
            domain,
            model,
            rhos,
            trials,
            master_seed,
            respect_visibility: true,
            bins: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        if self.trials == 0 {
            return Err(invalid("at least one trial is required"));
        }
        if self.bins < 2 {
            return Err(invalid("at least two bins are required"));
        }
        if let Some(r) = self.rhos.iter().find(|r| !(r.is_finite() && **r >= 0.0)) {
            return Err(invalid(format!("intensity must be finite and >= 0, got {r}")));
        }
        Ok(())
    }
}

/// Random state for trial `trial` at grid point `point`.
pub fn trial_rng(master: u64, point: u64, trial: u64) -> RandomState {
    RandomState::new(derive_seed(derive_seed(master, point), trial))
}

/// Runs `f` for every trial index (possibly in parallel) and returns the
/// results in trial order.
pub(crate) fn run_trials<T, F>(trials: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    (0..trials as u64).into_par_iter().map(f).collect()
}
