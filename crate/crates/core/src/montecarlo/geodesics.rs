use std::collections::BTreeMap;

use super::{run_trials, trial_rng, Estimate};
use crate::analytic::GeodesicQuery;
use crate::centrality::geodesic_count;
use crate::error::{invalid, Result};
use crate::geometry::{Domain, Point};
use crate::graph::{build_graph, ConnectionModel};
use crate::pointprocess::sample_poisson;
use crate::rng::RandomState;

/// Padding (in connection ranges) between the terminals and the window edge.
pub const WINDOW_PAD: f64 = 1.5;

/// Counts from one sampled graph with two conditioned terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeodesicSample {
    /// Paths with the minimum possible number of hops, `floor(r) + 1`.
    pub optimal: u128,
    /// Shortest paths of whatever length exists (0 if disconnected).
    pub geodesic: u128,
    pub hops: Option<usize>,
}

/// One planar trial: a Poisson process of intensity `rho` in a square window
/// padded by [`WINDOW_PAD`], terminals at separation `r`, unit hard range.
pub fn geodesic_trial(rho: f64, r: f64, rng: &mut RandomState) -> Result<GeodesicSample> {
    let q = GeodesicQuery::new(2, rho, r)?;
    let side = r + 2.0 * WINDOW_PAD;
    let domain = Domain::square(side)?;
    let base = sample_poisson(&domain, rho, rng)?;
    let x = base.len();
    let pts = base.with_points(&[
        Point::xy(WINDOW_PAD, side / 2.0),
        Point::xy(WINDOW_PAD + r, side / 2.0),
    ])?;
    let g = build_graph(&pts, &ConnectionModel::hard(1.0)?, false, rng)?;
    let c = geodesic_count(&g, x, x + 1)?;
    let hops = c.hops();
    Ok(GeodesicSample {
        optimal: if hops == Some(q.hops()) { c.count() } else { 0 },
        geodesic: c.count(),
        hops,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicRow {
    pub r: f64,
    pub optimal: Estimate,
    pub geodesic: Estimate,
}

/// Mean optimal-hop and shortest-path counts for every separation in `r_grid`.
pub fn geodesic_experiment(d: usize, rho: f64, r_grid: &[f64], trials: usize, seed: u64) -> Result<Vec<GeodesicRow>> {
    if d != 2 {
        return Err(crate::error::Error::Unsupported(format!(
            "geodesic experiments are planar (d = 2), got d = {d}"
        )));
    }
    if trials == 0 {
        return Err(invalid("at least one trial is required"));
    }
    r_grid
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            let samples = run_trials(trials, |t| geodesic_trial(rho, r, &mut trial_rng(seed, k as u64, t)))?;
            let opt: Vec<f64> = samples.iter().map(|s| s.optimal as f64).collect();
            let geo: Vec<f64> = samples.iter().map(|s| s.geodesic as f64).collect();
            Ok(GeodesicRow {
                r,
                optimal: Estimate::from_samples(&opt),
                geodesic: Estimate::from_samples(&geo),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaDistribution {
    /// `(count, probability)` pairs in increasing count order.
    pub histogram: Vec<(u128, f64)>,
    pub mean: f64,
    pub variance: f64,
    /// `variance / mean` (NaN when the mean is 0).
    pub dispersion: f64,
}

/// Empirical law of the optimal-hop path count at separation `r`.
pub fn sigma_distribution(rho: f64, r: f64, trials: usize, seed: u64) -> Result<SigmaDistribution> {
    if trials == 0 {
        return Err(invalid("at least one trial is required"));
    }
    let samples = run_trials(trials, |t| geodesic_trial(rho, r, &mut trial_rng(seed, 0, t)))?;
    let mut counts: BTreeMap<u128, usize> = BTreeMap::new();
    for s in &samples {
        *counts.entry(s.optimal).or_default() += 1;
    }
    let n = trials as f64;
    let xs: Vec<f64> = samples.iter().map(|s| s.optimal as f64).collect();
    let mean = xs.iter().sum::<f64>() / n;
    let variance = if trials > 1 {
        xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok(SigmaDistribution {
        histogram: counts.into_iter().map(|(k, c)| (k, c as f64 / n)).collect(),
        mean,
        variance,
        dispersion: variance / mean,
    })
}
