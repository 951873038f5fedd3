use super::{run_trials, trial_rng, Estimate, ExperimentConfig};
use crate::error::Result;
use crate::graph::{build_graph, isolated_count};
use crate::pointprocess::sample_poisson;

/// Fraction of sampled graphs that are connected, per intensity. Graphs with
/// fewer than two vertices count as connected.
pub fn estimate_pfc(cfg: &ExperimentConfig) -> Result<Vec<(f64, Estimate)>> {
    cfg.validate()?;
    cfg.rhos
        .iter()
        .enumerate()
        .map(|(k, &rho)| {
            let connected = run_trials(cfg.trials, |t| {
                let mut rng = trial_rng(cfg.master_seed, k as u64, t);
                let pts = sample_poisson(&cfg.domain, rho, &mut rng)?;
                Ok(build_graph(&pts, &cfg.model, cfg.respect_visibility, &mut rng)?.is_connected())
            })?;
            let hits = connected.iter().filter(|&&c| c).count();
            Ok((rho, Estimate::from_bernoulli(hits, cfg.trials)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsolationRow {
    pub rho: f64,
    pub disconnected: usize,
    pub with_isolated: usize,
    /// Share of disconnected graphs that contain an isolated vertex; `None`
    /// when no trial was disconnected.
    pub fraction: Option<Estimate>,
}

/// Among disconnected samples, how often an isolated vertex is present.
pub fn isolated_vs_disconnected(cfg: &ExperimentConfig) -> Result<Vec<IsolationRow>> {
    cfg.validate()?;
    cfg.rhos
        .iter()
        .enumerate()
        .map(|(k, &rho)| {
            let outcomes = run_trials(cfg.trials, |t| {
                let mut rng = trial_rng(cfg.master_seed, k as u64, t);
                let pts = sample_poisson(&cfg.domain, rho, &mut rng)?;
                let g = build_graph(&pts, &cfg.model, cfg.respect_visibility, &mut rng)?;
                Ok((g.is_connected(), isolated_count(&g) > 0))
            })?;
            let disconnected = outcomes.iter().filter(|o| !o.0).count();
            let with_isolated = outcomes.iter().filter(|o| !o.0 && o.1).count();
            Ok(IsolationRow {
                rho,
                disconnected,
                with_isolated,
                fraction: (disconnected > 0).then(|| Estimate::from_bernoulli(with_isolated, disconnected)),
            })
        })
        .collect()
}
