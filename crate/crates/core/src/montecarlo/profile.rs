use std::collections::VecDeque;
use std::f64::consts::TAU;

use rand::Rng;

use super::{run_trials, trial_rng, ExperimentConfig};
use crate::error::{invalid, Error, Result};
use crate::geometry::{Point, Shape};
use crate::graph::{build_graph, GraphInstance};
use crate::pointprocess::sample_poisson;

/// Probes per grid value and trial, at equally spaced angles.
pub const PROBE_ANGLES: usize = 16;

/// Largest base sample the all-pairs tables are built for.
pub const MAX_PROFILE_VERTICES: usize = 6000;

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileBin {
    pub eps: f64,
    /// Mean betweenness of the probe divided by the mean at `eps = 0`.
    pub normalized: f64,
    /// Delta-method standard error of `normalized`.
    pub std_error: f64,
    /// Unnormalised mean betweenness of the probe.
    pub raw_mean: f64,
}

const UNREACHED: u32 = u32::MAX;

/// Hop distances and geodesic counts between all vertex pairs.
struct AllPairs {
    n: usize,
    dist: Vec<u32>,
    sigma: Vec<f64>,
}

impl AllPairs {
    fn new(g: &GraphInstance) -> Self {
        let n = g.n();
        let mut dist = vec![UNREACHED; n * n];
        let mut sigma = vec![0.0; n * n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = s * n;
            dist[row + s] = 0;
            sigma[row + s] = 1.0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let dv = dist[row + v];
                for &w in g.neighbors(v) {
                    if dist[row + w] == UNREACHED {
                        dist[row + w] = dv + 1;
                        queue.push_back(w);
                    }
                    if dist[row + w] == dv + 1 {
                        sigma[row + w] += sigma[row + v];
                    }
                }
            }
        }
        Self { n, dist, sigma }
    }

    /// Betweenness (unordered pairs) of a new vertex joined to `nbrs`.
    fn probe_betweenness(&self, nbrs: &[usize]) -> f64 {
        let n = self.n;
        if nbrs.len() < 2 {
            return 0.0;
        }
        let mut dz = vec![UNREACHED; n];
        let mut sz = vec![0.0; n];
        for i in 0..n {
            let row = i * n;
            let best = nbrs.iter().map(|&a| self.dist[row + a]).min().unwrap_or(UNREACHED);
            if best == UNREACHED {
                continue;
            }
            dz[i] = best + 1;
            sz[i] = nbrs.iter().filter(|&&a| self.dist[row + a] == best).map(|&a| self.sigma[row + a]).sum();
        }
        let mut total = 0.0;
        for i in 0..n {
            if dz[i] == UNREACHED {
                continue;
            }
            let row = i * n;
            for j in i + 1..n {
                if dz[j] == UNREACHED {
                    continue;
                }
                let via = dz[i] + dz[j];
                let d = self.dist[row + j];
                if via < d {
                    total += 1.0;
                } else if via == d {
                    let through = sz[i] * sz[j];
                    total += through / (self.sigma[row + j] + through);
                }
            }
        }
        total
    }
}

/// Betweenness of conditioned probe vertices in a disk. Each trial draws one
/// Poisson sample; every probe is then added on its own at radius `eps * R`
/// with soft edges to the sample, and its shortest-path betweenness in the
/// augmented graph is recorded. Probe values are averaged over
/// [`PROBE_ANGLES`] angles per grid value.
pub fn betweenness_profile(cfg: &ExperimentConfig, eps_grid: &[f64]) -> Result<Vec<ProfileBin>> {
    cfg.validate()?;
    let Shape::Disk { radius } = *cfg.domain.shape() else {
        return Err(Error::Unsupported("betweenness profiles need a disk domain".into()));
    };
    let &[rho] = cfg.rhos.as_slice() else {
        return Err(invalid("betweenness profile takes exactly one intensity"));
    };
    if let Some(e) = eps_grid.iter().find(|e| !(0.0..=1.0).contains(*e)) {
        return Err(invalid(format!("eps {e} outside [0, 1]")));
    }
    let Some(anchor) = eps_grid.iter().position(|&e| e == 0.0) else {
        return Err(invalid("eps grid must contain 0 (the normalisation anchor)"));
    };
    let k = eps_grid.len();
    let cutoff = cfg.model.cutoff();
    let samples = run_trials(cfg.trials, |t| {
        let mut rng = trial_rng(cfg.master_seed, 0, t);
        let base = sample_poisson(&cfg.domain, rho, &mut rng)?;
        if base.len() > MAX_PROFILE_VERTICES {
            return Err(Error::Unsupported(format!(
                "profile sample has {} vertices; at most {MAX_PROFILE_VERTICES} are supported",
                base.len()
            )));
        }
        let g = build_graph(&base, &cfg.model, cfg.respect_visibility, &mut rng)?;
        let tables = AllPairs::new(&g);
        let mut row = Vec::with_capacity(k);
        for &e in eps_grid {
            let s = e * radius;
            let offset = TAU * rng.random::<f64>();
            let mut acc = 0.0;
            for a in 0..PROBE_ANGLES {
                let phi = offset + TAU * a as f64 / PROBE_ANGLES as f64;
                let z = Point::xy(s * phi.cos(), s * phi.sin());
                let mut nbrs = Vec::new();
                for (i, p) in base.points().iter().enumerate() {
                    let d = z.distance(p);
                    if d < cutoff && rng.random::<f64>() < cfg.model.probability(d) {
                        nbrs.push(i);
                    }
                }
                acc += tables.probe_betweenness(&nbrs);
            }
            row.push(acc / PROBE_ANGLES as f64);
        }
        Ok(row)
    })?;
    let n = cfg.trials as f64;
    let means: Vec<f64> = (0..k).map(|j| samples.iter().map(|s| s[j]).sum::<f64>() / n).collect();
    let cov = |a: usize, b: usize| {
        if cfg.trials < 2 {
            return 0.0;
        }
        samples
            .iter()
            .map(|s| (s[a] - means[a]) * (s[b] - means[b]))
            .sum::<f64>()
            / (n - 1.0)
            / n
    };
    let m0 = means[anchor];
    if m0 <= 0.0 {
        return Err(Error::Convergence(
            "centre probe carried no shortest paths; profile cannot be normalised".into(),
        ));
    }
    let v00 = cov(anchor, anchor);
    Ok((0..k)
        .map(|j| {
            let g = means[j] / m0;
            let rel = cov(j, j) / (m0 * m0) + g * g * v00 / (m0 * m0) - 2.0 * g * cov(j, anchor) / (m0 * m0);
            ProfileBin {
                eps: eps_grid[j],
                normalized: g,
                std_error: rel.max(0.0).sqrt(),
                raw_mean: means[j],
            }
        })
        .collect())
}
