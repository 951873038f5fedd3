//! Bond percolation on the square lattice.

use std::io::{self, Write};

use rand::{Rng, RngCore};
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::montecarlo::Estimate;
use crate::rng::{derive_seed, RandomState};
use crate::union_find::UnionFind;

/// Bond configuration on an `L x L` grid of sites. Each bond keeps its own
/// uniform, and is open when that uniform is below `p`, so configurations at
/// different `p` built from one sample are nested.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeConfig {
    side: usize,
    p: f64,
    seed: u64,
    /// Bond from `(r, c)` to `(r, c + 1)` at index `r * (L - 1) + c`.
    horizontal: Vec<f64>,
    /// Bond from `(r, c)` to `(r + 1, c)` at index `r * L + c`.
    vertical: Vec<f64>,
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid(format!("bond probability {p} outside [0, 1]")))
    }
}

fn check_side(side: usize) -> Result<()> {
    if side < 2 {
        return Err(invalid(format!("lattice side must be at least 2, got {side}")));
    }
    Ok(())
}

impl LatticeConfig {
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Same bond uniforms, different threshold.
    pub fn at(&self, p: f64) -> Result<Self> {
        check_p(p)?;
        Ok(Self { p, ..self.clone() })
    }

    pub fn horizontal_open(&self, r: usize, c: usize) -> bool {
        self.horizontal[r * (self.side - 1) + c] < self.p
    }

    pub fn vertical_open(&self, r: usize, c: usize) -> bool {
        self.vertical[r * self.side + c] < self.p
    }

    pub fn bond_count(&self) -> usize {
        2 * self.side * (self.side - 1)
    }

    pub fn open_bonds(&self) -> usize {
        self.horizontal.iter().chain(&self.vertical).filter(|&&u| u < self.p).count()
    }

    /// Site index of the centre vertex.
    pub fn center(&self) -> usize {
        let h = self.side / 2;
        h * self.side + h
    }
}

/// Independent bonds, each open with probability `p`.
pub fn sample_bonds(side: usize, p: f64, rng: &mut RandomState) -> Result<LatticeConfig> {
    check_side(side)?;
    check_p(p)?;
    let seed = rng.seed();
    let n = side * (side - 1);
    let horizontal = (0..n).map(|_| rng.random::<f64>()).collect();
    let vertical = (0..n).map(|_| rng.random::<f64>()).collect();
    Ok(LatticeConfig {
        side,
        p,
        seed,
        horizontal,
        vertical,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterStats {
    /// Cluster sizes in decreasing order; they sum to `L^2`.
    pub sizes: Vec<usize>,
    pub largest: usize,
    /// Some cluster touches both the left and the right column.
    pub spanning: bool,
    /// Size of the cluster containing the centre site.
    pub center_size: usize,
    /// The centre cluster reaches the outer boundary of the grid.
    pub center_reaches_boundary: bool,
    /// Unions that merged two clusters.
    pub merges: usize,
}

pub fn cluster_stats(c: &LatticeConfig) -> ClusterStats {
    let l = c.side;
    let mut uf = UnionFind::new(l * l);
    let mut merges = 0;
    for r in 0..l {
        for col in 0..l {
            let v = r * l + col;
            if col + 1 < l && c.horizontal_open(r, col) && uf.union(v, v + 1) {
                merges += 1;
            }
            if r + 1 < l && c.vertical_open(r, col) && uf.union(v, v + l) {
                merges += 1;
            }
        }
    }
    let mut touches_left = vec![false; l * l];
    for r in 0..l {
        let root = uf.find(r * l);
        touches_left[root] = true;
    }
    let spanning = (0..l).any(|r| {
        let root = uf.find(r * l + l - 1);
        touches_left[root]
    });
    let center_root = uf.find(c.center());
    let center_reaches_boundary = (0..l).any(|k| {
        [k, (l - 1) * l + k, k * l, k * l + l - 1]
            .into_iter()
            .any(|v| uf.find(v) == center_root)
    });
    let mut sizes = Vec::with_capacity(uf.count());
    for v in 0..l * l {
        if uf.find(v) == v {
            sizes.push(uf.set_size(v));
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ClusterStats {
        largest: sizes[0],
        center_size: uf.set_size(center_root),
        sizes,
        spanning,
        center_reaches_boundary,
        merges,
    }
}

/// Seeds for `trials` independent lattices derived from one draw of `rng`.
fn trial_seeds(rng: &mut RandomState, trials: usize) -> Vec<u64> {
    let master = rng.next_u64();
    (0..trials as u64).map(|k| derive_seed(master, k)).collect()
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(invalid("at least one trial is required"));
    }
    Ok(())
}

/// Fraction of lattices whose centre cluster reaches the boundary (a
/// finite-size stand-in for the infinite-cluster probability).
pub fn theta_hat(side: usize, p: f64, trials: usize, rng: &mut RandomState) -> Result<Estimate> {
    check_side(side)?;
    check_p(p)?;
    check_trials(trials)?;
    let hits: Vec<bool> = trial_seeds(rng, trials)
        .into_par_iter()
        .map(|s| {
            let c = sample_bonds(side, p, &mut RandomState::new(s)).expect("validated");
            cluster_stats(&c).center_reaches_boundary
        })
        .collect();
    Ok(Estimate::from_bernoulli(hits.iter().filter(|&&h| h).count(), trials))
}

/// Mean size of the centre cluster.
pub fn mean_cluster_size(side: usize, p: f64, trials: usize, rng: &mut RandomState) -> Result<Estimate> {
    check_side(side)?;
    check_p(p)?;
    check_trials(trials)?;
    let sizes: Vec<f64> = trial_seeds(rng, trials)
        .into_par_iter()
        .map(|s| {
            let c = sample_bonds(side, p, &mut RandomState::new(s)).expect("validated");
            cluster_stats(&c).center_size as f64
        })
        .collect();
    Ok(Estimate::from_samples(&sizes))
}

/// Lower bound `1 / (2d - 1)` on the bond percolation threshold of `Z^d`.
pub fn pc_lower_bound(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(invalid(format!("dimension must be at least 2, got {d}")));
    }
    Ok(1.0 / (2 * d - 1) as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub theta: Estimate,
    pub mean_cluster: f64,
    pub largest_fraction: f64,
    pub spanning_prob: f64,
}

/// Per-trial outcome of a coupled sweep: one entry per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTrial {
    pub spanning: Vec<bool>,
    pub center_reaches_boundary: Vec<bool>,
    pub center_size: Vec<usize>,
    pub largest: Vec<usize>,
}

/// Runs the coupled trials: each trial samples one set of bond uniforms and
/// evaluates every `p` in the grid on it.
pub fn sweep_trials(side: usize, p_grid: &[f64], trials: usize, master_seed: u64) -> Result<Vec<SweepTrial>> {
    check_side(side)?;
    check_trials(trials)?;
    for &p in p_grid {
        check_p(p)?;
    }
    Ok((0..trials as u64)
        .into_par_iter()
        .map(|k| {
            let base = sample_bonds(side, 0.0, &mut RandomState::new(derive_seed(master_seed, k))).expect("validated");
            let mut out = SweepTrial {
                spanning: Vec::with_capacity(p_grid.len()),
                center_reaches_boundary: Vec::with_capacity(p_grid.len()),
                center_size: Vec::with_capacity(p_grid.len()),
                largest: Vec::with_capacity(p_grid.len()),
            };
            for &p in p_grid {
                let s = cluster_stats(&base.at(p).expect("validated"));
                out.spanning.push(s.spanning);
                out.center_reaches_boundary.push(s.center_reaches_boundary);
                out.center_size.push(s.center_size);
                out.largest.push(s.largest);
            }
            out
        })
        .collect())
}

/// Coupled sweep summarised per grid point.
pub fn sweep(side: usize, p_grid: &[f64], trials: usize, master_seed: u64) -> Result<Vec<SweepRow>> {
    let runs = sweep_trials(side, p_grid, trials, master_seed)?;
    let sites = (side * side) as f64;
    let t = trials as f64;
    Ok(p_grid
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            let hits = runs.iter().filter(|r| r.center_reaches_boundary[k]).count();
            SweepRow {
                p,
                theta: Estimate::from_bernoulli(hits, trials),
                mean_cluster: runs.iter().map(|r| r.center_size[k] as f64).sum::<f64>() / t,
                largest_fraction: runs.iter().map(|r| r.largest[k] as f64 / sites).sum::<f64>() / t,
                spanning_prob: runs.iter().filter(|r| r.spanning[k]).count() as f64 / t,
            }
        })
        .collect())
}

/// CSV `p,theta_hat,se,mean_cluster,largest_fraction,spanning_prob`.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut w: W) -> io::Result<()> {
    writeln!(w, "p,theta_hat,se,mean_cluster,largest_fraction,spanning_prob")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.p, r.theta.mean, r.theta.std_error, r.mean_cluster, r.largest_fraction, r.spanning_prob
        )?;
    }
    Ok(())
}

/// First `p` where the linearly interpolated curve reaches `level`.
pub fn interpolate_crossing(ps: &[f64], values: &[f64], level: f64) -> Option<f64> {
    for k in 1..ps.len().min(values.len()) {
        let (a, b) = (values[k - 1], values[k]);
        if a < level && b >= level {
            return Some(ps[k - 1] + (level - a) / (b - a) * (ps[k] - ps[k - 1]));
        }
    }
    None
}
