//! Poisson, binomial and Strauss point processes on a [`Domain`].

mod strauss;

pub use strauss::{strauss_acceptance, strauss_mcmc, strauss_statistic, StraussParams};

use std::io::{self, Write};

use rand_distr::{Distribution, Poisson};

use crate::error::{invalid, Result};
use crate::geometry::{Domain, Point};
use crate::rng::RandomState;

/// An immutable sample of points inside a domain.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
    domain: Domain,
    seed: u64,
}

impl PointSet {
    /// Wraps existing points, checking membership.
    pub fn from_points(domain: Domain, points: Vec<Point>, seed: u64) -> Result<Self> {
        for (k, p) in points.iter().enumerate() {
            if !domain.contains(p) {
                return Err(invalid(format!("point {k} {:?} lies outside the domain", p.coords())));
            }
        }
        Ok(Self { points, domain, seed })
    }

    pub fn empty(domain: Domain, seed: u64) -> Self {
        Self {
            points: Vec::new(),
            domain,
            seed,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Returns a copy with `extra` appended (used for conditioned probes and
    /// terminals). The new points get the indices `len()..`.
    pub fn with_points(&self, extra: &[Point]) -> Result<Self> {
        let mut points = self.points.clone();
        points.extend_from_slice(extra);
        Self::from_points(self.domain.clone(), points, self.seed)
    }

    /// CSV with header `x0,x1,...` and 17 significant digits per coordinate.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let d = self.domain.dim();
        let header: Vec<String> = (0..d).map(|k| format!("x{k}")).collect();
        writeln!(w, "{}", header.join(","))?;
        for p in &self.points {
            let row: Vec<String> = p.coords().iter().map(|c| format!("{c:.16e}")).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }

    /// Mean distance from each point to its nearest neighbour (domain metric).
    pub fn mean_nearest_neighbor_distance(&self) -> Option<f64> {
        let n = self.points.len();
        if n < 2 {
            return None;
        }
        let mut total = 0.0;
        for i in 0..n {
            let mut best = f64::INFINITY;
            for j in 0..n {
                if i != j {
                    best = best.min(self.domain.distance(&self.points[i], &self.points[j]));
                }
            }
            total += best;
        }
        Some(total / n as f64)
    }
}

/// Homogeneous Poisson process of intensity `rho`.
pub fn sample_poisson(domain: &Domain, rho: f64, rng: &mut RandomState) -> Result<PointSet> {
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(invalid(format!("intensity must be finite and >= 0, got {rho}")));
    }
    let mean = rho * domain.measure();
    let n = if mean > 0.0 {
        let dist = Poisson::new(mean).map_err(|e| invalid(e.to_string()))?;
        dist.sample(rng) as usize
    } else {
        0
    };
    Ok(sample_binomial(domain, n, rng))
}

/// Exactly `n` independent uniform points.
pub fn sample_binomial(domain: &Domain, n: usize, rng: &mut RandomState) -> PointSet {
    let seed = rng.seed();
    let points = (0..n).map(|_| domain.sample_uniform(rng)).collect();
    PointSet {
        points,
        domain: domain.clone(),
        seed,
    }
}
