//! Repulsive point patterns by Metropolis–Hastings moves.

use rand::Rng;
use rand_distr::{Beta, Distribution};

use super::{sample_binomial, PointSet};
use crate::error::{invalid, Result};
use crate::geometry::{random_direction, Domain, Point, Shape};
use crate::rng::RandomState;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StraussParams {
    /// Repulsion strength in `[0, 1]`; 1 means no interaction.
    pub omega: f64,
    /// Interaction range.
    pub capital_omega: f64,
    pub steps: usize,
    /// Shape parameters of the Beta law for move lengths, in units of the
    /// domain diameter.
    pub beta_a: f64,
    pub beta_b: f64,
}

impl StraussParams {
    pub fn new(omega: f64, capital_omega: f64, steps: usize) -> Result<Self> {
        let p = Self {
            omega,
            capital_omega,
            steps,
            beta_a: 2.0,
            beta_b: 2.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.omega) {
            return Err(invalid(format!("omega must lie in [0, 1], got {}", self.omega)));
        }
        if !(self.capital_omega.is_finite() && self.capital_omega > 0.0) {
            return Err(invalid(format!(
                "interaction range must be positive, got {}",
                self.capital_omega
            )));
        }
        for v in [self.beta_a, self.beta_b] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(format!("Beta shape parameters must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// `min(1, omega^(n_new - n_old))`, with `0^0 = 1`.
pub fn strauss_acceptance(omega: f64, n_new: f64, n_old: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&omega) {
        return Err(invalid(format!("omega must lie in [0, 1], got {omega}")));
    }
    let delta = n_new - n_old;
    if delta.is_nan() {
        return Err(invalid("interaction statistics must not be NaN"));
    }
    if omega == 1.0 || delta <= 0.0 {
        return Ok(1.0);
    }
    if omega == 0.0 {
        return Ok(0.0);
    }
    Ok(omega.powf(delta).min(1.0))
}

/// `sum_{i != skip} 1{|p_i - at| < range} * range / |p_i - at|`.
pub fn strauss_statistic(domain: &Domain, points: &[Point], skip: usize, at: &Point, range: f64) -> f64 {
    points
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, p)| {
            let d = domain.distance(p, at);
            if d < range {
                range / d
            } else {
                0.0
            }
        })
        .sum()
}

/// Starts from `n` uniform points and applies `params.steps` Metropolis–Hastings
/// moves. Each move picks a vertex, a uniform direction and a Beta distributed
/// length; moves leaving the domain are rejected.
pub fn strauss_mcmc(domain: &Domain, n: usize, params: &StraussParams, rng: &mut RandomState) -> Result<PointSet> {
    params.validate()?;
    let initial = sample_binomial(domain, n, rng);
    if n == 0 || params.steps == 0 {
        return Ok(initial);
    }
    let seed = initial.seed();
    let mut points = initial.points().to_vec();
    let lengths = Beta::new(params.beta_a, params.beta_b).map_err(|e| invalid(e.to_string()))?;
    let scale = domain.diameter();
    let dim = domain.dim();
    for _ in 0..params.steps {
        let v = rng.random_range(0..n);
        let dir = random_direction(rng, dim);
        let len = scale * lengths.sample(rng);
        let u: f64 = rng.random();
        let mut coords: Vec<f64> = points[v].coords().iter().zip(&dir).map(|(c, e)| c + len * e).collect();
        if let Shape::Torus { side } = domain.shape() {
            for c in coords.iter_mut() {
                *c = c.rem_euclid(*side);
            }
        }
        let proposal = Point::new(&coords)?;
        if !domain.contains(&proposal) {
            continue;
        }
        let n_old = strauss_statistic(domain, &points, v, &points[v], params.capital_omega);
        let n_new = strauss_statistic(domain, &points, v, &proposal, params.capital_omega);
        if u < strauss_acceptance(params.omega, n_new, n_old)? {
            points[v] = proposal;
        }
    }
    PointSet::from_points(domain.clone(), points, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acceptance_values() {
        assert_eq!(strauss_acceptance(1.0, 5.0, 0.0).unwrap(), 1.0);
        assert!((strauss_acceptance(0.5, 2.0, 0.0).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(strauss_acceptance(0.5, 0.0, 1.0).unwrap(), 1.0);
        assert_eq!(strauss_acceptance(0.0, 1.0, 0.0).unwrap(), 0.0);
        assert_eq!(strauss_acceptance(0.0, 0.0, 1.0).unwrap(), 1.0);
        assert_eq!(strauss_acceptance(0.0, 1.0, 1.0).unwrap(), 1.0);
        assert!(strauss_acceptance(1.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn zero_steps_returns_initial_configuration() {
        let d = Domain::square(1.0).unwrap();
        let p = StraussParams::new(0.1, 0.07, 0).unwrap();
        let a = strauss_mcmc(&d, 50, &p, &mut RandomState::new(9)).unwrap();
        let b = sample_binomial(&d, 50, &mut RandomState::new(9));
        assert_eq!(a, b);
    }

    #[test]
    fn statistic_counts_close_points() {
        let d = Domain::square(1.0).unwrap();
        let pts = vec![Point::xy(0.5, 0.5), Point::xy(0.55, 0.5), Point::xy(0.9, 0.9)];
        let s = strauss_statistic(&d, &pts, 0, &pts[0], 0.1);
        assert!((s - 2.0).abs() < 1e-12);
    }
}
