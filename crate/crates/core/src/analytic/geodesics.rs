//! Expected number of minimum-hop paths between two fixed terminals of a
//! unit-range hard-disk graph on a Poisson process.

use statrs::function::gamma::gamma;

use crate::error::{invalid, Error, Result};
use crate::geometry::{cap_area, intersection_volume, MAX_DIMENSION};
use crate::quadrature::{integrate, Tolerance};

/// Terminal separation `r_xy` in units of the connection range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicQuery {
    pub d: usize,
    pub rho: f64,
    pub r_xy: f64,
}

/// Largest separation accepted by [`geodesic_recursion_numeric`].
pub const RECURSION_MAX_R: f64 = 6.0;

impl GeodesicQuery {
    pub fn new(d: usize, rho: f64, r_xy: f64) -> Result<Self> {
        let q = Self { d, rho, r_xy };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 || self.d > MAX_DIMENSION {
            return Err(invalid(format!("dimension {} outside 2..={MAX_DIMENSION}", self.d)));
        }
        if !(self.rho.is_finite() && self.rho > 0.0) {
            return Err(invalid(format!("intensity must be positive, got {}", self.rho)));
        }
        if !(self.r_xy.is_finite() && self.r_xy >= 0.0) {
            return Err(invalid(format!("separation must be finite and >= 0, got {}", self.r_xy)));
        }
        Ok(())
    }

    /// Minimum hop count, `floor(r) + 1` (equal to `ceil(r)` away from integers;
    /// at an integer separation the strict range rule needs one more hop).
    pub fn hops(&self) -> usize {
        self.r_xy.floor() as usize + 1
    }
}

/// `rho * V_d(r)` for `1 <= r < 2`: the mean number of common neighbours.
pub fn expected_two_hop_exact(q: &GeodesicQuery) -> Result<f64> {
    q.validate()?;
    if !(1.0..2.0).contains(&q.r_xy) {
        return Err(invalid(format!("two-hop formula needs 1 <= r < 2, got {}", q.r_xy)));
    }
    Ok(q.rho * intersection_volume(q.d, q.r_xy)?)
}

/// Leading-order closed form for the expected number of minimum-hop paths.
pub fn expected_geodesic_cardinality(q: &GeodesicQuery) -> Result<f64> {
    q.validate()?;
    let r = q.r_xy;
    if r < 1.0 {
        return Ok(1.0);
    }
    let d = q.d as f64;
    let fl = r.floor();
    let ce = r.ceil();
    let num = q.rho.powf(fl) * (2.0 * std::f64::consts::PI).powf(0.5 * fl * (d - 1.0)) * ce.powf(0.5 * (1.0 - d));
    let den = gamma(0.5 * (ce + 1.0) + 0.5 * fl * d);
    Ok(num / den * (ce - r).powf(0.5 * fl * (d + 1.0)))
}

/// Measure of the sphere of radius `lambda` about one terminal that lies
/// within unit distance of a point at separation `r`.
fn contour(d: usize, r: f64, lambda: f64) -> Result<f64> {
    let c = ((lambda * lambda + r * r - 1.0) / (2.0 * r * lambda)).clamp(-1.0, 1.0);
    cap_area(d, lambda, c.acos())
}

fn recursion(d: usize, rho: f64, r: f64, tol: f64) -> Result<f64> {
    if r < 1.0 {
        return Ok(1.0);
    }
    if r < 2.0 {
        return Ok(rho * intersection_volume(d, r)?);
    }
    // lambda = (r - 1) + t^2 removes the square-root onset of the contour
    let upper = (r.floor() - (r - 1.0)).sqrt();
    let mut failure: Option<Error> = None;
    let f = |t: f64| {
        let lambda = (r - 1.0) + t * t;
        let v = contour(d, r, lambda).and_then(|l| Ok(l * recursion(d, rho, lambda, tol * 0.1)?));
        match v {
            Ok(v) => 2.0 * t * v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let out = integrate(f, 0.0, upper, Tolerance::relative(tol))?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(rho * out.value)
}

/// Evaluates the exact recursion
/// `E(sigma_r) = rho * int_{r-1}^{floor r} l_lambda E(sigma_lambda) d lambda`
/// by nested adaptive quadrature to relative tolerance `tol`.
pub fn geodesic_recursion_numeric(q: &GeodesicQuery, tol: f64) -> Result<f64> {
    q.validate()?;
    if q.d != 2 && q.d != 3 {
        return Err(Error::Unsupported(format!(
            "numeric recursion is implemented for d = 2, 3 (got {})",
            q.d
        )));
    }
    if q.r_xy >= RECURSION_MAX_R {
        return Err(invalid(format!(
            "numeric recursion limited to r < {RECURSION_MAX_R}, got {}",
            q.r_xy
        )));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(invalid(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    recursion(q.d, q.rho, q.r_xy, tol)
}

/// Expected geodesic count for `1 <= r < 2` in the plane including paths one
/// hop longer than optimal, weighted by the chance that no optimal path exists.
pub fn beta_optimal_correction(rho: f64, r_xy: f64) -> Result<f64> {
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(invalid(format!("intensity must be finite and >= 0, got {rho}")));
    }
    if !(1.0..2.0).contains(&r_xy) {
        return Err(invalid(format!("separation must lie in [1, 2), got {r_xy}")));
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    let a = intersection_volume(2, r_xy)?;
    let mut failure: Option<Error> = None;
    let f = |lambda: f64| match (contour(2, r_xy, lambda), intersection_volume(2, lambda)) {
        (Ok(l), Ok(v)) => l * v,
        (Err(e), _) | (_, Err(e)) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    let tail = integrate(f, 1.0, 2.0, Tolerance::relative(1e-10))?.value;
    if let Some(e) = failure {
        return Err(e);
    }
    let p_none = (-rho * a).exp();
    Ok(rho * a * (1.0 - p_none) + p_none * rho * rho * tail)
}
