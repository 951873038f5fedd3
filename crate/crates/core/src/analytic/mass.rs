//! Connectivity mass and the expected number of isolated vertices.

use std::f64::consts::{PI, TAU};

use statrs::function::erf::erf;
use statrs::function::gamma::{gamma, gamma_lr};

use crate::error::{invalid, Error, Result};
use crate::geometry::{Domain, Point, Shape};
use crate::graph::ConnectionModel;
use crate::quadrature::{integrate_with_breaks, Tolerance};

const MASS_TOL: f64 = 1e-10;

/// `int_0^T t^(dim-1) H(t) dt` for the given model.
fn radial_weight(dim: usize, model: &ConnectionModel) -> impl Fn(f64) -> f64 {
    let model = *model;
    move |t: f64| match model {
        ConnectionModel::Hard { r0 } => t.min(r0).powi(dim as i32) / dim as f64,
        ConnectionModel::Rayleigh { beta, eta } if eta == 2.0 => {
            let sb = beta.sqrt();
            match dim {
                1 => PI.sqrt() / (2.0 * sb) * erf(sb * t),
                2 => -(-beta * t * t).exp_m1() / (2.0 * beta),
                _ => {
                    PI.sqrt() / (4.0 * beta * sb) * erf(sb * t) - t * (-beta * t * t).exp() / (2.0 * beta)
                }
            }
        }
        ConnectionModel::Rayleigh { beta, eta } => {
            let a = dim as f64 / eta;
            gamma(a) * gamma_lr(a, beta * t.powf(eta)) / (eta * beta.powf(a))
        }
    }
}

/// Distance along the unit direction `u` from `x` until the ray meets the
/// ball `(c, a)`, if it does.
fn ball_entry(x: &[f64], u: &[f64], c: &[f64], a: f64) -> Option<f64> {
    let mut b = 0.0;
    let mut q = -a * a;
    for k in 0..x.len() {
        let w = x[k] - c[k];
        b += w * u[k];
        q += w * w;
    }
    let disc = b * b - q;
    if disc <= 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let (t1, t2) = (-b - sq, -b + sq);
    if t2 > 1e-15 {
        Some(t1.max(0.0))
    } else {
        None
    }
}

/// Distance along `u` from `x` to the exit of the origin-centred ball of radius `r`.
fn ball_exit(x: &[f64], u: &[f64], r: f64) -> f64 {
    let b: f64 = x.iter().zip(u).map(|(p, v)| p * v).sum();
    let q: f64 = x.iter().map(|p| p * p).sum::<f64>() - r * r;
    (-b + (b * b - q).max(0.0).sqrt()).max(0.0)
}

fn box_exit(x: &[f64], u: &[f64], lo: f64, hi: f64) -> f64 {
    let mut t = f64::INFINITY;
    for k in 0..x.len() {
        if u[k] > 0.0 {
            t = t.min((hi - x[k]) / u[k]);
        } else if u[k] < 0.0 {
            t = t.min((lo - x[k]) / u[k]);
        }
    }
    t.max(0.0)
}

/// Length of the visible part of the ray from `x` in direction `u`.
fn ray_reach(domain: &Domain, x: &[f64], u: &[f64]) -> f64 {
    match domain.shape() {
        Shape::Disk { radius } | Shape::Sphere { radius } => ball_exit(x, u, *radius),
        Shape::Annulus { inner, outer } | Shape::SphericalShell { inner, outer } => {
            let t = ball_exit(x, u, *outer);
            let origin = [0.0; 3];
            match ball_entry(x, u, &origin[..x.len()], *inner) {
                Some(h) => t.min(h),
                None => t,
            }
        }
        Shape::Square { side, obstacles } => obstacles.iter().fold(box_exit(x, u, 0.0, *side), |t, o| {
            match ball_entry(x, u, o.center.coords(), o.radius) {
                Some(h) => t.min(h),
                None => t,
            }
        }),
        // the torus seen from x is the square of side L centred on x
        Shape::Torus { side } => u
            .iter()
            .map(|v| if *v == 0.0 { f64::INFINITY } else { 0.5 * side / v.abs() })
            .fold(f64::INFINITY, f64::min),
        Shape::Interval { length } => {
            if u[0] > 0.0 {
                length - x[0]
            } else {
                x[0]
            }
        }
    }
}

fn wrap_angle(t: f64) -> f64 {
    t.rem_euclid(TAU)
}

fn sorted_breaks(mut b: Vec<f64>, lo: f64, hi: f64) -> Vec<f64> {
    b.retain(|t| *t > lo && *t < hi);
    b.push(lo);
    b.push(hi);
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

/// Integral of `weight(reach)` over all directions from `x`.
fn visible_integral<W: Fn(f64) -> f64>(domain: &Domain, x: &Point, weight: W) -> Result<f64> {
    visible_integral_tol(domain, x, weight, MASS_TOL)
}

fn visible_integral_tol<W: Fn(f64) -> f64>(domain: &Domain, x: &Point, weight: W, rel: f64) -> Result<f64> {
    if !domain.contains(x) {
        return Err(invalid(format!("point {:?} is not inside the domain", x.coords())));
    }
    let c = x.coords();
    let tol = Tolerance::relative(rel);
    match domain.shape() {
        Shape::Interval { .. } => Ok(weight(ray_reach(domain, c, &[1.0])) + weight(ray_reach(domain, c, &[-1.0]))),
        Shape::Disk { .. } | Shape::Annulus { .. } | Shape::Sphere { .. } | Shape::SphericalShell { .. } => {
            // rotate so that x sits on the positive first axis; the reach then
            // depends only on the angle phi to that axis
            let s = x.norm();
            let inner = match domain.shape() {
                Shape::Annulus { inner, .. } | Shape::SphericalShell { inner, .. } => Some(*inner),
                _ => None,
            };
            let probe = Domain::new(match (domain.shape(), inner) {
                (_, Some(r)) => Shape::Annulus {
                    inner: r,
                    outer: domain.diameter() / 2.0,
                },
                _ => Shape::Disk {
                    radius: domain.diameter() / 2.0,
                },
            })?;
            let mut breaks = Vec::new();
            if let Some(r) = inner {
                if s > r {
                    breaks.push(PI - (r / s).asin());
                }
            }
            let b = sorted_breaks(breaks, 0.0, PI);
            let three_d = domain.dim() == 3;
            let f = |phi: f64| {
                let reach = ray_reach(&probe, &[s, 0.0], &[phi.cos(), phi.sin()]);
                if three_d {
                    phi.sin() * weight(reach)
                } else {
                    weight(reach)
                }
            };
            let v = integrate_with_breaks(f, &b, tol)?.value;
            Ok(if three_d { TAU * v } else { 2.0 * v })
        }
        Shape::Square { side, obstacles } => {
            let mut breaks = Vec::new();
            for (cx, cy) in [(0.0, 0.0), (*side, 0.0), (0.0, *side), (*side, *side)] {
                if (cx - c[0]).hypot(cy - c[1]) > 0.0 {
                    breaks.push(wrap_angle((cy - c[1]).atan2(cx - c[0])));
                }
            }
            for o in obstacles {
                let oc = o.center.coords();
                let d = (oc[0] - c[0]).hypot(oc[1] - c[1]);
                if d > o.radius {
                    let mid = (oc[1] - c[1]).atan2(oc[0] - c[0]);
                    let half = (o.radius / d).asin();
                    breaks.push(wrap_angle(mid - half));
                    breaks.push(wrap_angle(mid + half));
                } else {
                    // on the obstacle rim: the tangent directions bound the blocked half-plane
                    let mid = (oc[1] - c[1]).atan2(oc[0] - c[0]);
                    breaks.push(wrap_angle(mid - PI / 2.0));
                    breaks.push(wrap_angle(mid + PI / 2.0));
                }
            }
            let b = sorted_breaks(breaks, 0.0, TAU);
            let f = |t: f64| weight(ray_reach(domain, c, &[t.cos(), t.sin()]));
            Ok(integrate_with_breaks(f, &b, tol)?.value)
        }
        Shape::Torus { side } => {
            let h = 0.5 * side;
            let breaks: Vec<f64> = (0..4).map(|k| PI / 4.0 + k as f64 * PI / 2.0).collect();
            let b = sorted_breaks(breaks, 0.0, TAU);
            let f = |t: f64| weight(ray_reach(domain, &[h, h], &[t.cos(), t.sin()]));
            Ok(integrate_with_breaks(f, &b, tol)?.value)
        }
    }
}

/// Integral of `H(|x - y|)` over the part of the domain visible from `x`.
pub fn connectivity_mass(domain: &Domain, model: &ConnectionModel, x: &Point) -> Result<f64> {
    model.validate()?;
    if let ConnectionModel::Hard { .. } = model {
        return Err(Error::Unsupported(
            "connectivity mass of a hard model is the visible ball measure".into(),
        ));
    }
    visible_integral(domain, x, radial_weight(domain.dim(), model))
}

/// Measure of the points of the domain within `r0` of `x` and visible from it.
pub fn visible_ball_measure(domain: &Domain, r0: f64, x: &Point) -> Result<f64> {
    let model = ConnectionModel::hard(r0)?;
    visible_integral(domain, x, radial_weight(domain.dim(), &model))
}

/// Expected connection mass for either model (visible ball measure for hard disks).
pub fn isolation_mass(domain: &Domain, model: &ConnectionModel, x: &Point) -> Result<f64> {
    model.validate()?;
    visible_integral(domain, x, radial_weight(domain.dim(), model))
}

/// Expected number of isolated vertices of a Poisson process of intensity
/// `rho`: `rho * int exp(-rho * M(x)) dx`.
pub fn expected_isolated(domain: &Domain, model: &ConnectionModel, rho: f64) -> Result<f64> {
    model.validate()?;
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(invalid(format!("intensity must be finite and >= 0, got {rho}")));
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    let r0 = model.typical_range();
    // the mass only enters through exp(-rho M), so a looser inner tolerance is enough
    let weight = radial_weight(domain.dim(), model);
    let density = |p: Point| -> Result<f64> { Ok((-rho * visible_integral_tol(domain, &p, &weight, 1e-8)?).exp()) };
    let tol = Tolerance::relative(1e-8);
    let mut failure: Option<Error> = None;
    let mut guard = |v: Result<f64>| match v {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    let value = match domain.shape() {
        Shape::Disk { .. } | Shape::Annulus { .. } | Shape::Sphere { .. } | Shape::SphericalShell { .. } => {
            let outer = domain.diameter() / 2.0;
            let inner = match domain.shape() {
                Shape::Annulus { inner, .. } | Shape::SphericalShell { inner, .. } => *inner,
                _ => 0.0,
            };
            let three_d = domain.dim() == 3;
            let mut breaks: Vec<f64> = (1..=3).map(|k| outer - k as f64 * r0).collect();
            breaks.extend((1..=3).map(|k| inner + k as f64 * r0));
            let b = sorted_breaks(breaks, inner, outer);
            let f = |s: f64| {
                let p = if three_d { Point::xyz(s, 0.0, 0.0) } else { Point::xy(s, 0.0) };
                let shell = if three_d { 2.0 * TAU * s * s } else { TAU * s };
                shell * guard(density(p))
            };
            integrate_with_breaks(f, &b, tol)?.value
        }
        Shape::Torus { side } => side * side * guard(density(Point::xy(0.5 * side, 0.5 * side))),
        Shape::Interval { length } => {
            let b = sorted_breaks(vec![r0, length - r0], 0.0, *length);
            integrate_with_breaks(|s| guard(density(Point::x(s))), &b, tol)?.value
        }
        Shape::Square { side, obstacles } => {
            let side = *side;
            let mut xb = vec![r0, side - r0];
            for o in obstacles {
                let c = o.center.coords();
                xb.extend([c[0] - o.radius, c[0] + o.radius]);
            }
            let xb = sorted_breaks(xb, 0.0, side);
            let inner_tol = Tolerance::relative(1e-7);
            let tol = Tolerance::relative(1e-6);
            let mut inner_err: Option<Error> = None;
            let mut column = |x: f64| -> f64 {
                let mut yb = vec![0.0, side];
                let mut holes = Vec::new();
                for o in obstacles {
                    let c = o.center.coords();
                    let dx = x - c[0];
                    if dx.abs() < o.radius {
                        let h = (o.radius * o.radius - dx * dx).sqrt();
                        holes.push((c[1] - h, c[1] + h));
                        yb.extend([c[1] - h, c[1] + h]);
                    }
                }
                let yb = sorted_breaks(yb, 0.0, side);
                let f = |y: f64| {
                    if holes.iter().any(|&(a, b)| y > a && y < b) {
                        return 0.0;
                    }
                    match density(Point::xy(x, y)) {
                        Ok(v) => v,
                        Err(_) => 0.0,
                    }
                };
                match integrate_with_breaks(f, &yb, inner_tol) {
                    Ok(r) => r.value,
                    Err(e) => {
                        inner_err.get_or_insert(e);
                        0.0
                    }
                }
            };
            let v = integrate_with_breaks(&mut column, &xb, tol)?.value;
            if let Some(e) = inner_err {
                return Err(e);
            }
            v
        }
    };
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(rho * value)
}
