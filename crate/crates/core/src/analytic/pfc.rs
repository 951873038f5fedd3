//! Closed-form full-connection probabilities for Rayleigh fading (`eta = 2`).

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::geometry::Obstacle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShellRegime {
    /// Inner radius well below the connection range.
    Small,
    /// Inner radius well above the connection range.
    Large,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PfcGeometry {
    Disk { outer: f64 },
    AnnulusSmall { inner: f64, outer: f64 },
    AnnulusLarge { inner: f64, outer: f64 },
    AnnulusLargeLimit { inner: f64, outer: f64 },
    Shell { inner: f64, outer: f64, regime: ShellRegime },
    /// Square `[0, L]^2` with circular obstacles (centres are needed to check
    /// their separation).
    SquareObstacles { side: f64, obstacles: Vec<Obstacle> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PfcDomainSpec {
    pub geometry: PfcGeometry,
    pub rho: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfcValue {
    /// Probability clamped to `[0, 1]`.
    pub value: f64,
    /// The formula before clamping.
    pub raw: f64,
    pub clamped: bool,
}

/// Regime factor: "much smaller" means below a third of `r0`, "much larger"
/// above three times `r0`.
pub const REGIME_FACTOR: f64 = 3.0;

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn radii(inner: f64, outer: f64) -> Result<()> {
    positive("inner radius", inner)?;
    positive("outer radius", outer)?;
    if inner >= outer {
        return Err(invalid(format!("inner radius {inner} must be below outer radius {outer}")));
    }
    Ok(())
}

fn small(inner: f64, r0: f64) -> Result<()> {
    if inner < r0 / REGIME_FACTOR {
        Ok(())
    } else {
        Err(Error::Regime(format!(
            "small-obstacle formula needs r < r0/{REGIME_FACTOR} = {:.6}, got r = {inner}",
            r0 / REGIME_FACTOR
        )))
    }
}

fn large(inner: f64, r0: f64) -> Result<()> {
    if inner > REGIME_FACTOR * r0 {
        Ok(())
    } else {
        Err(Error::Regime(format!(
            "large-obstacle formula needs r > {REGIME_FACTOR} r0 = {:.6}, got r = {inner}",
            REGIME_FACTOR * r0
        )))
    }
}

/// Bulk and outer-boundary terms of the disk of radius `outer`.
fn disk_loss(outer: f64, rho: f64, beta: f64) -> f64 {
    let bulk = PI * outer * outer * rho * (-rho * PI / beta).exp();
    let edge = 2.0 * PI * outer * (beta / PI).sqrt()
        * (-(rho / beta) * (PI / 2.0 - PI.sqrt() / (4.0 * outer * beta.sqrt()))).exp();
    bulk + edge
}

/// Leading-order loss from a small hole of radius `inner`.
fn small_hole_loss(inner: f64, rho: f64, beta: f64) -> f64 {
    PI * inner * inner * (2.0 * beta * beta / rho) * (-rho * PI / (2.0 * beta)).exp()
}

/// Full-connection probability from the closed-form boundary expansions.
pub fn pfc_closed_form(spec: &PfcDomainSpec) -> Result<PfcValue> {
    let PfcDomainSpec { rho, beta, .. } = *spec;
    positive("beta", beta)?;
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(invalid(format!("intensity must be finite and >= 0, got {rho}")));
    }
    let r0 = beta.powf(-0.5);
    let sb = beta.sqrt();
    let raw = match &spec.geometry {
        PfcGeometry::Disk { outer } => {
            positive("radius", *outer)?;
            1.0 - disk_loss(*outer, rho, beta)
        }
        PfcGeometry::AnnulusSmall { inner, outer } => {
            radii(*inner, *outer)?;
            small(*inner, r0)?;
            1.0 - small_hole_loss(*inner, rho, beta) - disk_loss(*outer, rho, beta)
        }
        PfcGeometry::AnnulusLarge { inner, outer } => {
            radii(*inner, *outer)?;
            large(*inner, r0)?;
            let hole = 2.0 * PI * inner * (beta / PI).sqrt()
                * (-(rho / beta) * (PI / 2.0 + PI.sqrt() / (4.0 * inner * sb))).exp();
            1.0 - hole - disk_loss(*outer, rho, beta)
        }
        PfcGeometry::AnnulusLargeLimit { inner, outer } => {
            radii(*inner, *outer)?;
            large(*inner, r0)?;
            1.0 - 2.0 * PI * (outer + inner) * (beta / PI).sqrt() * (-rho * PI / (2.0 * beta)).exp()
                - PI * (outer * outer - inner * inner) * rho * (-rho * PI / beta).exp()
        }
        PfcGeometry::Shell { inner, outer, regime } => {
            radii(*inner, *outer)?;
            let b32 = beta * sb;
            let pi32 = PI * PI.sqrt();
            // the outer-rim exponent, reused verbatim for the large inner rim
            let rim = (-rho * (pi32 / (2.0 * b32) - (1.0 / (outer * sb)) * (PI / (2.0 * b32)))).exp();
            let bulk = 4.0 * PI / 3.0 * (outer.powi(3) - inner.powi(3)) * rho * (-rho * pi32 / b32).exp();
            let outer_term = 4.0 * PI * outer * outer * (beta / PI) * rim;
            let inner_term = match regime {
                ShellRegime::Small => {
                    small(*inner, r0)?;
                    4.0 / 3.0 * PI * inner.powi(3) * (12.0 * beta.powi(3) / (rho * PI.powi(3)))
                        * (-rho * pi32 / (2.0 * b32)).exp()
                }
                ShellRegime::Large => {
                    large(*inner, r0)?;
                    4.0 * PI * inner * inner * (beta / PI) * rim
                }
            };
            1.0 - bulk - outer_term - inner_term
        }
        PfcGeometry::SquareObstacles { side, obstacles } => {
            let side = *side;
            positive("side", side)?;
            for (k, o) in obstacles.iter().enumerate() {
                positive("obstacle radius", o.radius)?;
                let c = o.center.coords();
                if c.len() != 2 {
                    return Err(invalid(format!("obstacle {k} needs a 2-D centre")));
                }
                let wall = [c[0], side - c[0], c[1], side - c[1]]
                    .into_iter()
                    .fold(f64::INFINITY, f64::min)
                    - o.radius;
                if wall < 2.0 * r0 {
                    return Err(Error::Regime(format!(
                        "obstacle {k} is {wall:.6} from the boundary; needs at least 2 r0 = {:.6}",
                        2.0 * r0
                    )));
                }
                for (m, p) in obstacles.iter().enumerate().take(k) {
                    let gap = o.center.distance(&p.center) - o.radius - p.radius;
                    if gap < 2.0 * r0 {
                        return Err(Error::Regime(format!(
                            "obstacles {m} and {k} are {gap:.6} apart; need at least 2 r0 = {:.6}",
                            2.0 * r0
                        )));
                    }
                }
            }
            let holes: f64 = obstacles.iter().map(|o| PI * o.radius * o.radius).sum();
            1.0 - holes * (2.0 * beta * beta / rho) * (-rho * PI / (2.0 * beta)).exp()
                - (side * side - holes) * rho * (-PI / beta * rho).exp()
                - 4.0 * side * (beta / PI).sqrt() * (-PI / (2.0 * beta) * rho).exp()
                - 16.0 * beta / (rho * PI) * (-PI / (4.0 * beta) * rho).exp()
        }
    };
    let value = if raw.is_nan() { 0.0 } else { raw.clamp(0.0, 1.0) };
    Ok(PfcValue {
        value,
        raw,
        clamped: value != raw,
    })
}
