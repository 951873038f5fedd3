use std::f64::consts::{FRAC_PI_2, PI};

use statrs::function::gamma::gamma;

use super::special::reg_incomplete_beta;
use crate::error::{invalid, Result};

/// Largest dimension accepted by the ball/cap routines.
pub const MAX_DIMENSION: usize = 10;

fn check_dim(d: usize, min: usize) -> Result<()> {
    if d < min || d > MAX_DIMENSION {
        return Err(invalid(format!(
            "dimension {d} outside supported range {min}..={MAX_DIMENSION}"
        )));
    }
    Ok(())
}

/// Volume of the unit ball in `R^d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    let h = d as f64 / 2.0;
    PI.powf(h) / gamma(h + 1.0)
}

/// Surface measure of the sphere of radius `r` in `R^d`.
pub fn sphere_surface(d: usize, r: f64) -> f64 {
    let h = d as f64 / 2.0;
    2.0 * PI.powf(h) * r.powi(d as i32 - 1) / gamma(h)
}

/// Volume of the intersection of two unit balls whose centres are `s` apart.
pub fn intersection_volume(d: usize, s: f64) -> Result<f64> {
    check_dim(d, 1)?;
    if !(s.is_finite() && s >= 0.0) {
        return Err(invalid(format!("centre separation must be finite and >= 0, got {s}")));
    }
    if s >= 2.0 {
        return Ok(0.0);
    }
    let x = 1.0 - s * s / 4.0;
    let a = (d as f64 + 1.0) / 2.0;
    Ok(unit_ball_volume(d) * reg_incomplete_beta(x, a, 0.5)?)
}

/// Surface measure of the cap of colatitude `phi` on a sphere of radius
/// `radius` in `R^d`.
pub fn cap_area(d: usize, radius: f64, phi: f64) -> Result<f64> {
    check_dim(d, 2)?;
    if !(radius.is_finite() && radius > 0.0) {
        return Err(invalid(format!("cap radius must be positive, got {radius}")));
    }
    if !(0.0..=PI).contains(&phi) {
        return Err(invalid(format!("cap angle {phi} outside [0, pi]")));
    }
    let full = sphere_surface(d, radius);
    let a = (d as f64 - 1.0) / 2.0;
    if phi <= FRAC_PI_2 {
        let s = phi.sin();
        Ok(0.5 * full * reg_incomplete_beta(s * s, a, 0.5)?)
    } else {
        let s = (PI - phi).sin();
        Ok(full - 0.5 * full * reg_incomplete_beta(s * s, a, 0.5)?)
    }
}
