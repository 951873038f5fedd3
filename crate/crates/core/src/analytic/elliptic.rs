use std::f64::consts::{FRAC_2_PI, FRAC_PI_2};

use crate::error::{invalid, Result};

/// Complete elliptic integral of the second kind with modulus `k`,
/// `int_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt`, by the arithmetic-geometric mean.
pub fn elliptic_e(k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(invalid(format!("elliptic modulus {k} outside [0, 1]")));
    }
    if k == 1.0 {
        return Ok(1.0);
    }
    let mut a = 1.0;
    let mut b = (1.0 - k * k).sqrt();
    let mut sum = 0.5 * k * k;
    let mut weight = 0.5;
    for _ in 0..64 {
        let c = 0.5 * (a - b);
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
        weight *= 2.0;
        sum += weight * c * c;
    }
    Ok(FRAC_PI_2 / a * (1.0 - sum))
}

/// Max-normalised continuum betweenness at distance `eps` (in units of the
/// disk radius) from the centre: `(2/pi)(1 - eps^2) E(eps)`.
pub fn continuum_betweenness(eps: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(invalid(format!("eps {eps} outside [0, 1]")));
    }
    Ok(FRAC_2_PI * (1.0 - eps * eps) * elliptic_e(eps)?)
}
