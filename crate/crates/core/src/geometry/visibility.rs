use super::{Domain, Point, Shape};
use crate::error::{invalid, Result};

const PARAM_TOL: f64 = 1e-12;

/// Whether the segment `a -> b` passes through the open ball of the given
/// centre and radius. Grazing contact does not count.
pub fn segment_hits_ball(a: &[f64], b: &[f64], center: &[f64], radius: f64) -> bool {
    let mut qa = 0.0;
    let mut qb = 0.0;
    let mut qc = -radius * radius;
    for k in 0..a.len() {
        let d = b[k] - a[k];
        let w = a[k] - center[k];
        qa += d * d;
        qb += 2.0 * d * w;
        qc += w * w;
    }
    if qa == 0.0 {
        return qc < 0.0;
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc <= 0.0 {
        return false;
    }
    let sq = disc.sqrt();
    let t1 = (-qb - sq) / (2.0 * qa);
    let t2 = (-qb + sq) / (2.0 * qa);
    if t2 - t1 <= PARAM_TOL {
        return false;
    }
    t2.min(1.0) - t1.max(0.0) > PARAM_TOL
}

impl Domain {
    /// Line-of-sight test without membership checks.
    pub fn visible(&self, x: &Point, y: &Point) -> bool {
        match self.shape() {
            Shape::Annulus { inner, .. } | Shape::SphericalShell { inner, .. } => {
                let origin = [0.0; 3];
                !segment_hits_ball(x.coords(), y.coords(), &origin[..x.dim()], *inner)
            }
            Shape::Square { obstacles, .. } => obstacles
                .iter()
                .all(|o| !segment_hits_ball(x.coords(), y.coords(), o.center.coords(), o.radius)),
            _ => true,
        }
    }
}

/// True iff the closed segment between `x` and `y` stays inside `domain`.
pub fn visibility(domain: &Domain, x: &Point, y: &Point) -> Result<bool> {
    for p in [x, y] {
        if !domain.contains(p) {
            return Err(invalid(format!("point {:?} is not inside the domain", p.coords())));
        }
    }
    Ok(domain.visible(x, y))
}
