use super::Point;
use crate::error::{invalid, Result};

/// Distance between two points of the plane chart used for hyperbolic
/// random graphs: `acosh(cosh y1 cosh(x2 - x1) cosh y2 - sinh y1 sinh y2)`.
pub fn hyperbolic_distance(p: &Point, q: &Point) -> Result<f64> {
    if p.dim() != 2 || q.dim() != 2 {
        return Err(invalid("hyperbolic distance needs two planar points"));
    }
    if !(p.is_finite() && q.is_finite()) {
        return Err(invalid("hyperbolic distance needs finite coordinates"));
    }
    let (x1, y1) = (p.coords()[0], p.coords()[1]);
    let (x2, y2) = (q.coords()[0], q.coords()[1]);
    let arg = y1.cosh() * (x2 - x1).cosh() * y2.cosh() - y1.sinh() * y2.sinh();
    // rounding can push the argument a hair below one
    Ok(arg.max(1.0).acosh())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_axis() {
        let p = Point::xy(0.3, -1.2);
        assert!(hyperbolic_distance(&p, &p).unwrap() < 1e-7);
        for x in [-2.5, -0.1, 0.0, 0.7, 3.0] {
            let d = hyperbolic_distance(&Point::xy(0.0, 0.0), &Point::xy(x, 0.0)).unwrap();
            assert!((d - f64::abs(x)).abs() < 1e-7);
        }
    }

    #[test]
    fn rejects_wrong_dimension() {
        assert!(hyperbolic_distance(&Point::x(1.0), &Point::xy(0.0, 0.0)).is_err());
    }
}
