use crate::error::{invalid, Error, Result};

/// Negative binomial parameters `(p, r)` with mean `(1 - p) r / p` and
/// variance `(1 - p) r / p^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegBinFit {
    pub p: f64,
    pub r: f64,
}

/// Moment fit of a negative binomial law to a count with the given mean and
/// second moment `E[X^2]`.
pub fn negbin_fit(mean: f64, second_moment: f64) -> Result<NegBinFit> {
    if !(mean.is_finite() && mean > 0.0) {
        return Err(invalid(format!("mean must be positive, got {mean}")));
    }
    if !second_moment.is_finite() {
        return Err(invalid("second moment must be finite"));
    }
    let variance = second_moment - mean * mean;
    if variance <= mean {
        return Err(Error::NotOverDispersed { mean, variance });
    }
    let p = mean / variance;
    Ok(NegBinFit {
        p,
        r: mean * p / (1.0 - p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverts_moment_equations() {
        let f = negbin_fit(2.0, 4.0 + 4.0).unwrap();
        assert!((f.p - 0.5).abs() < 1e-15 && (f.r - 2.0).abs() < 1e-12);
        let f = negbin_fit(3.0, 6.0 + 9.0).unwrap();
        assert!((f.p - 0.5).abs() < 1e-15 && (f.r - 3.0).abs() < 1e-12);
        let mean = (1.0 - f.p) * f.r / f.p;
        let var = (1.0 - f.p) * f.r / (f.p * f.p);
        assert!((mean - 3.0).abs() < 1e-12 && (var - 6.0).abs() < 1e-12);
    }

    #[test]
    fn poisson_boundary_rejected() {
        assert!(matches!(negbin_fit(2.0, 6.0), Err(Error::NotOverDispersed { .. })));
        assert!(negbin_fit(0.0, 1.0).is_err());
    }
}
