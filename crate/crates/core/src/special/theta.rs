use crate::config::ToleranceConfig;
use crate::error::{domain, Result};
use crate::special::abs;
use crate::special::pochhammer::{guarded_product, Guarded};
use crate::{c64, C64};

/// `Θ_{p2}(x) = (x; p2)_∞ (p2/x; p2)_∞ (p2; p2)_∞`.
pub fn jacobi_theta(x: C64, p2: C64, cfg: &ToleranceConfig) -> Result<C64> {
    guarded_theta(x, p2, cfg).map(|g| g.value)
}

/// Theta product plus the closest approach of any factor to zero, so that
/// callers dividing by `Θ` can detect its zeros at `x ∈ p2^ℤ`.
pub(crate) fn guarded_theta(x: C64, p2: C64, cfg: &ToleranceConfig) -> Result<Guarded> {
    let m = abs(p2);
    if !(m > 0.0 && m < 1.0) {
        return Err(domain("theta nome must satisfy 0 < |p2| < 1"));
    }
    if x == c64(0.0, 0.0) {
        return Err(domain("theta function is singular at x = 0"));
    }
    let a = guarded_product(x, &[p2], cfg)?;
    let b = guarded_product(p2 / x, &[p2], cfg)?;
    let c = guarded_product(p2, &[p2], cfg)?;
    Ok(Guarded {
        value: a.value * b.value * c.value,
        min_factor: a.min_factor.min(b.min_factor),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn truncated(x: C64, p2: C64, n: usize) -> C64 {
        let one = c64(1.0, 0.0);
        let mut v = one;
        let mut pn = one;
        for _ in 0..n {
            v *= (one - x * pn) * (one - p2 / x * pn) * (one - p2 * pn);
            pn *= p2;
        }
        v
    }

    #[test]
    fn vanishes_at_one() {
        let v = jacobi_theta(c64(1.0, 0.0), c64(0.09, 0.0), &cfg()).unwrap();
        assert_eq!(v, c64(0.0, 0.0));
    }

    #[test]
    fn symmetric_under_reflection() {
        let (x, p2) = (c64(0.7, 0.0), c64(0.09, 0.0));
        let a = jacobi_theta(x, p2, &cfg()).unwrap();
        let b = jacobi_theta(p2 / x, p2, &cfg()).unwrap();
        assert!((a - b).norm() < 1e-9);
    }

    #[test]
    fn matches_truncated_product() {
        let (x, p2) = (c64(0.7, 0.0), c64(0.09, 0.0));
        let v = jacobi_theta(x, p2, &cfg()).unwrap();
        assert!((v - truncated(x, p2, 100)).norm() < 1e-14);
    }

    #[test]
    fn quasi_periodic() {
        let p2 = c64(0.2, 0.1);
        for x in [c64(0.8, 0.3), c64(-1.3, 0.5), c64(0.1, -0.9)] {
            let lhs = jacobi_theta(p2 * x, p2, &cfg()).unwrap();
            let rhs = -jacobi_theta(x, p2, &cfg()).unwrap() / x;
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_argument_is_domain_error() {
        assert!(matches!(jacobi_theta(c64(0.0, 0.0), c64(0.09, 0.0), &cfg()), Err(Error::Domain(_))));
    }
}
