use alloc::format;
use alloc::vec::Vec;

use crate::config::ToleranceConfig;
use crate::error::{domain, Error, Result};
use crate::special::abs;
use crate::{c64, C64};

/// Value of a truncated product together with the smallest `|1 - x·b^n|`
/// among the included factors. Callers dividing by the product use the
/// latter as a pole-proximity signal.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Guarded {
    pub value: C64,
    pub min_factor: f64,
}

fn check_bases(bases: &[C64]) -> Result<()> {
    if bases.is_empty() {
        return Err(domain("q-Pochhammer product needs at least one base"));
    }
    for b in bases {
        if !(abs(*b) < 1.0) {
            return Err(domain(format!("base {b} must lie in the open unit disc")));
        }
    }
    Ok(())
}

/// `∏_{n_1..n_m >= 0} (1 - x·b_1^{n_1}⋯b_m^{n_m})`.
///
/// The multi-index set enumerated is the down-set of indices whose monomial
/// `|x·b^n|` is at least `cfg.trunc_eps`; every omitted factor differs from 1
/// by less than `trunc_eps`. Because `|b_i| < 1` the set is finite and the
/// enumeration is deterministic.
pub fn qpochhammer_multi(x: C64, bases: &[C64], cfg: &ToleranceConfig) -> Result<C64> {
    guarded_product(x, bases, cfg).map(|g| g.value)
}

/// Single-base `(x; b)_∞`.
pub fn qpochhammer(x: C64, base: C64, cfg: &ToleranceConfig) -> Result<C64> {
    qpochhammer_multi(x, &[base], cfg)
}

pub(crate) fn guarded_product(x: C64, bases: &[C64], cfg: &ToleranceConfig) -> Result<Guarded> {
    check_bases(bases)?;
    let mut acc = Guarded { value: c64(1.0, 0.0), min_factor: f64::INFINITY };
    walk(x, bases, cfg, &mut acc)?;
    Ok(acc)
}

fn walk(monomial: C64, bases: &[C64], cfg: &ToleranceConfig, acc: &mut Guarded) -> Result<()> {
    let (base, rest) = match bases.split_first() {
        Some(split) => split,
        None => {
            let factor = c64(1.0, 0.0) - monomial;
            acc.value *= factor;
            acc.min_factor = acc.min_factor.min(abs(factor));
            return Ok(());
        }
    };
    let mut term = monomial;
    let mut n = 0usize;
    while abs(term) >= cfg.trunc_eps {
        if n >= cfg.max_terms {
            return Err(Error::Convergence {
                what: format!("q-Pochhammer product along base {base}"),
                terms: n,
            });
        }
        walk(term, rest, cfg, acc)?;
        term *= *base;
        n += 1;
    }
    Ok(())
}

/// Logarithmic derivative `y·d/dy ln (y; b)_∞ = -Σ_n y·b^n / (1 - y·b^n)`.
pub fn pochhammer_log_derivative(y: C64, base: C64, cfg: &ToleranceConfig) -> Result<C64> {
    check_bases(&[base])?;
    let guard = cfg.pole_guard();
    let mut term = y;
    let mut sum = c64(0.0, 0.0);
    let mut n = 0usize;
    while abs(term) >= cfg.trunc_eps {
        if n >= cfg.max_terms {
            return Err(Error::Convergence { what: format!("log-derivative of ({y}; {base})"), terms: n });
        }
        let den = c64(1.0, 0.0) - term;
        if abs(den) < guard {
            return Err(crate::error::singular(format!("({y}; {base}) has a zero at factor {n}")));
        }
        sum -= term / den;
        term *= base;
        n += 1;
    }
    Ok(sum)
}

/// Product of the listed single-base Pochhammer symbols divided by another
/// list, refusing denominators that come within the pole guard of zero.
pub(crate) fn pochhammer_ratio(
    num: &[(C64, &[C64])],
    den: &[(C64, &[C64])],
    cfg: &ToleranceConfig,
    what: &str,
) -> Result<C64> {
    let mut value = c64(1.0, 0.0);
    for (x, bases) in num {
        value *= guarded_product(*x, bases, cfg)?.value;
    }
    let guard = cfg.pole_guard();
    let mut denominators = Vec::with_capacity(den.len());
    for (x, bases) in den {
        let g = guarded_product(*x, bases, cfg)?;
        if g.min_factor < guard {
            return Err(crate::error::singular(format!("{what}: denominator factor vanishes near {x}")));
        }
        denominators.push(g.value);
    }
    for d in denominators {
        value /= d;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn partial(x: C64, b: C64, n: usize) -> C64 {
        let mut v = c64(1.0, 0.0);
        let mut t = x;
        for _ in 0..n {
            v *= c64(1.0, 0.0) - t;
            t *= b;
        }
        v
    }

    #[test]
    fn zero_argument_gives_one() {
        let v = qpochhammer_multi(c64(0.0, 0.0), &[c64(0.5, 0.0)], &cfg()).unwrap();
        assert_eq!(v, c64(1.0, 0.0));
    }

    #[test]
    fn zero_base_keeps_first_factor() {
        let v = qpochhammer_multi(c64(0.5, 0.0), &[c64(0.0, 0.0)], &cfg()).unwrap();
        assert!((v - c64(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn matches_partial_product() {
        let x = c64(0.25, 0.0);
        let b = c64(0.5, 0.0);
        let oracle = partial(x, b, 200);
        let v = qpochhammer(x, b, &cfg()).unwrap();
        assert!((v - oracle).norm() < 1e-14, "{v} vs {oracle}");
    }

    #[test]
    fn double_base_matches_nested_partial_products() {
        let x = c64(0.3, 0.2);
        let (b1, b2) = (c64(0.4, 0.0), c64(-0.3, 0.1));
        let mut oracle = c64(1.0, 0.0);
        let mut outer = x;
        for _ in 0..80 {
            oracle *= partial(outer, b2, 80);
            outer *= b1;
        }
        let v = qpochhammer_multi(x, &[b1, b2], &cfg()).unwrap();
        assert!((v - oracle).norm() < 1e-13);
    }

    #[test]
    fn rejects_base_on_unit_circle() {
        assert!(matches!(
            qpochhammer(c64(0.1, 0.0), c64(1.0, 0.0), &cfg()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(qpochhammer_multi(c64(0.1, 0.0), &[], &cfg()), Err(Error::Domain(_))));
    }

    #[test]
    fn slow_base_hits_term_cap() {
        let small = ToleranceConfig { max_terms: 64, ..cfg() };
        assert!(matches!(
            qpochhammer(c64(0.5, 0.0), c64(0.999, 0.0), &small),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn log_derivative_matches_finite_difference() {
        let b = c64(0.3, -0.2);
        let y = c64(0.7, 0.4);
        let h = 1e-5;
        let f = |z: C64| qpochhammer(z, b, &cfg()).unwrap().ln();
        let fd = (f(y * (1.0 + h)) - f(y * (1.0 - h))) / (2.0 * h);
        let an = pochhammer_log_derivative(y, b, &cfg()).unwrap();
        assert!((fd - an).norm() < 1e-8);
    }
}
