use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // resolved through std when it is linked
use num_traits::Float;

use crate::config::ToleranceConfig;
use crate::error::{singular, Error, Result};
use crate::special::abs;
use crate::{c64, C64};

/// `x·d/dx ln f(x)` by central differences with one Richardson step.
///
/// `D(h) = (f(x+h) - f(x-h)) / 2h`, combined as `(4·D(h/2) - D(h)) / 3`,
/// which leaves an `O(h⁴)` error.
pub fn numeric_log_derivative<F>(f: F, x: C64, h: f64, cfg: &ToleranceConfig) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    let fx = f(x)?;
    if abs(fx) < cfg.trunc_eps {
        return Err(singular(format!("log-derivative of a function vanishing at {x}")));
    }
    let central = |step: f64| -> Result<C64> { Ok((f(x + step)? - f(x - step)?) / (2.0 * step)) };
    let coarse = central(h)?;
    let fine = central(0.5 * h)?;
    Ok(x * (fine * 4.0 - coarse) / 3.0 / fx)
}

/// Laurent coefficient `(1/2πi)∮_{|x|=radius} f(x)·x^{-2s} dx/x`, i.e. the
/// coefficient of `x^{2s}` in the expansion valid on that circle.
///
/// Trapezoidal rule with `cfg.contour_points` nodes, which is exact for
/// Laurent polynomials whose exponents differ from `2s` by less than the
/// node count and spectrally accurate for analytic `f`. `pole_radii` lists
/// the moduli of known singularities; a circle closer than the pole guard
/// (relative) to any of them is refused.
pub fn contour_coefficient<F>(
    f: F,
    radius: f64,
    s: i64,
    pole_radii: &[f64],
    cfg: &ToleranceConfig,
) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!("contour radius must be positive, got {radius}")));
    }
    let guard = cfg.pole_guard();
    for &pole in pole_radii {
        let gap = (radius - pole).abs() / pole.max(radius);
        if gap < guard {
            return Err(Error::Contour { radius, pole, gap });
        }
    }
    let n = cfg.contour_points;
    let roots: Vec<C64> = (0..n)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / n as f64;
            c64(t.cos(), t.sin())
        })
        .collect();
    let shift = (2 * s).rem_euclid(n as i64) as usize;
    let scale = radius.powi(-2 * s as i32);
    let mut sum = c64(0.0, 0.0);
    for (j, w) in roots.iter().enumerate() {
        let value = f(*w * radius)?;
        // x^{-2s} = r^{-2s}·ω^{-2s·j}
        let phase = roots[(n - (shift * j) % n) % n];
        sum += value * phase;
    }
    Ok(sum * scale / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn log_derivative_of_identity_is_one() {
        for x in [c64(0.8, 0.0), c64(-0.3, 1.2)] {
            let v = numeric_log_derivative(|z| Ok(z), x, 1e-3, &cfg()).unwrap();
            assert!((v - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn log_derivative_of_power() {
        for n in [2, 5, -3] {
            let v = numeric_log_derivative(|z: C64| Ok(z.powi(n)), c64(0.8, 0.0), 1e-3, &cfg()).unwrap();
            assert!((v - n as f64).norm() < 1e-8, "n = {n}: {v}");
        }
    }

    #[test]
    fn log_derivative_refuses_zero() {
        let r = numeric_log_derivative(|z: C64| Ok(z - 0.5), c64(0.5, 0.0), 1e-3, &cfg());
        assert!(matches!(r, Err(Error::Singularity(_))));
    }

    #[test]
    fn constant_and_monomials() {
        let c = c64(2.5, -1.0);
        assert!((contour_coefficient(|_| Ok(c), 1.3, 0, &[], &cfg()).unwrap() - c).norm() < 1e-15);
        let sq = |z: C64| Ok(z * z);
        let one = contour_coefficient(sq, 0.7, 1, &[], &cfg()).unwrap();
        assert!((one - 1.0).norm() < 1e-12, "{one}");
        assert!(contour_coefficient(sq, 0.7, 0, &[], &cfg()).unwrap().norm() < 1e-12);
    }

    #[test]
    fn exact_on_laurent_polynomials() {
        let cfg = ToleranceConfig { contour_points: 64, ..cfg() };
        let coeff = |j: i32| c64(0.1 * j as f64, 1.0 / (1.0 + j.abs() as f64));
        let f = move |z: C64| {
            let mut v = c64(0.0, 0.0);
            for j in -16..=16 {
                v += coeff(j) * z.powi(j);
            }
            Ok(v)
        };
        for s in -8..=8i64 {
            let got = contour_coefficient(f, 1.1, s, &[], &cfg).unwrap();
            assert!((got - coeff(2 * s as i32)).norm() < 1e-12, "s = {s}");
        }
    }

    #[test]
    fn refuses_grazing_circle() {
        let r = contour_coefficient(|z| Ok(z), 1.0, 0, &[1.0], &cfg());
        assert!(matches!(r, Err(Error::Contour { .. })));
    }
}
