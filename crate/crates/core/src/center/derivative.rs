//! Central differences in the level `c`.

#[allow(unused_imports)] // resolved through std when it is linked
use num_traits::Float;

use crate::error::Result;
use crate::rmatrix::TensorMatrix;
use crate::special::abs;
use crate::C64;

/// `(f(c+h) - f(c-h)) / 2h`, componentwise.
pub(crate) fn central<const N: usize>(f: &impl Fn(f64) -> Result<[C64; N]>, c: f64, h: f64) -> Result<[C64; N]> {
    let plus = f(c + h)?;
    let minus = f(c - h)?;
    Ok(core::array::from_fn(|k| (plus[k] - minus[k]) / (2.0 * h)))
}

/// One Richardson step on top of [`central`]: `(4·D(h/2) - D(h)) / 3`.
pub(crate) fn richardson<const N: usize>(f: &impl Fn(f64) -> Result<[C64; N]>, c: f64, h: f64) -> Result<[C64; N]> {
    let coarse = central(f, c, h)?;
    let fine = central(f, c, h / 2.0)?;
    Ok(core::array::from_fn(|k| (fine[k] * 4.0 - coarse[k]) / 3.0))
}

/// Order estimate `log₂(e(h)/e(h/2))` from errors at successive halvings,
/// keeping the smallest over consecutive pairs.
pub(crate) fn observed_order(errors: &[f64]) -> f64 {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).fold(f64::INFINITY, f64::min)
}

pub(crate) fn flatten(m: &TensorMatrix) -> [C64; 16] {
    let e = m.entries();
    core::array::from_fn(|k| e[k / 4][k % 4])
}

pub(crate) fn unflatten(v: &[C64; 16]) -> TensorMatrix {
    TensorMatrix::new(core::array::from_fn(|i| core::array::from_fn(|j| v[4 * i + j])))
}

pub(crate) fn max_abs<const N: usize>(v: &[C64; N]) -> f64 {
    v.iter().map(|z| abs(*z)).fold(0.0, f64::max)
}

pub(crate) fn max_diff<const N: usize>(a: &[C64; N], b: &[C64; N]) -> f64 {
    a.iter().zip(b).map(|(x, y)| abs(*x - *y)).fold(0.0, f64::max)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use alloc::vec::Vec;

    #[test]
    fn exact_on_cubic_after_extrapolation() {
        let f = |c: f64| Ok([c64(c * c * c, 0.0)]);
        let d = richardson(&f, 0.7, 0.1).unwrap()[0];
        assert!((d.re - 3.0 * 0.49).abs() < 1e-13);
    }

    #[test]
    fn orders_on_exponential() {
        let f = |c: f64| Ok([c64(c.exp(), 0.0)]);
        let exact = 1.0f64.exp();
        let hs = [0.2, 0.1, 0.05];
        let plain: Vec<f64> = hs.iter().map(|h| (central(&f, 1.0, *h).unwrap()[0].re - exact).abs()).collect();
        let rich: Vec<f64> = hs.iter().map(|h| (richardson(&f, 1.0, *h).unwrap()[0].re - exact).abs()).collect();
        assert!((observed_order(&plain) - 2.0).abs() < 0.05);
        assert!((observed_order(&rich) - 4.0).abs() < 0.1);
    }
}
