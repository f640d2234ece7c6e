//! The structure function `f(x)` of `{t(z), t(w)} = f(z/w)·t(z)t(w)`.

use alloc::format;

use crate::center::derivative::{flatten, max_abs, max_diff, richardson, unflatten};
use crate::center::exchange::{y_matrix, CRITICAL_LEVEL};
use crate::config::ToleranceConfig;
use crate::error::{singular, Error, Result};
use crate::report::relative_residual;
use crate::rmatrix::{tau_log_derivative, ModularParams, TensorMatrix};
use crate::special::abs;
use crate::{c64, C64};

/// `f(x) = -ln q·[g(q^{1/2}x⁻¹) - g(q^{1/2}x)]` with `g = y·d/dy ln τ(y)`
/// summed term by term from the product for `τ`.
pub fn structure_function_closed(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<C64> {
    structure_function_closed_q(x, params.q(), cfg)
}

/// [`structure_function_closed`] as a function of `q` alone.
pub fn structure_function_closed_q(x: C64, q: C64, cfg: &ToleranceConfig) -> Result<C64> {
    if x == c64(0.0, 0.0) {
        return Err(Error::Domain("f is singular at x = 0".into()));
    }
    let rq = (q.ln() * 0.5).exp();
    let g_in = tau_log_derivative(rq / x, q, cfg)?;
    let g_out = tau_log_derivative(rq * x, q, cfg)?;
    Ok(-q.ln() * (g_in - g_out))
}

/// Partial-fraction form of `f`, with `X = x²`:
///
/// ```text
/// f = -2 ln q·[ Σ_{n≥0} (2Xq^{4n+2}/(1-Xq^{4n+2}) - 2X⁻¹q^{4n+2}/(1-X⁻¹q^{4n+2}))
///             + Σ_{n>0} (2X⁻¹q^{4n}/(1-X⁻¹q^{4n}) - 2Xq^{4n}/(1-Xq^{4n}))
///             - X/(1-X) + X⁻¹/(1-X⁻¹) ]
/// ```
pub fn structure_function_series(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<C64> {
    structure_function_series_q(x, params.q(), cfg)
}

pub fn structure_function_series_q(x: C64, q: C64, cfg: &ToleranceConfig) -> Result<C64> {
    if x == c64(0.0, 0.0) {
        return Err(Error::Domain("f is singular at x = 0".into()));
    }
    let guard = cfg.pole_guard();
    let frac = |y: C64| -> Result<C64> {
        let d = c64(1.0, 0.0) - y;
        if abs(d) < guard {
            return Err(singular(format!("f: pole term 1 - {y} vanishes")));
        }
        Ok(y / d)
    };
    let xx = x * x;
    let xi = xx.inv();
    let q2 = q * q;
    let q4 = q2 * q2;
    let mut sum = frac(xi)? - frac(xx)?;
    let (mut odd, mut even) = (q2, q4);
    for _ in 0..cfg.max_terms {
        let group = (frac(xx * odd)? - frac(xi * odd)? + frac(xi * even)? - frac(xx * even)?) * 2.0;
        sum += group;
        if abs(group) < cfg.trunc_eps * abs(sum).max(1.0) {
            return Ok(-q.ln() * 2.0 * sum);
        }
        odd *= q4;
        even *= q4;
    }
    Err(Error::Convergence { what: "structure function series".into(), terms: cfg.max_terms })
}

/// `dY/dc` at `c = -2` by central differences with step `cfg.diff_step`
/// and one Richardson extrapolation.
pub fn dy_dc_at_critical(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<TensorMatrix> {
    dy_dc_with_step(x, params, cfg, cfg.diff_step)
}

pub(crate) fn dy_dc_with_step(x: C64, params: &ModularParams, cfg: &ToleranceConfig, h: f64) -> Result<TensorMatrix> {
    let y = |c: f64| Ok(flatten(&y_matrix(x, c, params, cfg)?));
    Ok(unflatten(&richardson(&y, CRITICAL_LEVEL, h)?))
}

/// Deviation of a matrix from a multiple of the identity: the largest
/// off-diagonal entry together with the largest spread of the diagonal.
pub(crate) fn identity_defect(m: &TensorMatrix) -> (f64, C64) {
    let e = flatten(m);
    let diag = [e[0], e[5], e[10], e[15]];
    let mean = diag.iter().sum::<C64>() / 4.0;
    let off = (0..16).filter(|k| k % 5 != 0).map(|k| abs(e[k])).fold(0.0, f64::max);
    let spread = max_diff(&diag, &[mean; 4]);
    (off.max(spread), mean)
}

/// `f` at one point along the three routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureFunctionEval {
    pub x: C64,
    pub f_closed: C64,
    pub f_series: C64,
    /// Mean diagonal entry of `dY/dc` at `c = -2`.
    pub f_numeric: C64,
}

impl StructureFunctionEval {
    pub fn at(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<Self> {
        Ok(Self::with_derivative(x, params, cfg)?.0)
    }

    pub(crate) fn with_derivative(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<(Self, TensorMatrix)> {
        let dy = dy_dc_at_critical(x, params, cfg)?;
        let (_, f_numeric) = identity_defect(&dy);
        let ev = Self {
            x,
            f_closed: structure_function_closed(x, params, cfg)?,
            f_series: structure_function_series(x, params, cfg)?,
            f_numeric,
        };
        Ok((ev, dy))
    }

    /// Pairwise residuals: closed/series, closed/numeric, series/numeric.
    pub fn residuals(&self) -> [f64; 3] {
        let r = |a: C64, b: C64| relative_residual(abs(a - b), abs(a), abs(b));
        [
            r(self.f_closed, self.f_series),
            r(self.f_closed, self.f_numeric),
            r(self.f_series, self.f_numeric),
        ]
    }

    pub fn max_disagreement(&self) -> f64 {
        max_abs(&self.residuals().map(|r| c64(r, 0.0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::make_params;

    fn setup() -> (ModularParams, ToleranceConfig) {
        let cfg = ToleranceConfig::default();
        (make_params(c64(0.3, 0.0), c64(-0.5, 0.0), &cfg).unwrap(), cfg)
    }

    #[test]
    fn closed_form_is_antisymmetric() {
        let (m, cfg) = setup();
        let x = c64(1.2, 0.0);
        let a = structure_function_closed(x, &m, &cfg).unwrap();
        let b = structure_function_closed(x.inv(), &m, &cfg).unwrap();
        assert!((a + b).norm() < 1e-12);
    }

    #[test]
    fn closed_matches_series() {
        let (m, cfg) = setup();
        for x in [c64(1.2, 0.0), c64(1.1, 0.5), c64(-0.3, 1.4)] {
            let a = structure_function_closed(x, &m, &cfg).unwrap();
            let b = structure_function_series(x, &m, &cfg).unwrap();
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn series_from_explicit_truncation() {
        // 60 groups of the partial-fraction sum, written out independently
        let q = 0.5f64;
        let xx = 1.44f64;
        let mut s = -xx / (1.0 - xx) + (1.0 / xx) / (1.0 - 1.0 / xx);
        for n in 0..60 {
            let a = q.powi(4 * n + 2);
            s += 2.0 * xx * a / (1.0 - xx * a) - 2.0 * a / xx / (1.0 - a / xx);
            let b = q.powi(4 * n + 4);
            s += -2.0 * xx * b / (1.0 - xx * b) + 2.0 * b / xx / (1.0 - b / xx);
        }
        let oracle = -2.0 * q.ln() * s;
        let v = structure_function_series_q(c64(1.2, 0.0), c64(q, 0.0), &ToleranceConfig::default()).unwrap();
        assert!((v.re - oracle).abs() < 1e-12 && v.im.abs() < 1e-15);
    }

    #[test]
    fn unit_circle_values() {
        // on |x| = 1 the conjugate point is x⁻¹, so antisymmetry plus a real
        // q makes f purely imaginary there
        let cfg = ToleranceConfig::default();
        let t = core::f64::consts::FRAC_PI_3;
        let x = c64(t.cos(), t.sin());
        let q = c64(0.5, 0.0);
        let f = structure_function_closed_q(x, q, &cfg).unwrap();
        let g = structure_function_closed_q(x.conj(), q, &cfg).unwrap();
        assert!((f.conj() - g).norm() < 1e-12);
        assert!((f + g).norm() < 1e-12);
        assert!(f.re.abs() < 1e-12 && f.im.abs() > 1e-3);
    }

    #[test]
    fn simple_pole_at_one() {
        let cfg = ToleranceConfig::default();
        let q = c64(0.5, 0.0);
        let residue = |e: f64| structure_function_series_q(c64(1.0 + e, 0.0), q, &cfg).unwrap() * e;
        let (a, b) = (residue(1e-4), residue(1e-5));
        assert!(a.norm() > 1e-2);
        assert!((a - b).norm() < 1e-3 * a.norm());
        // -X/(1-X) and X⁻¹/(1-X⁻¹) each contribute 1/(2ε) near x = 1 + ε
        assert!((b + q.ln() * 2.0).norm() < 1e-3);
    }

    #[test]
    fn three_routes_agree() {
        let (m, cfg) = setup();
        let e = StructureFunctionEval::at(c64(1.2, 0.0), &m, &cfg).unwrap();
        assert!(e.max_disagreement() < 1e-6, "{e:?}");
    }

    #[test]
    fn dy_dc_is_scalar() {
        let (m, cfg) = setup();
        let d = dy_dc_at_critical(c64(1.2, 0.0), &m, &cfg).unwrap();
        assert!(identity_defect(&d).0 < 1e-6);
    }
}
