//! The exchange matrix `Y` near the critical level and its factorization.

use crate::config::ToleranceConfig;
use crate::error::{singular, Result};
use crate::rmatrix::{entries_at, inverse_mu, r_matrix, rplus, tau, ModularParams, Space, TensorMatrix};
use crate::special::abs;
use crate::{c64, C64};

/// Critical value of the level.
pub const CRITICAL_LEVEL: f64 = -2.0;

/// `Y(x) = ((R⁺(x⁻¹)·R⁺(q^{c+2}x⁻¹)⁻¹·R⁺(x)⁻¹)^{t₂}·R⁺(q^c x)^{t₂})^{t₂}`.
pub fn y_matrix(x: C64, c: f64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<TensorMatrix> {
    let xi = x.inv();
    let inner = rplus(xi, params, cfg)?
        * rplus(params.q_pow(c + 2.0) * xi, params, cfg)?.invert(cfg)?
        * rplus(x, params, cfg)?.invert(cfg)?;
    let outer = inner.partial_transpose(Space::Two) * rplus(params.q_pow(c) * x, params, cfg)?.partial_transpose(Space::Two);
    Ok(outer.partial_transpose(Space::Two))
}

/// `T(x) = τ(x q^{-1/2})·τ(q^{c-1/2} x⁻¹) / (τ(x q^{c+3/2})·τ(q^{-1/2} x⁻¹))`.
pub fn t_prefactor(x: C64, c: f64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<C64> {
    let xi = x.inv();
    let num = tau(x * params.q_pow(-0.5), params, cfg)? * tau(params.q_pow(c - 0.5) * xi, params, cfg)?;
    let den = tau(x * params.q_pow(c + 1.5), params, cfg)? * tau(params.q_pow(-0.5) * xi, params, cfg)?;
    if abs(den) < cfg.trunc_eps {
        return Err(singular("T: τ factor in the denominator vanishes"));
    }
    Ok(num / den)
}

/// The four distinct entries of `M`, each a polynomial in the bare
/// weights at `x q^c`, `x q^{-c-2}`, `x⁻¹` and `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MEntries {
    pub m11: C64,
    pub m12: C64,
    pub m21: C64,
    pub m22: C64,
}

impl MEntries {
    pub(crate) fn to_array(self) -> [C64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }
}

pub fn m_entries(x: C64, c: f64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<MEntries> {
    let ec = entries_at(x * params.q_pow(c), params, cfg)?;
    let em = entries_at(x * params.q_pow(-c - 2.0), params, cfg)?;
    let ei = entries_at(x.inv(), params, cfg)?;
    let e = entries_at(x, params, cfg)?;
    let one = c64(1.0, 0.0);
    let (ac, am, ai) = (ec.a, em.a, ei.a);
    let (bc, bm, b) = (ec.b, em.b, e.b);
    let (dc, dm, di) = (ec.d, em.d, ei.d);
    Ok(MEntries {
        m11: ac * am * ai * ai + ac * ai * dm * di * 2.0 + ac * am * di * di - bm * b * 2.0 + b * b + one,
        m22: am * ai * ai + ai * dm * di * 2.0 + am * di * di - ac * bm * b * 2.0 + ac * b * b + ac,
        m12: ai * ai * dc * dm + am * ai * dc * di * 2.0 + bc * bm * b * b - bc * b * 2.0 + bc * bm + dc * dm * di * di,
        m21: ai * ai * bc * dm + am * ai * bc * di * 2.0 + bm * b * b * dc - b * dc * 2.0 + bm * dc + bc * dm * di * di,
    })
}

/// `M` in the eight-vertex pattern: `m₁₁` on the outer diagonal, `m₁₂` on
/// the inner diagonal, `m₂₁` in the corners and `m₂₂` on the inner
/// anti-diagonal.
pub fn m_matrix(x: C64, c: f64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<TensorMatrix> {
    let m = m_entries(x, c, params, cfg)?;
    let o = c64(0.0, 0.0);
    Ok(TensorMatrix::new([
        [m.m11, o, o, m.m21],
        [o, m.m12, m.m22, o],
        [o, m.m22, m.m12, o],
        [m.m21, o, o, m.m11],
    ]))
}

/// `1/(μ(xq^c)·μ(xq^{-c-2})·μ(x⁻¹)²)`.
pub(crate) fn inverse_mu_product(x: C64, c: f64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<C64> {
    let f = inverse_mu(x * params.q_pow(c), params, cfg)?
        * inverse_mu(x * params.q_pow(-c - 2.0), params, cfg)?
        * inverse_mu(x.inv(), params, cfg)?.powi(2);
    Ok(f)
}

/// `𝓡 = M / (μ(xq^c)·μ(xq^{-c-2})·μ(x⁻¹)²)`.
pub fn rcal_matrix(x: C64, c: f64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<TensorMatrix> {
    Ok(m_matrix(x, c, params, cfg)?.scale(inverse_mu_product(x, c, params, cfg)?))
}

/// `𝓡` assembled from normalized R-matrices:
/// `((R(x⁻¹)·R(xq^{-c-2})·R(x⁻¹))^{t₂}·R(xq^c)^{t₂})^{t₂}`.
pub fn rcal_from_products(x: C64, c: f64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<TensorMatrix> {
    let ri = r_matrix(x.inv(), params, cfg)?;
    let inner = ri * r_matrix(x * params.q_pow(-c - 2.0), params, cfg)? * ri;
    let outer = inner.partial_transpose(Space::Two) * r_matrix(x * params.q_pow(c), params, cfg)?.partial_transpose(Space::Two);
    Ok(outer.partial_transpose(Space::Two))
}

/// `Y`, `T` and `𝓡` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalProbe {
    pub x: C64,
    pub c: f64,
    pub y: TensorMatrix,
    pub t: C64,
    pub rcal: TensorMatrix,
}

impl CriticalProbe {
    pub fn at(x: C64, c: f64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<Self> {
        Ok(Self {
            x,
            c,
            y: y_matrix(x, c, params, cfg)?,
            t: t_prefactor(x, c, params, cfg)?,
            rcal: rcal_matrix(x, c, params, cfg)?,
        })
    }

    /// `‖Y - 1‖`, `|T - 1|`, `‖𝓡 - 1‖` (max-entry norms).
    pub fn collapse_residuals(&self) -> [f64; 3] {
        let one = TensorMatrix::identity();
        [(self.y - one).max_abs(), abs(self.t - 1.0), (self.rcal - one).max_abs()]
    }

    /// Relative distance between `Y` and `T·𝓡`.
    pub fn factorization_residual(&self) -> f64 {
        self.y.distance(&self.rcal.scale(self.t))
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
    fn collapse_at_critical_level() {
        let (m, cfg) = setup();
        let probe = CriticalProbe::at(c64(1.2, 0.0), CRITICAL_LEVEL, &m, &cfg).unwrap();
        for r in probe.collapse_residuals() {
            assert!(r < 1e-9, "{r}");
        }
    }

    #[test]
    fn t_times_reflected_t_at_critical() {
        let (m, cfg) = setup();
        let x = c64(1.2, 0.1);
        let a = t_prefactor(x, -2.0, &m, &cfg).unwrap();
        let b = t_prefactor(x.inv(), -2.0, &m, &cfg).unwrap();
        assert!((a * b - 1.0).norm() < 1e-12);
    }

    #[test]
    fn y_departs_linearly_from_identity() {
        let (m, cfg) = setup();
        let x = c64(1.2, 0.0);
        let dev = |h: f64| (y_matrix(x, -2.0 + h, &m, &cfg).unwrap() - TensorMatrix::identity()).max_abs();
        let (a, b) = (dev(1e-3), dev(5e-4));
        assert!(a > 1e-6 && a < 1e-1, "{a}");
        assert!(((a / b) - 2.0).abs() < 1e-2);
    }

    #[test]
    fn factorization_off_critical() {
        let (m, cfg) = setup();
        for c in [-2.001, -1.999, -2.1, -1.7] {
            let probe = CriticalProbe::at(c64(1.1, 0.2), c, &m, &cfg).unwrap();
            assert!(probe.factorization_residual() < 1e-10, "c = {c}: {}", probe.factorization_residual());
        }
    }

    #[test]
    fn normalized_m_matches_product_form() {
        let (m, cfg) = setup();
        let x = c64(1.05, -0.3);
        for c in [-2.0, -1.9, -2.3] {
            let a = rcal_matrix(x, c, &m, &cfg).unwrap();
            let b = rcal_from_products(x, c, &m, &cfg).unwrap();
            assert!(a.distance(&b) < 1e-12, "{}", a.distance(&b));
        }
    }

    #[test]
    fn m_pattern_is_space_symmetric() {
        let (m, cfg) = setup();
        let mm = m_matrix(c64(1.1, 0.0), -1.9, &m, &cfg).unwrap();
        assert_eq!(mm.permute_spaces(), mm);
    }
}
