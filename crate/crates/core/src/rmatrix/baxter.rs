use alloc::format;

use crate::config::ToleranceConfig;
use crate::error::{domain, singular, Result};
use crate::rmatrix::{ModularParams, SpectralPoint, TensorMatrix};
use crate::special::{abs, guarded_theta, pochhammer_log_derivative, pochhammer_ratio, qpochhammer};
use crate::{c64, C64};

/// Boltzmann weights `a, b, c, d` of the eight-vertex model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaxterEntries {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

/// `a = snh(λ-u)/snh(λ)`, `b = snh(u)/snh(λ)`, `c = 1`,
/// `d = k·snh(λ-u)·snh(u)`.
pub fn baxter_entries(sp: &SpectralPoint, params: &ModularParams, cfg: &ToleranceConfig) -> Result<BaxterEntries> {
    entries_at(sp.x, params, cfg)
}

/// Entries as functions of the multiplicative coordinate; `λ - u` maps to
/// `x_λ/x` with `x_λ = -1/q`.
pub(crate) fn entries_at(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<BaxterEntries> {
    if x == c64(0.0, 0.0) {
        return Err(domain("spectral parameter x = 0"));
    }
    let kern = params.snh_kernel();
    let xl = params.x_lambda();
    let snh_lambda = kern.eval(xl, cfg)?;
    if abs(snh_lambda) < cfg.pole_guard() {
        return Err(singular("snh(λ) vanishes"));
    }
    let s_u = kern.eval(x, cfg)?;
    let s_lu = kern.eval(xl / x, cfg)?;
    Ok(BaxterEntries {
        a: s_lu / snh_lambda,
        b: s_u / snh_lambda,
        c: c64(1.0, 0.0),
        d: params.modulus() * s_lu * s_u,
    })
}

/// `1/μ(x)`: the theta and double-product normalization
///
/// ```text
/// 1/μ(x)  = 1/κ(x²) · (p²;p²)/(p;p)² · Θ_{p²}(p x²) Θ_{p²}(q²) / Θ_{p²}(q² x²)
/// 1/κ(x²) = (q⁴x⁻²)(q²x²)(p x⁻²)(p q²x²) / ((q⁴x²)(q²x⁻²)(p x²)(p q²x⁻²))
/// ```
///
/// with every bracket a double product over bases `(p, q⁴)`.
pub fn inverse_mu(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<C64> {
    if x == c64(0.0, 0.0) {
        return Err(domain("spectral parameter x = 0"));
    }
    let (p, q) = (params.p(), params.q());
    let xx = x * x;
    let (q2, q4, p2) = (q * q, q * q * q * q, p * p);
    let b: &[C64] = &[p, q4];
    let inv_kappa = pochhammer_ratio(
        &[(q4 / xx, b), (q2 * xx, b), (p / xx, b), (p * q2 * xx, b)],
        &[(q4 * xx, b), (q2 / xx, b), (p * xx, b), (p * q2 / xx, b)],
        cfg,
        "1/κ",
    )?;
    let pp = qpochhammer(p, p, cfg)?;
    let p2p2 = qpochhammer(p2, p2, cfg)?;
    let theta_den = guarded_theta(q2 * xx, p2, cfg)?;
    if theta_den.min_factor < cfg.pole_guard() {
        return Err(singular(format!("Θ(q²x²) vanishes near x = {x}")));
    }
    let theta_num = guarded_theta(p * xx, p2, cfg)?.value * guarded_theta(q2, p2, cfg)?.value;
    Ok(inv_kappa * p2p2 / (pp * pp) * theta_num / theta_den.value)
}

/// Normalization factor `μ(x)`.
pub fn normalization_mu(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<C64> {
    let inv = inverse_mu(x, params, cfg)?;
    if abs(inv) < cfg.trunc_eps {
        return Err(singular(format!("μ has a pole near x = {x}")));
    }
    Ok(inv.inv())
}

/// Which formula [`tau_with`] evaluates. `DroppedInversePrefactor` omits the
/// leading `x⁻¹` and exists to show that the periodicity checks detect it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TauForm {
    #[default]
    Standard,
    DroppedInversePrefactor,
}

/// `τ(x) = x⁻¹ (q x²; q⁴)(q³x⁻²; q⁴) / ((q x⁻²; q⁴)(q³x²; q⁴))`.
pub fn tau(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<C64> {
    tau_with(x, params.q(), TauForm::Standard, cfg)
}

pub fn tau_with(x: C64, q: C64, form: TauForm, cfg: &ToleranceConfig) -> Result<C64> {
    if x == c64(0.0, 0.0) {
        return Err(domain("τ is singular at x = 0"));
    }
    let xx = x * x;
    let q3 = q * q * q;
    let q4 = q3 * q;
    let b: &[C64] = &[q4];
    let ratio = pochhammer_ratio(&[(q * xx, b), (q3 / xx, b)], &[(q / xx, b), (q3 * xx, b)], cfg, "τ")?;
    Ok(match form {
        TauForm::Standard => ratio / x,
        TauForm::DroppedInversePrefactor => ratio,
    })
}

/// `x·d/dx ln τ(x)` summed term by term from the product:
/// `-1 + 2L(q x²) - 2L(q³x⁻²) + 2L(q x⁻²) - 2L(q³x²)` with
/// `L(y) = y·d/dy ln (y; q⁴)_∞`.
pub fn tau_log_derivative(x: C64, q: C64, cfg: &ToleranceConfig) -> Result<C64> {
    let xx = x * x;
    let q3 = q * q * q;
    let q4 = q3 * q;
    let l = |y: C64| pochhammer_log_derivative(y, q4, cfg);
    Ok(c64(-1.0, 0.0) + (l(q * xx)? - l(q3 / xx)? + l(q / xx)? - l(q3 * xx)?) * 2.0)
}

/// `R₁₂(x) = μ(x)⁻¹ [[a,0,0,d],[0,b,c,0],[0,c,b,0],[d,0,0,a]]`.
pub fn r_matrix(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<TensorMatrix> {
    let e = entries_at(x, params, cfg)?;
    let o = c64(0.0, 0.0);
    let m = TensorMatrix::new([[e.a, o, o, e.d], [o, e.b, e.c, o], [o, e.c, e.b, o], [e.d, o, o, e.a]]);
    Ok(m.scale(inverse_mu(x, params, cfg)?))
}

/// `R⁺₁₂(x) = τ(q^{1/2} x⁻¹)·R₁₂(x)`.
pub fn rplus(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<TensorMatrix> {
    rplus_with(x, params, TauForm::Standard, cfg)
}

pub fn rplus_with(x: C64, params: &ModularParams, form: TauForm, cfg: &ToleranceConfig) -> Result<TensorMatrix> {
    let pref = tau_with(params.q_pow(0.5) / x, params.q(), form, cfg)?;
    Ok(r_matrix(x, params, cfg)?.scale(pref))
}

/// `R⁺*₁₂(x) = R⁺₁₂(x)` evaluated at the shifted nome `p·q^{-2c}`.
pub fn rplus_star(x: C64, c: f64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<TensorMatrix> {
    let shifted = params.star_shift(c, cfg)?;
    rplus(x, &shifted, cfg)
}
