//! Pointwise `snh` and `μ` identities.

use core::f64::consts::PI;

use crate::config::ToleranceConfig;
use crate::error::{singular, Result};
use crate::report::{relative_residual, CheckEntry, CheckReport, ParamsEcho};
use crate::rmatrix::{entries_at, normalization_mu, ModularParams, SpectralPoint};
use crate::special::abs;
use crate::{c64, C64};

/// Below this separation the derivative identity switches to its `u = v` limit.
const COINCIDENCE: f64 = 1e-6;

pub const SNH_CHECKS: [&str; 3] = ["snh_difference_product", "snh_ratio", "snh_derivative"];
pub const MU_CHECKS: [&str; 2] = ["mu_inversion", "mu_shift"];

fn snh_u(u: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<C64> {
    params.snh_kernel().eval(SpectralPoint::from_u(u, params).x, cfg)
}

/// `d/du ln snh(u)`.
fn snh_log_derivative_u(u: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<C64> {
    let x = SpectralPoint::from_u(u, params).x;
    Ok(params.snh_kernel().log_derivative(x, cfg)? * PI / (params.big_k() * 2.0))
}

fn ratio_residual(lhs: C64, rhs: C64) -> f64 {
    relative_residual(abs(lhs - rhs), abs(lhs), abs(rhs))
}

fn nonzero(z: C64, what: &str, cfg: &ToleranceConfig) -> Result<C64> {
    if abs(z) < cfg.pole_guard() {
        return Err(singular(alloc::format!("{what} vanishes")));
    }
    Ok(z)
}

/// `(snh(a-u)snh(a-v) - snh(u)snh(v)) / (1 - k²snh(u)snh(v)snh(a-u)snh(a-v)) = snh(a-u-v)snh(a)`.
pub(crate) fn snh_difference_product(u: C64, v: C64, a: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let s = |z: C64| snh_u(z, params, cfg);
    let (su, sv, sau, sav) = (s(u)?, s(v)?, s(a - u)?, s(a - v)?);
    let k2 = params.modulus() * params.modulus();
    let den = nonzero(c64(1.0, 0.0) - k2 * su * sv * sau * sav, "1 - k²·snh product", cfg)?;
    let lhs = (sau * sav - su * sv) / den;
    Ok(ratio_residual(lhs, s(a - u - v)? * s(a)?))
}

/// `(snh(u)snh(a-u) - snh(v)snh(a-v)) / (snh(u)snh(a-v) - snh(v)snh(a-u)) = snh(a-u-v)/snh(a)`.
pub(crate) fn snh_ratio(u: C64, v: C64, a: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let s = |z: C64| snh_u(z, params, cfg);
    let (su, sv, sau, sav) = (s(u)?, s(v)?, s(a - u)?, s(a - v)?);
    let den = nonzero(su * sav - sv * sau, "snh(u)snh(a-v) - snh(v)snh(a-u)", cfg)?;
    let lhs = (su * sau - sv * sav) / den;
    Ok(ratio_residual(lhs, s(a - u - v)? / nonzero(s(a)?, "snh(a)", cfg)?))
}

/// `(snh(u)snh'(v) - snh(v)snh'(u)) / (snh²(u) - snh²(v)) = 1/snh(u+v)`.
///
/// For `u ≈ v` the left side is replaced by its limit `-L'(u)/2L(u)` with
/// `L = snh'/snh`, `L'` from a Richardson central difference.
pub(crate) fn snh_derivative(u: C64, v: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let s = |z: C64| snh_u(z, params, cfg);
    let l = |z: C64| snh_log_derivative_u(z, params, cfg);
    let rhs = nonzero(s(u + v)?, "snh(u+v)", cfg)?.inv();
    let lhs = if abs(u - v) < COINCIDENCE {
        // scaled to the distance from the zero of snh at u = 0
        let h = 1e-3 * abs(u).clamp(1e-3, 1.0);
        let d = |h: f64| -> Result<C64> { Ok((l(u + h)? - l(u - h)?) / (2.0 * h)) };
        let dl = (d(h / 2.0)? * 4.0 - d(h)?) / 3.0;
        -dl / (nonzero(l(u)?, "snh'/snh", cfg)? * 2.0)
    } else {
        let (su, sv) = (s(u)?, s(v)?);
        let num = su * sv * (l(v)? - l(u)?);
        num / nonzero(su * su - sv * sv, "snh²(u) - snh²(v)", cfg)?
    };
    Ok(ratio_residual(lhs, rhs))
}

/// Residuals of the three `snh` relations at one triple.
pub fn check_snh_identities(u: C64, v: C64, a: C64, params: &ModularParams, cfg: &ToleranceConfig) -> CheckReport {
    let mut report = CheckReport::new("snh", ParamsEcho::new(Some(params), cfg), 0);
    let results = [
        snh_difference_product(u, v, a, params, cfg),
        snh_ratio(u, v, a, params, cfg),
        snh_derivative(u, v, params, cfg),
    ];
    for (name, r) in SNH_CHECKS.iter().zip(results) {
        let mut e = CheckEntry::new(*name, cfg.test_tol);
        e.record(r);
        report.push(e);
    }
    report
}

/// `μ(x)μ(x⁻¹) = 1 - b(u)²`.
pub(crate) fn mu_inversion(u: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let x = SpectralPoint::from_u(u, params).x;
    let b = entries_at(x, params, cfg)?.b;
    let lhs = normalization_mu(x, params, cfg)? * normalization_mu(x.inv(), params, cfg)?;
    Ok(ratio_residual(lhs, c64(1.0, 0.0) - b * b))
}

/// `μ(x)/μ(xq⁻²) = (1 - b(u)²)/(1 - b(u+λ)²)`.
pub(crate) fn mu_shift(u: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let x = SpectralPoint::from_u(u, params).x;
    let q = params.q();
    let b = entries_at(x, params, cfg)?.b;
    let b_shift = entries_at(x * params.x_lambda(), params, cfg)?.b;
    let den_mu = nonzero(normalization_mu(x / (q * q), params, cfg)?, "μ(xq⁻²)", cfg)?;
    let lhs = normalization_mu(x, params, cfg)? / den_mu;
    let den = nonzero(c64(1.0, 0.0) - b_shift * b_shift, "1 - b(u+λ)²", cfg)?;
    Ok(ratio_residual(lhs, (c64(1.0, 0.0) - b * b) / den))
}

/// Residuals of the two `μ` relations at one point.
pub fn check_mu_identities(u: C64, params: &ModularParams, cfg: &ToleranceConfig) -> CheckReport {
    let mut report = CheckReport::new("mu", ParamsEcho::new(Some(params), cfg), 0);
    for (name, r) in MU_CHECKS.iter().zip([mu_inversion(u, params, cfg), mu_shift(u, params, cfg)]) {
        let mut e = CheckEntry::new(*name, cfg.test_tol);
        e.record(r);
        report.push(e);
    }
    report
}
