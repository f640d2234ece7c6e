//! The critical-level suite.

use alloc::vec::Vec;

use crate::center::derivative::{central, flatten, max_abs, max_diff, observed_order, richardson};
use crate::center::exchange::{m_entries, rcal_matrix, y_matrix, CriticalProbe, CRITICAL_LEVEL};
use crate::center::identities::{mu_inversion, mu_shift, snh_derivative, snh_difference_product, snh_ratio, MU_CHECKS, SNH_CHECKS};
use crate::center::structure::{identity_defect, structure_function_closed, structure_function_series, StructureFunctionEval};
use crate::config::ToleranceConfig;
use crate::error::Result;
use crate::report::{relative_residual, CheckEntry, CheckReport, ParamsEcho};
use crate::rmatrix::{entries_at, ModularParams, SpectralPoint, TensorMatrix};
use crate::sampling::Sampler;
use crate::special::abs;
use crate::{c64, C64};

/// Tolerance for derivative identities evaluated by differences in `c`.
pub const DERIVATIVE_TOL: f64 = 1e-7;
/// Tolerance for comparisons against the numeric `dY/dc` route.
pub const NUMERIC_ROUTE_TOL: f64 = 1e-6;
/// Offset from `c = -2` at which `Y = T·𝓡` is compared.
pub const OFF_CRITICAL: f64 = 1e-3;
/// Steps for the order-of-accuracy estimate, each half the previous.
pub const ORDER_STEPS: [f64; 3] = [0.02, 0.01, 0.005];
/// Relative distance of `x²` from the pole lattice required of points where
/// `c`-derivatives are taken by differences.
pub const DERIVATIVE_MARGIN: f64 = 0.1;
/// Allowed shortfall of an observed convergence order below its nominal value.
pub const ORDER_SLACK: f64 = 0.1;

const NAMES: [&str; 12] = [
    "critical_collapse_y",
    "critical_collapse_t",
    "critical_collapse_rcal",
    "factorization",
    "rcal_derivative",
    "m_offdiagonal_derivative",
    "m_diagonal_derivative",
    "derivative_order_central",
    "derivative_order_richardson",
    "structure_antisymmetry",
    "structure_closed_series",
    "structure_dy_dc",
];

/// Run every critical-level check over `samples` seeded points.
pub fn verify_center(params: &ModularParams, cfg: &ToleranceConfig, samples: usize, seed: u64) -> CheckReport {
    let tol = [
        cfg.test_tol,
        cfg.test_tol,
        cfg.test_tol,
        NUMERIC_ROUTE_TOL,
        DERIVATIVE_TOL,
        DERIVATIVE_TOL,
        DERIVATIVE_TOL,
        ORDER_SLACK,
        ORDER_SLACK,
        cfg.test_tol,
        cfg.test_tol,
        NUMERIC_ROUTE_TOL,
    ];
    let mut e: Vec<CheckEntry> = NAMES.iter().zip(tol).map(|(n, t)| CheckEntry::new(*n, t)).collect();
    let mut snh: Vec<CheckEntry> = SNH_CHECKS.iter().map(|n| CheckEntry::new(*n, cfg.test_tol)).collect();
    let mut mu: Vec<CheckEntry> = MU_CHECKS.iter().map(|n| CheckEntry::new(*n, cfg.test_tol)).collect();
    let mut sampler = Sampler::new(seed);
    for i in 0..samples {
        let x = sampler.spectral_x(params);
        match CriticalProbe::at(x, CRITICAL_LEVEL, params, cfg) {
            Ok(p) => {
                let r = p.collapse_residuals();
                for k in 0..3 {
                    e[k].record(Ok(r[k]));
                }
            }
            Err(err) => (0..3).for_each(|k| e[k].record(Err(err.clone()))),
        }
        let side = if i % 2 == 0 { OFF_CRITICAL } else { -OFF_CRITICAL };
        e[3].record(CriticalProbe::at(x, CRITICAL_LEVEL + side, params, cfg).map(|p| p.factorization_residual()));
        let xd = sampler.spectral_x_clear(params, DERIVATIVE_MARGIN);
        e[4].record(rcal_derivative(xd, params, cfg));
        match m_derivatives(xd, params, cfg) {
            Ok((off, diag)) => {
                e[5].record(Ok(off));
                e[6].record(Ok(diag));
            }
            Err(err) => (5..7).for_each(|k| e[k].record(Err(err.clone()))),
        }
        if i < ORDER_POINTS {
            match derivative_orders(xd, params, cfg) {
                Ok([plain, rich]) => {
                    e[7].record(Ok((2.0 - plain).max(0.0)));
                    e[8].record(Ok((4.0 - rich).max(0.0)));
                }
                Err(err) => (7..9).for_each(|k| e[k].record(Err(err.clone()))),
            }
        }
        let z = sampler.annulus_x(params);
        e[9].record(structure_antisymmetry(z, params, cfg));
        e[10].record(structure_closed_series(z, params, cfg));
        e[11].record(structure_dy_dc(z, params, cfg));
        let (u, v, a) = sampler.snh_triple(params);
        snh[0].record(snh_difference_product(u, v, a, params, cfg));
        snh[1].record(snh_ratio(u, v, a, params, cfg));
        snh[2].record(snh_derivative(u, v, params, cfg));
        let w = SpectralPoint::from_x(sampler.spectral_x(params), params).map(|s| s.u);
        mu[0].record(w.clone().and_then(|w| mu_inversion(w, params, cfg)));
        mu[1].record(w.and_then(|w| mu_shift(w, params, cfg)));
    }
    let mut report = CheckReport::new("center", ParamsEcho::new(Some(params), cfg), seed);
    e.into_iter().chain(snh).chain(mu).for_each(|c| report.push(c));
    report
}

/// Points used for the (more expensive) order-of-accuracy estimate.
const ORDER_POINTS: usize = 5;

/// `‖d𝓡/dc‖` at `c = -2`.
pub(crate) fn rcal_derivative(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let f = |c: f64| Ok(flatten(&rcal_matrix(x, c, params, cfg)?));
    Ok(max_abs(&richardson(&f, CRITICAL_LEVEL, cfg.diff_step)?))
}

/// `x·d/dx b(y)²` at `y`, from the analytic log-derivative of `snh`.
fn x_dx_b_squared(y: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<C64> {
    let b = entries_at(y, params, cfg)?.b;
    Ok(b * b * params.snh_kernel().log_derivative(y, cfg)? * 2.0)
}

/// `ln q·[(1 - b(u+λ)²)·x∂ₓb(u)² - (1 - b(u)²)·x∂ₓb(u+λ)²]`.
pub fn m_diagonal_derivative_closed(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<C64> {
    let xs = x * params.x_lambda();
    let b = entries_at(x, params, cfg)?.b;
    let bs = entries_at(xs, params, cfg)?.b;
    let one = c64(1.0, 0.0);
    let bracket = (one - bs * bs) * x_dx_b_squared(x, params, cfg)? - (one - b * b) * x_dx_b_squared(xs, params, cfg)?;
    Ok(params.q().ln() * bracket)
}

/// Residuals of the entry pattern of `dM/dc` at `c = -2`:
/// `(max(|dm₂₁|, |dm₂₂|), max(|dm₁₁ - dm₁₂|, |dm₁₁ - closed form|))`,
/// both relative to the size of the entries.
pub(crate) fn m_derivatives(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<(f64, f64)> {
    let f = |c: f64| Ok(m_entries(x, c, params, cfg)?.to_array());
    let d = richardson(&f, CRITICAL_LEVEL, cfg.diff_step)?;
    let scale = max_abs(&f(CRITICAL_LEVEL)?).max(max_abs(&d));
    let closed = m_diagonal_derivative_closed(x, params, cfg)?;
    let off = relative_residual(abs(d[2]).max(abs(d[3])), scale, 0.0);
    let diag = relative_residual(abs(d[0] - d[1]).max(abs(d[0] - closed)), scale, abs(closed));
    Ok((off, diag))
}

/// Observed orders of the plain and extrapolated differences of `Y`
/// against `f·1`, over the steps in [`ORDER_STEPS`].
pub fn derivative_orders(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<[f64; 2]> {
    let f = structure_function_closed(x, params, cfg)?;
    let exact = flatten(&TensorMatrix::identity().scale(f));
    let y = |c: f64| Ok(flatten(&y_matrix(x, c, params, cfg)?));
    let mut plain = [0.0; 3];
    let mut rich = [0.0; 3];
    for (k, h) in ORDER_STEPS.iter().enumerate() {
        plain[k] = max_diff(&central(&y, CRITICAL_LEVEL, *h)?, &exact);
        rich[k] = max_diff(&richardson(&y, CRITICAL_LEVEL, *h)?, &exact);
    }
    Ok([observed_order(&plain), observed_order(&rich)])
}

/// `f(x⁻¹) = -f(x)`.
pub(crate) fn structure_antisymmetry(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let a = structure_function_closed(x, params, cfg)?;
    let b = structure_function_closed(x.inv(), params, cfg)?;
    Ok(relative_residual(abs(a + b), abs(a), abs(b)))
}

pub(crate) fn structure_closed_series(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let a = structure_function_closed(x, params, cfg)?;
    let b = structure_function_series(x, params, cfg)?;
    Ok(relative_residual(abs(a - b), abs(a), abs(b)))
}

/// Largest of: distance of `dY/dc` from a multiple of the identity, and
/// disagreement of that multiple with the closed and series forms.
pub(crate) fn structure_dy_dc(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let (ev, dy) = StructureFunctionEval::with_derivative(x, params, cfg)?;
    let (defect, _) = identity_defect(&dy);
    let [_, cn, sn] = ev.residuals();
    Ok(relative_residual(defect, abs(ev.f_numeric), 0.0).max(cn).max(sn))
}
