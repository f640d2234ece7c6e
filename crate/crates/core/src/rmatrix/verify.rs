use crate::config::ToleranceConfig;
use crate::error::Result;
use crate::report::{relative_residual, CheckEntry, CheckReport, ParamsEcho};
use crate::rmatrix::baxter::{r_matrix, rplus_with, tau_with, TauForm};
use crate::rmatrix::{ModularParams, Pauli, Space, TensorMatrix};
use crate::sampling::{near_forbidden, Sampler};
use crate::special::abs;
use crate::{c64, C64};

pub const CHECK_NAMES: [&str; 7] = [
    "unitarity",
    "crossing",
    "antisymmetry",
    "quasi_periodicity",
    "transpose_inverse",
    "tau_periodicity",
    "yang_baxter",
];

/// Run the seven R-matrix identities over `samples` seeded spectral points.
pub fn verify_rmatrix_properties(params: &ModularParams, cfg: &ToleranceConfig, samples: usize, seed: u64) -> CheckReport {
    verify_rmatrix_properties_with(params, cfg, samples, seed, TauForm::Standard)
}

/// As [`verify_rmatrix_properties`], with a chosen `τ` formula feeding `R⁺`.
pub fn verify_rmatrix_properties_with(
    params: &ModularParams,
    cfg: &ToleranceConfig,
    samples: usize,
    seed: u64,
    form: TauForm,
) -> CheckReport {
    let mut report = CheckReport::new("rmatrix", ParamsEcho::new(Some(params), cfg), seed);
    let mut entries: [CheckEntry; 7] = CHECK_NAMES.map(|n| CheckEntry::new(n, cfg.test_tol));
    let mut sampler = Sampler::new(seed);
    for _ in 0..samples {
        let x = sampler.spectral_x(params);
        let y = loop {
            let y = sampler.spectral_x(params);
            if !near_forbidden(x * y, params) {
                break y;
            }
        };
        entries[0].record(unitarity(x, params, cfg));
        entries[1].record(crossing(x, params, cfg));
        entries[2].record(antisymmetry(x, params, cfg));
        entries[3].record(quasi_periodicity(x, params, form, cfg));
        entries[4].record(transpose_inverse(x, params, form, cfg));
        entries[5].record(tau_periodicity(x, params, form, cfg));
        entries[6].record(yang_baxter(x, y, params, cfg));
    }
    for e in entries {
        report.push(e);
    }
    report
}

fn r21(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<TensorMatrix> {
    Ok(r_matrix(x, params, cfg)?.permute_spaces())
}

/// `R₂₁(x⁻¹)·R₁₂(x) = 1`.
pub(crate) fn unitarity(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let lhs = r21(x.inv(), params, cfg)? * r_matrix(x, params, cfg)?;
    Ok(lhs.distance(&TensorMatrix::identity()))
}

/// `R₂₁(x⁻¹)^{t₁} = (σ¹⊗1)·R₁₂(-q⁻¹x)·(σ¹⊗1)`; `q⁻¹` is an integer power.
pub(crate) fn crossing(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let lhs = r21(x.inv(), params, cfg)?.partial_transpose(Space::One);
    let rhs = r_matrix(-x / params.q(), params, cfg)?.sigma_conjugate(Pauli::X, Space::One);
    Ok(lhs.distance(&rhs))
}

/// `R₁₂(-x) = -(σ³⊗1)·R₁₂(x)·(σ³⊗1)`.
pub(crate) fn antisymmetry(x: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let lhs = r_matrix(-x, params, cfg)?;
    let rhs = -r_matrix(x, params, cfg)?.sigma_conjugate(Pauli::Z, Space::One);
    Ok(lhs.distance(&rhs))
}

/// `R⁺₁₂(-p^{1/2}x) = (σ¹⊗1)·R⁺₂₁(x⁻¹)⁻¹·(σ¹⊗1)`.
pub(crate) fn quasi_periodicity(x: C64, params: &ModularParams, form: TauForm, cfg: &ToleranceConfig) -> Result<f64> {
    let lhs = rplus_with(-params.p_half() * x, params, form, cfg)?;
    let rhs = rplus_with(x.inv(), params, form, cfg)?
        .permute_spaces()
        .invert(cfg)?
        .sigma_conjugate(Pauli::X, Space::One);
    Ok(lhs.distance(&rhs))
}

/// `(R⁺(x)^{t₂})⁻¹ = (R⁺(q²x)⁻¹)^{t₂}`.
pub(crate) fn transpose_inverse(x: C64, params: &ModularParams, form: TauForm, cfg: &ToleranceConfig) -> Result<f64> {
    let q = params.q();
    let lhs = rplus_with(x, params, form, cfg)?.partial_transpose(Space::Two).invert(cfg)?;
    let rhs = rplus_with(q * q * x, params, form, cfg)?.invert(cfg)?.partial_transpose(Space::Two);
    Ok(lhs.distance(&rhs))
}

/// `τ(x) = τ(xq²)`.
pub(crate) fn tau_periodicity(x: C64, params: &ModularParams, form: TauForm, cfg: &ToleranceConfig) -> Result<f64> {
    let q = params.q();
    let a = tau_with(x, q, form, cfg)?;
    let b = tau_with(x * q * q, q, form, cfg)?;
    Ok(relative_residual(abs(a - b), abs(a), abs(b)))
}

type Mat8 = [[C64; 8]; 8];

/// Embed a two-site matrix into legs `(i, j)` of three sites, `i < j`.
fn embed(m: &TensorMatrix, legs: (usize, usize)) -> Mat8 {
    let bit = |idx: usize, leg: usize| (idx >> (2 - leg)) & 1;
    let mut out = [[c64(0.0, 0.0); 8]; 8];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, e) in row.iter_mut().enumerate() {
            let spectator = (0..3).filter(|l| *l != legs.0 && *l != legs.1).all(|l| bit(r, l) == bit(c, l));
            if spectator {
                let i = 2 * bit(r, legs.0) + bit(r, legs.1);
                let j = 2 * bit(c, legs.0) + bit(c, legs.1);
                *e = m.get(i, j);
            }
        }
    }
    out
}

fn mul8(a: &Mat8, b: &Mat8) -> Mat8 {
    let mut out = [[c64(0.0, 0.0); 8]; 8];
    for i in 0..8 {
        for k in 0..8 {
            for j in 0..8 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn max_abs8(m: &Mat8) -> f64 {
    m.iter().flatten().map(|e| abs(*e)).fold(0.0, f64::max)
}

/// `R₁₂(x)R₁₃(xy)R₂₃(y) = R₂₃(y)R₁₃(xy)R₁₂(x)`.
pub(crate) fn yang_baxter(x: C64, y: C64, params: &ModularParams, cfg: &ToleranceConfig) -> Result<f64> {
    let r12 = embed(&r_matrix(x, params, cfg)?, (0, 1));
    let r13 = embed(&r_matrix(x * y, params, cfg)?, (0, 2));
    let r23 = embed(&r_matrix(y, params, cfg)?, (1, 2));
    let lhs = mul8(&mul8(&r12, &r13), &r23);
    let rhs = mul8(&mul8(&r23, &r13), &r12);
    let mut diff = lhs;
    for (d, r) in diff.iter_mut().flatten().zip(rhs.iter().flatten()) {
        *d -= r;
    }
    Ok(relative_residual(max_abs8(&diff), max_abs8(&lhs), max_abs8(&rhs)))
}
