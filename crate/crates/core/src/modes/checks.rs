//! Consistency checks for the bracket family.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // resolved through std when it is linked
use num_traits::Float;

use crate::center::structure_function_closed_q;
use crate::config::ToleranceConfig;
use crate::error::{domain, singular, Result};
use crate::modes::family::{bracket_with, poisson_bracket, structure_generator, BracketFamily};
use crate::modes::polynomial::{Coefficient, ModePolynomial};
use crate::report::{relative_residual, CheckEntry, CheckReport, ParamsEcho};
use crate::sampling::Sampler;
use crate::special::{abs, contour_coefficient};
use crate::{c64, C64};

/// Tolerance for the telescoping identity.
pub const TELESCOPING_TOL: f64 = 1e-12;
/// Tolerance for symmetrized contour coefficients against `F_k(s)`.
pub const CONTOUR_TOL: f64 = 1e-8;
/// Tolerance of checks that must hold with no rounding at all.
pub const EXACT: f64 = f64::MIN_POSITIVE;

/// `F_k(s) - F_{k-1}(s) + (-1)^k·2 ln q·(q^{2ks} - q^{-2ks})` for
/// `1 ≤ k ≤ fam.k`, relative to the size of the terms.
pub fn check_telescoping(fam: &BracketFamily, s: i64) -> CheckReport {
    let cfg = ToleranceConfig::default();
    let mut entry = CheckEntry::new("telescoping", TELESCOPING_TOL);
    for k in 1..=fam.k {
        entry.record(telescoping_residual(fam, k, s));
    }
    let mut report = CheckReport::new("modes", ParamsEcho::with_q(fam.q, &cfg), 0);
    report.push(entry);
    report
}

fn telescoping_residual(fam: &BracketFamily, k: u32, s: i64) -> Result<f64> {
    let fk = fam.in_sector(k).f_coefficient(s)?;
    let fk1 = fam.in_sector(k - 1).f_coefficient(s)?;
    let e = (2 * k as i64 * s) as i32;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let step = fam.q.ln() * (2.0 * sign) * (fam.q.powi(e) - fam.q.powi(-e));
    let scale = abs(fk).max(abs(fk1)).max(abs(step));
    Ok(relative_residual(abs(fk - fk1 + step), scale, 0.0))
}

/// Cyclic sum `f(z/w)[f(z/v) + f(w/v)] + f(w/v)[f(w/z) + f(v/z)] + f(v/z)[f(v/w) + f(z/w)]`
/// divided by the sum of the moduli of its six products.
pub fn jacobi_functional_residual(z: C64, w: C64, v: C64, f: &dyn Fn(C64) -> Result<C64>) -> Result<f64> {
    let (zw, zv, wv, wz, vz, vw) = (f(z / w)?, f(z / v)?, f(w / v)?, f(w / z)?, f(v / z)?, f(v / w)?);
    let products = [zw * zv, zw * wv, wv * wz, wv * vz, vz * vw, vz * zw];
    let scale: f64 = products.iter().map(|p| abs(*p)).sum();
    let total: C64 = products.iter().sum();
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(abs(total) / scale)
}

/// Functional Jacobi identity for `{t(z), t(w)} = f(z/w)·t(z)t(w)` at one triple.
pub fn check_jacobi_functional(z: C64, w: C64, v: C64, f: &dyn Fn(C64) -> Result<C64>, cfg: &ToleranceConfig) -> CheckReport {
    let mut entry = CheckEntry::new("jacobi_functional", cfg.test_tol);
    entry.record(jacobi_functional_residual(z, w, v, f));
    let mut report = CheckReport::new("modes", ParamsEcho::new(None, cfg), 0);
    report.push(entry);
    report
}

/// Moduli `|q|^j` at which the structure function has poles, for `|j| ≤ span`.
fn pole_radii(q: C64, span: i32) -> Vec<f64> {
    (-span..=span).map(|j| abs(q).powi(j)).collect()
}

/// `(c_s(r) + c_s(1/r))/2`, the Laurent coefficient of `x^{2s}` in `f`
/// averaged over the circles `|x| = r` and `|x| = 1/r`.
pub fn symmetrized_contour_coefficient(fam: &BracketFamily, s: i64, radius: f64, cfg: &ToleranceConfig) -> Result<C64> {
    let aq = abs(fam.q);
    let (lo, hi) = (aq.powi(-(fam.k as i32)), aq.powi(-(fam.k as i32) - 1));
    if !(radius > lo && radius < hi) {
        return Err(domain(alloc::format!("radius {radius} outside sector {} = ({lo}, {hi})", fam.k)));
    }
    let poles = pole_radii(fam.q, fam.k as i32 + 2);
    let f = |x: C64| structure_function_closed_q(x, fam.q, cfg);
    let outer = contour_coefficient(f, radius, s, &poles, cfg)?;
    let inner = contour_coefficient(f, 1.0 / radius, s, &poles, cfg)?;
    Ok((outer + inner) / 2.0)
}

/// Geometric middle of sector `k`, `|q|^{-k-1/2}`.
pub fn sector_radius(fam: &BracketFamily) -> f64 {
    abs(fam.q).powf(-(fam.k as f64) - 0.5)
}

/// Symmetrized contour coefficient of `f` against `F_k(s)` on `|x| = radius`.
pub fn check_contour_match(fam: &BracketFamily, s: i64, radius: f64, cfg: &ToleranceConfig) -> CheckReport {
    let mut entry = CheckEntry::new("contour_match", CONTOUR_TOL);
    entry.record(contour_residual(fam, s, radius, cfg));
    let mut report = CheckReport::new("modes", ParamsEcho::with_q(fam.q, cfg), 0);
    report.push(entry);
    report
}

fn contour_residual(fam: &BracketFamily, s: i64, radius: f64, cfg: &ToleranceConfig) -> Result<f64> {
    let c = symmetrized_contour_coefficient(fam, s, radius, cfg)?;
    let f = fam.f_coefficient(s)?;
    Ok(relative_residual(abs(c - f), abs(c), abs(f)))
}

/// Parameters of the mode suite.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModeSuiteConfig {
    /// Largest sector in the telescoping check.
    pub k_max: u32,
    /// Largest sector in the bracket and contour checks.
    pub bracket_k_max: u32,
    pub s_cutoff: i64,
    /// Random polynomials use modes with `|n|` up to this.
    pub input_window: i64,
    pub contour_s_max: i64,
}

impl Default for ModeSuiteConfig {
    fn default() -> Self {
        Self { k_max: 4, bracket_k_max: 2, s_cutoff: 8, input_window: 10, contour_s_max: 5 }
    }
}

impl ModeSuiteConfig {
    /// Window wide enough for two nested brackets of the random inputs.
    pub fn window(&self) -> i64 {
        self.input_window + 4 * self.s_cutoff
    }
}

const NAMES: [&str; 9] = [
    "antisymmetry",
    "antisymmetry_integer",
    "leibniz",
    "leibniz_integer",
    "jacobi_integer",
    "parity",
    "telescoping",
    "jacobi_functional",
    "contour_match",
];

/// The bracket suite at deformation parameter `q`.
pub fn verify_modes(q: C64, suite: &ModeSuiteConfig, cfg: &ToleranceConfig, samples: usize, seed: u64) -> CheckReport {
    let tol = [EXACT, EXACT, cfg.test_tol, EXACT, EXACT, EXACT, TELESCOPING_TOL, cfg.test_tol, CONTOUR_TOL];
    let mut e: Vec<CheckEntry> = NAMES.iter().zip(tol).map(|(n, t)| CheckEntry::new(*n, t)).collect();
    let mut report = CheckReport::new("modes", ParamsEcho::with_q(q, cfg), seed);
    let base = match BracketFamily::new(0, q, suite.s_cutoff, suite.window()) {
        Ok(f) => f,
        Err(err) => {
            for mut c in e {
                c.record(Err(err.clone()));
                report.push(c);
            }
            return report;
        }
    };
    let mut sampler = Sampler::new(seed);
    for k in 0..=suite.bracket_k_max {
        let fam = base.in_sector(k);
        let ints = integer_constants(&mut sampler, suite.s_cutoff);
        let int_gen = |n: i64, m: i64| structure_generator(n, m, suite.s_cutoff, fam.window, |s| ints[(s + suite.s_cutoff) as usize]);
        for _ in 0..samples {
            let (p, r, t) = (
                random_polynomial(&mut sampler, suite.input_window),
                random_polynomial(&mut sampler, suite.input_window),
                random_polynomial(&mut sampler, suite.input_window),
            );
            e[0].record(antisymmetry_residual(&p, &r, &|a, b| poisson_bracket(a, b, &fam)));
            e[2].record(leibniz_residual(&p, &r, &t, &fam));
            e[5].record(parity_residual(&p, &r, &fam));
            let (pi, ri, ti) = (integer_image(&p), integer_image(&r), integer_image(&t));
            let ib = |a: &ModePolynomial<i64>, b: &ModePolynomial<i64>| bracket_with(a, b, int_gen);
            e[1].record(antisymmetry_residual(&pi, &ri, &ib));
            e[3].record(integer_leibniz(&pi, &ri, &ti, &ib));
            e[4].record(integer_jacobi(&pi, &ri, &ti, &ib));
        }
        if k <= suite.bracket_k_max {
            for s in -suite.contour_s_max..=suite.contour_s_max {
                e[8].record(contour_residual(&fam, s, sector_radius(&fam), cfg));
            }
        }
    }
    for k in 1..=suite.k_max {
        for s in -suite.s_cutoff..=suite.s_cutoff {
            e[6].record(telescoping_residual(&base.in_sector(k), k, s));
        }
    }
    let kernels: Vec<BracketFamily> = (0..=suite.bracket_k_max).map(|k| base.in_sector(k)).collect();
    for _ in 0..samples {
        let (z, w, v) = sampler.jacobi_triple();
        let closed = |x: C64| structure_function_closed_q(x, q, cfg);
        e[7].record(jacobi_functional_residual(z, w, v, &closed));
        for fam in &kernels {
            e[7].record(jacobi_functional_residual(z, w, v, &|x| Ok(fam.kernel(x))));
        }
    }
    e.into_iter().for_each(|c| report.push(c));
    report
}

/// One to three terms of degree one or two, complex coefficients in the unit square.
pub(crate) fn random_polynomial(sampler: &mut Sampler, window: i64) -> ModePolynomial<C64> {
    let half = window / 2;
    let terms = 1 + sampler.index(3);
    let list: Vec<(Vec<i64>, C64)> = (0..terms)
        .map(|_| {
            let degree = 1 + sampler.index(2);
            let mono = (0..degree).map(|_| 2 * sampler.int(-half, half)).collect();
            (mono, c64(sampler.uniform(-1.0, 1.0), sampler.uniform(-1.0, 1.0)))
        })
        .collect();
    ModePolynomial::from_terms(list).expect("even indices by construction")
}

/// Same monomials with small integer coefficients derived from the real parts.
fn integer_image(p: &ModePolynomial<C64>) -> ModePolynomial<i64> {
    p.map(|c| (c.re * 9.0).round() as i64 + 1)
}

/// Antisymmetric integer structure constants indexed by `s + s_cutoff`.
fn integer_constants(sampler: &mut Sampler, s_cutoff: i64) -> Vec<i64> {
    let mut f = vec![0i64; (2 * s_cutoff + 1) as usize];
    for s in 1..=s_cutoff {
        let v = sampler.int(-9, 9);
        f[(s_cutoff + s) as usize] = v;
        f[(s_cutoff - s) as usize] = -v;
    }
    f
}

fn max_coefficient<C: Coefficient>(p: &ModePolynomial<C>, size: impl Fn(&C) -> f64) -> f64 {
    p.terms().map(|(_, c)| size(c)).fold(0.0, f64::max)
}

trait Size {
    fn size(&self) -> f64;
}

impl Size for C64 {
    fn size(&self) -> f64 {
        abs(*self)
    }
}

impl Size for i64 {
    fn size(&self) -> f64 {
        self.unsigned_abs() as f64
    }
}

type Bracket<'a, C> = dyn Fn(&ModePolynomial<C>, &ModePolynomial<C>) -> Result<ModePolynomial<C>> + 'a;

/// Largest coefficient of `{P, Q} + {Q, P}`.
fn antisymmetry_residual<C: Coefficient + Size>(p: &ModePolynomial<C>, q: &ModePolynomial<C>, bracket: &Bracket<'_, C>) -> Result<f64> {
    let sum = &bracket(p, q)? + &bracket(q, p)?;
    Ok(max_coefficient(&sum, C::size))
}

/// `{P·Q, R} - P·{Q, R} - Q·{P, R}`, relative to the largest coefficient involved.
fn leibniz_residual(p: &ModePolynomial<C64>, q: &ModePolynomial<C64>, r: &ModePolynomial<C64>, fam: &BracketFamily) -> Result<f64> {
    let lhs = poisson_bracket(&(p * q), r, fam)?;
    let a = p * &poisson_bracket(q, r, fam)?;
    let b = q * &poisson_bracket(p, r, fam)?;
    let diff = &(&lhs - &a) - &b;
    let scale = max_coefficient(&lhs, C64::size).max(max_coefficient(&a, C64::size)).max(max_coefficient(&b, C64::size));
    Ok(relative_residual(max_coefficient(&diff, C64::size), scale, 0.0))
}

fn integer_leibniz(
    p: &ModePolynomial<i64>,
    q: &ModePolynomial<i64>,
    r: &ModePolynomial<i64>,
    bracket: &Bracket<'_, i64>,
) -> Result<f64> {
    let lhs = bracket(&(p * q), r)?;
    let rhs = &(p * &bracket(q, r)?) + &(q * &bracket(p, r)?);
    Ok(max_coefficient(&(&lhs - &rhs), i64::size))
}

fn integer_jacobi(
    p: &ModePolynomial<i64>,
    q: &ModePolynomial<i64>,
    r: &ModePolynomial<i64>,
    bracket: &Bracket<'_, i64>,
) -> Result<f64> {
    let a = bracket(&bracket(p, q)?, r)?;
    let b = bracket(&bracket(q, r)?, p)?;
    let c = bracket(&bracket(r, p)?, q)?;
    Ok(max_coefficient(&(&(&a + &b) + &c), i64::size))
}

/// Number of odd indices in `{P, Q}`.
fn parity_residual(p: &ModePolynomial<C64>, q: &ModePolynomial<C64>, fam: &BracketFamily) -> Result<f64> {
    let b = poisson_bracket(p, q, fam)?;
    let odd = b.terms().flat_map(|(m, _)| m.iter()).filter(|n| *n % 2 != 0).count();
    if odd > 0 {
        return Err(singular(alloc::format!("{odd} odd indices in bracket")));
    }
    Ok(0.0)
}
