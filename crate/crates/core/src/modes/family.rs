//! The `k`-indexed brackets `{t_n, t_m}_k = Σ_s F_k(s)·t_{m+2s}·t_{n-2s}`.

use alloc::collections::BTreeMap;

use crate::error::{domain, Error, Result};
use crate::modes::polynomial::{check_even, merge, remove_one, Accumulator, Coefficient, ModePolynomial};
use crate::special::abs;
use crate::{c64, C64};

/// Sector `k`, deformation parameter `q`, structure-constant cutoff and
/// the mode window `|n| ≤ window` outside which no index may appear.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BracketFamily {
    pub k: u32,
    pub q: C64,
    pub s_cutoff: i64,
    pub window: i64,
}

impl BracketFamily {
    pub fn new(k: u32, q: C64, s_cutoff: i64, window: i64) -> Result<Self> {
        let r = abs(q);
        if !(r > 0.0 && r < 1.0) {
            return Err(domain(alloc::format!("need 0 < |q| < 1, got {q}")));
        }
        if s_cutoff < 1 || window < 0 {
            return Err(domain(alloc::format!("invalid cutoff {s_cutoff} or window {window}")));
        }
        Ok(Self { k, q, s_cutoff, window })
    }

    /// The same family in another sector.
    pub fn in_sector(&self, k: u32) -> Self {
        Self { k, ..*self }
    }

    /// `F_k(s) = (-1)^{k+1}·2 ln q·(q^{(2k+1)s} - q^{-(2k+1)s})/(q^s + q^{-s})`,
    /// evaluated for `s > 0` and extended by `F_k(-s) = -F_k(s)`.
    pub fn f_coefficient(&self, s: i64) -> Result<C64> {
        if s.abs() > self.s_cutoff {
            return Err(domain(alloc::format!("|s| = {} exceeds cutoff {}", s.abs(), self.s_cutoff)));
        }
        Ok(f_raw(self.k, self.q, s))
    }

    /// `Σ_{|s| ≤ s_cutoff} F_k(s)·x^{2s}`.
    pub fn kernel(&self, x: C64) -> C64 {
        let xx = x * x;
        (1..=self.s_cutoff)
            .map(|s| {
                let e = s as i32;
                f_raw(self.k, self.q, s) * (xx.powi(e) - xx.powi(-e))
            })
            .sum()
    }

    fn check_window(&self, n: i64) -> Result<()> {
        check_even(n)?;
        if n.abs() > self.window {
            return Err(Error::Window { index: n, window: self.window });
        }
        Ok(())
    }

    /// `{t_n, t_m}_k`.
    pub fn generator(&self, n: i64, m: i64) -> Result<ModePolynomial<C64>> {
        structure_generator(n, m, self.s_cutoff, self.window, |s| f_raw(self.k, self.q, s))
    }

    fn sign(j: u32) -> f64 {
        if j % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

fn f_raw(k: u32, q: C64, s: i64) -> C64 {
    match s {
        0 => c64(0.0, 0.0),
        s if s < 0 => -f_raw(k, q, -s),
        s => {
            let e = s as i32;
            let w = (2 * k as i32 + 1) * e;
            let num = q.powi(w) - q.powi(-w);
            let den = q.powi(e) + q.powi(-e);
            q.ln() * (2.0 * -BracketFamily::sign(k)) * num / den
        }
    }
}

/// `F_k(s)` for the family.
pub fn f_coefficient(fam: &BracketFamily, s: i64) -> Result<C64> {
    fam.f_coefficient(s)
}

/// `{t_n, t_m} = Σ_{0<|s|≤s_cutoff} f(s)·t_{m+2s}·t_{n-2s}` for arbitrary
/// structure constants `f`, refusing any index beyond `window`.
pub fn structure_generator<C: Coefficient>(
    n: i64,
    m: i64,
    s_cutoff: i64,
    window: i64,
    f: impl Fn(i64) -> C,
) -> Result<ModePolynomial<C>> {
    for i in [n, m] {
        check_even(i)?;
        if i.abs() > window {
            return Err(Error::Window { index: i, window });
        }
    }
    let mut acc = Accumulator::default();
    for s in (-s_cutoff..=s_cutoff).filter(|s| *s != 0) {
        let (a, b) = (m + 2 * s, n - 2 * s);
        for i in [a, b] {
            if i.abs() > window {
                return Err(Error::Window { index: i, window });
            }
        }
        acc.push(merge(&[&[a], &[b]]), f(s));
    }
    Ok(acc.finish())
}

/// Extend a bracket on modes to polynomials as a biderivation:
/// `{P, Q} = Σ_{n,m} ∂P/∂t_n·∂Q/∂t_m·{t_n, t_m}`.
pub fn bracket_with<C: Coefficient>(
    p: &ModePolynomial<C>,
    q: &ModePolynomial<C>,
    mut generator: impl FnMut(i64, i64) -> Result<ModePolynomial<C>>,
) -> Result<ModePolynomial<C>> {
    let mut cache: BTreeMap<(i64, i64), ModePolynomial<C>> = BTreeMap::new();
    let mut acc = Accumulator::default();
    for (u, cu) in p.terms() {
        for (v, cv) in q.terms() {
            let base = cu.clone() * cv.clone();
            for (i, a) in distinct(u) {
                let rest_u = remove_one(u, i);
                for (j, b) in distinct(v) {
                    let rest_v = remove_one(v, j);
                    if !cache.contains_key(&(i, j)) {
                        cache.insert((i, j), generator(i, j)?);
                    }
                    let scaled = base.clone() * C::from_count(a * b);
                    for (w, cg) in cache[&(i, j)].terms() {
                        acc.push(merge(&[&rest_u, &rest_v, w]), scaled.clone() * cg.clone());
                    }
                }
            }
        }
    }
    Ok(acc.finish())
}

/// Distinct indices of a sorted monomial with their multiplicities.
fn distinct(mono: &[i64]) -> impl Iterator<Item = (i64, usize)> + '_ {
    mono.chunk_by(|a, b| a == b).map(|run| (run[0], run.len()))
}

/// `{P, Q}_k` for the family.
pub fn poisson_bracket(p: &ModePolynomial<C64>, q: &ModePolynomial<C64>, fam: &BracketFamily) -> Result<ModePolynomial<C64>> {
    bracket_with(p, q, |n, m| fam.generator(n, m))
}

/// Contribution of the `j`-th pole step,
/// `D_j(n,m) = -(-1)^j·2 ln q·Σ_a t_a·t_{n+m-a}·(q^{j(n-a)} - q^{-j(n-a)})`,
/// over even `a` with both `a` and `n+m-a` inside the window.
pub fn delta_step_contribution(n: i64, m: i64, j: u32, fam: &BracketFamily) -> Result<ModePolynomial<C64>> {
    fam.check_window(n)?;
    fam.check_window(m)?;
    if j == 0 {
        return Err(domain("pole steps are numbered from 1"));
    }
    let w = fam.window - fam.window.rem_euclid(2);
    let pref = fam.q.ln() * (-2.0 * BracketFamily::sign(j));
    let mut acc = Accumulator::default();
    for a in (-w..=w).step_by(2) {
        let b = n + m - a;
        if b.abs() > fam.window {
            continue;
        }
        let e = (j as i64 * (n - a)) as i32;
        let c = pref * (fam.q.powi(e) - fam.q.powi(-e));
        if !c.is_finite() {
            return Err(domain(alloc::format!("step coefficient overflows at a = {a}")));
        }
        acc.push(merge(&[&[a], &[b]]), c);
    }
    Ok(acc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(k: u32, q: f64) -> BracketFamily {
        BracketFamily::new(k, c64(q, 0.0), 8, 48).unwrap()
    }

    fn t(n: i64) -> ModePolynomial<C64> {
        ModePolynomial::mode(n).unwrap()
    }

    #[test]
    fn f_values() {
        let f = fam(0, 0.5);
        assert_eq!(f.f_coefficient(0).unwrap(), c64(0.0, 0.0));
        let v = f.f_coefficient(1).unwrap();
        let direct = -2.0 * 0.5f64.ln() * (0.5 - 2.0) / (0.5 + 2.0);
        assert!((v.re - direct).abs() < 1e-15 && v.im == 0.0);
        assert!((v.re + 0.831777).abs() < 1e-6);
        let f2 = fam(2, 0.5);
        assert_eq!(f2.f_coefficient(-3).unwrap(), -f2.f_coefficient(3).unwrap());
        assert!(f.f_coefficient(9).is_err());
    }

    #[test]
    fn generator_antisymmetric_exactly() {
        let f = fam(1, 0.5);
        let a = f.generator(2, -4).unwrap();
        let b = f.generator(-4, 2).unwrap();
        assert!((&a + &b).is_zero());
        assert!(f.generator(0, 0).unwrap().is_zero());
    }

    #[test]
    fn generator_against_explicit_residue_sum() {
        // {t_2, t_-2}_0 with cutoff 4: t_{-2+2s} t_{2-2s}, so the monomial
        // t_{2r} t_{-2r} collects s = 1 + r and s = 1 - r
        let f = BracketFamily::new(0, c64(0.5, 0.0), 4, 16).unwrap();
        let g = f.generator(2, -2).unwrap();
        let fs = |s: i64| if s == 0 || s.abs() > 4 { c64(0.0, 0.0) } else { f.f_coefficient(s).unwrap() };
        for r in 0..=5i64 {
            let want = if r == 0 { fs(1) } else { fs(1 + r) + fs(1 - r) };
            assert!((g.coefficient(&[2 * r, -2 * r]) - want).norm() < 1e-15, "r = {r}");
        }
    }

    #[test]
    fn window_enforced() {
        let f = BracketFamily::new(0, c64(0.5, 0.0), 8, 10).unwrap();
        assert!(matches!(f.generator(0, 0), Err(Error::Window { .. })));
        assert!(matches!(poisson_bracket(&t(12), &t(0), &f), Err(Error::Window { .. })));
    }

    #[test]
    fn leibniz_on_small_example() {
        let f = fam(1, 0.5);
        let lhs = poisson_bracket(&(&t(2) * &t(0)), &t(4), &f).unwrap();
        let rhs = &(&t(2) * &poisson_bracket(&t(0), &t(4), &f).unwrap()) + &(&t(0) * &poisson_bracket(&t(2), &t(4), &f).unwrap());
        let diff = &lhs - &rhs;
        let scale = lhs.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max);
        assert!(diff.terms().all(|(_, c)| c.norm() <= 1e-15 * scale));
    }

    #[test]
    fn delta_step_diagonal_term_vanishes() {
        let f = BracketFamily::new(1, c64(0.5, 0.0), 3, 6).unwrap();
        let d = delta_step_contribution(2, 2, 1, &f).unwrap();
        // a = n = 2 pairs t_2 with t_2 and has coefficient q⁰ - q⁰
        assert_eq!(d.coefficient(&[2, 2]), c64(0.0, 0.0));
    }

    #[test]
    fn delta_step_at_origin_cancels_pairwise() {
        // a and -a give t_a t_{-a} with opposite coefficients
        let f = BracketFamily::new(1, c64(0.5, 0.0), 3, 6).unwrap();
        assert!(delta_step_contribution(0, 0, 1, &f).unwrap().is_zero());
    }

    #[test]
    fn delta_step_against_residue_formula() {
        let q = 0.5f64;
        let f = BracketFamily::new(1, c64(q, 0.0), 3, 6).unwrap();
        let d = delta_step_contribution(2, 0, 1, &f).unwrap();
        let g = |a: i64| 2.0 * q.ln() * (q.powi((2 - a) as i32) - q.powi((a - 2) as i32));
        // t_a t_{2-a} is hit by a and by 2 - a
        for a in [-4i64, -2, 0] {
            let want = g(a) + g(2 - a);
            assert!((d.coefficient(&[a, 2 - a]).re - want).abs() < 1e-12 * want.abs().max(1.0), "a = {a}");
        }
        assert_eq!(d.coefficient(&[-6, 8]), c64(0.0, 0.0));
    }

    #[test]
    fn steps_account_for_sector_change() {
        // coefficient of t_{m+2s} t_{n-2s}: {.,.}_k - {.,.}_0 = Σ_{j≤k} D_j
        let (n, m) = (2i64, -4i64);
        for k in 1..=3u32 {
            let f = BracketFamily::new(k, c64(0.5, 0.0), 6, 24).unwrap();
            let f0 = f.in_sector(0);
            let gk = f.generator(n, m).unwrap();
            let g0 = f0.generator(n, m).unwrap();
            let steps = (1..=k).fold(ModePolynomial::zero(), |acc, j| &acc + &delta_step_contribution(n, m, j, &f).unwrap());
            for s in -2i64..=2 {
                let mono = [m + 2 * s, n - 2 * s];
                let lhs = gk.coefficient(&mono) - g0.coefficient(&mono);
                let rhs = steps.coefficient(&mono);
                assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0), "k = {k}, s = {s}: {lhs} vs {rhs}");
            }
        }
    }
}
