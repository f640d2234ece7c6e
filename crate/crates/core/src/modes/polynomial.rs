//! Commutative polynomials in the even modes `t_n`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{domain, Result};
use crate::modes::exact_sum::exact_sum;
use crate::{c64, C64};

/// Coefficient ring of a [`ModePolynomial`].
pub trait Coefficient: Clone + PartialEq + Debug + Zero + Add<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    /// The integer `n` as a ring element.
    fn from_count(n: usize) -> Self;
    /// Sum of `items` whose value does not depend on their order.
    fn sum_all(items: &[Self]) -> Self;
}

macro_rules! integer_coefficient {
    ($($t:ty),*) => {$(
        impl Coefficient for $t {
            fn from_count(n: usize) -> Self {
                n as $t
            }
            fn sum_all(items: &[Self]) -> Self {
                items.iter().sum()
            }
        }
    )*};
}

integer_coefficient!(i64, i128);

impl Coefficient for C64 {
    fn from_count(n: usize) -> Self {
        c64(n as f64, 0.0)
    }
    fn sum_all(items: &[Self]) -> Self {
        c64(exact_sum(items.iter().map(|z| z.re)), exact_sum(items.iter().map(|z| z.im)))
    }
}

/// A monomial `t_{n₁}⋯t_{n_r}`, stored as its sorted index multiset.
pub type Monomial = Vec<i64>;

/// Finite polynomial `Σ c_μ·μ` over monomials in the modes, with no zero
/// coefficients stored.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModePolynomial<C = C64> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Default for ModePolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

pub(crate) fn check_even(n: i64) -> Result<()> {
    if n % 2 != 0 {
        return Err(domain(alloc::format!("mode index {n} is odd; only even modes exist")));
    }
    Ok(())
}

impl<C: Coefficient> ModePolynomial<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_sorted([(Vec::new(), c)])
    }

    /// The single mode `t_n`.
    pub fn mode(n: i64) -> Result<Self> {
        Self::monomial(&[n], C::from_count(1))
    }

    /// `c·t_{n₁}⋯t_{n_r}` in any index order.
    pub fn monomial(indices: &[i64], c: C) -> Result<Self> {
        Self::from_terms([(indices.to_vec(), c)])
    }

    /// Sum of the listed terms; repeated monomials are merged.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Result<Self> {
        let mut acc = Accumulator::default();
        for (mut mono, c) in terms {
            for n in &mono {
                check_even(*n)?;
            }
            mono.sort_unstable();
            acc.push(mono, c);
        }
        Ok(acc.finish())
    }

    fn from_sorted(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &C)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    /// Coefficient of the monomial with these indices (in any order).
    pub fn coefficient(&self, indices: &[i64]) -> C {
        let mut key = indices.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `|n|` among the modes that occur.
    pub fn max_abs_index(&self) -> Option<i64> {
        self.terms.keys().flatten().map(|n| n.abs()).max()
    }

    pub fn all_indices_even(&self) -> bool {
        self.terms.keys().flatten().all(|n| n % 2 == 0)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_sorted(self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())))
    }

    /// `∂/∂t_n`.
    pub fn partial(&self, n: i64) -> Self {
        Self::from_sorted(self.terms.iter().filter_map(|(m, c)| {
            let k = m.iter().filter(|i| **i == n).count();
            (k > 0).then(|| (remove_one(m, n), c.clone() * C::from_count(k)))
        }))
    }

    /// Apply `f` to every coefficient.
    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> ModePolynomial<D> {
        ModePolynomial::from_sorted(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

pub(crate) fn remove_one(mono: &[i64], n: i64) -> Monomial {
    let mut out = mono.to_vec();
    if let Some(pos) = out.iter().position(|i| *i == n) {
        out.remove(pos);
    }
    out
}

pub(crate) fn merge(parts: &[&[i64]]) -> Monomial {
    let mut out: Monomial = parts.iter().flat_map(|p| p.iter().copied()).collect();
    out.sort_unstable();
    out
}

/// Collects contributions per monomial and sums each list once at the end.
pub(crate) struct Accumulator<C> {
    parts: BTreeMap<Monomial, Vec<C>>,
}

impl<C> Default for Accumulator<C> {
    fn default() -> Self {
        Self { parts: BTreeMap::new() }
    }
}

impl<C: Coefficient> Accumulator<C> {
    pub(crate) fn push(&mut self, mono: Monomial, c: C) {
        self.parts.entry(mono).or_default().push(c);
    }

    pub(crate) fn finish(self) -> ModePolynomial<C> {
        ModePolynomial::from_sorted(self.parts.into_iter().map(|(m, v)| (m, C::sum_all(&v))))
    }
}

impl<C: Coefficient> Add for &ModePolynomial<C> {
    type Output = ModePolynomial<C>;
    fn add(self, rhs: Self) -> ModePolynomial<C> {
        let mut acc = Accumulator::default();
        for (m, c) in self.terms.iter().chain(rhs.terms.iter()) {
            acc.push(m.clone(), c.clone());
        }
        acc.finish()
    }
}

impl<C: Coefficient> Neg for &ModePolynomial<C> {
    type Output = ModePolynomial<C>;
    fn neg(self) -> ModePolynomial<C> {
        ModePolynomial::from_sorted(self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())))
    }
}

impl<C: Coefficient> Sub for &ModePolynomial<C> {
    type Output = ModePolynomial<C>;
    fn sub(self, rhs: Self) -> ModePolynomial<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Mul for &ModePolynomial<C> {
    type Output = ModePolynomial<C>;
    fn mul(self, rhs: Self) -> ModePolynomial<C> {
        let mut acc = Accumulator::default();
        for (u, cu) in &self.terms {
            for (v, cv) in &rhs.terms {
                acc.push(merge(&[u, v]), cu.clone() * cv.clone());
            }
        }
        acc.finish()
    }
}
