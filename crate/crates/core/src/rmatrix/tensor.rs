use core::ops::{Add, Mul, Neg, Sub};

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::special::abs;
use crate::{c64, C64};

/// Tensor factor of `ℂ² ⊗ ℂ²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> [[C64; 2]; 2] {
        let (o, l, i) = (c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 1.0));
        match self {
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }
}

/// 4×4 complex matrix on `ℂ² ⊗ ℂ²`; row and column indices are `2·a + b`
/// with `a` the index in space 1 and `b` the index in space 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorMatrix {
    entries: [[C64; 4]; 4],
}

#[inline]
fn split(i: usize) -> (usize, usize) {
    (i / 2, i % 2)
}

#[inline]
fn join(a: usize, b: usize) -> usize {
    2 * a + b
}

impl TensorMatrix {
    pub const fn new(entries: [[C64; 4]; 4]) -> Self {
        Self { entries }
    }

    pub fn zero() -> Self {
        Self::new([[c64(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.entries[i][i] = c64(1.0, 0.0);
        }
        m
    }

    /// `P(a⊗b) = b⊗a`.
    pub fn permutation() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            let (a, b) = split(i);
            m.entries[join(b, a)][i] = c64(1.0, 0.0);
        }
        m
    }

    pub fn kron(a: [[C64; 2]; 2], b: [[C64; 2]; 2]) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let ((i1, i2), (j1, j2)) = (split(i), split(j));
                m.entries[i][j] = a[i1][j1] * b[i2][j2];
            }
        }
        m
    }

    /// `σ ⊗ 1` or `1 ⊗ σ`.
    pub fn pauli(which: Pauli, space: Space) -> Self {
        let one = [[c64(1.0, 0.0), c64(0.0, 0.0)], [c64(0.0, 0.0), c64(1.0, 0.0)]];
        match space {
            Space::One => Self::kron(which.matrix(), one),
            Space::Two => Self::kron(one, which.matrix()),
        }
    }

    pub fn entries(&self) -> &[[C64; 4]; 4] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.entries[i][j] = v;
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|e| *e *= s);
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[j][i] = self.entries[i][j];
            }
        }
        m
    }

    /// Transposition in one tensor factor only (`t₁` or `t₂`).
    pub fn partial_transpose(&self, space: Space) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let ((i1, i2), (j1, j2)) = (split(i), split(j));
                let (r, c) = match space {
                    Space::One => (join(j1, i2), join(i1, j2)),
                    Space::Two => (join(i1, j2), join(j1, i2)),
                };
                m.entries[r][c] = self.entries[i][j];
            }
        }
        m
    }

    /// `M₂₁ = P·M₁₂·P`.
    pub fn permute_spaces(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let ((i1, i2), (j1, j2)) = (split(i), split(j));
                m.entries[join(i2, i1)][join(j2, j1)] = self.entries[i][j];
            }
        }
        m
    }

    /// `(σ ⊗ 1)·M·(σ ⊗ 1)` (or in space 2).
    pub fn sigma_conjugate(&self, which: Pauli, space: Space) -> Self {
        let s = Self::pauli(which, space);
        s * *self * s
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|e| abs(*e)).fold(0.0, f64::max)
    }

    /// Induced 1-norm (max column sum).
    pub fn norm_one(&self) -> f64 {
        (0..4)
            .map(|j| (0..4).map(|i| abs(self.entries[i][j])).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `‖self - other‖` relative to the larger operand, floored at 1.
    pub fn distance(&self, other: &Self) -> f64 {
        crate::report::relative_residual((*self - *other).max_abs(), self.max_abs(), other.max_abs())
    }

    pub fn determinant(&self) -> C64 {
        let (lu, sign, _) = self.lu();
        (0..4).fold(c64(sign, 0.0), |acc, i| acc * lu[i][i])
    }

    fn lu(&self) -> ([[C64; 4]; 4], f64, [usize; 4]) {
        let mut a = self.entries;
        let mut perm = [0, 1, 2, 3];
        let mut sign = 1.0;
        for k in 0..4 {
            let pivot = (k..4).max_by(|&x, &y| abs(a[x][k]).total_cmp(&abs(a[y][k]))).unwrap_or(k);
            if pivot != k {
                a.swap(pivot, k);
                perm.swap(pivot, k);
                sign = -sign;
            }
            if a[k][k] == c64(0.0, 0.0) {
                continue;
            }
            for i in k + 1..4 {
                let f = a[i][k] / a[k][k];
                a[i][k] = f;
                for j in k + 1..4 {
                    let t = a[k][j];
                    a[i][j] -= f * t;
                }
            }
        }
        (a, sign, perm)
    }

    /// Inverse by pivoted LU, refused when the 1-norm condition estimate
    /// exceeds `1/trunc_eps` or the product with the result misses the
    /// identity by `test_tol`.
    pub fn invert(&self, cfg: &ToleranceConfig) -> Result<Self> {
        let (lu, _, perm) = self.lu();
        if (0..4).any(|i| lu[i][i] == c64(0.0, 0.0)) {
            return Err(Error::Conditioning { condition: f64::INFINITY });
        }
        let mut inv = Self::zero();
        for col in 0..4 {
            let mut y = [c64(0.0, 0.0); 4];
            for i in 0..4 {
                let mut v = if perm[i] == col { c64(1.0, 0.0) } else { c64(0.0, 0.0) };
                for j in 0..i {
                    v -= lu[i][j] * y[j];
                }
                y[i] = v;
            }
            for i in (0..4).rev() {
                let mut v = y[i];
                for j in i + 1..4 {
                    v -= lu[i][j] * inv.entries[j][col];
                }
                inv.entries[i][col] = v / lu[i][i];
            }
        }
        let condition = self.norm_one() * inv.norm_one();
        if !(condition < 1.0 / cfg.trunc_eps) {
            return Err(Error::Conditioning { condition });
        }
        let check = (*self * inv - Self::identity()).max_abs();
        if !(check < cfg.test_tol) {
            return Err(Error::Conditioning { condition });
        }
        Ok(inv)
    }
}

impl Mul for TensorMatrix {
    type Output = TensorMatrix;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = (0..4).map(|k| self.entries[i][k] * rhs.entries[k][j]).sum();
            }
        }
        m
    }
}

impl Add for TensorMatrix {
    type Output = TensorMatrix;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.entries[i][j] += rhs.entries[i][j];
            }
        }
        self
    }
}

impl Sub for TensorMatrix {
    type Output = TensorMatrix;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for TensorMatrix {
    type Output = TensorMatrix;
    fn neg(self) -> Self {
        self.scale(c64(-1.0, 0.0))
    }
}
