//! Seeded, pole-aware sample generators.

use core::f64::consts::PI;

#[allow(unused_imports)] // resolved through std when it is linked
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rmatrix::{ModularParams, SpectralPoint};
use crate::special::abs;
use crate::{c64, C64};

/// Relative distance below which a sample counts as hitting a forbidden point.
pub const POLE_MARGIN: f64 = 1e-3;

/// Radii of the circles spectral points are drawn on.
pub const SPECTRAL_RADII: [f64; 2] = [1.05, 1.2];

const LATTICE_SPAN: i32 = 8;

/// Draws made by [`Sampler::spectral_x_clear`] before it settles.
pub const CLEAR_ATTEMPTS: usize = 256;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Point of modulus `radius` with a uniformly random phase.
    pub fn on_circle(&mut self, radius: f64) -> C64 {
        let t = self.uniform(0.0, 2.0 * PI);
        c64(radius * t.cos(), radius * t.sin())
    }

    /// Spectral parameter on one of [`SPECTRAL_RADII`], redrawn while
    /// [`near_forbidden`] holds.
    pub fn spectral_x(&mut self, params: &ModularParams) -> C64 {
        loop {
            let r = SPECTRAL_RADII[self.index(SPECTRAL_RADII.len())];
            let x = self.on_circle(r);
            if !near_forbidden(x, params) {
                return x;
            }
        }
    }

    /// As [`Sampler::spectral_x`], with `x²` at least `margin` (relative)
    /// from the lattice of [`lattice_distance`]. When no such point turns up
    /// in [`CLEAR_ATTEMPTS`] draws the farthest one seen is returned.
    pub fn spectral_x_clear(&mut self, params: &ModularParams, margin: f64) -> C64 {
        let mut best = (f64::NEG_INFINITY, c64(1.0, 0.0));
        for _ in 0..CLEAR_ATTEMPTS {
            let x = self.spectral_x(params);
            let d = lattice_distance(x, params);
            if d >= margin {
                return x;
            }
            if d > best.0 {
                best = (d, x);
            }
        }
        best.1
    }

    /// Point of `1 < |x| < |q|⁻¹` away from the forbidden lattice.
    pub fn annulus_x(&mut self, params: &ModularParams) -> C64 {
        let outer = 1.0 / abs(params.q());
        loop {
            let r = self.uniform(1.0 + 0.05, outer - 0.05);
            let x = self.on_circle(r);
            if !near_forbidden(x, params) {
                return x;
            }
        }
    }

    /// `(u, v, a)` with every argument of the `snh` relations
    /// (`u, v, a, a-u, a-v, a-u-v, u+v`) off the pole lattice.
    pub fn snh_triple(&mut self, params: &ModularParams) -> (C64, C64, C64) {
        let lambda = params.lambda();
        let k = params.big_k();
        loop {
            let mut draw = || lambda * self.uniform(-1.0, 1.0) + k * c64(0.0, self.uniform(-0.25, 0.25));
            let (u, v, a) = (draw(), draw(), draw());
            let args = [u, v, a, a - u, a - v, a - u - v, u + v];
            let clear = args.iter().all(|w| !near_forbidden(SpectralPoint::from_u(*w, params).x, params));
            if clear {
                return (u, v, a);
            }
        }
    }

    /// Points on `|z| = 1.1`, `|w| = 1.3`, `|v| = 0.9` whose ratios stay off `x² = 1`.
    pub fn jacobi_triple(&mut self) -> (C64, C64, C64) {
        loop {
            let (z, w, v) = (self.on_circle(1.1), self.on_circle(1.3), self.on_circle(0.9));
            if [z / w, w / v, v / z].iter().all(|r| abs(*r * *r - 1.0) > 1e-2) {
                return (z, w, v);
            }
        }
    }
}

/// Smallest relative distance `|x²/t - 1|` over the lattice `t = ±q^{2i}p^{j}`.
///
/// The lattice holds `x² ∈ ±q^{2ℤ}`, the `snh` poles `p^{2ℤ+1}` and their
/// `q²`-translates, which is where the entries, `μ` and `τ` degenerate.
pub fn lattice_distance(x: C64, params: &ModularParams) -> f64 {
    let xx = x * x;
    let (p, q) = (params.p(), params.q());
    let mut best = f64::INFINITY;
    for i in -LATTICE_SPAN..=LATTICE_SPAN {
        let q2i = q.powi(2 * i);
        for j in -LATTICE_SPAN..=LATTICE_SPAN {
            let t = q2i * p.powi(j);
            best = best.min(abs(xx / t - 1.0)).min(abs(xx / t + 1.0));
        }
    }
    best
}

/// Whether `x²` lies within [`POLE_MARGIN`] of the lattice of [`lattice_distance`].
pub fn near_forbidden(x: C64, params: &ModularParams) -> bool {
    lattice_distance(x, params) < POLE_MARGIN
}
#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ToleranceConfig;
    use crate::rmatrix::make_params;

    #[test]
    fn lattice_points_rejected() {
        let cfg = ToleranceConfig::default();
        let m = make_params(c64(0.5, 0.0), c64(-0.4, 0.0), &cfg).unwrap();
        // x² = p²/q², a zero of Θ(q²x²)
        let x = m.p() / m.q() * 1.0001;
        assert!(near_forbidden(x, &m));
        assert!(near_forbidden(c64(0.0, 1.0), &m));
        assert!(!near_forbidden(c64(1.1, 0.3), &m));
    }

    #[test]
    fn clear_points_keep_their_distance() {
        let cfg = ToleranceConfig::default();
        let m = make_params(c64(0.3, 0.0), c64(-0.6, 0.0), &cfg).unwrap();
        // x² = q⁴/p² lies on the lattice
        let on = (m.q().powi(4) / m.p().powi(2)).sqrt();
        assert!(lattice_distance(on, &m) < 1e-12);
        assert!((lattice_distance(on * 1.01, &m) - 0.0201).abs() < 1e-3);
        let mut s = Sampler::new(3);
        for _ in 0..20 {
            assert!(lattice_distance(s.spectral_x_clear(&m, 0.1), &m) >= 0.1);
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..10 {
            assert_eq!(a.on_circle(1.2), b.on_circle(1.2));
        }
    }
}
