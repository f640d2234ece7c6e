use alloc::format;
use core::f64::consts::PI;

#[allow(unused_imports)] // resolved through std when it is linked
use num_traits::Float;

use crate::config::ToleranceConfig;
use crate::error::{domain, singular, Error, Result};
use crate::special::abs;
use crate::special::pochhammer::{guarded_product, pochhammer_log_derivative, qpochhammer};
use crate::{c64, C64};

/// Closest a modulus may approach 1 before `K` loses all accuracy in
/// double precision (one ulp in `k` then moves `K` by ~1%).
const MODULUS_CEILING_GAP: f64 = 1e-14;

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let (an, bn) = (0.5 * (a + b), (a * b).sqrt());
        if (an - bn).abs() <= 4.0 * f64::EPSILON * an {
            return 0.5 * (an + bn);
        }
        a = an;
        b = bn;
    }
    a
}

fn check_modulus(k: f64) -> Result<()> {
    if !(0.0..1.0).contains(&k) {
        return Err(domain(format!("modulus must lie in [0, 1), got {k}")));
    }
    if 1.0 - k < MODULUS_CEILING_GAP {
        return Err(domain(format!("modulus {k} too close to 1: K diverges")));
    }
    Ok(())
}

/// Complete elliptic integral of the first kind `K(k)` by the
/// arithmetic–geometric mean, `K = π / (2·agm(1, k'))`.
pub fn elliptic_k(modulus: f64) -> Result<f64> {
    check_modulus(modulus)?;
    let kp = ((1.0 - modulus) * (1.0 + modulus)).sqrt();
    Ok(PI / (2.0 * agm(1.0, kp)))
}

/// `K'(k) = K(√(1-k²))`, evaluated as `π / (2·agm(1, k))` so that small
/// moduli do not round the complementary modulus to 1.
pub fn elliptic_k_prime(modulus: f64) -> Result<f64> {
    check_modulus(modulus)?;
    if modulus == 0.0 {
        return Err(domain("K' diverges at modulus 0"));
    }
    Ok(PI / (2.0 * agm(1.0, modulus)))
}

/// Nome `exp(-π K'/K)` of a modulus in (0, 1).
pub fn nome_from_modulus(modulus: f64) -> Result<f64> {
    Ok((-PI * elliptic_k_prime(modulus)? / elliptic_k(modulus)?).exp())
}

/// Modulus with the given nome, from the theta-constant quotient
/// `k = θ₂(0)²/θ₃(0)² = 4√p ∏(1+p^{2n})⁴/(1+p^{2n-1})⁴`.
pub fn modulus_from_nome(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(format!("nome must lie in (0, 1), got {p}")));
    }
    let cfg = ToleranceConfig::default();
    let k = modulus_from_nome_complex(c64(p, 0.0), c64(p.sqrt(), 0.0), &cfg)?;
    Ok(k.re)
}

/// Theta-constant products `(−p²; p²)_∞` and `(−p; p²)_∞`.
pub(crate) fn half_theta_products(p: C64, cfg: &ToleranceConfig) -> Result<(C64, C64)> {
    let p2 = p * p;
    Ok((qpochhammer(-p2, p2, cfg)?, qpochhammer(-p, p2, cfg)?))
}

pub(crate) fn modulus_from_nome_complex(p: C64, p_half: C64, cfg: &ToleranceConfig) -> Result<C64> {
    let (even, odd) = half_theta_products(p, cfg)?;
    Ok(p_half * 4.0 * (even / odd).powi(4))
}

/// Jacobi `snh(u) = -i·sn(iu)` written as an elliptic function of the
/// multiplicative variable `x = exp(πu/2K)`:
///
/// ```text
/// snh = C·(x - 1/x)·(p²x²; p²)(p²x⁻²; p²) / ((p x²; p²)(p x⁻²; p²)),
/// C   = ½·((−p; p²)/(−p²; p²))²
/// ```
///
/// which is single valued in `x` and needs no fractional power of `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnhKernel {
    p: C64,
    scale: C64,
}

impl SnhKernel {
    pub fn new(p: C64, cfg: &ToleranceConfig) -> Result<Self> {
        let m = abs(p);
        if !(m > 0.0 && m < 1.0) {
            return Err(domain("snh nome must satisfy 0 < |p| < 1"));
        }
        let (even, odd) = half_theta_products(p, cfg)?;
        Ok(Self { p, scale: (odd / even).powi(2) * 0.5 })
    }

    pub fn nome(&self) -> C64 {
        self.p
    }

    /// `snh` at the point with multiplicative coordinate `x`.
    pub fn eval(&self, x: C64, cfg: &ToleranceConfig) -> Result<C64> {
        if x == c64(0.0, 0.0) {
            return Err(singular("snh kernel at x = 0"));
        }
        let p2 = self.p * self.p;
        let xx = x * x;
        let n1 = guarded_product(p2 * xx, &[p2], cfg)?.value;
        let n2 = guarded_product(p2 / xx, &[p2], cfg)?.value;
        let d1 = guarded_product(self.p * xx, &[p2], cfg)?;
        let d2 = guarded_product(self.p / xx, &[p2], cfg)?;
        let guard = cfg.pole_guard();
        if d1.min_factor < guard || d2.min_factor < guard {
            return Err(singular(format!("snh pole near x = {x}")));
        }
        Ok(self.scale * (x - x.inv()) * n1 * n2 / (d1.value * d2.value))
    }

    /// `x·d/dx ln snh` from the product representation, term by term.
    pub fn log_derivative(&self, x: C64, cfg: &ToleranceConfig) -> Result<C64> {
        let p2 = self.p * self.p;
        let xx = x * x;
        let den = xx - 1.0;
        if abs(den) < cfg.pole_guard() {
            return Err(singular("snh log-derivative at a zero"));
        }
        let lead = (xx + 1.0) / den;
        let l = |y: C64| pochhammer_log_derivative(y, p2, cfg);
        Ok(lead + (l(p2 * xx)? - l(p2 / xx)? - l(self.p * xx)? + l(self.p / xx)?) * 2.0)
    }
}

/// `snh(u) = -i·sn(iu, k)` for a real modulus `k ∈ (0, 1)`, through the
/// theta quotient with nome `exp(-πK'/K)`.
pub fn snh(u: C64, modulus: f64, cfg: &ToleranceConfig) -> Result<C64> {
    if modulus == 0.0 {
        // sn(z, 0) = sin z
        return Ok(-C64::i() * (C64::i() * u).sin());
    }
    let big_k = elliptic_k(modulus)?;
    let nome = nome_from_modulus(modulus)?;
    if nome <= 0.0 || !nome.is_finite() {
        return Err(Error::Domain(format!("nome underflow for modulus {modulus}")));
    }
    let kernel = SnhKernel::new(c64(nome, 0.0), cfg)?;
    let x = (u * (PI / (2.0 * big_k))).exp();
    kernel.eval(x, cfg)
}
