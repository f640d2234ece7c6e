use alloc::format;
use core::f64::consts::PI;


use crate::config::ToleranceConfig;
use crate::error::{domain, Result};
use crate::special::{abs, elliptic_k, elliptic_k_prime, nome_from_modulus, principal_pow, SnhKernel};
use crate::special::{half_theta_products, modulus_from_nome_complex, qpochhammer};
use crate::{c64, C64};

/// Elliptic nome `p`, deformation parameter `q` and the quantities derived
/// from them: modulus `k`, `K`, `K'` and `λ`.
///
/// `p = exp(-πK'/K)` and `q = -exp(-πλ/2K)` with the principal logarithm.
/// `K` is computed as `(π/2)·θ₃(0)²` so that the same formulas cover the
/// complex nomes produced by the `p → p·q^{-2c}` shift; for real `p` every
/// derived quantity is real. The square root of `p` that enters the modulus
/// and the quasi-periodicity shift is carried explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularParams {
    p: C64,
    p_half: C64,
    q: C64,
    modulus: C64,
    big_k: C64,
    big_k_prime: C64,
    lambda: C64,
    snh: SnhKernel,
}

/// Build parameters from `(p, q)` with `0 < |p|, |q| < 1`.
pub fn make_params(p: C64, q: C64, cfg: &ToleranceConfig) -> Result<ModularParams> {
    ModularParams::new(p, q, cfg)
}

impl ModularParams {
    pub fn new(p: C64, q: C64, cfg: &ToleranceConfig) -> Result<Self> {
        Self::with_root(p, p.sqrt(), q, cfg)
    }

    /// Parameters from a real modulus `k ∈ (0,1)` and `λ`, the other chart
    /// of the same family: `p = exp(-πK'/K)`, `q = -exp(-πλ/2K)`.
    pub fn from_modulus_lambda(modulus: f64, lambda: C64, cfg: &ToleranceConfig) -> Result<Self> {
        let p = nome_from_modulus(modulus)?;
        let big_k = elliptic_k(modulus)?;
        let q = -(-lambda * (PI / (2.0 * big_k))).exp();
        Self::new(c64(p, 0.0), q, cfg)
    }

    /// Parameters with an explicitly chosen branch of `√p`.
    pub fn with_root(p: C64, p_half: C64, q: C64, cfg: &ToleranceConfig) -> Result<Self> {
        let (mp, mq) = (abs(p), abs(q));
        if !(mp > 0.0 && mp < 1.0) {
            return Err(domain(format!("nome p = {p} must satisfy 0 < |p| < 1")));
        }
        if !(mq > 0.0 && mq < 1.0) {
            return Err(domain(format!("deformation q = {q} must satisfy 0 < |q| < 1")));
        }
        if abs(p_half * p_half - p) > 1e-12 * mp {
            return Err(domain("p_half is not a square root of p"));
        }
        let modulus = modulus_from_nome_complex(p, p_half, cfg)?;
        let p2 = p * p;
        let (_, odd) = half_theta_products(p, cfg)?;
        let theta3 = qpochhammer(p2, p2, cfg)? * odd * odd;
        let big_k = theta3 * theta3 * (PI / 2.0);
        let big_k_prime = -big_k * p.ln() / PI;
        let lambda = -big_k * (-q).ln() * (2.0 / PI);
        let snh = SnhKernel::new(p, cfg)?;
        Ok(Self { p, p_half, q, modulus, big_k, big_k_prime, lambda, snh })
    }

    /// Parameters at the shifted nome `p·q^{-2c}` used by `R⁺*`, with the
    /// continuous root `√p·q^{-c}`.
    pub fn star_shift(&self, c: f64, cfg: &ToleranceConfig) -> Result<Self> {
        if c == 0.0 {
            return Ok(self.clone());
        }
        let shift = principal_pow(self.q, -c);
        let p = self.p * shift * shift;
        if !(abs(p) < 1.0) {
            return Err(domain(format!("shifted nome p·q^(-2c) = {p} leaves the unit disc (c = {c})")));
        }
        Self::with_root(p, self.p_half * shift, self.q, cfg)
    }

    pub fn p(&self) -> C64 {
        self.p
    }
    pub fn p_half(&self) -> C64 {
        self.p_half
    }
    pub fn q(&self) -> C64 {
        self.q
    }
    pub fn modulus(&self) -> C64 {
        self.modulus
    }
    pub fn big_k(&self) -> C64 {
        self.big_k
    }
    pub fn big_k_prime(&self) -> C64 {
        self.big_k_prime
    }
    pub fn lambda(&self) -> C64 {
        self.lambda
    }
    pub fn snh_kernel(&self) -> &SnhKernel {
        &self.snh
    }

    /// `q^α` on the principal branch.
    pub fn q_pow(&self, alpha: f64) -> C64 {
        principal_pow(self.q, alpha)
    }

    /// Multiplicative coordinate of `u = λ`, namely `-1/q`.
    pub fn x_lambda(&self) -> C64 {
        -self.q.inv()
    }

    /// `ln q · 2K/π`; equals `2iK - λ` on the principal branch.
    pub fn u_per_log_q(&self) -> C64 {
        self.big_k * (2.0 / PI)
    }

    pub fn is_real_nome(&self) -> bool {
        self.p.im == 0.0 && self.p.re > 0.0
    }

    /// Residuals of the type invariants: nome from `K'/K`, `q` from `λ`,
    /// and (real nome only) `K`, `K'` reproduced by the AGM.
    pub fn invariant_residuals(&self) -> Result<[f64; 3]> {
        let nome = (-self.big_k_prime * PI / self.big_k).exp();
        let q_back = -(-self.lambda * PI / (self.big_k * 2.0)).exp();
        let agm = if self.is_real_nome() {
            let k = self.modulus.re;
            let dk = abs(self.big_k - elliptic_k(k)?);
            let dkp = abs(self.big_k_prime - elliptic_k_prime(k)?);
            dk.max(dkp)
        } else {
            0.0
        };
        Ok([abs(nome - self.p), abs(q_back - self.q), agm])
    }
}

/// Spectral parameter in both charts, `x = exp(πu/2K)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub x: C64,
    pub u: C64,
}

impl SpectralPoint {
    pub fn from_x(x: C64, params: &ModularParams) -> Result<Self> {
        if x == c64(0.0, 0.0) {
            return Err(domain("spectral parameter x = 0"));
        }
        Ok(Self { x, u: x.ln() * params.big_k * (2.0 / PI) })
    }

    pub fn from_u(u: C64, params: &ModularParams) -> Self {
        Self { x: (u * PI / (params.big_k * 2.0)).exp(), u }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::special::modulus_from_nome;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn lambda_real_positive_for_negative_q() {
        let m = make_params(c64(0.3, 0.0), c64(-0.5, 0.0), &cfg()).unwrap();
        // independent route: K from the AGM at the theta-quotient modulus
        let k = modulus_from_nome(0.3).unwrap();
        let lam = -(2.0 * elliptic_k(k).unwrap() / PI) * 0.5f64.ln();
        assert!(m.lambda().im.abs() < 1e-14);
        assert!(m.lambda().re > 0.0);
        assert!((m.lambda().re - lam).abs() < 1e-11 * lam, "{} vs {lam}", m.lambda());
    }

    #[test]
    fn invariants_hold() {
        let m = make_params(c64(0.3, 0.0), c64(-0.5, 0.0), &cfg()).unwrap();
        for r in m.invariant_residuals().unwrap() {
            assert!(r < 1e-9, "{r}");
        }
    }

    #[test]
    fn rejects_outside_annulus() {
        assert!(matches!(make_params(c64(0.3, 0.0), c64(1.5, 0.0), &cfg()), Err(Error::Domain(_))));
        assert!(make_params(c64(0.0, 0.0), c64(-0.5, 0.0), &cfg()).is_err());
        assert!(make_params(c64(0.3, 0.0), c64(0.0, 0.0), &cfg()).is_err());
    }

    #[test]
    fn spectral_point_round_trip() {
        let m = make_params(c64(0.3, 0.0), c64(-0.5, 0.0), &cfg()).unwrap();
        let sp = SpectralPoint::from_x(c64(1.1, 0.3), &m).unwrap();
        let back = SpectralPoint::from_u(sp.u, &m);
        assert!((back.x - sp.x).norm() < 1e-14);
        let lam = SpectralPoint::from_u(m.lambda(), &m);
        assert!((lam.x - m.x_lambda()).norm() < 1e-12);
    }

    #[test]
    fn modulus_lambda_chart_agrees() {
        let m = make_params(c64(0.3, 0.0), c64(-0.5, 0.0), &cfg()).unwrap();
        let n = ModularParams::from_modulus_lambda(m.modulus().re, m.lambda(), &cfg()).unwrap();
        assert!((n.p() - m.p()).norm() < 1e-12);
        assert!((n.q() - m.q()).norm() < 1e-12);
    }

    #[test]
    fn log_q_identity() {
        let m = make_params(c64(0.3, 0.0), c64(-0.5, 0.0), &cfg()).unwrap();
        let lhs = m.q().ln() * m.u_per_log_q();
        let rhs = C64::i() * m.big_k() * 2.0 - m.lambda();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn star_shift_at_zero_is_identity_and_rejects_large_c() {
        let m = make_params(c64(0.3, 0.0), c64(-0.5, 0.0), &cfg()).unwrap();
        assert_eq!(m.star_shift(0.0, &cfg()).unwrap(), m);
        assert!(m.star_shift(1.0, &cfg()).is_err());
        let s = m.star_shift(-2.0, &cfg()).unwrap();
        assert!((s.p() - c64(0.3 * 0.0625, 0.0)).norm() < 1e-14);
    }
}
