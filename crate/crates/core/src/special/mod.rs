//! Scalar building blocks: q-Pochhammer products, the Jacobi theta
//! function, complete elliptic integrals, `snh` and generic numeric
//! utilities (log-derivatives, Laurent coefficients on circles).
//!
//! All evaluations are double-precision complex. Fractional powers of a
//! complex parameter are taken on the principal branch, `q^α = exp(α·Log q)`.

mod elliptic;
mod numeric;
mod pochhammer;
mod theta;

pub use elliptic::{elliptic_k, elliptic_k_prime, modulus_from_nome, nome_from_modulus, snh, SnhKernel};
pub use numeric::{contour_coefficient, numeric_log_derivative};
pub use pochhammer::{pochhammer_log_derivative, qpochhammer, qpochhammer_multi};
pub use theta::jacobi_theta;

pub(crate) use elliptic::{half_theta_products, modulus_from_nome_complex};
pub(crate) use pochhammer::pochhammer_ratio;
pub(crate) use theta::guarded_theta;

use crate::C64;
use num_complex::ComplexFloat;

/// Principal-branch power `base^alpha = exp(alpha·Log base)`.
pub fn principal_pow(base: C64, alpha: f64) -> C64 {
    if alpha == 0.0 {
        return C64::new(1.0, 0.0);
    }
    (base.ln() * alpha).exp()
}

pub(crate) fn abs(z: C64) -> f64 {
    ComplexFloat::abs(z)
}
