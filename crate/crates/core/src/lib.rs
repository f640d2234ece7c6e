//! Numerical toolkit for the elliptic quantum algebra A_{q,p}(sl(2)_c).
//!
//! The crate builds Baxter's eight-vertex R-matrix with its normalizations,
//! certifies the c-number R-matrix identities used by the critical-level
//! center construction, evaluates the Poisson structure function of the
//! center three independent ways and realizes the k-indexed family of
//! quadratic Poisson brackets on the even modes `t_n`.
//!
//! Everything here is `no_std` + `alloc`; IO, file formats and the command
//! line front end live in the `aqp` crate.
//!
//! Module map:
//!
//! * [`special`]: q-Pochhammer products, theta functions, elliptic integrals,
//!   `snh`, numeric log-derivatives and contour coefficients.
//! * [`rmatrix`]: parameters, 4×4 tensor matrices, `R`, `R⁺`, `R⁺*` and the
//!   identity suite.
//! * [`center`]: the exchange matrix `Y`, its `T·𝓡` factorization, the `M`
//!   entries and the structure function `f`.
//! * [`modes`]: mode polynomials, the bracket family `{·,·}_k` and its
//!   consistency checks.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod center;
pub mod config;
pub mod error;
pub mod modes;
pub mod report;
pub mod rmatrix;
pub mod sampling;
pub mod special;

pub use config::ToleranceConfig;
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use report::{CheckEntry, CheckReport};
pub use rmatrix::{ModularParams, SpectralPoint, TensorMatrix};

/// Shorthand used throughout the crate.
pub(crate) type C64 = Complex64;

#[inline]
pub(crate) fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
