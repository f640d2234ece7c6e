//! Quadratic Poisson brackets on the even modes `t_n`.
//!
//! Sector `k` is the annulus `|q|^{k+1} < |z/w| < |q|^k` or its inverse.
//! The bracket of that sector has structure constants `F_k(s)`, the
//! symmetrized Laurent coefficients of the structure function on the
//! sector, and moving out one sector adds the pole-step terms `D_j`.
//!
//! Brackets are computed inside an explicit mode window; any index outside
//! it is an error rather than being dropped. Complex coefficients are
//! accumulated with correctly rounded sums, so `{P, Q} = -{Q, P}` holds bit
//! for bit. Identities that rounding would spoil (Leibniz, mode-level
//! Jacobi) are additionally checked exactly over the integers with random
//! antisymmetric structure constants.

mod checks;
mod exact_sum;
mod family;
mod polynomial;

pub use checks::{
    check_contour_match, check_jacobi_functional, check_telescoping, jacobi_functional_residual, sector_radius,
    symmetrized_contour_coefficient, verify_modes, ModeSuiteConfig, CONTOUR_TOL, EXACT, TELESCOPING_TOL,
};
pub use family::{
    bracket_with, delta_step_contribution, f_coefficient, poisson_bracket, structure_generator, BracketFamily,
};
pub use polynomial::{Coefficient, ModePolynomial, Monomial};
