//! The critical-level Poisson structure.
//!
//! Near `c = -2` the exchange matrix `Y(z/w)` built from `R⁺` factorizes as
//! a scalar `T` times a normalized matrix `𝓡`, both of which collapse to the
//! identity at the critical level. The derivative `dY/dc` there is a scalar
//! multiple `f(z/w)` of the identity, which defines the bracket
//! `{t(z), t(w)} = f(z/w)·t(z)t(w)` on the center. `f` is computed from the
//! product form of `τ`, from its partial-fraction expansion and from a
//! numeric derivative of `Y`.
//!
//! Derivatives in `c` are taken in the multiplicative variables, where
//! `d/dc g(xq^{±c}) = ±ln q·x∂ₓg`; in the additive chart the same factor
//! reads `ln q·2K/π = 2iK - λ`.

mod derivative;
mod exchange;
mod identities;
mod structure;
mod suite;

pub use exchange::{
    m_entries, m_matrix, rcal_from_products, rcal_matrix, t_prefactor, y_matrix, CriticalProbe, MEntries, CRITICAL_LEVEL,
};
pub use identities::{check_mu_identities, check_snh_identities, MU_CHECKS, SNH_CHECKS};
pub use structure::{
    dy_dc_at_critical, structure_function_closed, structure_function_closed_q, structure_function_series,
    structure_function_series_q, StructureFunctionEval,
};
pub use suite::{
    derivative_orders, m_diagonal_derivative_closed, verify_center, DERIVATIVE_MARGIN, DERIVATIVE_TOL, NUMERIC_ROUTE_TOL, OFF_CRITICAL,
    ORDER_SLACK, ORDER_STEPS,
};
