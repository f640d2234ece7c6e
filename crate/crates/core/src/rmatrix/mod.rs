//! Baxter's eight-vertex R-matrix, its normalizations and the identity suite.

mod baxter;
mod params;
mod tensor;
mod verify;

pub use baxter::{
    baxter_entries, normalization_mu, r_matrix, rplus, rplus_star, rplus_with, tau,
    tau_log_derivative, tau_with, BaxterEntries, TauForm,
};
pub use params::{make_params, ModularParams, SpectralPoint};
pub use tensor::{Pauli, Space, TensorMatrix};
pub use verify::{verify_rmatrix_properties, verify_rmatrix_properties_with};

pub(crate) use baxter::{entries_at, inverse_mu};
