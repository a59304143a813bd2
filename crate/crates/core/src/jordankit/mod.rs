//! Jordan structure of an integer matrix at its eigenvalues of maximal
//! modulus: block profile, the limit matrix `B`, and exact Jordan bases.

pub mod basis;
pub mod limit;
pub mod profile;

pub use basis::{basis_from_profile, jordan_basis, JordanBasisData, JordanBlock};
pub use limit::{limit_from_profile, limit_matrix_b, LimitMatrixB};
pub use profile::{jordan_profile, poly_at_matrix, profile_from_spectrum, FactorProfile, JordanProfile};
