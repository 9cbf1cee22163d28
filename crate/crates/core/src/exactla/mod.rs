//! Exact linear algebra over prime fields.

mod field;
mod matrix;
mod sparse;
mod subspace;

pub use field::{is_prime, Fp};
pub use matrix::{tensor_power_apply, PrimeMatrix, Rref};
pub use sparse::{sparse_rank, IdMinusPerm, SparseMatrix, SparseVec};
pub use subspace::{induced_on_subquotient, SubQuotient, Subspace};
