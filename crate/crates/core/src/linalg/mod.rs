//! Exact integer linear algebra.

pub mod dense;
pub mod int;
pub mod lattice;
pub mod modp;
pub mod sparse;

pub use dense::{invariant_factors, kernel, smith, smith_with, solve, Matrix, Smith};
pub use int::Integer;
pub use lattice::Lattice;
pub use sparse::{integer_factors, rank_mod, Factors, SparseMatrix};
