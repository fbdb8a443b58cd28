//! Exact dense linear algebra over the rationals and prime fields.
//!
//! The three building blocks are [`Scalar`] (an exact field element),
//! [`Matrix`] (dense, row index = output coordinate), and [`Subspace`]
//! (a canonical row space: reduced row-echelon basis, so equal subspaces
//! have identical representations).

mod matrix;
mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::{FieldSpec, Scalar};
pub use subspace::Subspace;
