//! Exact-arithmetic kernel for finite-dimensional Hom-Lie algebras.
//!
//! A Hom-Lie algebra is a vector space with a skew-symmetric bracket and a
//! companion endomorphism `alpha` satisfying the alpha-twisted Jacobi identity;
//! we work with multiplicative ones (`alpha` preserves the bracket) over the
//! rationals or a prime field. On top of that substrate the crate builds
//! non-abelian tensor and exterior products of crossed modules, the Hom-Lie
//! chain complex and its homology, the Schur multiplier computed through two
//! independent pipelines that must agree, and the tensor/exterior centers that
//! decide capability.
//!
//! Everything is exact: no floating point anywhere. All values are immutable
//! after construction and safe to share across threads; the randomized
//! theorem-regression corpus evaluates instances in parallel when the
//! `parallel` feature (default) is enabled.

pub mod exactlin;

pub mod algebra;

pub mod actions;

pub mod tensorext;

pub mod homology;

pub mod capability;

pub mod json;

pub mod report;

pub mod corpus;

mod error;

pub use error::{Error, Result};
pub use algebra::HomLieAlgebra;
pub use exactlin::{FieldSpec, Matrix, Scalar, Subspace};
