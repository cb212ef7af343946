//! Exact computer algebra for hom-Lie color algebras: structure constants,
//! axiom checks, twisted derivations, graded Chevalley cohomology, and the
//! classification of non-abelian extensions.

pub mod algebra;
pub mod cli;
pub mod cochains;
pub mod derivations;
pub mod error;
pub mod extensions;
pub mod grading;
pub mod io;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod testkit;

pub use algebra::{BasisElement, ColorHomLieAlgebra, GradedVector};
pub use error::{Error, Result};
pub use grading::{CommutationFactor, Degree, GradingGroup};
pub use linalg::Matrix;
pub use scalar::Q;
