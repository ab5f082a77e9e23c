//! Exact construction and verification of Z2×Z2-graded matrix Lie
//! algebras: graded analogues of the classical families sl(n+1),
//! so(2n+1), sp(2n) and so(2n), with closure/Jacobi/generation
//! verifiers, parastatistics relation suites, and a partition-and-close
//! search — all over the exact field Q(i, √2).
//!
//! The linear algebra is generic over any exact [`Scalar`]; the concrete
//! aliases at the crate root fix the library-wide coefficient field.

pub mod explore;
pub mod families;
pub mod graded;
pub mod matrix;
pub mod relations;
pub mod report;
pub mod scalar;

pub use graded::{
    check_closure, check_jacobi, generate, graded_bracket, permute_grading, structure_constants,
    Degree, DegreePermutation, GradedBasis, GradedError, HomogeneousElement,
};
pub use matrix::{anticommutator, commutator, Matrix, MatrixError, SpanBasis};
pub use report::{CheckItem, Report, Status};
pub use scalar::{FieldElem, Rational, Scalar, ScalarError};

/// Library-wide concrete matrix type over Q(i, √2).
pub type Mat = Matrix<FieldElem>;
/// Concrete span type over Q(i, √2).
pub type Span = SpanBasis<FieldElem>;
/// Concrete graded basis over Q(i, √2).
pub type Algebra = GradedBasis<FieldElem>;
