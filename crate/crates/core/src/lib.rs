//! Chen-Ruan orbifold cohomology of hypertoric varieties, computed from the
//! combinatorics of a rational cooriented weighted hyperplane arrangement.
//!
//! The pipeline runs in stages, one module each:
//!
//! 1. [`exactlin`] — exact integer/rational linear algebra (Hermite and Smith
//!    normal forms, integer kernels, lattice quotients, feasibility).
//! 2. [`arrangement`] — the arrangement itself: validation, torus weights,
//!    simplicity, intersection emptiness, random affinization.
//! 3. [`stabilizers`] — enumeration of the finite stabilizer group and the
//!    per-element combinatorics (logweights, fixed index sets, ages).
//! 4. [`presentation`] — the graded ring presentation: generators and the
//!    three relation families.
//! 5. [`groebner`] — reduced Gröbner bases, standard monomials, the orbifold
//!    Poincaré polynomial and Euler characteristic.
//! 6. [`oracle`] — an independent degree-by-degree dimension count used to
//!    cross-check the Gröbner route.
//! 7. [`cli`] — JSON input/output documents and the pipeline orchestration
//!    behind the `hypertoric` binary.
//!
//! All arithmetic is exact: integers are arbitrary precision and rationals
//! are kept in lowest terms with positive denominators. No floating point is
//! used anywhere.

pub mod arrangement;
pub mod cli;
pub mod exactlin;
pub mod groebner;
pub mod oracle;
pub mod presentation;
pub mod stabilizers;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use crate::arrangement::ValidationReport;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The arrangement failed one or more structural invariants.
    #[error("invalid arrangement: {0}")]
    Validation(ValidationReport),
    /// The affine arrangement is not simple.
    #[error("arrangement is not simple: hyperplanes {0:?} meet but their normals are dependent")]
    NotSimple(Vec<usize>),
    /// lattice_quotient was given linearly dependent vectors.
    #[error("vectors are linearly dependent over the rationals")]
    DependentVectors,
    /// gamma_s was given an index set whose normals do not form a basis.
    #[error("index set {0:?} does not select a basis")]
    NotABasis(Vec<usize>),
    /// Group closure exceeded the element budget.
    #[error("stabilizer group closure exceeded the budget of {0} elements")]
    GroupBudget(usize),
    /// No simple affinization found within the retry budget.
    #[error("no simple affinization found after {0} attempts")]
    AffinizationFailed(usize),
    /// The quotient ring is not finite-dimensional over the rationals.
    #[error("quotient ring is not finite-dimensional: no pure power of generator {0} among leading terms")]
    NotFinite(String),
    /// Malformed input document.
    #[error("parse error: {0}")]
    Parse(String),
    /// Gröbner and oracle Poincaré polynomials disagree.
    #[error("oracle mismatch at degree {degree}: groebner {groebner} vs oracle {oracle}")]
    OracleMismatch {
        degree: u64,
        groebner: usize,
        oracle: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
