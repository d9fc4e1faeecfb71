//! Rational cooriented weighted hyperplane arrangements.
//!
//! An arrangement is `n` hyperplanes `H_i = { x : <x, a_i> = r_i }` in a
//! `d`-dimensional rational space, with integer normals `a_i` (weighted:
//! not necessarily primitive) and rational offsets `r_i`. The normals are
//! taken exactly as given; primitivizing them would change the orbifold
//! structure group downstream.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{self, IntMatrix};
use crate::{Error, Result};

/// The sole user input: integer normals and rational offsets.
#[derive(Debug, Clone)]
pub struct ArrangementSpec {
    normals: Vec<Vec<BigInt>>,
    offsets: Vec<BigRational>,
}

impl ArrangementSpec {
    /// Plain construction; structural soundness is checked by [`validate`].
    /// Panics only on shape mismatches that no report could describe.
    pub fn new(normals: Vec<Vec<BigInt>>, offsets: Vec<BigRational>) -> Self {
        assert!(!normals.is_empty(), "empty arrangement");
        let d = normals[0].len();
        assert!(d > 0, "zero-dimensional ambient space");
        assert!(
            normals.iter().all(|a| a.len() == d),
            "normals must share a dimension"
        );
        assert_eq!(normals.len(), offsets.len(), "one offset per hyperplane");
        ArrangementSpec { normals, offsets }
    }

    pub fn from_i64(normals: &[&[i64]], offsets: &[i64]) -> Self {
        ArrangementSpec::new(
            normals
                .iter()
                .map(|a| a.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            offsets
                .iter()
                .map(|&r| BigRational::from(BigInt::from(r)))
                .collect(),
        )
    }

    /// Number of hyperplanes.
    pub fn n(&self) -> usize {
        self.normals.len()
    }

    /// Ambient dimension.
    pub fn d(&self) -> usize {
        self.normals[0].len()
    }

    /// Rank of the quotienting torus, `n - d`.
    pub fn k(&self) -> usize {
        self.n().saturating_sub(self.d())
    }

    pub fn normals(&self) -> &[Vec<BigInt>] {
        &self.normals
    }

    pub fn offsets(&self) -> &[BigRational] {
        &self.offsets
    }

    pub fn with_offsets(&self, offsets: Vec<BigRational>) -> Self {
        ArrangementSpec::new(self.normals.clone(), offsets)
    }

    /// The `d x n` matrix whose columns are the normals.
    pub fn beta(&self) -> IntMatrix {
        IntMatrix::from_cols(&self.normals)
    }
}

/// One failed structural invariant, with the offending index where one exists.
/// Indices are 1-based, matching the hyperplane numbering used everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationFailure {
    ZeroNormal { index: usize },
    NotSpanningOverZ { invariant_factor: BigInt },
    ZeroWeight { index: usize },
    NoTorusRank { n: usize, d: usize },
}

impl std::fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationFailure::ZeroNormal { index } => {
                write!(f, "normal a_{index} is the zero vector")
            }
            ValidationFailure::NotSpanningOverZ { invariant_factor } => write!(
                f,
                "normals do not span the integer lattice (invariant factor {invariant_factor})"
            ),
            ValidationFailure::ZeroWeight { index } => {
                write!(f, "torus weight of coordinate {index} is zero")
            }
            ValidationFailure::NoTorusRank { n, d } => {
                write!(f, "need more hyperplanes than dimensions: n = {n}, d = {d}")
            }
        }
    }
}

/// Pass/fail outcome for every invariant of an [`ArrangementSpec`].
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            return write!(f, "all invariants hold");
        }
        for (i, failure) in self.failures.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{failure}")?;
        }
        Ok(())
    }
}

/// Torus weights: row `i` is the weight of the torus action on the `i`-th
/// coordinate, read off the canonical integer kernel basis of the normal
/// matrix.
#[derive(Debug, Clone)]
pub struct WeightMatrix {
    lambdas: Vec<Vec<BigInt>>,
}

impl WeightMatrix {
    pub fn lambda(&self, i: usize) -> &[BigInt] {
        &self.lambdas[i]
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    pub fn k(&self) -> usize {
        self.lambdas.first().map_or(0, Vec::len)
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.lambdas
    }
}

/// Check every structural invariant, reporting all failures at once.
pub fn validate(spec: &ArrangementSpec) -> ValidationReport {
    let mut failures = Vec::new();
    for (i, a) in spec.normals().iter().enumerate() {
        if a.iter().all(Zero::is_zero) {
            failures.push(ValidationFailure::ZeroNormal { index: i + 1 });
        }
    }
    if spec.n() <= spec.d() {
        failures.push(ValidationFailure::NoTorusRank {
            n: spec.n(),
            d: spec.d(),
        });
    }
    let beta = spec.beta();
    let (s, _, _) = exactlin::smith_normal_form(&beta);
    let mut spans = true;
    for i in 0..spec.d() {
        let factor = if i < beta.cols() {
            s.at(i, i).clone()
        } else {
            BigInt::zero()
        };
        if factor != BigInt::one() {
            failures.push(ValidationFailure::NotSpanningOverZ {
                invariant_factor: factor,
            });
            spans = false;
            break;
        }
    }
    if spans {
        let weights = compute_weights(spec);
        for i in 0..weights.n() {
            if weights.lambda(i).iter().all(Zero::is_zero) {
                failures.push(ValidationFailure::ZeroWeight { index: i + 1 });
            }
        }
    }
    ValidationReport { failures }
}

/// Validate and convert any failure into an error.
pub fn validated(spec: &ArrangementSpec) -> Result<()> {
    let report = validate(spec);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Validation(report))
    }
}

/// Rows of the canonical integer kernel basis of the normal matrix.
/// Precondition: the normals span the lattice (so the kernel is saturated
/// and has rank `n - d`).
pub fn compute_weights(spec: &ArrangementSpec) -> WeightMatrix {
    let kernel = exactlin::integer_kernel_basis(&spec.beta());
    let lambdas = (0..kernel.rows()).map(|i| kernel.row(i)).collect();
    WeightMatrix { lambdas }
}

/// Is `⋂_{i ∈ subset} H_i` empty? The empty subset gives the whole space,
/// which is never empty. Indices are 0-based.
pub fn intersection_empty(spec: &ArrangementSpec, subset: &[usize]) -> bool {
    if subset.is_empty() {
        return false;
    }
    let rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| spec.normals()[i].clone()).collect();
    let rhs: Vec<BigRational> = subset.iter().map(|&i| spec.offsets()[i].clone()).collect();
    exactlin::rational_feasible(&IntMatrix::from_rows(rows), &rhs).is_none()
}

fn dependent_meeting_subset(spec: &ArrangementSpec) -> Option<Vec<usize>> {
    let n = spec.n();
    let d = spec.d();
    // A violating set always contains a violating subset of size at most
    // rank + 1 <= d + 1, so small subsets suffice.
    for size in 2..=n.min(d + 1) {
        for subset in (0..n).combinations(size) {
            let sub = spec.beta().select_cols(&subset);
            if exactlin::rank(&sub) < size && !intersection_empty(spec, &subset) {
                return Some(subset);
            }
        }
    }
    None
}

/// Is the affine arrangement simple, i.e. does every set of hyperplanes with
/// a common point meet in codimension equal to its size?
pub fn is_simple(spec: &ArrangementSpec) -> bool {
    dependent_meeting_subset(spec).is_none()
}

/// Error carrying the witness subset when the arrangement is not simple.
pub fn require_simple(spec: &ArrangementSpec) -> Result<()> {
    match dependent_meeting_subset(spec) {
        None => Ok(()),
        Some(subset) => Err(Error::NotSimple(
            subset.into_iter().map(|i| i + 1).collect(),
        )),
    }
}

/// Default retry budget for [`random_simple_affinization`].
pub const AFFINIZATION_RETRY_BUDGET: usize = 1000;

/// Draw integer offsets until the affinization is simple. Draws are uniform
/// on a window `[-B, B]` that grows with the attempt count; the result is a
/// deterministic function of the normals and the seed.
pub fn random_simple_affinization(
    normals: &[Vec<BigInt>],
    seed: u64,
    retry_budget: usize,
) -> Result<Vec<BigRational>> {
    let n = normals.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec0 = ArrangementSpec::new(normals.to_vec(), vec![BigRational::zero(); n]);
    for attempt in 0..retry_budget {
        let window = (2 * n + attempt) as i64;
        let offsets: Vec<BigRational> = (0..n)
            .map(|_| BigRational::from(BigInt::from(rng.random_range(-window..=window))))
            .collect();
        let candidate = spec0.with_offsets(offsets);
        if is_simple(&candidate) {
            return Ok(candidate.offsets().to_vec());
        }
    }
    Err(Error::AffinizationFailed(retry_budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn orbi_p2() -> ArrangementSpec {
        ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-2, -1]], &[0, 0, 1])
    }

    fn t2_quotient() -> ArrangementSpec {
        ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[-1, 1]], &[0, 0, 1, 2])
    }

    #[test]
    fn validate_passes_fixture() {
        assert!(validate(&orbi_p2()).is_valid());
    }

    #[test]
    fn validate_rejects_square_system() {
        let spec = ArrangementSpec::from_i64(&[&[2, 0], &[0, 1]], &[0, 0]);
        let report = validate(&spec);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, ValidationFailure::NoTorusRank { n: 2, d: 2 })));
    }

    #[test]
    fn validate_rejects_non_spanning() {
        let spec = ArrangementSpec::from_i64(&[&[2, 0], &[0, 2], &[-1, -1]], &[0, 0, 0]);
        let report = validate(&spec);
        assert!(report.failures.iter().any(|f| matches!(
            f,
            ValidationFailure::NotSpanningOverZ { invariant_factor } if invariant_factor == &BigInt::from(2)
        )));
    }

    #[test]
    fn validate_rejects_zero_normal() {
        let spec = ArrangementSpec::from_i64(&[&[1, 0], &[0, 0], &[0, 1]], &[0, 0, 0]);
        let report = validate(&spec);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, ValidationFailure::ZeroNormal { index: 2 })));
    }

    #[test]
    fn validate_rejects_zero_weight() {
        // Kernel of [[1,1,0],[0,0,1]] is spanned by (1,-1,0): third weight zero.
        let spec = ArrangementSpec::from_i64(&[&[1, 0], &[1, 0], &[0, 1]], &[0, 1, 0]);
        let report = validate(&spec);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, ValidationFailure::ZeroWeight { index: 3 })));
    }

    #[test]
    fn weights_of_fixtures() {
        let w = compute_weights(&orbi_p2());
        assert_eq!(
            w.rows(),
            &[
                vec![BigInt::from(2)],
                vec![BigInt::from(1)],
                vec![BigInt::from(1)]
            ]
        );

        // Standard basis plus the all-minus-ones vector: every weight is (1).
        for d in 1..=4usize {
            let mut normals: Vec<Vec<BigInt>> = (0..d)
                .map(|j| {
                    (0..d)
                        .map(|i| if i == j { BigInt::one() } else { BigInt::zero() })
                        .collect()
                })
                .collect();
            normals.push(vec![-BigInt::one(); d]);
            let spec = ArrangementSpec::new(normals, vec![BigRational::zero(); d + 1]);
            let w = compute_weights(&spec);
            assert_eq!(w.k(), 1);
            for i in 0..=d {
                assert_eq!(w.lambda(i), &[BigInt::one()]);
            }
        }
    }

    #[test]
    fn weights_satisfy_kernel_identity() {
        for spec in [orbi_p2(), t2_quotient()] {
            let w = compute_weights(&spec);
            let beta = spec.beta();
            for j in 0..spec.d() {
                for col in 0..w.k() {
                    let sum: BigInt = (0..spec.n())
                        .map(|i| beta.at(j, i) * &w.lambda(i)[col])
                        .sum();
                    assert!(sum.is_zero());
                }
            }
        }
    }

    #[test]
    fn intersection_emptiness() {
        let spec = orbi_p2();
        assert!(intersection_empty(&spec, &[0, 1, 2]));
        assert!(!intersection_empty(&spec, &[1, 2]));
        assert!(!intersection_empty(&spec, &[]));
    }

    #[test]
    fn simplicity_checks() {
        assert!(is_simple(&orbi_p2()));

        // Triple point at (-1, 0) from three dependent normals.
        let bad =
            ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[-1, 1]], &[0, 0, 1, 1]);
        assert!(!is_simple(&bad));
        assert!(is_simple(&t2_quotient()));

        // Any central arrangement with more hyperplanes than dimensions.
        let central = ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-2, -1]], &[0, 0, 0]);
        assert!(!is_simple(&central));
    }

    #[test]
    fn simplicity_invariance() {
        let spec = t2_quotient();
        // Permuting hyperplanes.
        let perm = [2usize, 0, 3, 1];
        let permuted = ArrangementSpec::new(
            perm.iter().map(|&i| spec.normals()[i].clone()).collect(),
            perm.iter().map(|&i| spec.offsets()[i].clone()).collect(),
        );
        assert_eq!(is_simple(&spec), is_simple(&permuted));
        // Flipping a coorientation together with its offset.
        let mut normals = spec.normals().to_vec();
        let mut offsets = spec.offsets().to_vec();
        normals[2] = normals[2].iter().map(|x| -x.clone()).collect();
        offsets[2] = -offsets[2].clone();
        let flipped = ArrangementSpec::new(normals, offsets);
        assert_eq!(is_simple(&spec), is_simple(&flipped));
    }

    #[test]
    fn affinization_is_simple_and_deterministic() {
        let normals = orbi_p2().normals().to_vec();
        let r0 = random_simple_affinization(&normals, 7, AFFINIZATION_RETRY_BUDGET).unwrap();
        let r1 = random_simple_affinization(&normals, 7, AFFINIZATION_RETRY_BUDGET).unwrap();
        assert_eq!(r0, r1);
        let spec = ArrangementSpec::new(normals, r0);
        assert!(is_simple(&spec));
    }

    #[test]
    fn affinization_handles_repeated_directions() {
        // Parallel hyperplanes with distinct offsets are simple.
        let spec = ArrangementSpec::from_i64(&[&[1, 0], &[1, 0], &[0, 1], &[-1, -1]], &[0; 4]);
        let offsets =
            random_simple_affinization(spec.normals(), 0, AFFINIZATION_RETRY_BUDGET).unwrap();
        assert!(is_simple(&spec.with_offsets(offsets)));
    }

    #[test]
    fn affinization_generic_case() {
        // n = d + 1 generic normals: nearly every draw works.
        let spec = ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]], &[0; 3]);
        for seed in 0..5 {
            let offsets =
                random_simple_affinization(spec.normals(), seed, AFFINIZATION_RETRY_BUDGET)
                    .unwrap();
            assert!(is_simple(&spec.with_offsets(offsets)));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn intersection_empty_is_monotone(extra in 0usize..3) {
            let spec = t2_quotient();
            let small = vec![0usize, 1];
            let mut large = small.clone();
            if !large.contains(&extra) {
                large.push(extra);
            }
            if intersection_empty(&spec, &small) {
                prop_assert!(intersection_empty(&spec, &large));
            }
        }
    }
}
