//! Shared fixtures and the randomized arrangement corpus used by the
//! integration suites.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypertoric::arrangement::{self, ArrangementSpec};
use hypertoric::groebner::{self, MonomialOrder, PoincarePolynomial};
use hypertoric::presentation::{self, Polynomial, RingPresentation};
use hypertoric::stabilizers::{self, StabilizerGroup};

/// Orbifold fixture with a single order-2 sector (3 hyperplanes in d = 2).
pub fn orbi_p2() -> ArrangementSpec {
    ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-2, -1]], &[0, 0, 1])
}

/// Weighted variant with sector group of order `n`.
pub fn m_n(n: i64) -> ArrangementSpec {
    ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-n, -1]], &[0, 0, 1])
}

/// Four hyperplanes in d = 2 with one order-2 sector.
pub fn t2_quotient() -> ArrangementSpec {
    ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[-1, 1]], &[0, 0, 1, 2])
}

/// Unimodular arrangement: trivial sector group.
pub fn smooth_p2() -> ArrangementSpec {
    ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]], &[0, 0, 1])
}

pub fn presentation_of(spec: &ArrangementSpec) -> (StabilizerGroup, RingPresentation) {
    presentation::build_presentation(spec).expect("fixture builds")
}

/// Gröbner-route Poincaré polynomial of a validated simple arrangement.
pub fn poincare_of(spec: &ArrangementSpec) -> PoincarePolynomial {
    let (_, pres) = presentation_of(spec);
    let relations: Vec<Polynomial> = pres.relations().iter().map(|r| r.poly.clone()).collect();
    let gb = groebner::buchberger(&relations, MonomialOrder::for_presentation(&pres));
    gb.poincare().expect("fixture quotient is finite-dimensional")
}

/// Coefficient-wise equality of two Poincaré polynomials over all even
/// degrees up to `max_degree` and both supports.
pub fn poincare_agree(a: &PoincarePolynomial, b: &PoincarePolynomial, max_degree: u64) -> bool {
    let top = a
        .max_degree()
        .unwrap_or(0)
        .max(b.max_degree().unwrap_or(0))
        .max(max_degree);
    let mut degree = 0;
    while degree <= top {
        if a.coefficient(degree) != b.coefficient(degree) {
            return false;
        }
        degree += 2;
    }
    true
}

/// One corpus arrangement: a validated simple affinization and its group.
pub struct CorpusEntry {
    pub spec: ArrangementSpec,
    pub group: StabilizerGroup,
}

impl CorpusEntry {
    pub fn generator_count(&self) -> usize {
        self.spec.n() + self.group.order() - 1
    }
}

/// Deterministic randomized corpus of valid simple arrangements with
/// `n <= max_n` hyperplanes and `d <= 3`. `max_generators`, when set,
/// caps `n + |group| - 1` to keep the brute-force oracle affordable.
pub fn build_corpus(
    master_seed: u64,
    count: usize,
    min_n: usize,
    max_n: usize,
    max_generators: Option<usize>,
) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        assert!(
            attempts < 100_000,
            "corpus generation exhausted its attempt budget"
        );
        let n = rng.random_range(min_n..=max_n);
        let d_max = 3.min(n - 1);
        let d = rng.random_range(1..=d_max);
        let normals: Vec<Vec<BigInt>> = (0..n)
            .map(|_| (0..d).map(|_| BigInt::from(rng.random_range(-3i64..=3))).collect())
            .collect();
        let affinization_seed: u64 = rng.random();
        let probe = ArrangementSpec::new(
            normals.clone(),
            vec![num_rational::BigRational::from(BigInt::from(0)); n],
        );
        if !arrangement::validate(&probe).is_valid() {
            continue;
        }
        let Ok(group) = stabilizers::full_group_with_budget(&probe, 512) else {
            continue;
        };
        if group.order() > 64 {
            continue;
        }
        if let Some(cap) = max_generators {
            if n + group.order() - 1 > cap {
                continue;
            }
        }
        let Ok(offsets) = arrangement::random_simple_affinization(
            &normals,
            affinization_seed,
            arrangement::AFFINIZATION_RETRY_BUDGET,
        ) else {
            continue;
        };
        let spec = ArrangementSpec::new(normals, offsets);
        out.push(CorpusEntry { spec, group });
    }
    out
}
