//! The graded ring presentation: polynomial generators `u_1..u_n` (degree 2)
//! and one sector generator per nontrivial group element (degree twice its
//! age), modulo three relation families:
//!
//! * `I` — sector products: each product of two sector generators rewrites
//!   to a signed monomial times the generator of the product sector;
//! * `J` — linear relations, one per ambient coordinate;
//! * `K` — kernel relations: a sector generator times the minimal monomials
//!   whose hyperplanes miss the sector's locus.
//!
//! The identity sector's generator is substituted by 1 throughout, so only
//! strictly positive degrees appear.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arrangement::{self, ArrangementSpec};
use crate::stabilizers::{self, StabilizerGroup};
use crate::Result;

/// Exponent vector over the generator list, `u`'s first then sector
/// generators. Structural (lexicographic) ordering only; the Gröbner
/// module imposes its own monomial order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial {
            exps: vec![0; width],
        }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// Single variable power.
    pub fn var(width: usize, idx: usize, e: u32) -> Self {
        let mut m = Monomial::one(width);
        m.exps[idx] = e;
        m
    }

    pub fn width(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.width(), other.width());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// Weighted degree against per-generator degrees.
    pub fn weighted_degree(&self, degrees: &[u64]) -> u64 {
        self.exps
            .iter()
            .zip(degrees)
            .map(|(&e, &d)| e as u64 * d)
            .sum()
    }
}

/// Polynomial with rational coefficients. Zero coefficients are never
/// stored; terms are kept in a deterministic structural order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    width: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(width: usize) -> Self {
        Polynomial {
            width,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(m: Monomial, c: BigRational) -> Self {
        let mut p = Polynomial::zero(m.width());
        p.add_term(m, c);
        p
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        debug_assert_eq!(m.width(), self.width);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.width);
        }
        let mut out = Polynomial::zero(self.width);
        for (m, c) in self.terms() {
            out.terms.insert(m.clone(), c * factor);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let mut out = Polynomial::zero(self.width);
        for (mm, c) in self.terms() {
            out.terms.insert(mm.mul(m), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.width);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Weighted degree if homogeneous, else `None`.
    pub fn homogeneous_degree(&self, degrees: &[u64]) -> Option<u64> {
        let mut it = self.terms.keys();
        let first = it.next()?.weighted_degree(degrees);
        for m in it {
            if m.weighted_degree(degrees) != first {
                return None;
            }
        }
        Some(first)
    }
}

/// Which relation family a relation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationOrigin {
    I,
    J,
    K,
}

impl RelationOrigin {
    pub fn tag(self) -> &'static str {
        match self {
            RelationOrigin::I => "I",
            RelationOrigin::J => "J",
            RelationOrigin::K => "K",
        }
    }
}

/// A tagged relation.
#[derive(Debug, Clone)]
pub struct Relation {
    pub origin: RelationOrigin,
    pub poly: Polynomial,
}

/// Graded generators and the full relation list.
///
/// Sector generators are numbered by the lexicographic order of their
/// logweight tuples (the group's element order with the identity dropped),
/// and named `g1..gm`; polynomial generators are `u1..un`.
#[derive(Debug, Clone)]
pub struct RingPresentation {
    n_u: usize,
    gamma_degrees: Vec<u64>,
    relations: Vec<Relation>,
}

impl RingPresentation {
    pub fn n_u(&self) -> usize {
        self.n_u
    }

    pub fn num_gamma(&self) -> usize {
        self.gamma_degrees.len()
    }

    pub fn num_generators(&self) -> usize {
        self.n_u + self.gamma_degrees.len()
    }

    /// Generator degrees: 2 for each `u`, then the sector degrees.
    pub fn degrees(&self) -> Vec<u64> {
        let mut d = vec![2u64; self.n_u];
        d.extend_from_slice(&self.gamma_degrees);
        d
    }

    pub fn gamma_degrees(&self) -> &[u64] {
        &self.gamma_degrees
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relations_of(&self, origin: RelationOrigin) -> Vec<&Polynomial> {
        self.relations
            .iter()
            .filter(|r| r.origin == origin)
            .map(|r| &r.poly)
            .collect()
    }

    pub fn generator_name(&self, idx: usize) -> String {
        if idx < self.n_u {
            format!("u{}", idx + 1)
        } else {
            format!("g{}", idx - self.n_u + 1)
        }
    }

    pub fn generator_names(&self) -> Vec<String> {
        (0..self.num_generators())
            .map(|i| self.generator_name(i))
            .collect()
    }

    /// Same generators, different relation list.
    pub fn with_relations(&self, relations: Vec<Relation>) -> Self {
        RingPresentation {
            n_u: self.n_u,
            gamma_degrees: self.gamma_degrees.clone(),
            relations,
        }
    }
}

/// Generator index of the sector generator of group element `t_idx` (> 0).
fn gamma_var(n_u: usize, t_idx: usize) -> usize {
    debug_assert!(t_idx > 0, "the identity has no generator");
    n_u + t_idx - 1
}

/// Sector product relations, one per unordered pair of nontrivial elements
/// (pairs with the same element twice included). Symmetry makes the ordered
/// duplicates identical, so each pair is emitted once.
pub fn ideal_i(group: &StabilizerGroup) -> Vec<Polynomial> {
    let n = group.n();
    let width = n + group.order() - 1;
    let mut out = Vec::new();
    for t1 in 1..group.order() {
        for t2 in t1..group.order() {
            let data = stabilizers::abc_sets(group, t1, t2);
            let prod = group.mul_index(t1, t2);
            // Degree bookkeeping: both sides of the relation agree.
            debug_assert_eq!(
                group.degree(t1) + group.degree(t2),
                2 * (2 * data.a.len() + data.b.len() + data.c.len()) as u64
                    + group.degree(prod)
            );
            let mut lhs = Monomial::one(width);
            lhs.exps[gamma_var(n, t1)] += 1;
            lhs.exps[gamma_var(n, t2)] += 1;
            let mut rhs = Monomial::one(width);
            for &i in &data.a {
                rhs.exps[i] += 2;
            }
            for &i in data.b.iter().chain(&data.c) {
                rhs.exps[i] += 1;
            }
            if prod != group.identity_index() {
                rhs.exps[gamma_var(n, prod)] += 1;
            }
            let sign = if (data.a.len() + data.b.len()).is_multiple_of(2) {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            let mut poly = Polynomial::from_term(lhs, BigRational::one());
            poly.add_term(rhs, -sign);
            out.push(poly);
        }
    }
    out
}

/// Linear relations: for each ambient coordinate `j`, the form
/// `sum_i (a_i)_j u_i`.
pub fn ideal_j(normals: &[Vec<BigInt>], gamma_count: usize) -> Vec<Polynomial> {
    let n = normals.len();
    let d = normals.first().map_or(0, Vec::len);
    let width = n + gamma_count;
    (0..d)
        .map(|j| {
            let mut poly = Polynomial::zero(width);
            for (i, a) in normals.iter().enumerate() {
                poly.add_term(
                    Monomial::var(width, i, 1),
                    BigRational::from(a[j].clone()),
                );
            }
            poly
        })
        .collect()
}

/// Kernel relations. For each group element `t`, enumerate the subsets
/// `L ⊆ S(t)`, smallest first, keeping `L` when the hyperplanes of
/// `L ∪ S(t)^c` have empty intersection and no kept subset is contained in
/// it; each kept `L` contributes the monomial `γ_t · ∏_{i∈L} u_i`.
/// The empty `L` is allowed and yields the bare sector generator.
pub fn ideal_k(spec: &ArrangementSpec, group: &StabilizerGroup) -> Vec<Polynomial> {
    let n = group.n();
    let width = n + group.order() - 1;
    let mut out = Vec::new();
    for t in 0..group.order() {
        let fixed = group.fixed_set(t).to_vec();
        let moved = group.moved_set(t);
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for size in 0..=fixed.len() {
            'candidates: for subset in fixed.iter().copied().combinations(size) {
                for prev in &kept {
                    if prev.iter().all(|i| subset.contains(i)) {
                        continue 'candidates;
                    }
                }
                let mut joint = subset.clone();
                joint.extend_from_slice(&moved);
                if arrangement::intersection_empty(spec, &joint) {
                    kept.push(subset);
                }
            }
        }
        for subset in kept {
            let mut m = Monomial::one(width);
            for &i in &subset {
                m.exps[i] += 1;
            }
            if t != group.identity_index() {
                m.exps[gamma_var(n, t)] += 1;
            }
            out.push(Polynomial::from_term(m, BigRational::one()));
        }
    }
    out
}

/// Assemble the presentation from a validated simple arrangement and its
/// stabilizer group.
pub fn assemble_presentation(
    spec: &ArrangementSpec,
    group: &StabilizerGroup,
) -> RingPresentation {
    let gamma_degrees: Vec<u64> = (1..group.order()).map(|t| group.degree(t)).collect();
    let mut relations = Vec::new();
    for poly in ideal_i(group) {
        relations.push(Relation {
            origin: RelationOrigin::I,
            poly,
        });
    }
    for poly in ideal_j(spec.normals(), gamma_degrees.len()) {
        relations.push(Relation {
            origin: RelationOrigin::J,
            poly,
        });
    }
    for poly in ideal_k(spec, group) {
        relations.push(Relation {
            origin: RelationOrigin::K,
            poly,
        });
    }
    let pres = RingPresentation {
        n_u: spec.n(),
        gamma_degrees,
        relations,
    };
    debug_assert!({
        let degrees = pres.degrees();
        pres.relations
            .iter()
            .all(|r| r.poly.homogeneous_degree(&degrees).is_some())
    });
    pres
}

/// Validate, require simplicity, build the group, and assemble.
pub fn build_presentation(
    spec: &ArrangementSpec,
) -> Result<(StabilizerGroup, RingPresentation)> {
    arrangement::validated(spec)?;
    arrangement::require_simple(spec)?;
    let group = stabilizers::full_group(spec)?;
    let pres = assemble_presentation(spec, &group);
    Ok((group, pres))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizers::full_group;

    fn orbi_p2() -> ArrangementSpec {
        ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-2, -1]], &[0, 0, 1])
    }

    fn t2_quotient() -> ArrangementSpec {
        ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[-1, 1]], &[0, 0, 1, 2])
    }

    fn smooth_p2() -> ArrangementSpec {
        ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]], &[0, 0, 1])
    }

    fn mono(width: usize, entries: &[(usize, u32)]) -> Monomial {
        let mut m = Monomial::one(width);
        for &(i, e) in entries {
            m.exps[i] += e;
        }
        m
    }

    fn poly(width: usize, terms: &[(&[(usize, u32)], i64)]) -> Polynomial {
        let mut p = Polynomial::zero(width);
        for (m, c) in terms {
            p.add_term(mono(width, m), BigRational::from(BigInt::from(*c)));
        }
        p
    }

    #[test]
    fn ideal_i_single_sector_square() {
        let group = full_group(&orbi_p2()).unwrap();
        let rels = ideal_i(&group);
        // One unordered pair: the nontrivial element squared.
        assert_eq!(rels.len(), 1);
        // gamma^2 - u2^2 u3^2 on generators (u1,u2,u3,g1).
        let expected = poly(4, &[(&[(3, 2)], 1), (&[(1, 2), (2, 2)], -1)]);
        assert_eq!(rels[0], expected);

        let group = full_group(&t2_quotient()).unwrap();
        let rels = ideal_i(&group);
        assert_eq!(rels.len(), 1);
        let expected = poly(5, &[(&[(4, 2)], 1), (&[(2, 2), (3, 2)], -1)]);
        assert_eq!(rels[0], expected);
    }

    #[test]
    fn ideal_i_odd_sign() {
        // d = 1, normals (1) and (2): one nontrivial sector moving only the
        // second coordinate, so the square relation picks up a minus sign.
        let spec = ArrangementSpec::from_i64(&[&[1], &[2]], &[0, 1]);
        let group = full_group(&spec).unwrap();
        assert_eq!(group.order(), 2);
        assert_eq!(group.moved_set(1), vec![1]);
        let rels = ideal_i(&group);
        assert_eq!(rels.len(), 1);
        // gamma^2 + u2^2
        let expected = poly(3, &[(&[(2, 2)], 1), (&[(1, 2)], 1)]);
        assert_eq!(rels[0], expected);
    }

    #[test]
    fn ideal_j_fixtures() {
        let rels = ideal_j(orbi_p2().normals(), 1);
        assert_eq!(
            rels,
            vec![
                poly(4, &[(&[(0, 1)], 1), (&[(2, 1)], -2)]),
                poly(4, &[(&[(1, 1)], 1), (&[(2, 1)], -1)]),
            ]
        );

        let rels = ideal_j(t2_quotient().normals(), 1);
        assert_eq!(
            rels,
            vec![
                poly(5, &[(&[(0, 1)], 1), (&[(2, 1)], -1), (&[(3, 1)], -1)]),
                poly(5, &[(&[(1, 1)], 1), (&[(2, 1)], -1), (&[(3, 1)], 1)]),
            ]
        );

        // Identity columns plus all-minus-ones: u_j - u_{d+1} for each j.
        let spec = ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]], &[0, 0, 1]);
        let rels = ideal_j(spec.normals(), 0);
        assert_eq!(
            rels,
            vec![
                poly(3, &[(&[(0, 1)], 1), (&[(2, 1)], -1)]),
                poly(3, &[(&[(1, 1)], 1), (&[(2, 1)], -1)]),
            ]
        );
    }

    #[test]
    fn ideal_k_fixtures() {
        let spec = orbi_p2();
        let group = full_group(&spec).unwrap();
        let rels = ideal_k(&spec, &group);
        assert_eq!(
            rels,
            vec![
                poly(4, &[(&[(0, 1), (1, 1), (2, 1)], 1)]), // u1 u2 u3
                poly(4, &[(&[(0, 1), (3, 1)], 1)]),         // g1 u1
            ]
        );

        let spec = t2_quotient();
        let group = full_group(&spec).unwrap();
        let rels = ideal_k(&spec, &group);
        let expected = vec![
            poly(5, &[(&[(0, 1), (1, 1), (2, 1)], 1)]),
            poly(5, &[(&[(0, 1), (1, 1), (3, 1)], 1)]),
            poly(5, &[(&[(0, 1), (2, 1), (3, 1)], 1)]),
            poly(5, &[(&[(1, 1), (2, 1), (3, 1)], 1)]),
            poly(5, &[(&[(0, 1), (4, 1)], 1)]),
            poly(5, &[(&[(1, 1), (4, 1)], 1)]),
        ];
        assert_eq!(rels, expected);
    }

    #[test]
    fn k_generators_use_only_fixed_indices() {
        for spec in [orbi_p2(), t2_quotient()] {
            let group = full_group(&spec).unwrap();
            let n = spec.n();
            for t in 0..group.order() {
                let fixed = group.fixed_set(t);
                for p in ideal_k(&spec, &group) {
                    let (m, _) = p.terms().next().unwrap();
                    // Check only relations belonging to sector t.
                    let in_sector = if t == 0 {
                        (n..m.width()).all(|v| m.exp(v) == 0)
                    } else {
                        m.exp(n + t - 1) == 1
                    };
                    if in_sector {
                        for i in 0..n {
                            if m.exp(i) > 0 {
                                assert!(fixed.contains(&i));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_pair_specialization() {
        // For t2 = t1^{-1}: A = moved set, B = C = empty, so the relation is
        // gamma_t gamma_{t^-1} - (-1)^{|moved|} prod u_i^2.
        let spec = ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-3, -1]], &[0, 0, 1]);
        let group = full_group(&spec).unwrap();
        assert_eq!(group.order(), 3);
        let t = 1;
        let inv = group.inverse_index(t);
        assert_ne!(t, inv);
        let data = stabilizers::abc_sets(&group, t, inv);
        assert_eq!(data.a, group.moved_set(t));
        assert!(data.b.is_empty() && data.c.is_empty());
        let rels = ideal_i(&group);
        let width = spec.n() + group.order() - 1;
        let expected_pair = {
            let mut lhs = Monomial::one(width);
            lhs.exps[spec.n() + t - 1] += 1;
            lhs.exps[spec.n() + inv - 1] += 1;
            let mut rhs = Monomial::one(width);
            for &i in &data.a {
                rhs.exps[i] += 2;
            }
            let sign = if data.a.len().is_multiple_of(2) { 1 } else { -1 };
            let mut p = Polynomial::from_term(lhs, BigRational::one());
            p.add_term(rhs, BigRational::from(BigInt::from(-sign)));
            p
        };
        assert!(rels.contains(&expected_pair));
    }

    #[test]
    fn presentation_shape_and_homogeneity() {
        for spec in [orbi_p2(), t2_quotient(), smooth_p2()] {
            let (group, pres) = build_presentation(&spec).unwrap();
            assert_eq!(pres.n_u(), spec.n());
            assert_eq!(pres.num_gamma(), group.order() - 1);
            let degrees = pres.degrees();
            for r in pres.relations() {
                assert!(r.poly.homogeneous_degree(&degrees).is_some());
            }
            // J has exactly d elements, linearly independent over Q: their
            // coefficient matrix is the normal matrix, which has full rank.
            assert_eq!(pres.relations_of(RelationOrigin::J).len(), spec.d());
            assert_eq!(crate::exactlin::rank(&spec.beta()), spec.d());
        }
    }

    #[test]
    fn smooth_arrangement_has_no_sectors() {
        let (group, pres) = build_presentation(&smooth_p2()).unwrap();
        assert_eq!(group.order(), 1);
        assert_eq!(pres.num_gamma(), 0);
        assert!(pres.relations_of(RelationOrigin::I).is_empty());
        // Identity-sector kernel relations are plain monomial relations in
        // the u's: the ordinary cohomology presentation.
        let k = pres.relations_of(RelationOrigin::K);
        assert_eq!(k.len(), 1);
        assert_eq!(
            k[0],
            &poly(3, &[(&[(0, 1), (1, 1), (2, 1)], 1)])
        );
    }

    #[test]
    fn build_rejects_non_simple() {
        let central = ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-2, -1]], &[0, 0, 0]);
        assert!(matches!(
            build_presentation(&central),
            Err(crate::Error::NotSimple(_))
        ));
    }

    #[test]
    fn build_rejects_invalid() {
        let bad = ArrangementSpec::from_i64(&[&[2, 0], &[0, 2], &[-1, -1]], &[0, 0, 1]);
        assert!(matches!(
            build_presentation(&bad),
            Err(crate::Error::Validation(_))
        ));
    }
}
