//! The finite stabilizer group of the torus action, and its per-element
//! combinatorics.
//!
//! Elements are represented canonically by their logweight tuples: the
//! fractional parts, one per hyperplane, of any rational lift. The embedding
//! of the torus into the coordinate torus is injective, so the tuple is a
//! faithful key, and the group operation is componentwise addition mod 1.

use std::collections::{BTreeMap, VecDeque};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arrangement::ArrangementSpec;
use crate::exactlin::{self, fractional_part, IntMatrix};
use crate::{Error, Result};

/// A finite-order torus element, keyed by its logweight tuple.
#[derive(Debug, Clone)]
pub struct TorusElement {
    logweights: Vec<BigRational>,
    lift: Vec<BigRational>,
}

impl TorusElement {
    /// Canonicalize a rational lift into an element. The lift is retained as
    /// the membership witness; logweights are its fractional parts.
    pub fn from_lift(lift: Vec<BigRational>) -> Self {
        let logweights = lift.iter().map(fractional_part).collect();
        TorusElement { logweights, lift }
    }

    pub fn identity(n: usize) -> Self {
        TorusElement::from_lift(vec![BigRational::zero(); n])
    }

    pub fn logweights(&self) -> &[BigRational] {
        &self.logweights
    }

    pub fn lift(&self) -> &[BigRational] {
        &self.lift
    }

    pub fn is_identity(&self) -> bool {
        self.logweights.iter().all(Zero::is_zero)
    }

    /// Indices fixed by this element: logweight zero. 0-based, sorted.
    pub fn fixed_set(&self) -> Vec<usize> {
        (0..self.logweights.len())
            .filter(|&i| self.logweights[i].is_zero())
            .collect()
    }

    /// Complement of the fixed set. 0-based, sorted.
    pub fn moved_set(&self) -> Vec<usize> {
        (0..self.logweights.len())
            .filter(|&i| !self.logweights[i].is_zero())
            .collect()
    }

    /// Number of moved coordinates; the generator degree is twice this.
    pub fn age(&self) -> usize {
        self.moved_set().len()
    }

    pub fn mul(&self, other: &TorusElement) -> TorusElement {
        let lw: Vec<BigRational> = self
            .logweights
            .iter()
            .zip(&other.logweights)
            .map(|(a, b)| fractional_part(&(a + b)))
            .collect();
        TorusElement::from_lift(lw)
    }

    pub fn inverse(&self) -> TorusElement {
        let lw: Vec<BigRational> = self
            .logweights
            .iter()
            .map(|a| fractional_part(&(-a)))
            .collect();
        TorusElement::from_lift(lw)
    }
}

impl PartialEq for TorusElement {
    fn eq(&self, other: &Self) -> bool {
        self.logweights == other.logweights
    }
}
impl Eq for TorusElement {}
impl PartialOrd for TorusElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for TorusElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.logweights.cmp(&other.logweights)
    }
}

/// All complements `S^c` of size `d` whose normals form a basis.
/// Returned 0-based, each sorted, in lexicographic order.
pub fn enumerate_bases(normals: &[Vec<BigInt>]) -> Vec<Vec<usize>> {
    let n = normals.len();
    let d = normals.first().map_or(0, Vec::len);
    let beta = IntMatrix::from_cols(normals);
    (0..n)
        .combinations(d)
        .filter(|subset| !beta.select_cols(subset).determinant().is_zero())
        .collect()
}

/// The finite stabilizer subgroup attached to one basis complement `S^c`:
/// the lattice quotient by the basis span, realized as torus elements.
///
/// Each coset representative `y` is written as an integer combination of all
/// normals and as the unique rational combination of the basis normals; the
/// difference of coefficient vectors is a lift of the group element.
pub fn gamma_s(spec: &ArrangementSpec, basis_complement: &[usize]) -> Result<Vec<TorusElement>> {
    let n = spec.n();
    let d = spec.d();
    let beta = spec.beta();
    if basis_complement.len() != d {
        return Err(Error::NotABasis(
            basis_complement.iter().map(|&i| i + 1).collect(),
        ));
    }
    let sub = beta.select_cols(basis_complement);
    if sub.determinant().is_zero() {
        return Err(Error::NotABasis(
            basis_complement.iter().map(|&i| i + 1).collect(),
        ));
    }
    let vectors: Vec<Vec<BigInt>> = basis_complement
        .iter()
        .map(|&j| spec.normals()[j].clone())
        .collect();
    let quotient = exactlin::lattice_quotient(&vectors)?;
    let in_complement: BTreeMap<usize, usize> = basis_complement
        .iter()
        .enumerate()
        .map(|(pos, &j)| (j, pos))
        .collect();

    let mut out = Vec::new();
    for y in quotient.elements() {
        let c = exactlin::solve_integer(&beta, &y)
            .expect("normals span the lattice, so an integer combination exists");
        let y_rat: Vec<BigRational> = y.iter().map(|v| BigRational::from(v.clone())).collect();
        let dvec =
            exactlin::rational_feasible(&sub, &y_rat).expect("y lies in the span of a basis");
        let lift: Vec<BigRational> = (0..n)
            .map(|kk| {
                let ck = BigRational::from(c[kk].clone());
                match in_complement.get(&kk) {
                    Some(&pos) => ck - &dvec[pos],
                    None => ck,
                }
            })
            .collect();
        out.push(TorusElement::from_lift(lift));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A/B/C partition of the commonly moved indices of a pair of elements,
/// split by the logweight of the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorPairData {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

/// Element budget for the closure in [`full_group`].
pub const GROUP_ELEMENT_BUDGET: usize = 1_000_000;

/// The full finite stabilizer group with cached per-element data.
///
/// Elements are sorted by logweight tuple; the identity is index 0.
#[derive(Debug, Clone)]
pub struct StabilizerGroup {
    n: usize,
    elements: Vec<TorusElement>,
    index: BTreeMap<Vec<BigRational>, usize>,
    fixed_sets: Vec<Vec<usize>>,
    ages: Vec<usize>,
}

impl StabilizerGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Hyperplane count (length of every logweight tuple).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[TorusElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &TorusElement {
        &self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, t: &TorusElement) -> Option<usize> {
        self.index.get(t.logweights()).copied()
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        let p = self.elements[i].mul(&self.elements[j]);
        *self
            .index
            .get(p.logweights())
            .expect("group is closed under multiplication")
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        let inv = self.elements[i].inverse();
        *self
            .index
            .get(inv.logweights())
            .expect("group is closed under inversion")
    }

    /// `S(t)`: 0-based indices with logweight zero.
    pub fn fixed_set(&self, i: usize) -> &[usize] {
        &self.fixed_sets[i]
    }

    pub fn moved_set(&self, i: usize) -> Vec<usize> {
        self.elements[i].moved_set()
    }

    pub fn age(&self, i: usize) -> usize {
        self.ages[i]
    }

    /// Generator degree `2 * age`.
    pub fn degree(&self, i: usize) -> u64 {
        2 * self.ages[i] as u64
    }
}

/// Close the union of all basis stabilizer subgroups under the group
/// operation. Aborts if the closure exceeds `budget` elements.
pub fn full_group_with_budget(spec: &ArrangementSpec, budget: usize) -> Result<StabilizerGroup> {
    let n = spec.n();
    let mut generators: Vec<TorusElement> = Vec::new();
    for basis in enumerate_bases(spec.normals()) {
        for t in gamma_s(spec, &basis)? {
            if !generators.contains(&t) {
                generators.push(t);
            }
        }
    }
    let mut seen: BTreeMap<Vec<BigRational>, TorusElement> = BTreeMap::new();
    let identity = TorusElement::identity(n);
    seen.insert(identity.logweights().to_vec(), identity.clone());
    let mut queue: VecDeque<TorusElement> = VecDeque::new();
    queue.push_back(identity);
    for g in &generators {
        if seen.insert(g.logweights().to_vec(), g.clone()).is_none() {
            queue.push_back(g.clone());
        }
    }
    while let Some(t) = queue.pop_front() {
        for g in &generators {
            let p = t.mul(g);
            if !seen.contains_key(p.logweights()) {
                if seen.len() >= budget {
                    return Err(Error::GroupBudget(budget));
                }
                seen.insert(p.logweights().to_vec(), p.clone());
                queue.push_back(p);
            }
        }
    }
    let elements: Vec<TorusElement> = seen.into_values().collect();
    let index: BTreeMap<Vec<BigRational>, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, t)| (t.logweights().to_vec(), i))
        .collect();
    let fixed_sets = elements.iter().map(TorusElement::fixed_set).collect();
    let ages = elements.iter().map(TorusElement::age).collect();
    debug_assert!(elements[0].is_identity());
    Ok(StabilizerGroup {
        n,
        elements,
        index,
        fixed_sets,
        ages,
    })
}

/// [`full_group_with_budget`] at the default budget.
pub fn full_group(spec: &ArrangementSpec) -> Result<StabilizerGroup> {
    full_group_with_budget(spec, GROUP_ELEMENT_BUDGET)
}

/// The A/B/C partition for a pair of group elements.
///
/// For a commonly moved index, the logweights of `t1`, `t2`, and `t1 t2`
/// satisfy `a(t1) + a(t2) - a(t1 t2) ∈ {0, 1}`; the partition records which
/// case holds and whether the product logweight vanishes.
pub fn abc_sets(group: &StabilizerGroup, t1: usize, t2: usize) -> SectorPairData {
    let prod = group.mul_index(t1, t2);
    let lw1 = group.element(t1).logweights();
    let lw2 = group.element(t2).logweights();
    let lw12 = group.element(prod).logweights();
    let mut data = SectorPairData {
        a: Vec::new(),
        b: Vec::new(),
        c: Vec::new(),
    };
    for i in 0..group.n() {
        if lw1[i].is_zero() || lw2[i].is_zero() {
            continue;
        }
        if lw12[i].is_zero() {
            data.a.push(i);
        } else {
            let excess = &lw1[i] + &lw2[i] - &lw12[i];
            if excess.is_zero() {
                data.b.push(i);
            } else {
                debug_assert!(excess.is_one());
                data.c.push(i);
            }
        }
    }
    data
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn orbi_p2() -> ArrangementSpec {
        ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-2, -1]], &[0, 0, 1])
    }

    fn t2_quotient() -> ArrangementSpec {
        ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[-1, 1]], &[0, 0, 1, 2])
    }

    fn m_n(n: i64) -> ArrangementSpec {
        ArrangementSpec::from_i64(&[&[1, 0], &[0, 1], &[-n, -1]], &[0, 0, 1])
    }

    fn half() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(2))
    }

    #[test]
    fn bases_of_fixtures() {
        assert_eq!(
            enumerate_bases(orbi_p2().normals()),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        // All six pairs are independent.
        assert_eq!(enumerate_bases(t2_quotient().normals()).len(), 6);
        // d = 1: every singleton with a nonzero entry.
        let line = ArrangementSpec::from_i64(&[&[1], &[2], &[-1]], &[0, 0, 1]);
        assert_eq!(
            enumerate_bases(line.normals()),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn gamma_s_of_fixtures() {
        let spec = orbi_p2();
        let g = gamma_s(&spec, &[1, 2]).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g[0].is_identity());
        assert_eq!(g[1].logweights(), &[BigRational::zero(), half(), half()]);

        let g = gamma_s(&spec, &[0, 1]).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g[0].is_identity());

        let g = gamma_s(&t2_quotient(), &[2, 3]).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(
            g[1].logweights(),
            &[BigRational::zero(), BigRational::zero(), half(), half()]
        );
    }

    #[test]
    fn gamma_s_rejects_non_basis() {
        let spec = t2_quotient();
        assert!(matches!(gamma_s(&spec, &[0]), Err(Error::NotABasis(_))));
        // Dependent pair in a degenerate arrangement.
        let dep = ArrangementSpec::from_i64(&[&[1, 0], &[2, 0], &[0, 1]], &[0, 1, 0]);
        assert!(matches!(gamma_s(&dep, &[0, 1]), Err(Error::NotABasis(_))));
    }

    #[test]
    fn full_group_of_fixtures() {
        let g = full_group(&orbi_p2()).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(
            g.element(1).logweights(),
            &[BigRational::zero(), half(), half()]
        );
        assert_eq!(g.degree(1), 4);

        let g = full_group(&t2_quotient()).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.degree(1), 4);
    }

    #[test]
    fn full_group_of_mn_is_cyclic() {
        for n in 2..=6usize {
            let g = full_group(&m_n(n as i64)).unwrap();
            assert_eq!(g.order(), n);
            // Cyclic: some element has order n.
            let has_generator = g.elements().iter().any(|t| {
                let mut power = t.clone();
                let mut count = 1;
                while !power.is_identity() {
                    power = power.mul(t);
                    count += 1;
                }
                count == n
            });
            assert!(has_generator);
        }
    }

    #[test]
    fn abc_sets_of_fixtures() {
        let g = full_group(&orbi_p2()).unwrap();
        let pair = abc_sets(&g, 1, 1);
        assert_eq!(pair.a, vec![1, 2]);
        assert!(pair.b.is_empty());
        assert!(pair.c.is_empty());

        let with_id = abc_sets(&g, 0, 1);
        assert!(with_id.a.is_empty() && with_id.b.is_empty() && with_id.c.is_empty());

        let g = full_group(&t2_quotient()).unwrap();
        let pair = abc_sets(&g, 1, 1);
        assert_eq!(pair.a, vec![2, 3]);
        assert!(pair.b.is_empty() && pair.c.is_empty());
    }

    #[test]
    fn group_axioms_and_lift_witnesses() {
        for spec in [orbi_p2(), t2_quotient(), m_n(4)] {
            let g = full_group(&spec).unwrap();
            let beta = spec.beta();
            for i in 0..g.order() {
                let t = g.element(i);
                // Lift witnesses membership: beta * lift is integral.
                for entry in beta.mul_vec_rational(t.lift()) {
                    assert!(entry.is_integer());
                }
                // Logweights are the fractional parts of the lift.
                for (lw, x) in t.logweights().iter().zip(t.lift()) {
                    assert_eq!(lw, &fractional_part(x));
                    assert!(!lw.is_negative() && lw < &BigRational::one());
                }
                // Inverses exist and fix the same coordinates.
                let inv = g.inverse_index(i);
                assert_eq!(g.mul_index(i, inv), g.identity_index());
                assert_eq!(g.fixed_set(i), g.fixed_set(inv));
                // Off the fixed set, logweights of t and its inverse sum to 1.
                for idx in g.moved_set(i) {
                    let sum =
                        &g.element(i).logweights()[idx] + &g.element(inv).logweights()[idx];
                    assert!(sum.is_one());
                }
                // Closure.
                for j in 0..g.order() {
                    let _ = g.mul_index(i, j);
                }
            }
        }
    }

    #[test]
    fn gamma_s_order_matches_determinant() {
        for spec in [orbi_p2(), t2_quotient(), m_n(5)] {
            let beta = spec.beta();
            for basis in enumerate_bases(spec.normals()) {
                let det = beta.select_cols(&basis).determinant().abs();
                let g = gamma_s(&spec, &basis).unwrap();
                assert_eq!(BigInt::from(g.len()), det);
            }
        }
    }

    #[test]
    fn abc_is_symmetric() {
        let g = full_group(&m_n(5)).unwrap();
        for i in 0..g.order() {
            for j in 0..g.order() {
                assert_eq!(abc_sets(&g, i, j), abc_sets(&g, j, i));
            }
        }
    }
}
