//! Reduced Gröbner bases for the weighted-homogeneous relation ideals, and
//! the quotient-ring invariants read off them: standard monomials, the
//! orbifold Poincaré polynomial, and the Euler characteristic.
//!
//! The monomial order is fixed: weighted degree first, ties broken by
//! graded reverse lexicographic with every sector generator preceding every
//! `u`. Under this order the leading monomial of each sector-product
//! relation is the quadratic sector term, so those relations act as rewrite
//! rules eliminating sector products immediately.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::presentation::{Monomial, Polynomial, RingPresentation};
use crate::{Error, Result};

/// The fixed monomial order. Variable significance runs sector generators
/// first (ascending logweight tuple), then `u_1..u_n`; exponent vectors are
/// laid out `u`'s first, so the reverse-lexicographic scan reads the `u`
/// block backwards before the sector block backwards.
#[derive(Debug, Clone)]
pub struct MonomialOrder {
    degrees: Vec<u64>,
    n_u: usize,
}

impl MonomialOrder {
    pub fn new(n_u: usize, gamma_degrees: &[u64]) -> Self {
        let mut degrees = vec![2u64; n_u];
        degrees.extend_from_slice(gamma_degrees);
        MonomialOrder { degrees, n_u }
    }

    pub fn for_presentation(pres: &RingPresentation) -> Self {
        MonomialOrder::new(pres.n_u(), pres.gamma_degrees())
    }

    pub fn num_vars(&self) -> usize {
        self.degrees.len()
    }

    pub fn n_u(&self) -> usize {
        self.n_u
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u64 {
        m.weighted_degree(&self.degrees)
    }

    pub fn generator_name(&self, v: usize) -> String {
        if v < self.n_u {
            format!("u{}", v + 1)
        } else {
            format!("g{}", v - self.n_u + 1)
        }
    }

    /// Total order: by weighted degree, then reverse lexicographic from the
    /// least significant variable (the last `u`); at the first differing
    /// position the smaller exponent wins.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let da = self.weighted_degree(a);
        let db = self.weighted_degree(b);
        if da != db {
            return da.cmp(&db);
        }
        for i in (0..self.n_u).rev() {
            if a.exp(i) != b.exp(i) {
                return if a.exp(i) < b.exp(i) {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        for i in (self.n_u..self.num_vars()).rev() {
            if a.exp(i) != b.exp(i) {
                return if a.exp(i) < b.exp(i) {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }
}

/// Terms sorted descending under the order; the leading term is first.
type Terms = Vec<(Monomial, BigRational)>;

fn sort_terms(p: &Polynomial, ord: &MonomialOrder) -> Terms {
    let mut terms: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    terms.sort_by(|(a, _), (b, _)| ord.cmp(b, a));
    terms
}

fn to_polynomial(terms: &Terms, width: usize) -> Polynomial {
    let mut p = Polynomial::zero(width);
    for (m, c) in terms {
        p.add_term(m.clone(), c.clone());
    }
    p
}

fn make_monic(terms: &mut Terms) {
    if let Some((_, lc)) = terms.first() {
        let lc = lc.clone();
        if !lc.is_one() {
            for (_, c) in terms.iter_mut() {
                *c /= lc.clone();
            }
        }
    }
}

/// `p - factor * shift * q`, all term lists sorted descending.
fn sub_mul(p: &Terms, q: &Terms, factor: &BigRational, shift: &Monomial, ord: &MonomialOrder) -> Terms {
    let mut out = Terms::with_capacity(p.len() + q.len());
    let mut i = 0;
    let mut j = 0;
    while i < p.len() || j < q.len() {
        if j >= q.len() {
            out.push(p[i].clone());
            i += 1;
            continue;
        }
        let qm = q[j].0.mul(shift);
        if i >= p.len() {
            out.push((qm, -(factor * &q[j].1)));
            j += 1;
            continue;
        }
        match ord.cmp(&p[i].0, &qm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((qm, -(factor * &q[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = &p[i].1 - factor * &q[j].1;
                if !c.is_zero() {
                    out.push((qm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction: rewrite every term of `poly` that some basis leading
/// monomial divides. Basis elements must be monic.
fn reduce(poly: Terms, basis: &[Terms], skip: Option<usize>, ord: &MonomialOrder) -> Terms {
    let mut out: Terms = Vec::new();
    let mut rest = poly;
    'outer: while let Some((lm, lc)) = rest.first().cloned() {
        for (k, g) in basis.iter().enumerate() {
            if Some(k) == skip || g.is_empty() {
                continue;
            }
            let glm = &g[0].0;
            if glm.divides(&lm) {
                let shift = glm.div_into(&lm);
                rest = sub_mul(&rest, g, &lc, &shift, ord);
                continue 'outer;
            }
        }
        out.push(rest.remove(0));
    }
    out
}

fn s_polynomial(f: &Terms, g: &Terms, ord: &MonomialOrder) -> Terms {
    let lcm = f[0].0.lcm(&g[0].0);
    let shift_f = f[0].0.div_into(&lcm);
    let shifted_f: Terms = f.iter().map(|(m, c)| (m.mul(&shift_f), c.clone())).collect();
    let shift_g = g[0].0.div_into(&lcm);
    sub_mul(&shifted_f, g, &BigRational::one(), &shift_g, ord)
}

/// A reduced Gröbner basis together with its order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<Terms>,
}

/// Buchberger's algorithm with the normal selection strategy (lowest
/// weighted degree of the pair lcm first) and full inter-reduction, giving
/// the unique reduced basis for the fixed order.
pub fn buchberger(relations: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
    let mut basis: Vec<Terms> = Vec::new();
    for r in relations {
        let mut t = sort_terms(r, &order);
        if !t.is_empty() {
            make_monic(&mut t);
            basis.push(t);
        }
    }

    let pair_key = |basis: &[Terms], i: usize, j: usize| {
        let lcm = basis[i][0].0.lcm(&basis[j][0].0);
        (
            order.weighted_degree(&lcm),
            lcm.exps().to_vec(),
            i,
            j,
        )
    };
    let mut queue: BTreeSet<(u64, Vec<u32>, usize, usize)> = BTreeSet::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            queue.insert(pair_key(&basis, i, j));
            pending.insert((i, j));
        }
    }

    while let Some(entry) = queue.iter().next().cloned() {
        queue.remove(&entry);
        let (_, lcm_exps, i, j) = entry;
        pending.remove(&(i, j));
        let lcm = Monomial::from_exps(lcm_exps);
        // Coprime leading monomials: the S-polynomial reduces to zero.
        if basis[i][0].0.mul(&basis[j][0].0) == lcm {
            continue;
        }
        // Chain criterion: a third element dividing the lcm whose pairs with
        // both ends are already treated makes this pair redundant.
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], &order);
        let mut r = reduce(s, &basis, None, &order);
        if !r.is_empty() {
            make_monic(&mut r);
            let new_idx = basis.len();
            basis.push(r);
            for k in 0..new_idx {
                queue.insert(pair_key(&basis, k, new_idx));
                pending.insert((k, new_idx));
            }
        }
    }

    // Minimalize: drop elements whose leading monomial another divides.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lm_i = &basis[i][0].0;
            let lm_j = &basis[j][0].0;
            if lm_j.divides(lm_i) && (lm_j != lm_i || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut reduced: Vec<Terms> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // Inter-reduce tails until stable.
    loop {
        let mut changed = false;
        for i in 0..reduced.len() {
            let g = reduced[i].clone();
            let mut r = reduce(g, &reduced, Some(i), &order);
            make_monic(&mut r);
            if r != reduced[i] {
                reduced[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    GroebnerBasis {
        order,
        polys: reduced,
    }
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.polys
            .iter()
            .map(|t| to_polynomial(t, self.order.num_vars()))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|t| t[0].0.clone()).collect()
    }

    /// The unique remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let sorted = sort_terms(p, &self.order);
        let r = reduce(sorted, &self.polys, None, &self.order);
        to_polynomial(&r, self.order.num_vars())
    }

    /// Standard monomials: everything outside the leading-term ideal.
    /// Finite exactly when every variable has a pure power among the
    /// leading terms; otherwise the quotient has infinite dimension.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let width = self.order.num_vars();
        let lms = self.leading_monomials();
        if lms.iter().any(Monomial::is_unit) {
            return Ok(Vec::new()); // the ideal is the whole ring
        }
        let mut bounds = Vec::with_capacity(width);
        for v in 0..width {
            let bound = lms
                .iter()
                .filter(|m| {
                    m.exp(v) > 0 && (0..width).all(|w| w == v || m.exp(w) == 0)
                })
                .map(|m| m.exp(v))
                .min();
            match bound {
                Some(b) => bounds.push(b),
                None => return Err(Error::NotFinite(self.order.generator_name(v))),
            }
        }
        let mut out = Vec::new();
        let mut current = vec![0u32; width];
        enumerate_box(&bounds, 0, &mut current, &mut |exps| {
            let m = Monomial::from_exps(exps.to_vec());
            if !lms.iter().any(|lm| lm.divides(&m)) {
                out.push(m);
            }
        });
        out.sort_by(|a, b| self.order.cmp(a, b));
        Ok(out)
    }

    /// Graded dimension counts of the quotient ring.
    pub fn poincare(&self) -> Result<PoincarePolynomial> {
        let std = self.standard_monomials()?;
        let mut poly = PoincarePolynomial::default();
        for m in &std {
            poly.add(self.order.weighted_degree(m), 1);
        }
        Ok(poly)
    }

    /// All S-polynomials reduce to zero; test support.
    #[cfg(test)]
    pub fn is_groebner(&self) -> bool {
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let s = s_polynomial(&self.polys[i], &self.polys[j], &self.order);
                if !reduce(s, &self.polys, None, &self.order).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

fn enumerate_box(bounds: &[u32], v: usize, current: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if v == bounds.len() {
        f(current);
        return;
    }
    for e in 0..bounds[v] {
        current[v] = e;
        enumerate_box(bounds, v + 1, current, f);
    }
    current[v] = 0;
}

/// Finitely supported map from even degree to dimension.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PoincarePolynomial {
    coeffs: BTreeMap<u64, usize>,
}

impl PoincarePolynomial {
    pub fn add(&mut self, degree: u64, count: usize) {
        if count > 0 {
            *self.coeffs.entry(degree).or_insert(0) += count;
        }
    }

    pub fn coefficient(&self, degree: u64) -> usize {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &BTreeMap<u64, usize> {
        &self.coeffs
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn euler_characteristic(&self) -> usize {
        self.coeffs.values().sum()
    }

    pub fn from_pairs(pairs: &[(u64, usize)]) -> Self {
        let mut p = PoincarePolynomial::default();
        for &(d, c) in pairs {
            p.add(d, c);
        }
        p
    }
}

impl std::fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, &c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if d == 0 {
                write!(f, "{c}")?;
            } else if c == 1 {
                write!(f, "t^{d}")?;
            } else {
                write!(f, "{c}t^{d}")?;
            }
        }
        Ok(())
    }
}
