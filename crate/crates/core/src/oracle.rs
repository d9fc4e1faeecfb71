//! Independent cross-check of the Gröbner route: graded dimensions of the
//! quotient ring computed degree by degree with plain exact linear algebra,
//! no rewriting involved.
//!
//! The degree-`d` dimension is the number of degree-`d` monomials minus the
//! rank of the span of all `m * g` with `g` a relation and `m` a monomial of
//! complementary degree. Rank is computed fraction-free: rows are cleared to
//! integers and eliminated with cross-multiplication, dividing out content
//! to keep entries small.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::groebner::PoincarePolynomial;
use crate::presentation::{Monomial, RingPresentation};

/// All monomials of the given weighted degree. Generator degrees must be
/// strictly positive, so the list is finite.
pub fn monomials_of_weighted_degree(degrees: &[u64], target: u64) -> Vec<Monomial> {
    debug_assert!(degrees.iter().all(|&d| d > 0));
    let mut out = Vec::new();
    let mut current = vec![0u32; degrees.len()];
    fn recurse(
        degrees: &[u64],
        v: usize,
        remaining: u64,
        current: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if v == degrees.len() {
            if remaining == 0 {
                out.push(Monomial::from_exps(current.clone()));
            }
            return;
        }
        let step = degrees[v];
        let max = remaining / step;
        for e in 0..=max {
            current[v] = e as u32;
            recurse(degrees, v + 1, remaining - e * step, current, out);
        }
        current[v] = 0;
    }
    recurse(degrees, 0, target, &mut current, &mut out);
    out
}

type SparseRow = Vec<(usize, BigInt)>;

fn strip_content(row: &mut SparseRow) {
    let mut content = BigInt::zero();
    for (_, c) in row.iter() {
        content = content.gcd(c);
    }
    if content > BigInt::one() {
        for (_, c) in row.iter_mut() {
            *c = &*c / &content;
        }
    }
    if let Some((_, lead)) = row.first() {
        if lead.is_negative() {
            for (_, c) in row.iter_mut() {
                *c = -c.clone();
            }
        }
    }
}

/// `row * b_lead - pivot * a_lead`, merged by column; leading columns cancel.
fn eliminate(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let a_lead = row[0].1.clone();
    let b_lead = pivot[0].1.clone();
    let mut out = SparseRow::new();
    let mut i = 0;
    let mut j = 0;
    while i < row.len() || j < pivot.len() {
        let next = if j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
            let e = (row[i].0, &row[i].1 * &b_lead);
            i += 1;
            e
        } else if i >= row.len() || pivot[j].0 < row[i].0 {
            let e = (pivot[j].0, -(&pivot[j].1 * &a_lead));
            j += 1;
            e
        } else {
            let c = &row[i].1 * &b_lead - &pivot[j].1 * &a_lead;
            let e = (row[i].0, c);
            i += 1;
            j += 1;
            e
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut row: SparseRow) {
        loop {
            let Some(&(lead, _)) = row.first() else { return };
            match self.pivots.get(&lead) {
                None => {
                    strip_content(&mut row);
                    self.pivots.insert(lead, row);
                    return;
                }
                Some(pivot) => {
                    row = eliminate(&row, pivot);
                    if row.len() > 4 {
                        strip_content(&mut row);
                    }
                }
            }
        }
    }
}

/// Dimension of the degree-`degree` graded piece of the quotient.
pub fn graded_dimension(pres: &RingPresentation, degree: u64) -> usize {
    let degrees = pres.degrees();
    let cols = monomials_of_weighted_degree(&degrees, degree);
    if cols.is_empty() {
        return 0;
    }
    let index: BTreeMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut echelon = Echelon::new();
    'rows: for rel in pres.relations() {
        let gdeg = rel
            .poly
            .homogeneous_degree(&degrees)
            .expect("relations are homogeneous");
        if gdeg > degree {
            continue;
        }
        for mult in monomials_of_weighted_degree(&degrees, degree - gdeg) {
            if echelon.rank() == cols.len() {
                break 'rows; // full rank already
            }
            let shifted = rel.poly.mul_monomial(&mult);
            let mut denom_lcm = BigInt::one();
            for (_, c) in shifted.terms() {
                denom_lcm = denom_lcm.lcm(c.denom());
            }
            let mut row: SparseRow = shifted
                .terms()
                .map(|(m, c)| {
                    let col = *index.get(m).expect("product stays in degree");
                    let val = c.numer() * (&denom_lcm / c.denom());
                    (col, val)
                })
                .collect();
            row.sort_by_key(|&(col, _)| col);
            echelon.insert(row);
        }
    }
    cols.len() - echelon.rank()
}

/// Poincaré data from the oracle, with a truncation warning when the top of
/// the computed range is still nonzero (the bound may be too small; actual
/// finiteness certification is the Gröbner module's job).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OraclePoincare {
    pub polynomial: PoincarePolynomial,
    pub truncation_warning: bool,
}

/// Default degree bound: comfortably above the top degree of desk-scale
/// quotients.
pub fn default_max_degree(n: usize) -> u64 {
    4 * n as u64
}

/// Graded dimensions for all even degrees up to `max_degree`.
pub fn oracle_poincare(pres: &RingPresentation, max_degree: u64) -> OraclePoincare {
    let mut polynomial = PoincarePolynomial::default();
    let mut degree = 0;
    while degree <= max_degree {
        polynomial.add(degree, graded_dimension(pres, degree));
        degree += 2;
    }
    let truncation_warning = max_degree >= 2
        && polynomial.coefficient(max_degree) > 0
        && polynomial.coefficient(max_degree - 2) > 0;
    OraclePoincare {
        polynomial,
        truncation_warning,
    }
}
