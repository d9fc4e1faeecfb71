//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision: normal forms and kernels over the
//! integers, feasibility of rational linear systems, and lattice quotients.
//! Pivots are chosen smallest-absolute-value first, which bounds intermediate
//! entry growth and makes every output deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        IntMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Build from `i64` rows; test and fixture convenience.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<BigInt>]) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|c| c.len() == nrows), "ragged columns");
        let mut m = IntMatrix::zeros(nrows, ncols);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<BigInt> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * other.at(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }

    pub fn mul_vec_rational(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| BigRational::from(self.at(r, c).clone()) * &v[c])
                    .sum()
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Matrix with the selected columns, in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, idx.len());
        for (jnew, &j) in idx.iter().enumerate() {
            for r in 0..self.rows {
                m.set(r, jnew, self.at(r, j).clone());
            }
        }
        m
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| self.row(r)).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row(i) -= q * row(j)
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = q * self.at(j, c);
            let v = self.at(i, c) - delta;
            self.set(i, c, v);
        }
    }

    /// col(i) -= q * col(j)
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let delta = q * self.at(r, j);
            let v = self.at(r, i) - delta;
            self.set(r, i, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.at(i, c).clone();
            self.set(i, c, v);
        }
    }
}

/// Quotient of the saturation of a lattice by the lattice itself,
/// as invariant factors with one generating coset representative each.
///
/// Only the nontrivial factors (> 1) are kept; the quotient is trivial
/// exactly when `invariant_factors` is empty.
#[derive(Debug, Clone)]
pub struct LatticeQuotient {
    pub invariant_factors: Vec<BigInt>,
    pub coset_reps: Vec<Vec<BigInt>>,
    /// Ambient lattice dimension; kept so the trivial quotient still knows
    /// the length of its zero representative.
    pub dim: usize,
}

impl LatticeQuotient {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, f| acc * f)
    }

    /// Every element of the quotient group, each as a representative vector:
    /// all sums `e_1 g_1 + ... + e_m g_m` with `0 <= e_i < factor_i`.
    /// The zero coset comes first; enumeration order is deterministic.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.dim]];
        for (gen, factor) in self.coset_reps.iter().zip(&self.invariant_factors) {
            let mut next = Vec::new();
            let mut bound = BigInt::zero();
            while &bound < factor {
                for base in &out {
                    let v: Vec<BigInt> = base
                        .iter()
                        .zip(gen)
                        .map(|(b, g)| b + g * &bound)
                        .collect();
                    next.push(v);
                }
                bound += 1;
            }
            out = next;
        }
        out
    }
}

/// Row Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `u * m = h`. Pivots are positive, entries above each pivot lie in
/// `[0, pivot)`, and rows below the last pivot are zero.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivot_row = 0;
    for col in 0..h.cols() {
        if pivot_row >= h.rows() {
            break;
        }
        // Repeatedly bring the smallest nonzero entry of this column (at or
        // below pivot_row) to the pivot and reduce the rows beneath it.
        loop {
            let best = (pivot_row..h.rows())
                .filter(|&r| !h.at(r, col).is_zero())
                .min_by_key(|&r| h.at(r, col).abs());
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut clean = true;
            for r in pivot_row + 1..h.rows() {
                if h.at(r, col).is_zero() {
                    continue;
                }
                let q = h.at(r, col) / h.at(pivot_row, col);
                h.row_sub(r, pivot_row, &q);
                u.row_sub(r, pivot_row, &q);
                if !h.at(r, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.at(pivot_row, col).is_zero() {
            continue;
        }
        if h.at(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Entries above the pivot go into [0, pivot).
        for r in 0..pivot_row {
            let q = h.at(r, col).div_floor(h.at(pivot_row, col));
            h.row_sub(r, pivot_row, &q);
            u.row_sub(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Rank over the integers (equivalently over the rationals): the number of
/// nonzero rows of the Hermite normal form.
pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = hermite_normal_form(m);
    (0..h.rows())
        .filter(|&r| (0..h.cols()).any(|c| !h.at(r, c).is_zero()))
        .count()
}

/// Smith normal form: returns `(s, u, v)` with `u`, `v` unimodular and
/// `u * m * v = s` diagonal, each diagonal entry nonnegative and dividing
/// the next.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let bound = m.rows().min(m.cols());
    let mut t = 0;
    'outer: while t < bound {
        // Smallest nonzero entry of the trailing submatrix becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for r in t..s.rows() {
            for c in t..s.cols() {
                if !s.at(r, c).is_zero()
                    && best
                        .map(|(br, bc)| s.at(r, c).abs() < s.at(br, bc).abs())
                        .unwrap_or(true)
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        s.swap_rows(t, br);
        u.swap_rows(t, br);
        s.swap_cols(t, bc);
        v.swap_cols(t, bc);

        for r in t + 1..s.rows() {
            if s.at(r, t).is_zero() {
                continue;
            }
            let q = s.at(r, t) / s.at(t, t);
            s.row_sub(r, t, &q);
            u.row_sub(r, t, &q);
            if !s.at(r, t).is_zero() {
                continue 'outer; // remainder is smaller; re-pivot
            }
        }
        for c in t + 1..s.cols() {
            if s.at(t, c).is_zero() {
                continue;
            }
            let q = s.at(t, c) / s.at(t, t);
            s.col_sub(c, t, &q);
            v.col_sub(c, t, &q);
            if !s.at(t, c).is_zero() {
                continue 'outer;
            }
        }
        // Row and column t are clear; enforce divisibility on the rest.
        for r in t + 1..s.rows() {
            for c in t + 1..s.cols() {
                if !s.at(r, c).mod_floor(s.at(t, t)).is_zero() {
                    // Fold row r into row t and restart this pivot.
                    let minus_one = -BigInt::one();
                    s.row_sub(t, r, &minus_one);
                    u.row_sub(t, r, &minus_one);
                    continue 'outer;
                }
            }
        }
        if s.at(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (s, u, v)
}

/// Integer basis of `ker(beta) ∩ Z^n` for a `d x n` matrix `beta`, returned
/// as an `n x k` matrix whose columns are the basis vectors. The basis is
/// saturated and canonicalized by the Hermite normal form of its transpose.
pub fn integer_kernel_basis(beta: &IntMatrix) -> IntMatrix {
    let n = beta.cols();
    let (h, u) = hermite_normal_form(&beta.transpose());
    let zero_rows: Vec<usize> = (0..h.rows())
        .filter(|&r| (0..h.cols()).all(|c| h.at(r, c).is_zero()))
        .collect();
    if zero_rows.is_empty() {
        return IntMatrix::zeros(n, 0);
    }
    let kernel_rows: Vec<Vec<BigInt>> = zero_rows.iter().map(|&r| u.row(r)).collect();
    let (canon, _) = hermite_normal_form(&IntMatrix::from_rows(kernel_rows));
    canon.transpose()
}

/// Solve `a * x = b` over the rationals. Returns a particular solution (free
/// variables set to zero) or `None` when the system is infeasible, which is
/// certified by `rank(a) < rank(a|b)` during elimination.
pub fn rational_feasible(a: &IntMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows(), b.len(), "rhs length mismatch");
    let rows = a.rows();
    let cols = a.cols();
    let mut aug: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = (0..cols)
                .map(|c| BigRational::from(a.at(r, c).clone()))
                .collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut pr = 0;
    for pc in 0..cols {
        let Some(piv) = (pr..rows).find(|&r| !aug[r][pc].is_zero()) else {
            continue;
        };
        aug.swap(pr, piv);
        let lead = aug[pr][pc].clone();
        for x in &mut aug[pr] {
            *x /= lead.clone();
        }
        for r in 0..rows {
            if r != pr && !aug[r][pc].is_zero() {
                let f = aug[r][pc].clone();
                let pivot_row = aug[pr].clone();
                for (c, entry) in aug[r].iter_mut().enumerate().skip(pc) {
                    let delta = &f * &pivot_row[c];
                    *entry -= delta;
                }
            }
        }
        pivot_cols.push(pc);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    // A pivot stranded in the augmented column means rank(a) < rank(a|b).
    if aug[pr..rows].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (k, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = aug[k][cols].clone();
    }
    Some(x)
}

/// Solve `a * x = y` over the integers via the Smith normal form.
pub fn solve_integer(a: &IntMatrix, y: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), y.len());
    let (s, u, v) = smith_normal_form(a);
    let uy = u.mul_vec(y);
    let mut z = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        let d = if i < a.cols() {
            s.at(i, i).clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !uy[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = uy[i].div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        }
    }
    Some(v.mul_vec(&z))
}

/// Exact inverse of a unimodular integer matrix.
fn invert_unimodular(u: &IntMatrix) -> IntMatrix {
    let n = u.rows();
    assert_eq!(n, u.cols());
    let mut inv = IntMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::one();
        let x = rational_feasible(u, &e).expect("unimodular matrix must be invertible");
        for (i, xi) in x.iter().enumerate() {
            assert!(xi.is_integer(), "inverse of unimodular matrix is integral");
            inv.set(i, j, xi.to_integer());
        }
    }
    inv
}

/// The finite abelian group `(span_Q(vectors) ∩ Z^d) / span_Z(vectors)`.
///
/// Rejects linearly dependent input. When the vectors form a basis of `Q^d`
/// this is `Z^d / span_Z(vectors)` and the order equals `|det|`.
pub fn lattice_quotient(vectors: &[Vec<BigInt>]) -> Result<LatticeQuotient> {
    let m = vectors.len();
    assert!(m > 0, "empty generating set");
    let d = vectors[0].len();
    let v = IntMatrix::from_cols(vectors);
    if rank(&v) != m {
        return Err(Error::DependentVectors);
    }
    // Saturation: integer vectors of the rational column span, obtained as
    // the kernel of the kernel.
    let orth = integer_kernel_basis(&v.transpose()); // d x (d-m)
    let b_sat = integer_kernel_basis(&orth.transpose()); // d x m
    debug_assert_eq!(b_sat.cols(), m);
    // Express the input lattice in the saturation basis: b_sat * c = v.
    let mut c = IntMatrix::zeros(m, m);
    for j in 0..m {
        let rhs: Vec<BigRational> = (0..d)
            .map(|i| BigRational::from(v.at(i, j).clone()))
            .collect();
        let x = rational_feasible(&b_sat, &rhs).expect("input lies in its own saturation");
        for (i, xi) in x.iter().enumerate() {
            assert!(xi.is_integer(), "saturation coordinates are integral");
            c.set(i, j, xi.to_integer());
        }
    }
    let (s, u, _) = smith_normal_form(&c);
    let u_inv = invert_unimodular(&u);
    let gens = b_sat.mul(&u_inv);
    let mut invariant_factors = Vec::new();
    let mut coset_reps = Vec::new();
    for i in 0..m {
        let f = s.at(i, i).clone();
        debug_assert!(f.is_positive(), "full-rank lattice has nonzero factors");
        if f > BigInt::one() {
            invariant_factors.push(f);
            coset_reps.push(gens.col(i));
        }
    }
    Ok(LatticeQuotient {
        invariant_factors,
        coset_reps,
        dim: d,
    })
}

/// Fractional part of a rational, in `[0, 1)`.
pub fn fractional_part(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Check the structural Hermite normal form conditions of a matrix.
#[cfg(test)]
fn is_hnf(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for r in 0..h.rows() {
        let pivot = (0..h.cols()).find(|&c| !h.at(r, c).is_zero());
        match pivot {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row {
                    return false; // nonzero row after a zero row
                }
                if let Some(prev) = last_pivot {
                    if c <= prev {
                        return false; // pivots must move right
                    }
                }
                if !h.at(r, c).is_positive() {
                    return false;
                }
                for above in 0..r {
                    let e = h.at(above, c);
                    if e.is_negative() || e >= h.at(r, c) {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}
