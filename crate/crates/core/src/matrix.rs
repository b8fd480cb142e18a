//! Arbitrary-precision integer linear algebra: Hermite normal forms,
//! determinants, integer kernels, lattice indices and torsion orders.
//!
//! Everything here is exact; no floating point, no fixed-width overflow.

use itertools::Itertools;
use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix over the integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl std::fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntegerMatrix {
            rows,
            cols,
            data: entries,
        }
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntegerMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Submatrix selecting the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntegerMatrix {
        let data = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        IntegerMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(dst, c) - q * self.get(src, c);
            self.set(dst, c, v);
        }
    }
}

/// Orientation of a Hermite normal form computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HnfOrientation {
    /// Elementary integer row operations; `U * M = H`, pivots descend left to right.
    Row,
    /// Elementary integer column operations; `M * U = H`, nonzero columns first.
    Column,
}

/// Hermite normal form together with the unimodular transform that produced it.
pub struct Hnf {
    pub h: IntegerMatrix,
    pub u: IntegerMatrix,
    pub rank: usize,
    /// For row orientation: pivot column of each nonzero row.
    /// For column orientation: pivot row of each nonzero column.
    pub pivots: Vec<usize>,
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and `U * M = H`.
///
/// Nonzero rows come first with strictly increasing pivot columns, pivots are
/// positive, and entries above each pivot are reduced into `[0, pivot)`.
pub fn row_hnf(m: &IntegerMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntegerMatrix::identity(m.rows());
    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..h.cols() {
        if pivot_row == h.rows() {
            break;
        }
        // gcd elimination below the pivot position in this column
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..h.rows() {
                if !h.get(r, col).is_zero() {
                    let better = match best {
                        None => true,
                        Some(b) => h.get(r, col).abs() < h.get(b, col).abs(),
                    };
                    if better {
                        best = Some(r);
                    }
                }
            }
            let Some(r) = best else { break };
            h.swap_rows(pivot_row, r);
            u.swap_rows(pivot_row, r);
            let mut done = true;
            for r in pivot_row + 1..h.rows() {
                if !h.get(r, col).is_zero() {
                    let q = h.get(r, col).div_floor(h.get(pivot_row, col));
                    h.row_axpy(r, pivot_row, &q);
                    u.row_axpy(r, pivot_row, &q);
                    if !h.get(r, col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // reduce entries above the pivot into [0, pivot)
        for r in 0..pivot_row {
            let q = h.get(r, col).div_floor(h.get(pivot_row, col));
            h.row_axpy(r, pivot_row, &q);
            u.row_axpy(r, pivot_row, &q);
        }
        pivots.push(col);
        pivot_row += 1;
    }
    Hnf {
        h,
        u,
        rank: pivot_row,
        pivots,
    }
}

/// Column Hermite normal form: returns `(H, U)` with `U` unimodular and `M * U = H`.
pub fn column_hnf(m: &IntegerMatrix) -> Hnf {
    let t = row_hnf(&m.transpose());
    Hnf {
        h: t.h.transpose(),
        u: t.u.transpose(),
        rank: t.rank,
        pivots: t.pivots,
    }
}

pub fn hermite_normal_form(m: &IntegerMatrix, orientation: HnfOrientation) -> Hnf {
    match orientation {
        HnfOrientation::Row => row_hnf(m),
        HnfOrientation::Column => column_hnf(m),
    }
}

/// Signed determinant of a square matrix, by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntegerMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1).clone()
}

pub fn rank(m: &IntegerMatrix) -> usize {
    row_hnf(m).rank
}

fn gcd_fold(acc: BigInt, x: &BigInt) -> BigInt {
    acc.gcd(x)
}

/// gcd of all `k x k` minors. Returns 0 when all such minors vanish.
pub fn gcd_of_minors(m: &IntegerMatrix, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    if k > m.rows() || k > m.cols() {
        return BigInt::zero();
    }
    let mut g = BigInt::zero();
    for row_set in (0..m.rows()).combinations(k) {
        for col_set in (0..m.cols()).combinations(k) {
            let d = determinant(&m.submatrix(&row_set, &col_set));
            g = gcd_fold(g, &d);
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

/// Lattice index `[Z^d : Z A]` of the column lattice of a full-row-rank `d x n`
/// matrix, read off the nonzero columns of its column Hermite normal form.
pub fn lattice_index(a: &IntegerMatrix) -> Result<BigInt> {
    let hnf = column_hnf(a);
    if hnf.rank != a.rows() {
        return Err(Error::NotFullRank);
    }
    let rows: Vec<usize> = (0..a.rows()).collect();
    let cols: Vec<usize> = (0..hnf.rank).collect();
    Ok(determinant(&hnf.h.submatrix(&rows, &cols)).abs())
}

/// Same index, via the gcd of all maximal minors.
pub fn lattice_index_gcd(a: &IntegerMatrix) -> Result<BigInt> {
    let g = gcd_of_minors(a, a.rows());
    if g.is_zero() {
        return Err(Error::NotFullRank);
    }
    Ok(g)
}

/// Basis of the saturated integer kernel, without a rank precondition.
/// Returns an `n x (n - rank)` matrix whose columns span `ker(M) ∩ Z^n`.
pub fn kernel_basis_any(m: &IntegerMatrix) -> IntegerMatrix {
    let hnf = column_hnf(m);
    let zero_cols: Vec<usize> = (hnf.rank..m.cols()).collect();
    let all_rows: Vec<usize> = (0..m.cols()).collect();
    hnf.u.submatrix(&all_rows, &zero_cols)
}

/// Basis of `ker(A) ∩ Z^n` for a full-row-rank `d x n` matrix, as an
/// `n x (n - d)` matrix. Saturated by construction: the basis columns are the
/// unimodular-transform columns matching the zero columns of the Hermite form.
pub fn integer_kernel_basis(a: &IntegerMatrix) -> Result<IntegerMatrix> {
    if rank(a) != a.rows() {
        return Err(Error::NotFullRank);
    }
    Ok(kernel_basis_any(a))
}

/// Order of the torsion subgroup of `Z^n / Z B` for an `n x 2` matrix of
/// rank 2: the gcd of all `2 x 2` minors of `B`.
pub fn torsion_order_rank2(b: &IntegerMatrix) -> Result<BigInt> {
    if b.cols() != 2 {
        return Err(Error::validation("torsion_order_rank2 expects a 2-column matrix"));
    }
    let g = gcd_of_minors(b, 2);
    if g.is_zero() {
        return Err(Error::NotFullRank);
    }
    Ok(g)
}

/// `det(b_i, b_j)` for the rows of a two-column matrix.
pub fn minor2(b: &IntegerMatrix, i: usize, j: usize) -> BigInt {
    b.get(i, 0) * b.get(j, 1) - b.get(i, 1) * b.get(j, 0)
}

/// Cached table of the 2x2 row minors `[i,j] = det(b_i, b_j)` of an `n x 2` matrix.
#[derive(Clone, Debug)]
pub struct MinorTable {
    n: usize,
    upper: Vec<BigInt>, // entries for i < j, row-major over pairs
}

impl MinorTable {
    pub fn new(b: &IntegerMatrix) -> Self {
        assert_eq!(b.cols(), 2);
        let n = b.rows();
        let mut upper = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                upper.push(minor2(b, i, j));
            }
        }
        MinorTable { n, upper }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `[i,j]`; antisymmetric under swapping the arguments.
    pub fn minor(&self, i: usize, j: usize) -> BigInt {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => BigInt::zero(),
            Ordering::Less => {
                let idx = i * self.n - i * (i + 1) / 2 + (j - i - 1);
                self.upper[idx].clone()
            }
            Ordering::Greater => -self.minor(j, i),
        }
    }

    pub fn gcd_all(&self) -> BigInt {
        self.upper.iter().fold(BigInt::zero(), gcd_fold)
    }
}

/// gcd of a sequence, with `gcd() = 0` and zeros ignored.
pub fn gcd_iter<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), gcd_fold)
}
