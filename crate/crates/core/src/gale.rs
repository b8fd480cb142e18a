//! Construction and validation of Gale-dual pairs `(A, B)` in codimension two.
//!
//! `A` is an `(n-2) x n` integer matrix of rank `n-2` with the all-ones vector
//! in its rational row space; `B` is an `n x 2` matrix whose columns form a
//! saturated basis of `ker(A)` over `Z`.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{
    self, integer_kernel_basis, lattice_index, rank, IntegerMatrix, MinorTable,
};

/// A validated Gale-dual pair.
#[derive(Clone, Debug)]
pub struct GaleSystem {
    a: IntegerMatrix,
    b: IntegerMatrix,
    n: usize,
    minors: MinorTable,
    index_za: BigInt,
}

impl GaleSystem {
    /// Validate and cache a pair that is already expected to be Gale dual.
    pub fn new(a: IntegerMatrix, b: IntegerMatrix) -> Result<Self> {
        let n = a.cols();
        if b.rows() != n || b.cols() != 2 {
            return Err(Error::validation(format!(
                "B must be {n} x 2 to pair with a {} x {n} matrix A",
                a.rows()
            )));
        }
        if a.rows() + 2 != n {
            return Err(Error::validation("not codimension two"));
        }
        let index_za = lattice_index(&a).map_err(|_| Error::validation("not codimension two"))?;
        let minors = MinorTable::new(&b);
        let sys = GaleSystem {
            a,
            b,
            n,
            minors,
            index_za,
        };
        let diags = sys.validate();
        if let Some(first) = diags.first() {
            return Err(Error::validation(first.clone()));
        }
        Ok(sys)
    }

    pub fn a(&self) -> &IntegerMatrix {
        &self.a
    }

    pub fn b(&self) -> &IntegerMatrix {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn minors(&self) -> &MinorTable {
        &self.minors
    }

    /// `[Z^{n-2} : Z A]`.
    pub fn index_za(&self) -> &BigInt {
        &self.index_za
    }

    /// Row `i` of `B` as a pair.
    pub fn b_row(&self, i: usize) -> (&BigInt, &BigInt) {
        (self.b.get(i, 0), self.b.get(i, 1))
    }

    /// One diagnostic per violated invariant; empty iff the system is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut diags = Vec::new();
        if !self.a.mul(&self.b).is_zero() {
            diags.push("A * B is not zero".to_string());
        }
        for i in 0..self.n {
            if self.b.get(i, 0).is_zero() && self.b.get(i, 1).is_zero() {
                diags.push(format!(
                    "row {} of B is zero: variety is a cone over a coordinate point",
                    i + 1
                ));
            }
        }
        let g = self.minors.gcd_all();
        if !g.is_one() {
            diags.push(format!("minor gcd = {g} != 1: rows of B do not span Z^2"));
        }
        for c in 0..2 {
            let s: BigInt = (0..self.n).map(|r| self.b.get(r, c)).sum();
            if !s.is_zero() {
                diags.push(format!("column {} of B has nonzero sum {s}", c + 1));
            }
        }
        if rank(&self.a) != self.n - 2 {
            diags.push("rank(A) != n - 2".to_string());
        }
        diags
    }
}

fn has_duplicate_columns(a: &IntegerMatrix) -> bool {
    let mut cols: Vec<Vec<BigInt>> = (0..a.cols()).map(|c| a.column(c)).collect();
    cols.sort();
    cols.windows(2).any(|w| w[0] == w[1])
}

fn all_ones_in_row_space(a: &IntegerMatrix) -> bool {
    // (1,...,1) is in the rational row space of A iff it is orthogonal to
    // ker(A), i.e. iff every kernel basis column sums to zero.
    let k = matrix::kernel_basis_any(a);
    (0..k.cols()).all(|c| k.column(c).iter().sum::<BigInt>().is_zero())
}

/// Compute the Gale dual `B` of a `(n-2) x n` matrix `A` and validate the pair.
pub fn gale_dual_from_a(a: IntegerMatrix) -> Result<GaleSystem> {
    let n = a.cols();
    if a.rows() + 2 != n || rank(&a) != a.rows() {
        return Err(Error::validation("not codimension two"));
    }
    if has_duplicate_columns(&a) {
        return Err(Error::validation("repeated lattice points"));
    }
    if !all_ones_in_row_space(&a) {
        return Err(Error::validation(
            "not projective/homogeneous: (1,...,1) is not in the row space of A",
        ));
    }
    let b = integer_kernel_basis(&a).map_err(|_| Error::validation("not codimension two"))?;
    GaleSystem::new(a, b)
}

/// Reconstruct an `A` matrix from a Gale dual `B` and validate the pair.
///
/// `A` has entries built from the 2x2 row minors of `B` plus a final all-ones
/// row; an internal reordering moves the lexicographically smallest index pair
/// `(i, j)` with `det(b_i, b_j) != 0` to the front and is undone afterwards.
pub fn a_from_gale_dual(b: IntegerMatrix) -> Result<GaleSystem> {
    let n = b.rows();
    if b.cols() != 2 {
        return Err(Error::validation("B must have exactly two columns"));
    }
    if n < 4 {
        return Err(Error::validation("B must have at least 4 rows"));
    }
    for i in 0..n {
        if b.get(i, 0).is_zero() && b.get(i, 1).is_zero() {
            return Err(Error::validation(format!(
                "row {} of B is zero: variety is a cone over a coordinate point",
                i + 1
            )));
        }
    }
    for c in 0..2 {
        let s: BigInt = (0..n).map(|r| b.get(r, c)).sum();
        if !s.is_zero() {
            return Err(Error::validation(format!(
                "column {} of B has nonzero sum {s}",
                c + 1
            )));
        }
    }
    let minors = MinorTable::new(&b);
    let g = minors.gcd_all();
    if g.is_zero() {
        return Err(Error::validation("rank(B) < 2"));
    }
    if !g.is_one() {
        return Err(Error::validation(format!(
            "minor gcd = {g} != 1: rows of B do not span Z^2"
        )));
    }

    // lexicographically smallest (i, j) with [i,j] != 0
    let (p, q) = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .find(|&(i, j)| !minors.minor(i, j).is_zero())
        .expect("nonzero minor exists when gcd is 1");

    // permutation: reordered row k corresponds to original row perm[k]
    let mut perm = vec![p, q];
    perm.extend((0..n).filter(|&i| i != p && i != q));

    let mm = |i: usize, j: usize| minors.minor(perm[i], perm[j]);
    let one_two = mm(0, 1);

    // A for the reordered B: rows k = 0..n-4 read
    //   [ [2,k+3], -[1,k+3], 0, ..., [1,2] at column k+2, ..., 0 ]
    // (1-based indices as written), plus the all-ones row; column n is zero
    // above the ones row. Then undo the reordering on the columns.
    let d = n - 2;
    let mut a = IntegerMatrix::zero(d, n);
    for k in 0..n - 3 {
        let i = k + 2; // reordered index of the row this A-row is built from
        a.set(k, perm[0], mm(1, i));
        a.set(k, perm[1], -mm(0, i));
        a.set(k, perm[i], one_two.clone());
    }
    for c in 0..n {
        a.set(d - 1, c, BigInt::one());
    }
    GaleSystem::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntegerMatrix;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows_i64(rows)
    }

    pub fn running_a() -> IntegerMatrix {
        m(&[
            vec![-2, -2, 1, 0, 0],
            vec![4, 0, 0, 1, 0],
            vec![1, 1, 1, 1, 1],
        ])
    }

    pub fn running_b() -> IntegerMatrix {
        m(&[vec![1, 0], vec![0, 1], vec![2, 2], vec![-4, 0], vec![1, -3]])
    }

    #[test]
    fn running_example_round_trip_a_to_b() {
        let sys = gale_dual_from_a(running_a()).unwrap();
        assert!(sys.validate().is_empty());
        // the computed kernel and the reference B are both saturated rank-2
        // kernels of A, so they span the same lattice; A annihilates both
        assert!(sys.a().mul(&running_b()).is_zero());
        assert_eq!(matrix::gcd_of_minors(sys.b(), 2), BigInt::one());
    }

    #[test]
    fn twisted_cubic_dual() {
        let a = m(&[vec![3, 2, 1, 0], vec![1, 1, 1, 1]]);
        let sys = gale_dual_from_a(a).unwrap();
        let reference_b = m(&[vec![-2, -1], vec![3, 1], vec![0, 1], vec![-1, -1]]);
        assert!(sys.a().mul(&reference_b).is_zero());
        assert!(sys.validate().is_empty());
    }

    #[test]
    fn missing_all_ones_row_is_rejected() {
        let a = m(&[vec![1, 0, 0, 0], vec![0, 2, 3, 0]]);
        let err = gale_dual_from_a(a).unwrap_err();
        assert!(err.to_string().contains("not projective/homogeneous"));
    }

    #[test]
    fn duplicate_columns_rejected() {
        let a = m(&[vec![1, 1, 0, 2], vec![1, 1, 1, 1]]);
        let err = gale_dual_from_a(a).unwrap_err();
        assert!(err.to_string().contains("repeated lattice points"));
    }

    #[test]
    fn a_from_gale_dual_running_example() {
        let sys = a_from_gale_dual(running_b()).unwrap();
        assert!(sys.a().mul(&running_b()).is_zero());
        assert!(sys.validate().is_empty());
        // [Z^{n-2} : Z A] = [1,2]^{n-4} for the reconstructed pair; here the
        // lexicographically first nonzero minor is [1,2] = det((1,0),(0,1)) = 1.
        assert_eq!(sys.index_za(), &BigInt::one());
    }

    #[test]
    fn a_from_gale_dual_square_four_rows() {
        let b = m(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]);
        let sys = a_from_gale_dual(b.clone()).unwrap();
        assert_eq!(sys.a().rows(), 2);
        assert!(sys.a().mul(&b).is_zero());
        assert!(sys.validate().is_empty());
    }

    #[test]
    fn a_from_gale_dual_rejects_zero_row() {
        let b = m(&[vec![1, 0], vec![0, 0], vec![-1, 1], vec![0, -1]]);
        let err = a_from_gale_dual(b).unwrap_err();
        assert!(err.to_string().contains("zero"));
    }

    #[test]
    fn validate_reports_scaled_b() {
        let a = running_a();
        let b2 = m(&[vec![2, 0], vec![0, 2], vec![4, 4], vec![-8, 0], vec![2, -6]]);
        let sys = GaleSystem {
            minors: MinorTable::new(&b2),
            index_za: BigInt::one(),
            n: 5,
            a,
            b: b2,
        };
        let diags = sys.validate();
        assert!(diags.iter().any(|d| d.contains("minor gcd = 4")));
    }

    #[test]
    fn validate_reports_bad_column_sums() {
        let a = running_a();
        let b2 = m(&[vec![2, 0], vec![0, 1], vec![2, 2], vec![-4, 0], vec![1, -3]]);
        let sys = GaleSystem {
            minors: MinorTable::new(&b2),
            index_za: BigInt::one(),
            n: 5,
            a,
            b: b2,
        };
        let diags = sys.validate();
        assert!(diags.iter().any(|d| d.contains("nonzero sum")));
    }
}
