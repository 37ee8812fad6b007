//! The PLUQ factorization container: `A = P L U Q` in packed form.
//!
//! The packed matrix stores `[L\U, V; M, 0]`: the unit lower triangular
//! factor strictly below the diagonal of the first `r` columns (including
//! the dependent rows M), and the upper factor with the pivots on the
//! diagonal of the first `r` rows (including the trailing columns V).
//!
//! Instead of carrying permutation matrices around, the container stores
//! the two one-line maps from working indices to original ones:
//! `row_map(i)` is the original row that ended up at working row `i`, and
//! likewise for columns. The permutation matrices are `P = M(row_map)^T`
//! and `Q = M(col_map)` under the convention of [`crate::perm`], and pivot
//! `s` of the pivoting matrix sits at `(row_map(s), col_map(s))`.

use crate::field::PrimeField;
use crate::matrix::DenseMatrix;
use crate::perm::{pivoting_matrix, Permutation, SubPermutationMatrix};
use crate::pivoting::RevealClaim;

#[derive(Debug, Clone)]
pub struct PluqDecomposition {
    row_map: Permutation,
    col_map: Permutation,
    r: usize,
    packed: DenseMatrix,
    /// What the strategy that produced this factorization guarantees.
    claim: RevealClaim,
}

impl PluqDecomposition {
    pub fn from_parts(
        row_map: Permutation,
        col_map: Permutation,
        r: usize,
        packed: DenseMatrix,
        claim: RevealClaim,
    ) -> Self {
        assert_eq!(row_map.n(), packed.rows());
        assert_eq!(col_map.n(), packed.cols());
        assert!(r <= row_map.n().min(col_map.n()));
        PluqDecomposition {
            row_map,
            col_map,
            r,
            packed,
            claim,
        }
    }

    pub fn rows(&self) -> usize {
        self.packed.rows()
    }

    pub fn cols(&self) -> usize {
        self.packed.cols()
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn packed(&self) -> &DenseMatrix {
        &self.packed
    }

    pub fn claim(&self) -> &RevealClaim {
        &self.claim
    }

    /// Working-to-original row map; this is the one-line form of `P^T`.
    pub fn row_map(&self) -> &Permutation {
        &self.row_map
    }

    /// Working-to-original column map.
    pub fn col_map(&self) -> &Permutation {
        &self.col_map
    }

    /// The permutation whose matrix is the `P` of `A = P L U Q`.
    pub fn p(&self) -> Permutation {
        self.row_map.inverse()
    }

    /// The permutation whose matrix is the `Q` of `A = P L U Q`.
    pub fn q(&self) -> Permutation {
        self.col_map.clone()
    }

    /// Unit lower triangular `m x r` factor (with the dependent rows M).
    pub fn l(&self) -> DenseMatrix {
        let (m, r) = (self.rows(), self.r);
        DenseMatrix::from_fn(m, r, |i, j| {
            if i == j {
                1
            } else if i > j {
                self.packed.get(i, j)
            } else {
                0
            }
        })
    }

    /// Upper triangular `r x n` factor carrying the pivots (with the
    /// trailing columns V).
    pub fn u(&self) -> DenseMatrix {
        let (r, n) = (self.r, self.cols());
        DenseMatrix::from_fn(r, n, |i, j| if j >= i { self.packed.get(i, j) } else { 0 })
    }

    /// `Pi = P [I_r, 0; 0, 0] Q`, the candidate rank profile matrix.
    pub fn pivoting_matrix(&self) -> SubPermutationMatrix {
        pivoting_matrix(&self.row_map, &self.col_map, self.r)
    }

    /// Rebuilds `A` by direct index bookkeeping:
    /// `A[row_map(i), col_map(j)] = (L U)[i, j]`.
    pub fn reconstruct(&self, field: &PrimeField) -> DenseMatrix {
        let (m, n, r) = (self.rows(), self.cols(), self.r);
        let mut a = DenseMatrix::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                let kmax = r.min(i + 1).min(j + 1);
                let mut acc = 0u64;
                // k <= min(i, j) here, so L[i,k] and U[k,j] are in range
                for k in 0..kmax {
                    let l = if i == k { 1 } else { self.packed.get(i, k) };
                    acc = field.add(acc, field.mul(l, self.packed.get(k, j)));
                }
                a.set(self.row_map.image(i), self.col_map.image(j), acc);
            }
        }
        a
    }
}
