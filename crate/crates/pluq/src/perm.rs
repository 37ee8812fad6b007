//! Permutations in one-line notation, rotations, monotonicity, and
//! r-sub-permutation matrices.
//!
//! Convention (matching the worked rotation matrix in the docs below): the
//! matrix of a permutation `s` has a 1 at `(i, s(i))`, so `M(s) * A` has
//! row `i` equal to row `s(i)` of `A`, and `A * M(s)` moves column `k` of
//! `A` to column `s(k)`.

use crate::matrix::DenseMatrix;
use crate::Error;

/// A permutation of `{0, .., n-1}` in one-line notation (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// Validates that `map` is a bijection.
    pub fn from_one_line(map: Vec<usize>) -> Result<Self, Error> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::NotAPermutation);
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    /// The (k, i)-rotation: one-line `(0, .., k-1, i, k, k+1, .., i-1, i+1, ..)`.
    /// It moves index `i` to position `k` and shifts `k..i` down by one,
    /// leaving everything else fixed. Requires `k <= i < n`.
    pub fn rotation(k: usize, i: usize, n: usize) -> Result<Self, Error> {
        if i < k || i >= n {
            return Err(Error::InvalidRotation { k, i, n });
        }
        let mut map: Vec<usize> = (0..n).collect();
        map[k] = i;
        for t in k + 1..=i {
            map[t] = t - 1;
        }
        Ok(Permutation { map })
    }

    pub fn transposition(a: usize, b: usize, n: usize) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(a, b);
        Permutation { map }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.map
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.map.iter().map(|v| v + 1).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    /// A permutation is k-monotonically increasing when its last n-k
    /// one-line values are strictly increasing. Rotations R_{k,i} are
    /// k-monotone; transpositions generally are not.
    pub fn is_monotonically_increasing(&self, k: usize) -> bool {
        self.map.windows(2).skip(k).all(|w| w[0] < w[1])
    }

    /// 0/1 matrix with a one at `(i, s(i))`.
    pub fn matrix(&self) -> DenseMatrix {
        let n = self.n();
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, self.map[i], 1);
        }
        m
    }

    /// Gathers rows: row `i` of the result is row `s(i)` of `a` (i.e. the
    /// product `M(s) * a`).
    pub fn apply_rows(&self, a: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n(), a.rows());
        let mut out = DenseMatrix::zeros(a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                out.set(i, j, a.get(self.map[i], j));
            }
        }
        out
    }

    /// Gathers columns: column `j` of the result is column `s(j)` of `a`.
    pub fn apply_cols(&self, a: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n(), a.cols());
        let mut out = DenseMatrix::zeros(a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                out.set(i, j, a.get(i, self.map[j]));
            }
        }
        out
    }

    /// LAPACK-style sequential swap form, for display only: a list
    /// `ipiv` such that applying `swap(t, ipiv[t])` for t = 0.. to the
    /// identity arrangement reproduces this permutation's gather order.
    pub fn to_swap_sequence(&self) -> Vec<usize> {
        let n = self.n();
        let mut cur: Vec<usize> = (0..n).collect();
        let mut pos = vec![0usize; n];
        for (i, &v) in cur.iter().enumerate() {
            pos[v] = i;
        }
        let mut ipiv = Vec::with_capacity(n);
        for t in 0..n {
            let want = self.map[t];
            let at = pos[want];
            ipiv.push(at);
            let moved = cur[t];
            cur.swap(t, at);
            pos[want] = t;
            pos[moved] = at;
        }
        ipiv
    }
}

/// An m x n 0/1 matrix with at most one 1 per row and per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPermutationMatrix {
    m: usize,
    n: usize,
    /// Pivot coordinates, sorted by row (0-based).
    pivots: Vec<(usize, usize)>,
}

impl SubPermutationMatrix {
    pub fn new(m: usize, n: usize, mut pivots: Vec<(usize, usize)>) -> Result<Self, Error> {
        pivots.sort_unstable();
        for w in pivots.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicatePivot);
            }
        }
        let mut cols: Vec<usize> = pivots.iter().map(|p| p.1).collect();
        cols.sort_unstable();
        if cols.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePivot);
        }
        if pivots.iter().any(|&(i, j)| i >= m || j >= n) {
            return Err(Error::IndexOutOfRange);
        }
        Ok(SubPermutationMatrix { m, n, pivots })
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivots sorted by row index.
    pub fn pivots(&self) -> &[(usize, usize)] {
        &self.pivots
    }

    /// Row indices carrying a pivot, sorted.
    pub fn row_support(&self) -> Vec<usize> {
        self.pivots.iter().map(|p| p.0).collect()
    }

    /// Column indices carrying a pivot, sorted.
    pub fn col_support(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.pivots.iter().map(|p| p.1).collect();
        c.sort_unstable();
        c
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.m, self.n);
        for &(i, j) in &self.pivots {
            d.set(i, j, 1);
        }
        d
    }

    /// Reads back a dense 0/1 matrix; errors if any entry is not 0/1 or a
    /// line carries two pivots.
    pub fn from_dense(d: &DenseMatrix) -> Result<Self, Error> {
        let mut pivots = Vec::new();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                match d.get(i, j) {
                    0 => {}
                    1 => pivots.push((i, j)),
                    _ => return Err(Error::NotSubPermutation),
                }
            }
        }
        SubPermutationMatrix::new(d.rows(), d.cols(), pivots)
    }

    /// Number of pivots inside the leading `i x j` submatrix (the rank of
    /// that leading block, since pivots are units).
    pub fn leading_count(&self, i: usize, j: usize) -> usize {
        self.pivots.iter().filter(|&&(a, b)| a < i && b < j).count()
    }
}

/// The pivoting matrix of a PLUQ factorization: `r` pivots at coordinates
/// `(row_map(s), col_map(s))` for `s < r`, where the maps send working
/// indices back to original ones. Equals `P * [I_r, 0; 0, 0] * Q` for the
/// factorization's permutation matrices.
pub fn pivoting_matrix(
    row_map: &Permutation,
    col_map: &Permutation,
    r: usize,
) -> SubPermutationMatrix {
    let pivots = (0..r).map(|s| (row_map.image(s), col_map.image(s))).collect();
    SubPermutationMatrix::new(row_map.n(), col_map.n(), pivots)
        .expect("permutation maps cannot repeat a line")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rotation_one_line_and_matrix() {
        // R_{1,4} in 1-based notation is (4, 1, 2, 3)
        let r = Permutation::rotation(0, 3, 4).unwrap();
        assert_eq!(r.one_based(), vec![4, 1, 2, 3]);
        let m = r.matrix();
        let expect = DenseMatrix::from_rows(&[
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
        ]);
        assert_eq!(m, expect);
        // applying it to the identity reproduces the matrix itself
        assert_eq!(r.apply_rows(&DenseMatrix::identity(4)), expect);
        assert!(r.is_monotonically_increasing(1));
        assert!(!r.is_monotonically_increasing(0));
        // rotation(k, k, n) is the identity
        assert_eq!(
            Permutation::rotation(2, 2, 5).unwrap(),
            Permutation::identity(5)
        );
        assert!(Permutation::rotation(3, 2, 5).is_err());
        assert!(Permutation::rotation(1, 5, 5).is_err());
    }

    #[test]
    fn monotonicity_edge_cases() {
        let id = Permutation::identity(6);
        assert!(id.is_monotonically_increasing(0));
        let t = Permutation::transposition(1, 4, 6);
        assert!(!t.is_monotonically_increasing(1));
        assert!(t.is_monotonically_increasing(5));
        // k = n: trivially monotone
        assert!(t.is_monotonically_increasing(6));
    }

    #[test]
    fn from_one_line_rejects_non_bijections() {
        assert!(Permutation::from_one_line(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_one_line(vec![0, 3]).is_err());
        assert!(Permutation::from_one_line(vec![2, 0, 1]).is_ok());
    }

    proptest! {
        /// Composition of rotations stays monotone: if q is k1-monotone and
        /// the second factor only permutes the tail, the product keeps the
        /// earlier threshold (rotation-built pivoting stays monotone).
        #[test]
        fn rotation_chain_is_monotone(n in 2usize..12, picks in proptest::collection::vec(0usize..64, 1..8)) {
            let mut acc = Permutation::identity(n);
            let mut k = 0usize;
            for &raw in &picks {
                if k >= n { break; }
                let i = k + raw % (n - k);
                let rot = Permutation::rotation(k, i, n).unwrap();
                acc = acc.compose(&rot);
                k += 1;
                prop_assert!(acc.is_monotonically_increasing(k));
            }
        }

        #[test]
        fn inverse_and_matrix_agree(map in proptest::collection::vec(0usize..32, 1..10)) {
            let n = map.len();
            let mut one_line: Vec<usize> = (0..n).collect();
            // Fisher-Yates driven by the raw input
            for (i, &r) in map.iter().enumerate() {
                one_line.swap(i, r % n);
            }
            let p = Permutation::from_one_line(one_line).unwrap();
            let pi = p.inverse();
            prop_assert_eq!(p.compose(&pi), Permutation::identity(n));
            prop_assert_eq!(pi.compose(&p), Permutation::identity(n));
            // matrix of the inverse is the transpose
            prop_assert_eq!(pi.matrix(), p.matrix().transpose());
            // row gather by p equals the product M(p) * A
            let a = DenseMatrix::from_fn(n, 3, |i, j| ((i * 7 + j * 3) % 11) as u64);
            let f = crate::field::PrimeField::new(11).unwrap();
            prop_assert_eq!(p.apply_rows(&a), p.matrix().mul(&a, &f));
            let b = DenseMatrix::from_fn(3, n, |i, j| ((i * 5 + j) % 11) as u64);
            // column gather by p equals B * M(p^-1)
            prop_assert_eq!(p.apply_cols(&b), b.mul(&pi.matrix(), &f));
        }
    }

    #[test]
    fn sub_permutation_round_trip_and_supports() {
        let s = SubPermutationMatrix::new(4, 4, vec![(3, 1), (0, 0), (1, 2)]).unwrap();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.row_support(), vec![0, 1, 3]);
        assert_eq!(s.col_support(), vec![0, 1, 2]);
        assert_eq!(SubPermutationMatrix::from_dense(&s.to_dense()).unwrap(), s);
        assert_eq!(s.leading_count(2, 3), 2);
        assert!(SubPermutationMatrix::new(4, 4, vec![(0, 0), (0, 1)]).is_err());
        assert!(SubPermutationMatrix::new(4, 4, vec![(0, 0), (1, 0)]).is_err());
        let mut d = DenseMatrix::zeros(2, 2);
        d.set(0, 0, 2);
        assert!(SubPermutationMatrix::from_dense(&d).is_err());
    }

    #[test]
    fn pivoting_matrix_matches_dense_product() {
        let f = crate::field::PrimeField::new(101).unwrap();
        let row_map = Permutation::from_one_line(vec![2, 0, 4, 1, 3]).unwrap();
        let col_map = Permutation::from_one_line(vec![1, 3, 0, 2]).unwrap();
        for r in 0..=4 {
            let pi = pivoting_matrix(&row_map, &col_map, r);
            // P = M(row_map^-1), Q = M(col_map); truncated identity in between
            let mut tr = DenseMatrix::zeros(5, 4);
            for s in 0..r {
                tr.set(s, s, 1);
            }
            let dense = row_map
                .inverse()
                .matrix()
                .mul(&tr, &f)
                .mul(&col_map.matrix(), &f);
            assert_eq!(pi.to_dense(), dense, "r = {r}");
        }
    }
}
