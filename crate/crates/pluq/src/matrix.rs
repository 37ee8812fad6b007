//! Row-major dense matrices over a prime field, plus rectangular views.
//!
//! A [`Rect`] is a lightweight window `(i0, j0, m, n)` into a matrix. All
//! blocked kernels take the backing matrix plus rects, so disjoint windows
//! can be read and written freely and every write lands in the parent
//! storage — there is no separate view buffer to keep in sync.

use crate::field::PrimeField;
use crate::perm::Permutation;

/// Rectangular window into a [`DenseMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub i0: usize,
    pub j0: usize,
    pub m: usize,
    pub n: usize,
}

impl Rect {
    pub fn new(i0: usize, j0: usize, m: usize, n: usize) -> Rect {
        Rect { i0, j0, m, n }
    }

    /// Sub-window at offset `(di, dj)` with shape `m x n`.
    pub fn sub(&self, di: usize, dj: usize, m: usize, n: usize) -> Rect {
        debug_assert!(di + m <= self.m && dj + n <= self.n);
        Rect::new(self.i0 + di, self.j0 + dj, m, n)
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0 || self.n == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    m: usize,
    n: usize,
    data: Vec<u64>,
}

impl DenseMatrix {
    pub fn zeros(m: usize, n: usize) -> Self {
        DenseMatrix {
            m,
            n,
            data: vec![0; m * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n, n);
        for i in 0..n {
            a.set(i, i, 1);
        }
        a
    }

    /// The reversal matrix J_n (ones on the anti-diagonal).
    pub fn anti_identity(n: usize) -> Self {
        let mut a = Self::zeros(n, n);
        for i in 0..n {
            a.set(i, n - 1 - i, 1);
        }
        a
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == n), "ragged rows");
        DenseMatrix {
            m,
            n,
            data: rows.concat(),
        }
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut a = Self::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                a.set(i, j, f(i, j));
            }
        }
        a
    }

    pub fn random(m: usize, n: usize, field: &PrimeField, rng: &mut impl rand::Rng) -> Self {
        Self::from_fn(m, n, |_, _| field.sample(rng))
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn full_rect(&self) -> Rect {
        Rect::new(0, 0, self.m, self.n)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        debug_assert!(i < self.m && j < self.n);
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(i < self.m && j < self.n);
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Canonicalizes every entry into `[0, p)`.
    pub fn reduce_mod(&mut self, field: &PrimeField) {
        for v in &mut self.data {
            *v %= field.modulus();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, self.m, |i, j| self.get(j, i))
    }

    /// Owned copy of a window.
    pub fn extract(&self, r: Rect) -> DenseMatrix {
        DenseMatrix::from_fn(r.m, r.n, |i, j| self.get(r.i0 + i, r.j0 + j))
    }

    /// Writes `block` into the window `r`.
    pub fn paste(&mut self, r: Rect, block: &DenseMatrix) {
        assert!(block.m == r.m && block.n == r.n);
        for i in 0..r.m {
            for j in 0..r.n {
                self.set(r.i0 + i, r.j0 + j, block.get(i, j));
            }
        }
    }

    pub fn mul(&self, other: &DenseMatrix, field: &PrimeField) -> DenseMatrix {
        assert_eq!(self.n, other.m, "dimension mismatch");
        DenseMatrix::from_fn(self.m, other.n, |i, j| {
            field.dot(
                self.row(i).iter().copied(),
                (0..other.m).map(|k| other.get(k, j)),
            )
        })
    }

    pub fn add(&self, other: &DenseMatrix, field: &PrimeField) -> DenseMatrix {
        assert!(self.m == other.m && self.n == other.n);
        DenseMatrix::from_fn(self.m, self.n, |i, j| field.add(self.get(i, j), other.get(i, j)))
    }

    pub fn sub(&self, other: &DenseMatrix, field: &PrimeField) -> DenseMatrix {
        assert!(self.m == other.m && self.n == other.n);
        DenseMatrix::from_fn(self.m, self.n, |i, j| field.sub(self.get(i, j), other.get(i, j)))
    }

    /// Gathers rows and columns: entry `(i, j)` of the result is
    /// `self[rows[i], cols[j]]`.
    pub fn gather(&self, rows: &[usize], cols: &[usize]) -> DenseMatrix {
        DenseMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Swaps two full rows inside a window (columns `r.j0 .. r.j0+r.n`).
    pub fn swap_rows_in(&mut self, r: Rect, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in r.j0..r.j0 + r.n {
            let t = self.get(r.i0 + a, j);
            self.set(r.i0 + a, j, self.get(r.i0 + b, j));
            self.set(r.i0 + b, j, t);
        }
    }

    pub fn swap_cols_in(&mut self, r: Rect, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in r.i0..r.i0 + r.m {
            let t = self.get(i, r.j0 + a);
            self.set(i, r.j0 + a, self.get(i, r.j0 + b));
            self.set(i, r.j0 + b, t);
        }
    }

    /// Rotates rows `k..=i` of the window downward: row `i` moves to
    /// position `k`, rows `k..i` shift down by one.
    pub fn rotate_rows_in(&mut self, r: Rect, k: usize, i: usize) {
        debug_assert!(k <= i && i < r.m);
        if k == i {
            return;
        }
        for j in r.j0..r.j0 + r.n {
            let saved = self.get(r.i0 + i, j);
            for t in (k..i).rev() {
                let v = self.get(r.i0 + t, j);
                self.set(r.i0 + t + 1, j, v);
            }
            self.set(r.i0 + k, j, saved);
        }
    }

    pub fn rotate_cols_in(&mut self, r: Rect, k: usize, j: usize) {
        debug_assert!(k <= j && j < r.n);
        if k == j {
            return;
        }
        for i in r.i0..r.i0 + r.m {
            let saved = self.get(i, r.j0 + j);
            for t in (k..j).rev() {
                let v = self.get(i, r.j0 + t);
                self.set(i, r.j0 + t + 1, v);
            }
            self.set(i, r.j0 + k, saved);
        }
    }

    /// Rearranges the rows of a window so that new row `t` holds what was
    /// row `order[t]`. Cycle-following with a single row buffer, so the
    /// extra space is O(m + n), not O(mn).
    pub fn permute_rows_in(&mut self, r: Rect, order: &[usize]) {
        debug_assert_eq!(order.len(), r.m);
        let mut done = vec![false; r.m];
        let mut buf = vec![0u64; r.n];
        for start in 0..r.m {
            if done[start] || order[start] == start {
                done[start] = true;
                continue;
            }
            // save the row being overwritten first, then chase the cycle
            for (j, b) in buf.iter_mut().enumerate() {
                *b = self.get(r.i0 + start, r.j0 + j);
            }
            let mut dst = start;
            loop {
                let src = order[dst];
                done[dst] = true;
                if src == start {
                    for (j, b) in buf.iter().enumerate() {
                        self.set(r.i0 + dst, r.j0 + j, *b);
                    }
                    break;
                }
                for j in 0..r.n {
                    let v = self.get(r.i0 + src, r.j0 + j);
                    self.set(r.i0 + dst, r.j0 + j, v);
                }
                dst = src;
            }
        }
    }

    /// Column analogue of [`DenseMatrix::permute_rows_in`].
    pub fn permute_cols_in(&mut self, r: Rect, order: &[usize]) {
        debug_assert_eq!(order.len(), r.n);
        let mut done = vec![false; r.n];
        let mut buf = vec![0u64; r.m];
        for start in 0..r.n {
            if done[start] || order[start] == start {
                done[start] = true;
                continue;
            }
            for (i, b) in buf.iter_mut().enumerate() {
                *b = self.get(r.i0 + i, r.j0 + start);
            }
            let mut dst = start;
            loop {
                let src = order[dst];
                done[dst] = true;
                if src == start {
                    for (i, b) in buf.iter().enumerate() {
                        self.set(r.i0 + i, r.j0 + dst, *b);
                    }
                    break;
                }
                for i in 0..r.m {
                    let v = self.get(r.i0 + i, r.j0 + src);
                    self.set(r.i0 + i, r.j0 + dst, v);
                }
                dst = src;
            }
        }
    }

    /// Row gather as a permutation product, window-free convenience.
    pub fn permuted_rows(&self, p: &Permutation) -> DenseMatrix {
        p.apply_rows(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn window_writes_hit_parent_storage() {
        let mut a = DenseMatrix::zeros(4, 5);
        let r = Rect::new(1, 2, 2, 3);
        a.set(r.i0 + 1, r.j0 + 2, 9);
        assert_eq!(a.get(2, 4), 9);
        let inner = r.sub(0, 1, 2, 2);
        assert_eq!(inner, Rect::new(1, 3, 2, 2));
        // disjoint windows cover disjoint coordinates
        let left = Rect::new(0, 0, 4, 2);
        let right = Rect::new(0, 2, 4, 3);
        a.set(left.i0, left.j0, 5);
        assert_eq!(a.extract(right).get(2, 2), 9);
        assert_eq!(a.extract(left).get(0, 0), 5);
    }

    #[test]
    fn rotate_rows_matches_rotation_permutation() {
        let a = DenseMatrix::from_fn(5, 3, |i, j| (10 * i + j) as u64);
        let mut b = a.clone();
        b.rotate_rows_in(b.full_rect(), 1, 3);
        let rot = Permutation::rotation(1, 3, 5).unwrap();
        assert_eq!(b, rot.apply_rows(&a));
        let mut c = a.clone();
        c.rotate_cols_in(c.full_rect(), 0, 2);
        let rotc = Permutation::rotation(0, 2, 3).unwrap();
        assert_eq!(c, rotc.apply_cols(&a));
    }

    proptest! {
        #[test]
        fn permute_rows_in_equals_gather(seed in 0u64..500, m in 1usize..8, n in 1usize..6) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = DenseMatrix::from_fn(m, n, |i, j| (i * n + j) as u64);
            let mut order: Vec<usize> = (0..m).collect();
            for i in 0..m {
                let j = rng.gen_range(0..m);
                order.swap(i, j);
            }
            let mut b = a.clone();
            b.permute_rows_in(b.full_rect(), &order);
            let rows: Vec<usize> = order.clone();
            let cols: Vec<usize> = (0..n).collect();
            prop_assert_eq!(b, a.gather(&rows, &cols));
            let mut c = a.clone();
            let mut corder: Vec<usize> = (0..n).collect();
            for i in 0..n {
                let j = rng.gen_range(0..n);
                corder.swap(i, j);
            }
            c.permute_cols_in(c.full_rect(), &corder);
            let all_rows: Vec<usize> = (0..m).collect();
            prop_assert_eq!(c, a.gather(&all_rows, &corder));
        }
    }

    #[test]
    fn mul_against_hand_computed_product() {
        let f = PrimeField::new(7).unwrap();
        let a = DenseMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = DenseMatrix::from_rows(&[vec![5, 6], vec![0, 1]]);
        let c = a.mul(&b, &f);
        assert_eq!(c, DenseMatrix::from_rows(&[vec![5, 1], vec![1, 1]]));
        assert_eq!(a.sub(&a, &f), DenseMatrix::zeros(2, 2));
        assert!(a.sub(&a, &f).is_zero());
    }

    #[test]
    fn degenerate_shapes() {
        let a = DenseMatrix::zeros(0, 0);
        assert!(a.is_zero());
        let b = DenseMatrix::zeros(0, 4);
        assert_eq!(b.transpose().rows(), 4);
        assert_eq!(DenseMatrix::anti_identity(3).get(0, 2), 1);
    }
}
