//! Brute-force reference implementations used to validate the fast paths.
//!
//! Everything here recomputes ranks from scratch with plain Gaussian
//! elimination and shares no code with the elimination engines. Slow on
//! purpose; sized for test matrices.

use crate::field::PrimeField;
use crate::matrix::DenseMatrix;
use crate::perm::SubPermutationMatrix;
use crate::Error;

/// Rank by fresh Gaussian elimination on a copy.
pub fn rank(field: &PrimeField, a: &DenseMatrix) -> usize {
    let mut w = a.clone();
    let (m, n) = (w.rows(), w.cols());
    let mut r = 0usize;
    for j in 0..n {
        // find any nonzero at or below row r in column j
        let Some(piv) = (r..m).find(|&i| w.get(i, j) != 0) else {
            continue;
        };
        w.swap_rows_in(w.full_rect(), r, piv);
        let inv = field.inv(w.get(r, j)).expect("pivot is nonzero");
        for i in r + 1..m {
            let factor = field.mul(w.get(i, j), inv);
            if factor != 0 {
                for jj in j..n {
                    let v = field.sub(w.get(i, jj), field.mul(factor, w.get(r, jj)));
                    w.set(i, jj, v);
                }
            }
        }
        r += 1;
        if r == m {
            break;
        }
    }
    r
}

/// Ranks of all leading submatrices `A[0..rows, 0..k]` for `k = 0..=n`,
/// computed by feeding the columns one at a time into an incremental
/// basis (each call starts from scratch; nothing is shared with callers).
fn leading_column_ranks(field: &PrimeField, a: &DenseMatrix, rows: usize) -> Vec<usize> {
    let n = a.cols();
    let mut out = Vec::with_capacity(n + 1);
    out.push(0);
    // basis vectors in echelon form, each tagged with its pivot position
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for j in 0..n {
        let mut v: Vec<u64> = (0..rows).map(|i| a.get(i, j)).collect();
        for (piv, b) in &basis {
            if v[*piv] != 0 {
                let c = field.div(v[*piv], b[*piv]).expect("pivot entry nonzero");
                for (x, y) in v.iter_mut().zip(b) {
                    *x = field.sub(*x, field.mul(c, *y));
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            basis.push((piv, v));
        }
        out.push(basis.len());
    }
    out
}

/// The rank profile matrix, built exactly as its existence proof does:
/// for each new row, if the rank grows, place a pivot at the smallest
/// column index k where `rank(A[0..i+1, 0..k])` exceeds
/// `rank(A[0..i, 0..k])`.
pub fn rpm_oracle(field: &PrimeField, a: &DenseMatrix) -> SubPermutationMatrix {
    let m = a.rows();
    let mut pivots = Vec::new();
    let mut prev = vec![0usize; a.cols() + 1];
    for i in 0..m {
        let cur = leading_column_ranks(field, a, i + 1);
        if let Some(k) = (1..=a.cols()).find(|&k| cur[k] == prev[k] + 1) {
            pivots.push((i, k - 1));
        }
        prev = cur;
    }
    SubPermutationMatrix::new(m, a.cols(), pivots).expect("proof construction yields distinct lines")
}

/// Indices of the lexicographically smallest set of linearly independent
/// rows (the row rank profile), 0-based and sorted.
pub fn row_rank_profile(field: &PrimeField, a: &DenseMatrix) -> Vec<usize> {
    let n = a.cols();
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut profile = Vec::new();
    for i in 0..a.rows() {
        let mut v: Vec<u64> = (0..n).map(|j| a.get(i, j)).collect();
        for (piv, b) in &basis {
            if v[*piv] != 0 {
                let c = field.div(v[*piv], b[*piv]).expect("pivot entry nonzero");
                for (x, y) in v.iter_mut().zip(b) {
                    *x = field.sub(*x, field.mul(c, *y));
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            basis.push((piv, v));
            profile.push(i);
        }
    }
    profile
}

/// Column rank profile: row rank profile of the transpose.
pub fn col_rank_profile(field: &PrimeField, a: &DenseMatrix) -> Vec<usize> {
    row_rank_profile(field, &a.transpose())
}

/// Draws `A = L R U` with unit-free random nonsingular triangular factors
/// and a uniformly placed r-sub-permutation matrix R, so that the rank
/// profile matrix of A is R. The placement is checked against
/// [`rpm_oracle`] and redrawn on the (rare) failure.
pub fn random_with_profile(
    field: &PrimeField,
    m: usize,
    n: usize,
    r: usize,
    rng: &mut impl rand::Rng,
) -> Result<(DenseMatrix, SubPermutationMatrix), Error> {
    assert!(r <= m.min(n));
    for _ in 0..64 {
        let rows = sample_subset(m, r, rng);
        let mut cols = sample_subset(n, r, rng);
        // random bijection between the chosen rows and columns
        for i in (1..cols.len()).rev() {
            cols.swap(i, rng.gen_range(0..=i));
        }
        let planted =
            SubPermutationMatrix::new(m, n, rows.iter().copied().zip(cols).collect())?;
        let l = random_lower(field, m, rng);
        let u = random_upper(field, n, rng);
        let a = l.mul(&planted.to_dense(), field).mul(&u, field);
        if rpm_oracle(field, &a) == planted {
            return Ok((a, planted));
        }
    }
    Err(Error::PreconditionViolated(
        "could not plant the requested rank profile matrix",
    ))
}

fn sample_subset(n: usize, k: usize, rng: &mut impl rand::Rng) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        all.swap(i, j);
    }
    let mut s = all[..k].to_vec();
    s.sort_unstable();
    s
}

fn random_lower(field: &PrimeField, n: usize, rng: &mut impl rand::Rng) -> DenseMatrix {
    let mut l = DenseMatrix::zeros(n, n);
    for i in 0..n {
        l.set(i, i, field.sample_nonzero(rng));
        for j in 0..i {
            l.set(i, j, field.sample(rng));
        }
    }
    l
}

fn random_upper(field: &PrimeField, n: usize, rng: &mut impl rand::Rng) -> DenseMatrix {
    random_lower(field, n, rng).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn golden() -> DenseMatrix {
        DenseMatrix::from_rows(&[
            vec![2, 0, 3, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 4, 0],
            vec![0, 2, 0, 1],
        ])
    }

    #[test]
    fn golden_rank_and_profiles() {
        let f = PrimeField::new(7).unwrap();
        let a = golden();
        assert_eq!(rank(&f, &a), 3);
        assert_eq!(row_rank_profile(&f, &a), vec![0, 1, 3]);
        assert_eq!(col_rank_profile(&f, &a), vec![0, 1, 2]);
        let rpm = rpm_oracle(&f, &a);
        assert_eq!(rpm.pivots(), &[(0, 0), (1, 2), (3, 1)]);
        // row/col supports of the rank profile matrix are the profiles
        assert_eq!(rpm.row_support(), row_rank_profile(&f, &a));
        assert_eq!(rpm.col_support(), col_rank_profile(&f, &a));
    }

    #[test]
    fn rpm_of_sub_permutation_is_itself() {
        let f = PrimeField::new(5).unwrap();
        let s = SubPermutationMatrix::new(4, 5, vec![(0, 3), (2, 1), (3, 4)]).unwrap();
        assert_eq!(rpm_oracle(&f, &s.to_dense()), s);
        // idempotence on the golden example too
        let rpm = rpm_oracle(&f, &golden());
        assert_eq!(rpm_oracle(&f, &rpm.to_dense()), rpm);
    }

    #[test]
    fn leading_rank_agreement_everywhere() {
        let f = PrimeField::new(7).unwrap();
        let a = golden();
        let rpm = rpm_oracle(&f, &a);
        for i in 0..=a.rows() {
            for j in 0..=a.cols() {
                let sub = a.gather(
                    &(0..i).collect::<Vec<_>>(),
                    &(0..j).collect::<Vec<_>>(),
                );
                assert_eq!(
                    rank(&f, &sub),
                    rpm.leading_count(i, j),
                    "leading ({i}, {j})"
                );
            }
        }
    }

    #[test]
    fn zero_and_degenerate_matrices() {
        let f = PrimeField::new(3).unwrap();
        let z = DenseMatrix::zeros(3, 4);
        assert_eq!(rank(&f, &z), 0);
        assert_eq!(rpm_oracle(&f, &z).rank(), 0);
        assert_eq!(rank(&f, &DenseMatrix::zeros(0, 0)), 0);
        assert_eq!(row_rank_profile(&f, &z), Vec::<usize>::new());
    }

    #[test]
    fn generator_plants_the_profile() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = 1 + rng.gen_range(0..10);
            let n = 1 + rng.gen_range(0..10);
            let r = rng.gen_range(0..=m.min(n));
            let (a, planted) = random_with_profile(&f, m, n, r, &mut rng).unwrap();
            assert_eq!(rank(&f, &a), r);
            assert_eq!(rpm_oracle(&f, &a), planted);
        }
    }
}
