//! Monte Carlo discovery of the rank profile matrix for low-rank matrices.
//!
//! Pivots are found one at a time by sampling right-hand sides from the
//! column space and inspecting residuals, so elimination work is confined to
//! an r×r nonsingular submatrix maintained as a growing LU factorization
//! (rank-one updates, two triangular solves per system — never an explicit
//! inverse).

use crate::field::{FieldElement, PrimeField};
use crate::matrix::DenseMatrix;
use crate::perm::SubPermutationMatrix;
use crate::pivoting::{iterative_pluq, PermKind, PivotingStrategy, SearchOrder};
use crate::Error;

/// Default modulus for the Monte Carlo runs: failure probability per pivot
/// is about 1/p, so a large prime keeps it negligible.
pub const MONTE_CARLO_PRIME: u64 = (1 << 31) - 1;

/// A growing list of pivot coordinates together with an LU factorization of
/// the nonsingular submatrix they select.
#[derive(Debug, Clone)]
pub struct IncrementalBasis {
    rows: Vec<usize>,
    cols: Vec<usize>,
    l: DenseMatrix,
    u: DenseMatrix,
}

impl Default for IncrementalBasis {
    fn default() -> Self {
        Self::new()
    }
}

impl IncrementalBasis {
    pub fn new() -> Self {
        IncrementalBasis {
            rows: Vec::new(),
            cols: Vec::new(),
            l: DenseMatrix::zeros(0, 0),
            u: DenseMatrix::zeros(0, 0),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Pivot row indices, in discovery order.
    pub fn row_indices(&self) -> &[usize] {
        &self.rows
    }

    /// Pivot column indices, in discovery order.
    pub fn col_indices(&self) -> &[usize] {
        &self.cols
    }

    /// `x` with `A[rows, cols] · x = rhs`, via the two triangular solves
    /// `y ← L⁻¹·rhs`, `x ← U⁻¹·y`.
    pub fn solve(&self, field: &PrimeField, rhs: &[FieldElement]) -> Vec<FieldElement> {
        let s = self.len();
        debug_assert_eq!(rhs.len(), s);
        let mut y = vec![0; s];
        for k in 0..s {
            let acc = field.dot((0..k).map(|t| self.l.get(k, t)), (0..k).map(|t| y[t]));
            y[k] = field.sub(rhs[k], acc);
        }
        let mut x = vec![0; s];
        for k in (0..s).rev() {
            let acc = field.dot(
                (k + 1..s).map(|t| self.u.get(k, t)),
                (k + 1..s).map(|t| x[t]),
            );
            let num = field.sub(y[k], acc);
            x[k] = field
                .div(num, self.u.get(k, k))
                .expect("diagonal of U is nonzero by construction");
        }
        x
    }

    /// Row vector `z` with `z · A[rows, cols] = rhs` (solves through `U`
    /// forward, then `L` backward).
    pub fn solve_left(&self, field: &PrimeField, rhs: &[FieldElement]) -> Vec<FieldElement> {
        let s = self.len();
        debug_assert_eq!(rhs.len(), s);
        let mut y = vec![0; s];
        for k in 0..s {
            let acc = field.dot((0..k).map(|t| y[t]), (0..k).map(|t| self.u.get(t, k)));
            let num = field.sub(rhs[k], acc);
            y[k] = field
                .div(num, self.u.get(k, k))
                .expect("diagonal of U is nonzero by construction");
        }
        let mut z = vec![0; s];
        for k in (0..s).rev() {
            let acc = field.dot(
                (k + 1..s).map(|t| z[t]),
                (k + 1..s).map(|t| self.l.get(t, k)),
            );
            z[k] = field.sub(y[k], acc);
        }
        z
    }

    /// Rank-one growth of the factorization: appends pivot `(i, j)` given
    /// `u = A[rows, j]`, `v = A[i, cols]` and the corner `d = A[i, j]`.
    ///
    /// The bordered matrix factors as `[[L, 0], [v·U⁻¹, 1]] · [[U, L⁻¹u],
    /// [0, w]]` with `w = d − (v·U⁻¹)·(L⁻¹u)`; a zero `w` means the extended
    /// submatrix is singular and the candidate is rejected.
    pub fn online_lu_update(
        &mut self,
        field: &PrimeField,
        i: usize,
        j: usize,
        u: &[FieldElement],
        v: &[FieldElement],
        d: FieldElement,
    ) -> Result<(), Error> {
        let s = self.len();
        debug_assert_eq!(u.len(), s);
        debug_assert_eq!(v.len(), s);
        // lnew = v·U⁻¹ (forward through the columns of U)
        let mut lnew = vec![0; s];
        for k in 0..s {
            let acc = field.dot((0..k).map(|t| lnew[t]), (0..k).map(|t| self.u.get(t, k)));
            let num = field.sub(v[k], acc);
            lnew[k] = field
                .div(num, self.u.get(k, k))
                .expect("diagonal of U is nonzero by construction");
        }
        // unew = L⁻¹·u
        let mut unew = vec![0; s];
        for k in 0..s {
            let acc = field.dot((0..k).map(|t| self.l.get(k, t)), (0..k).map(|t| unew[t]));
            unew[k] = field.sub(u[k], acc);
        }
        let w = field.sub(
            d,
            field.dot(lnew.iter().copied(), unew.iter().copied()),
        );
        if w == 0 {
            return Err(Error::SingularExtension);
        }
        let mut l = DenseMatrix::identity(s + 1);
        let mut un = DenseMatrix::zeros(s + 1, s + 1);
        for a in 0..s {
            for b in 0..=a {
                l.set(a, b, if a == b { 1 } else { self.l.get(a, b) });
            }
            for b in a..s {
                un.set(a, b, self.u.get(a, b));
            }
            l.set(s, a, lnew[a]);
            un.set(a, s, unew[a]);
        }
        un.set(s, s, w);
        self.l = l;
        self.u = un;
        self.rows.push(i);
        self.cols.push(j);
        Ok(())
    }

    /// Exact check that `A[rows, cols] = L·U` (used behind debug assertions).
    pub fn product_matches(&self, field: &PrimeField, a: &DenseMatrix) -> bool {
        let sub = a.gather(&self.rows, &self.cols);
        self.l.mul(&self.u, field) == sub
    }
}

/// A vector `A·x` for `x` uniform over the field: a uniform sample from the
/// column space of `a`.
pub fn sample_column_space(
    field: &PrimeField,
    a: &DenseMatrix,
    rng: &mut impl rand::Rng,
) -> Vec<FieldElement> {
    let x: Vec<FieldElement> = (0..a.cols()).map(|_| field.sample(rng)).collect();
    (0..a.rows())
        .map(|i| field.dot(a.row(i).iter().copied(), x.iter().copied()))
        .collect()
}

/// Residual `b − A[*, cols] · A[rows, cols]⁻¹ · b[rows]`: zero exactly on
/// the rows spanned by the basis rows.
pub fn residual_column(
    field: &PrimeField,
    basis: &IncrementalBasis,
    a: &DenseMatrix,
    b: &[FieldElement],
) -> Vec<FieldElement> {
    let rhs: Vec<FieldElement> = basis.rows.iter().map(|&i| b[i]).collect();
    let x = basis.solve(field, &rhs);
    (0..a.rows())
        .map(|i| {
            let partial = field.dot(
                basis.cols.iter().map(|&j| a.get(i, j)),
                x.iter().copied(),
            );
            field.sub(b[i], partial)
        })
        .collect()
}

/// Exact Schur complement row `A[i, *] − A[i, cols] · A[rows, cols]⁻¹ ·
/// A[rows, *]`; its first nonzero position is the pivot column for row `i`.
pub fn residual_row(
    field: &PrimeField,
    basis: &IncrementalBasis,
    a: &DenseMatrix,
    i: usize,
) -> Vec<FieldElement> {
    let rhs: Vec<FieldElement> = basis.cols.iter().map(|&j| a.get(i, j)).collect();
    let z = basis.solve_left(field, &rhs);
    (0..a.cols())
        .map(|j| {
            let partial = field.dot(
                z.iter().copied(),
                basis.rows.iter().map(|&p| a.get(p, j)),
            );
            field.sub(a.get(i, j), partial)
        })
        .collect()
}

/// Monte Carlo computation of the rank profile matrix of `a` in
/// O((m+n)·r²) field work plus sampling. Declares the rank complete after
/// `max_failures` consecutive all-zero residuals from fresh samples; with
/// high probability (≥ 1 − r/p per pivot step) the result equals the true
/// rank profile matrix.
pub fn lowrank_rpm(
    field: &PrimeField,
    a: &DenseMatrix,
    rng: &mut impl rand::Rng,
    max_failures: usize,
) -> SubPermutationMatrix {
    let mut basis = IncrementalBasis::new();
    let mut failures = 0;
    while failures < max_failures && basis.len() < a.rows().min(a.cols()) {
        let b = sample_column_space(field, a, rng);
        let res = residual_column(field, &basis, a, &b);
        let Some(i) = res.iter().position(|&x| x != 0) else {
            failures += 1;
            continue;
        };
        failures = 0;
        let row_res = residual_row(field, &basis, a, i);
        let j = (0..a.cols())
            .find(|&j| !basis.cols.contains(&j) && row_res[j] != 0)
            .expect("an independent row has a nonzero Schur complement entry");
        let u: Vec<FieldElement> = basis.rows.iter().map(|&p| a.get(p, j)).collect();
        let v: Vec<FieldElement> = basis.cols.iter().map(|&q| a.get(i, q)).collect();
        // The corner of the extension is the Schur entry just found, so the
        // update cannot be singular here; a failure would still be safe to
        // skip (the candidate is simply retried with a fresh sample).
        if basis
            .online_lu_update(field, i, j, &u, &v, a.get(i, j))
            .is_err()
        {
            continue;
        }
        debug_assert!(basis.product_matches(field, a));
    }
    SubPermutationMatrix::new(
        a.rows(),
        a.cols(),
        basis
            .rows
            .iter()
            .zip(basis.cols.iter())
            .map(|(&i, &j)| (i, j))
            .collect(),
    )
    .expect("discovered pivots have distinct rows and columns")
}

/// Rank profile matrix via separately computed row and column rank profiles:
/// the profiles select an r×r nonsingular submatrix whose own rank profile
/// matrix, computed by a lexicographic elimination with column rotations, is
/// re-embedded into the m×n frame.
pub fn lowrank_rpm_via_profiles(
    field: &PrimeField,
    a: &DenseMatrix,
    rng: &mut impl rand::Rng,
) -> SubPermutationMatrix {
    let row_profile = lowrank_rpm(field, a, rng, 2).row_support();
    let col_profile = lowrank_rpm(field, &a.transpose(), rng, 2).row_support();
    let b = a.gather(&row_profile, &col_profile);
    let d = iterative_pluq(
        field,
        &b,
        PivotingStrategy::new(
            SearchOrder::Lexicographic,
            PermKind::Rotation,
            PermKind::Rotation,
        ),
    );
    let pivots = d
        .pivoting_matrix()
        .pivots()
        .iter()
        .map(|&(x, y)| (row_profile[x], col_profile[y]))
        .collect();
    SubPermutationMatrix::new(a.rows(), a.cols(), pivots)
        .expect("profile indices are distinct")
}
