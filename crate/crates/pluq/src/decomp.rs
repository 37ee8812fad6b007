//! Post-processing of a pivot-revealing PLUQ factorization into central
//! permutation decompositions (LEU, VPU Bruhat, generalized XFY Bruhat) and
//! row/column echelon forms, together with the uniqueness predicates that
//! single out the canonical representative among them.

use crate::blocked::crout_pluq;
use crate::field::PrimeField;
use crate::matrix::DenseMatrix;
use crate::perm::{Permutation, SubPermutationMatrix};
use crate::pluq::PluqDecomposition;
use crate::Error;

/// Factorization `A = Lbar · E · Ubar` with `Lbar` lower triangular (m×m),
/// `Ubar` upper triangular (n×n), and `E` the pivoting matrix of the source
/// factorization (an r-sub-permutation matrix).
///
/// Stored in packed form: the dense triangular factors are mostly structural
/// zeros, so we keep the m×r / r×n blocks plus the two permutations and
/// materialize on demand.
#[derive(Debug, Clone)]
pub struct LeuDecomposition {
    row_map: Permutation,
    col_map: Permutation,
    rank: usize,
    l: DenseMatrix,
    u: DenseMatrix,
    e: SubPermutationMatrix,
}

impl LeuDecomposition {
    pub fn rows(&self) -> usize {
        self.row_map.n()
    }

    pub fn cols(&self) -> usize {
        self.col_map.n()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The central sub-permutation factor.
    pub fn e(&self) -> &SubPermutationMatrix {
        &self.e
    }

    /// Dense m×m lower-triangular left factor. Row/column `row_map(k)` holds
    /// the k-th column of the unit lower factor; columns outside the first r
    /// images are zero.
    pub fn lbar(&self) -> DenseMatrix {
        let m = self.rows();
        let mut out = DenseMatrix::zeros(m, m);
        for i in 0..m {
            for k in 0..self.rank {
                out.set(self.row_map.image(i), self.row_map.image(k), self.l.get(i, k));
            }
        }
        out
    }

    /// Dense n×n upper-triangular right factor.
    pub fn ubar(&self) -> DenseMatrix {
        let n = self.cols();
        let mut out = DenseMatrix::zeros(n, n);
        for k in 0..self.rank {
            for j in 0..n {
                out.set(self.col_map.image(k), self.col_map.image(j), self.u.get(k, j));
            }
        }
        out
    }

    /// `Lbar · E · Ubar`, for verification.
    pub fn recompose(&self, field: &PrimeField) -> DenseMatrix {
        self.lbar()
            .mul(&self.e.to_dense(), field)
            .mul(&self.ubar(), field)
    }
}

/// Bruhat-style factorization `A = V · Pm · U` with both outer factors upper
/// triangular and a central sub-permutation. Packed as the LEU factorization
/// of the row-reversed matrix.
#[derive(Debug, Clone)]
pub struct BruhatVpu {
    leu: LeuDecomposition,
}

impl BruhatVpu {
    pub fn rows(&self) -> usize {
        self.leu.rows()
    }

    pub fn cols(&self) -> usize {
        self.leu.cols()
    }

    pub fn rank(&self) -> usize {
        self.leu.rank()
    }

    /// Dense m×m upper-triangular left factor (`J · Lbar · J`).
    pub fn v(&self) -> DenseMatrix {
        let m = self.rows();
        let lbar = self.leu.lbar();
        DenseMatrix::from_fn(m, m, |i, j| lbar.get(m - 1 - i, m - 1 - j))
    }

    /// Central sub-permutation factor (`J · E`).
    pub fn pm(&self) -> SubPermutationMatrix {
        let m = self.rows();
        let pivots = self
            .leu
            .e()
            .pivots()
            .iter()
            .map(|&(i, j)| (m - 1 - i, j))
            .collect();
        SubPermutationMatrix::new(m, self.cols(), pivots).expect("reflected pivots stay valid")
    }

    /// Dense n×n upper-triangular right factor.
    pub fn u(&self) -> DenseMatrix {
        self.leu.ubar()
    }

    /// `V · Pm · U`, for verification.
    pub fn recompose(&self, field: &PrimeField) -> DenseMatrix {
        self.v().mul(&self.pm().to_dense(), field).mul(&self.u(), field)
    }
}

/// Factorization `A = X · F · Y` with `X` an m×r column echelon form, `Y` an
/// r×n row echelon form, and `F` an r×r permutation.
#[derive(Debug, Clone)]
pub struct GeneralizedBruhatXfy {
    pub x: DenseMatrix,
    pub f: Permutation,
    pub y: DenseMatrix,
}

impl GeneralizedBruhatXfy {
    pub fn rank(&self) -> usize {
        self.f.n()
    }

    /// `X · F · Y`, for verification.
    pub fn recompose(&self, field: &PrimeField) -> DenseMatrix {
        self.x.mul(&self.f.matrix(), field).mul(&self.y, field)
    }
}

/// A column echelon form and a row echelon form of the same matrix.
#[derive(Debug, Clone)]
pub struct EchelonPair {
    /// Column echelon form (same shape as the source matrix).
    pub c: DenseMatrix,
    /// Row echelon form (same shape as the source matrix).
    pub r: DenseMatrix,
    /// Number of nonzero columns of `c` / nonzero rows of `r`.
    pub rank: usize,
}

fn require_rpm_claim(d: &PluqDecomposition) -> Result<(), Error> {
    if d.claim().rank_profile_matrix {
        Ok(())
    } else {
        Err(Error::NotRpmRevealing)
    }
}

/// Turns a pivot-revealing PLUQ factorization into an LEU factorization whose
/// central factor is the rank profile matrix. Trusts the strategy metadata
/// carried by `d`; see [`leu_from_pluq_validated`] for an oracle check.
pub fn leu_from_pluq(d: &PluqDecomposition) -> Result<LeuDecomposition, Error> {
    require_rpm_claim(d)?;
    Ok(LeuDecomposition {
        row_map: d.row_map().clone(),
        col_map: d.col_map().clone(),
        rank: d.rank(),
        l: d.l(),
        u: d.u(),
        e: d.pivoting_matrix(),
    })
}

/// Like [`leu_from_pluq`] but verifies against an independent elimination of
/// `a` that the pivoting matrix really is the rank profile matrix.
pub fn leu_from_pluq_validated(
    field: &PrimeField,
    a: &DenseMatrix,
    d: &PluqDecomposition,
) -> Result<LeuDecomposition, Error> {
    if d.pivoting_matrix() != crate::oracle::rpm_oracle(field, a) {
        return Err(Error::NotRpmRevealing);
    }
    Ok(LeuDecomposition {
        row_map: d.row_map().clone(),
        col_map: d.col_map().clone(),
        rank: d.rank(),
        l: d.l(),
        u: d.u(),
        e: d.pivoting_matrix(),
    })
}

/// True iff the LEU factorization induced by `d` is the canonical one, i.e.
/// `Eᵀ·Lbar·E` is lower triangular. Guaranteed when the pivot search followed
/// the reverse lexicographic order.
pub fn leu_uniqueness_predicate(d: &PluqDecomposition) -> Result<bool, Error> {
    require_rpm_claim(d)?;
    let l = d.l();
    let r = d.rank();
    // Eᵀ·Lbar·E compresses to the r×r block L placed at the pivot column
    // positions: entry (col_map(s), col_map(s')) holds L[s,s'].
    for s in 0..r {
        for t in 0..r {
            if d.col_map().image(s) < d.col_map().image(t) && l.get(s, t) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Computes a `V·Pm·U` factorization of `a` (both outer factors upper
/// triangular) by eliminating the row-reversed matrix.
pub fn bruhat_vpu(field: &PrimeField, a: &DenseMatrix) -> BruhatVpu {
    let m = a.rows();
    let reversed = DenseMatrix::from_fn(m, a.cols(), |i, j| a.get(m - 1 - i, j));
    let d = crout_pluq(field, &reversed);
    let leu = leu_from_pluq(&d).expect("elimination strategy reveals the pivoting matrix");
    BruhatVpu { leu }
}

/// Indices `0..r` of the source factorization sorted by their row image.
fn row_sorted_pivots(d: &PluqDecomposition) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.rank()).collect();
    order.sort_by_key(|&s| d.row_map().image(s));
    order
}

/// Indices `0..r` of the source factorization sorted by their column image.
fn col_sorted_pivots(d: &PluqDecomposition) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.rank()).collect();
    order.sort_by_key(|&s| d.col_map().image(s));
    order
}

/// Builds the m×w column echelon matrix whose column t is the column of the
/// unit lower factor for pivot `order[t]`, rows restricted to `keep_rows`.
fn column_echelon_from(
    d: &PluqDecomposition,
    order: &[usize],
    rows: usize,
    width: usize,
) -> DenseMatrix {
    let l = d.l();
    let mut out = DenseMatrix::zeros(rows, width);
    for i in 0..d.rows() {
        let dest = d.row_map().image(i);
        if dest >= rows {
            continue;
        }
        for (t, &s) in order.iter().enumerate() {
            out.set(dest, t, l.get(i, s));
        }
    }
    out
}

/// Builds the h×n row echelon matrix whose row t is the row of the upper
/// factor for pivot `order[t]`, columns restricted to the first `cols`.
fn row_echelon_from(
    d: &PluqDecomposition,
    order: &[usize],
    height: usize,
    cols: usize,
) -> DenseMatrix {
    let u = d.u();
    let mut out = DenseMatrix::zeros(height, cols);
    for (t, &s) in order.iter().enumerate() {
        for j in 0..d.cols() {
            let dest = d.col_map().image(j);
            if dest < cols {
                out.set(t, dest, u.get(s, j));
            }
        }
    }
    out
}

/// Recovers a column echelon form and a row echelon form of the eliminated
/// matrix from a pivot-revealing PLUQ factorization, by permutations alone.
pub fn echelon_forms(d: &PluqDecomposition) -> Result<EchelonPair, Error> {
    require_rpm_claim(d)?;
    let (m, n, r) = (d.rows(), d.cols(), d.rank());
    let mut c = DenseMatrix::zeros(m, n);
    c.paste(
        crate::matrix::Rect::new(0, 0, m, r),
        &column_echelon_from(d, &row_sorted_pivots(d), m, r),
    );
    let mut rform = DenseMatrix::zeros(m, n);
    rform.paste(
        crate::matrix::Rect::new(0, 0, r, n),
        &row_echelon_from(d, &col_sorted_pivots(d), r, n),
    );
    Ok(EchelonPair { c, r: rform, rank: r })
}

/// Echelon forms of the leading `i×j` submatrix (`1 ≤ i ≤ m`, `1 ≤ j ≤ n`),
/// read off the same factorization by filtering pivots and truncating lines.
pub fn echelon_of_leading_submatrix(
    d: &PluqDecomposition,
    i: usize,
    j: usize,
) -> Result<EchelonPair, Error> {
    if i == 0 || i > d.rows() || j == 0 || j > d.cols() {
        return Err(Error::IndexOutOfRange);
    }
    require_rpm_claim(d)?;
    // Columns of the echelon form come from pivots inside the first j
    // columns, sorted by row; rows are then truncated below i (pivots whose
    // row falls outside contribute zero columns which are dropped).
    let mut col_order: Vec<usize> = (0..d.rank())
        .filter(|&s| d.col_map().image(s) < j && d.row_map().image(s) < i)
        .collect();
    col_order.sort_by_key(|&s| d.row_map().image(s));
    let mut row_order: Vec<usize> = (0..d.rank())
        .filter(|&s| d.row_map().image(s) < i && d.col_map().image(s) < j)
        .collect();
    row_order.sort_by_key(|&s| d.col_map().image(s));
    let rank = col_order.len();
    let mut c = DenseMatrix::zeros(i, j);
    c.paste(
        crate::matrix::Rect::new(0, 0, i, rank),
        &column_echelon_from(d, &col_order, i, rank),
    );
    let mut rform = DenseMatrix::zeros(i, j);
    rform.paste(
        crate::matrix::Rect::new(0, 0, rank, j),
        &row_echelon_from(d, &row_order, rank, j),
    );
    Ok(EchelonPair { c, r: rform, rank })
}

/// Produces the `X·F·Y` factorization: `X` the column echelon form with zero
/// columns dropped, `Y` the row echelon form with zero rows dropped, and `F`
/// the r×r permutation matching each pivot's row rank to its column rank.
pub fn generalized_bruhat(d: &PluqDecomposition) -> Result<GeneralizedBruhatXfy, Error> {
    require_rpm_claim(d)?;
    let row_order = row_sorted_pivots(d);
    let col_order = col_sorted_pivots(d);
    let r = d.rank();
    let x = column_echelon_from(d, &row_order, d.rows(), r);
    let y = row_echelon_from(d, &col_order, r, d.cols());
    // F[t, u] = 1 exactly when row-sorted pivot t is column-sorted pivot u.
    let mut col_rank_of = vec![0usize; r];
    for (u, &s) in col_order.iter().enumerate() {
        col_rank_of[s] = u;
    }
    let f = Permutation::from_one_line(row_order.iter().map(|&s| col_rank_of[s]).collect())
        .expect("pivot ranks form a permutation");
    Ok(GeneralizedBruhatXfy { x, f, y })
}

/// True iff the `X·F·Y` factorization is the canonical generalized Bruhat
/// one: `Fᵀ · X_pivots · F` must be lower triangular, where `X_pivots` keeps
/// the rows of the topmost nonzero entry of each column of `X`.
pub fn xfy_uniqueness_predicate(xfy: &GeneralizedBruhatXfy) -> bool {
    let r = xfy.rank();
    // Pivot row of column t = topmost nonzero (X is column echelon).
    let mut pivot_rows = Vec::with_capacity(r);
    for t in 0..r {
        let row = (0..xfy.x.rows()).find(|&i| xfy.x.get(i, t) != 0);
        match row {
            Some(i) => pivot_rows.push(i),
            None => return false,
        }
    }
    // W = X[pivot rows, *]; check Fᵀ·W·F lower triangular, i.e.
    // (FᵀWF)[f(t), f(t')] = W[t, t'] must vanish when f(t) < f(t').
    for t in 0..r {
        for t2 in 0..r {
            if xfy.f.image(t) < xfy.f.image(t2) && xfy.x.get(pivot_rows[t], t2) != 0 {
                return false;
            }
        }
    }
    true
}

/// Reads the rank profile matrix directly off a one-sided factorization: a
/// PLU factorization (trivial column permutation, generic column rank
/// profile) or an LUP factorization (trivial row permutation, generic row
/// rank profile).
pub fn rpm_from_plu(d: &PluqDecomposition) -> Result<SubPermutationMatrix, Error> {
    require_rpm_claim(d)?;
    let r = d.rank();
    let col_trivial = (0..r).all(|s| d.col_map().image(s) == s);
    let row_trivial = (0..r).all(|s| d.row_map().image(s) == s);
    if !col_trivial && !row_trivial {
        return Err(Error::PreconditionViolated(
            "neither side has a trivial permutation on the pivot range",
        ));
    }
    Ok(d.pivoting_matrix())
}

/// Structural zero-pattern check: nothing above the main diagonal.
pub fn is_lower_triangular(a: &DenseMatrix) -> bool {
    (0..a.rows()).all(|i| (i + 1..a.cols()).all(|j| a.get(i, j) == 0))
}

/// Structural zero-pattern check: nothing below the main diagonal.
pub fn is_upper_triangular(a: &DenseMatrix) -> bool {
    (0..a.rows()).all(|i| (0..i.min(a.cols())).all(|j| a.get(i, j) == 0))
}

/// Column echelon shape: the topmost nonzero of each nonzero column sits
/// strictly below the previous column's, and zero columns come last.
pub fn is_column_echelon(a: &DenseMatrix) -> bool {
    let mut prev: Option<usize> = None;
    let mut seen_zero = false;
    for t in 0..a.cols() {
        match (0..a.rows()).find(|&i| a.get(i, t) != 0) {
            Some(top) => {
                if seen_zero || prev.is_some_and(|p| top <= p) {
                    return false;
                }
                prev = Some(top);
            }
            None => seen_zero = true,
        }
    }
    true
}

/// Row echelon shape: the leftmost nonzero of each nonzero row sits strictly
/// right of the previous row's, and zero rows come last.
pub fn is_row_echelon(a: &DenseMatrix) -> bool {
    let mut prev: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..a.rows() {
        match (0..a.cols()).find(|&j| a.get(i, j) != 0) {
            Some(left) => {
                if seen_zero || prev.is_some_and(|p| left <= p) {
                    return false;
                }
                prev = Some(left);
            }
            None => seen_zero = true,
        }
    }
    true
}
