//! Pivot search preorders, elementary pivot permutations, and the
//! iterative right-looking elimination engine.
//!
//! A pivoting strategy is a triple: which preorder ranks candidate
//! pivots, and whether the row/column bringing a pivot to the diagonal is
//! a transposition or a rotation. The combination decides which rank
//! profiles of the input can be read off the factorization; see
//! [`reveal_claim`] for the guaranteed table.
//!
//! Ties among minimal candidates are always broken toward the
//! lexicographically smallest `(i, j)`, which makes every strategy
//! deterministic (and makes the product-order search agree with the
//! lexicographic one on the chosen pivot, while still exposing the full
//! minima set through [`pivot_minima`]).

use std::fmt;
use std::str::FromStr;

use crate::field::PrimeField;
use crate::matrix::{DenseMatrix, Rect};
use crate::perm::Permutation;
use crate::pluq::PluqDecomposition;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOrder {
    /// `(i1, j1) <= (i2, j2)` iff `i1 <= i2`: any nonzero of the first
    /// nonzero row is minimal.
    RowOrder,
    /// Column counterpart of `RowOrder`.
    ColOrder,
    /// First nonzero entry of the first nonzero row.
    Lexicographic,
    /// Topmost nonzero entry of the first nonzero column.
    ReverseLexicographic,
    /// `(i1, j1) <= (i2, j2)` iff `i1 <= i2` and `j1 <= j2`: minima are
    /// the nonzero entries whose proper leading submatrix is zero.
    ProductOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermKind {
    Transposition,
    Rotation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PivotingStrategy {
    pub search: SearchOrder,
    pub row_perm: PermKind,
    pub col_perm: PermKind,
}

impl PivotingStrategy {
    pub fn new(search: SearchOrder, row_perm: PermKind, col_perm: PermKind) -> Self {
        PivotingStrategy {
            search,
            row_perm,
            col_perm,
        }
    }

    /// All 20 strategy combinations.
    pub fn all() -> Vec<PivotingStrategy> {
        let searches = [
            SearchOrder::RowOrder,
            SearchOrder::ColOrder,
            SearchOrder::Lexicographic,
            SearchOrder::ReverseLexicographic,
            SearchOrder::ProductOrder,
        ];
        let kinds = [PermKind::Transposition, PermKind::Rotation];
        let mut out = Vec::new();
        for s in searches {
            for rp in kinds {
                for cp in kinds {
                    out.push(PivotingStrategy::new(s, rp, cp));
                }
            }
        }
        out
    }
}

impl fmt::Display for PivotingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.search {
            SearchOrder::RowOrder => "row",
            SearchOrder::ColOrder => "col",
            SearchOrder::Lexicographic => "lex",
            SearchOrder::ReverseLexicographic => "revlex",
            SearchOrder::ProductOrder => "product",
        };
        let k = |p: PermKind| match p {
            PermKind::Transposition => "trans",
            PermKind::Rotation => "rot",
        };
        write!(f, "{s},{},{}", k(self.row_perm), k(self.col_perm))
    }
}

impl FromStr for PivotingStrategy {
    type Err = Error;

    /// Parses `search,rowperm,colperm`, e.g. `lex,rot,rot`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::StrategyParse(format!(
                "expected `search,rowperm,colperm`, got `{s}`"
            )));
        }
        let search = match parts[0] {
            "row" => SearchOrder::RowOrder,
            "col" => SearchOrder::ColOrder,
            "lex" => SearchOrder::Lexicographic,
            "revlex" => SearchOrder::ReverseLexicographic,
            "product" => SearchOrder::ProductOrder,
            other => {
                return Err(Error::StrategyParse(format!("unknown search `{other}`")))
            }
        };
        let kind = |t: &str| match t {
            "trans" => Ok(PermKind::Transposition),
            "rot" => Ok(PermKind::Rotation),
            other => Err(Error::StrategyParse(format!(
                "unknown permutation kind `{other}`"
            ))),
        };
        Ok(PivotingStrategy::new(search, kind(parts[1])?, kind(parts[2])?))
    }
}

/// What a factorization produced by a given strategy is guaranteed to
/// expose. Stronger things may hold for particular inputs; these are the
/// worst-case guarantees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RevealClaim {
    pub row_rank_profile: bool,
    pub col_rank_profile: bool,
    pub rank_profile_matrix: bool,
    /// Final row map is r-monotonically increasing.
    pub row_monotone: bool,
    pub col_monotone: bool,
}

impl RevealClaim {
    pub fn none() -> Self {
        RevealClaim {
            row_rank_profile: false,
            col_rank_profile: false,
            rank_profile_matrix: false,
            row_monotone: false,
            col_monotone: false,
        }
    }
}

/// The static guarantee table, one entry per strategy triple:
///
/// * the row rank profile is revealed by row/lexicographic searches, and
///   by the other searches when rows move by rotations;
/// * symmetrically for the column rank profile;
/// * the full rank profile matrix needs lexicographic search with column
///   rotations, reverse-lexicographic with row rotations, or product
///   order with rotations on both sides;
/// * a rotation side keeps the corresponding map monotone.
pub fn reveal_claim(s: &PivotingStrategy) -> RevealClaim {
    use PermKind::Rotation as Rot;
    use SearchOrder::*;
    let row_rank_profile = matches!(s.search, RowOrder | Lexicographic)
        || (matches!(s.search, ReverseLexicographic | ProductOrder) && s.row_perm == Rot);
    let col_rank_profile = matches!(s.search, ColOrder | ReverseLexicographic)
        || (matches!(s.search, Lexicographic | ProductOrder) && s.col_perm == Rot);
    let rank_profile_matrix = (s.search == Lexicographic && s.col_perm == Rot)
        || (s.search == ReverseLexicographic && s.row_perm == Rot)
        || (s.search == ProductOrder && s.row_perm == Rot && s.col_perm == Rot);
    RevealClaim {
        row_rank_profile,
        col_rank_profile,
        rank_profile_matrix,
        row_monotone: s.row_perm == Rot,
        col_monotone: s.col_perm == Rot,
    }
}

/// All minimal nonzero candidates of the window under the preorder,
/// in window-relative coordinates, lexicographically sorted.
pub fn pivot_minima(a: &DenseMatrix, w: Rect, search: SearchOrder) -> Vec<(usize, usize)> {
    let nz = |i: usize, j: usize| a.get(w.i0 + i, w.j0 + j) != 0;
    match search {
        SearchOrder::RowOrder => {
            for i in 0..w.m {
                let row: Vec<(usize, usize)> =
                    (0..w.n).filter(|&j| nz(i, j)).map(|j| (i, j)).collect();
                if !row.is_empty() {
                    return row;
                }
            }
            Vec::new()
        }
        SearchOrder::ColOrder => {
            for j in 0..w.n {
                let col: Vec<(usize, usize)> =
                    (0..w.m).filter(|&i| nz(i, j)).map(|i| (i, j)).collect();
                if !col.is_empty() {
                    return col;
                }
            }
            Vec::new()
        }
        SearchOrder::Lexicographic => {
            for i in 0..w.m {
                if let Some(j) = (0..w.n).find(|&j| nz(i, j)) {
                    return vec![(i, j)];
                }
            }
            Vec::new()
        }
        SearchOrder::ReverseLexicographic => {
            for j in 0..w.n {
                if let Some(i) = (0..w.m).find(|&i| nz(i, j)) {
                    return vec![(i, j)];
                }
            }
            Vec::new()
        }
        SearchOrder::ProductOrder => {
            // the leftmost nonzero of a row is minimal iff it is strictly
            // left of every leftmost nonzero seen in earlier rows
            let mut best = w.n;
            let mut out = Vec::new();
            for i in 0..w.m {
                if let Some(j) = (0..best).find(|&j| nz(i, j)) {
                    out.push((i, j));
                    best = j;
                    if best == 0 {
                        break;
                    }
                }
            }
            out
        }
    }
}

/// Tie-broken minimum: the lexicographically smallest minimal candidate.
pub fn search_pivot(a: &DenseMatrix, w: Rect, search: SearchOrder) -> Option<(usize, usize)> {
    pivot_minima(a, w, search).into_iter().min()
}

/// One elimination step's bookkeeping, shared by every engine: moves the
/// pivot at window coordinates `(i, j)` (relative to the elimination
/// window starting at `(k, k)` of `rect`) onto the diagonal and records
/// the move in the local maps.
pub(crate) fn apply_pivot_move(
    a: &mut DenseMatrix,
    rect: Rect,
    k: usize,
    i: usize,
    j: usize,
    row_perm: PermKind,
    col_perm: PermKind,
    row_map: &mut [usize],
    col_map: &mut [usize],
) {
    match row_perm {
        PermKind::Transposition => {
            a.swap_rows_in(rect, k, i);
            row_map.swap(k, i);
        }
        PermKind::Rotation => {
            a.rotate_rows_in(rect, k, i);
            row_map[k..=i].rotate_right(1);
        }
    }
    match col_perm {
        PermKind::Transposition => {
            a.swap_cols_in(rect, k, j);
            col_map.swap(k, j);
        }
        PermKind::Rotation => {
            a.rotate_cols_in(rect, k, j);
            col_map[k..=j].rotate_right(1);
        }
    }
}

/// Right-looking elimination of a window: after each pivot the whole
/// trailing Schur complement is updated. Returns the local working-to-
/// original maps of the window and the rank.
pub(crate) fn iterative_pluq_rect(
    field: &PrimeField,
    a: &mut DenseMatrix,
    rect: Rect,
    strategy: PivotingStrategy,
) -> (Vec<usize>, Vec<usize>, usize) {
    let mut row_map: Vec<usize> = (0..rect.m).collect();
    let mut col_map: Vec<usize> = (0..rect.n).collect();
    let mut k = 0usize;
    while k < rect.m.min(rect.n) {
        let schur = rect.sub(k, k, rect.m - k, rect.n - k);
        let Some((di, dj)) = search_pivot(a, schur, strategy.search) else {
            break;
        };
        apply_pivot_move(
            a,
            rect,
            k,
            k + di,
            k + dj,
            strategy.row_perm,
            strategy.col_perm,
            &mut row_map,
            &mut col_map,
        );
        let inv = field
            .inv(a.get(rect.i0 + k, rect.j0 + k))
            .expect("pivot is nonzero");
        for i in k + 1..rect.m {
            let l = field.mul(a.get(rect.i0 + i, rect.j0 + k), inv);
            a.set(rect.i0 + i, rect.j0 + k, l);
            if l != 0 {
                for j in k + 1..rect.n {
                    let v = field.sub(
                        a.get(rect.i0 + i, rect.j0 + j),
                        field.mul(l, a.get(rect.i0 + k, rect.j0 + j)),
                    );
                    a.set(rect.i0 + i, rect.j0 + j, v);
                }
            }
        }
        k += 1;
    }
    (row_map, col_map, k)
}

/// Iterative PLUQ elimination of `a` under the given strategy.
pub fn iterative_pluq(
    field: &PrimeField,
    a: &DenseMatrix,
    strategy: PivotingStrategy,
) -> PluqDecomposition {
    let mut w = a.clone();
    let rect = w.full_rect();
    let (row_map, col_map, r) = iterative_pluq_rect(field, &mut w, rect, strategy);
    PluqDecomposition::from_parts(
        Permutation::from_one_line(row_map).expect("map stays a permutation"),
        Permutation::from_one_line(col_map).expect("map stays a permutation"),
        r,
        w,
        reveal_claim(&strategy),
    )
}
