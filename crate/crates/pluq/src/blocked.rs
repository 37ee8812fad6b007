//! Lazy elimination schedules and the tile-recursive PLUQ factorization.
//!
//! All three base-case schedules (Crout, left-looking, right-looking)
//! pick exactly the same pivot sequence — the lexicographically smallest
//! nonzero of the current Schur complement, moved to the diagonal by
//! rotations — so they produce bitwise-identical factorizations and
//! differ only in *when* updates are applied, i.e. in how many modular
//! reductions they spend. Crout defers everything and touches each entry
//! essentially once; left-looking catches columns up lazily; right-looking
//! updates the whole trailing block at every pivot.
//!
//! The tile-recursive algorithm splits the matrix in four quadrants,
//! recurses, and stitches the quadrant factorizations together with
//! block rotations, preserving the rank-profile-matrix-revealing property
//! of its base case.

use crate::field::PrimeField;
use crate::matrix::{DenseMatrix, Rect};
use crate::perm::Permutation;
use crate::pivoting::{
    iterative_pluq_rect, reveal_claim, PermKind, PivotingStrategy, SearchOrder,
};
use crate::pluq::PluqDecomposition;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseSchedule {
    Crout,
    LeftLooking,
    RightLooking,
}

#[derive(Debug, Clone, Copy)]
pub struct BlockConfig {
    /// Stop recursing when `min(m, n)` is at most this.
    pub threshold: usize,
    pub schedule: BaseSchedule,
    /// Factor the two independent middle quadrants on separate threads.
    pub parallel_fg: bool,
}

impl Default for BlockConfig {
    fn default() -> Self {
        BlockConfig {
            threshold: 16,
            schedule: BaseSchedule::Crout,
            parallel_fg: false,
        }
    }
}

/// `B <- L^-1 B` for unit lower triangular `l` (diagonal implicit); one
/// delayed dot product, hence one reduction, per entry.
pub fn trsm_unit_lower_left(field: &PrimeField, a: &mut DenseMatrix, l: Rect, b: Rect) {
    debug_assert_eq!(l.m, l.n);
    debug_assert_eq!(l.m, b.m);
    for i in 1..b.m {
        for j in 0..b.n {
            let v = field.sub_dot(
                a.get(b.i0 + i, b.j0 + j),
                (0..i).map(|s| a.get(l.i0 + i, l.j0 + s)),
                (0..i).map(|s| a.get(b.i0 + s, b.j0 + j)),
            );
            a.set(b.i0 + i, b.j0 + j, v);
        }
    }
}

/// `B <- B U^-1` for upper triangular `u` carrying its diagonal.
pub fn trsm_upper_right(
    field: &PrimeField,
    a: &mut DenseMatrix,
    u: Rect,
    b: Rect,
) -> Result<(), Error> {
    debug_assert_eq!(u.m, u.n);
    debug_assert_eq!(u.n, b.n);
    for j in 0..b.n {
        let d = a.get(u.i0 + j, u.j0 + j);
        if d == 0 {
            return Err(Error::SingularDiagonal);
        }
        let inv = field.inv(d)?;
        for i in 0..b.m {
            let v = field.sub_dot(
                a.get(b.i0 + i, b.j0 + j),
                (0..j).map(|s| a.get(b.i0 + i, b.j0 + s)),
                (0..j).map(|s| a.get(u.i0 + s, u.j0 + j)),
            );
            a.set(b.i0 + i, b.j0 + j, field.mul(v, inv));
        }
    }
    Ok(())
}

/// `C <- C - A B`, one delayed dot per entry of C.
pub fn mm_acc(field: &PrimeField, a: &mut DenseMatrix, c: Rect, ar: Rect, br: Rect) {
    debug_assert_eq!(ar.n, br.m);
    debug_assert_eq!(c.m, ar.m);
    debug_assert_eq!(c.n, br.n);
    for i in 0..c.m {
        for j in 0..c.n {
            let v = field.sub_dot(
                a.get(c.i0 + i, c.j0 + j),
                (0..ar.n).map(|s| a.get(ar.i0 + i, ar.j0 + s)),
                (0..ar.n).map(|s| a.get(br.i0 + s, br.j0 + j)),
            );
            a.set(c.i0 + i, c.j0 + j, v);
        }
    }
}

/// Crout schedule: rows are consumed top to bottom, each row receives its
/// full deferred update at once; only the pivot's own column is updated
/// below. Lexicographic pivot search, rotations on both sides.
pub(crate) fn crout_rect(
    field: &PrimeField,
    a: &mut DenseMatrix,
    rect: Rect,
) -> (Vec<usize>, Vec<usize>, usize) {
    let (m, n) = (rect.m, rect.n);
    let mut row_map: Vec<usize> = (0..m).collect();
    let mut col_map: Vec<usize> = (0..n).collect();
    let mut k = 0usize;
    for i in 0..m {
        if k == n {
            break;
        }
        // deferred update of the trailing part of row i
        for j in k..n {
            let v = field.sub_dot(
                a.get(rect.i0 + i, rect.j0 + j),
                (0..k).map(|s| a.get(rect.i0 + i, rect.j0 + s)),
                (0..k).map(|s| a.get(rect.i0 + s, rect.j0 + j)),
            );
            a.set(rect.i0 + i, rect.j0 + j, v);
        }
        let Some(s) = (k..n).find(|&j| a.get(rect.i0 + i, rect.j0 + j) != 0) else {
            continue; // dependent row stays where it is
        };
        // deferred update of the pivot's column below row i, then divide
        let inv = field.inv(a.get(rect.i0 + i, rect.j0 + s)).expect("pivot nonzero");
        for i2 in i + 1..m {
            let v = field.sub_dot(
                a.get(rect.i0 + i2, rect.j0 + s),
                (0..k).map(|t| a.get(rect.i0 + i2, rect.j0 + t)),
                (0..k).map(|t| a.get(rect.i0 + t, rect.j0 + s)),
            );
            a.set(rect.i0 + i2, rect.j0 + s, field.mul(v, inv));
        }
        a.rotate_cols_in(rect, k, s);
        col_map[k..=s].rotate_right(1);
        a.rotate_rows_in(rect, k, i);
        row_map[k..=i].rotate_right(1);
        k += 1;
    }
    (row_map, col_map, k)
}

/// Left-looking schedule: each column carries two watermarks — `hdr[j]`
/// rows of finalized U entries at the top, and a lazy body that has only
/// the first `body[j]` pivots applied. The pivot scan finalizes headers
/// (cheap) and probes single Schur entries on the fly; a column receives
/// its full pending update only when it is chosen as a pivot column or at
/// the final flush. Rows observed to be zero in the Schur complement stay
/// zero and are never rescanned. Same pivots and packed output as
/// [`crout_rect`], different reduction schedule.
pub(crate) fn left_looking_rect(
    field: &PrimeField,
    a: &mut DenseMatrix,
    rect: Rect,
) -> (Vec<usize>, Vec<usize>, usize) {
    let (m, n) = (rect.m, rect.n);
    let mut row_map: Vec<usize> = (0..m).collect();
    let mut col_map: Vec<usize> = (0..n).collect();
    let mut body = vec![0usize; n]; // pivots applied to rows hdr[j]..m
    let mut hdr = vec![0usize; n]; // rows 0..hdr[j] hold final U values
    let mut dead = vec![false; m]; // rows known to be zero in the Schur
    let mut k = 0usize;

    // finalize U entries of column j for rows hdr[j]..stage
    let extend_header = |a: &mut DenseMatrix, body: &[usize], hdr: &mut [usize], j: usize, stage: usize| {
        for i in hdr[j]..stage {
            let w = body[j];
            if i > w {
                let v = field.sub_dot(
                    a.get(rect.i0 + i, rect.j0 + j),
                    (w..i).map(|s| a.get(rect.i0 + i, rect.j0 + s)),
                    (w..i).map(|s| a.get(rect.i0 + s, rect.j0 + j)),
                );
                a.set(rect.i0 + i, rect.j0 + j, v);
            } else if w > i {
                unreachable!("header rows never lag behind the body");
            }
        }
        if hdr[j] < stage {
            hdr[j] = stage;
        }
    };
    // apply the pending pivots to the whole body of column j
    let catch_up_body = |a: &mut DenseMatrix, body: &mut [usize], hdr: &[usize], j: usize, stage: usize| {
        let w = body[j];
        debug_assert!(hdr[j] >= stage);
        if w >= stage {
            return;
        }
        for i in stage..m {
            let v = field.sub_dot(
                a.get(rect.i0 + i, rect.j0 + j),
                (w..stage).map(|s| a.get(rect.i0 + i, rect.j0 + s)),
                (w..stage).map(|s| a.get(rect.i0 + s, rect.j0 + j)),
            );
            a.set(rect.i0 + i, rect.j0 + j, v);
        }
        body[j] = stage;
    };

    while k < m.min(n) {
        let mut found = None;
        'scan: for i in k..m {
            if dead[i] {
                continue;
            }
            for j in k..n {
                extend_header(a, &body, &mut hdr, j, k);
                // single-entry probe of the Schur value at (i, j)
                let w = body[j];
                let v = field.sub_dot(
                    a.get(rect.i0 + i, rect.j0 + j),
                    (w..k).map(|s| a.get(rect.i0 + i, rect.j0 + s)),
                    (w..k).map(|s| a.get(rect.i0 + s, rect.j0 + j)),
                );
                if v != 0 {
                    found = Some((i, j));
                    break 'scan;
                }
            }
            dead[i] = true; // zero rows of the Schur complement stay zero
        }
        let Some((i, j)) = found else { break };
        catch_up_body(a, &mut body, &hdr, j, k);
        a.rotate_rows_in(rect, k, i);
        row_map[k..=i].rotate_right(1);
        dead[k..=i].rotate_right(1);
        a.rotate_cols_in(rect, k, j);
        col_map[k..=j].rotate_right(1);
        body[k..=j].rotate_right(1);
        hdr[k..=j].rotate_right(1);
        // finalize the pivot column as the L column
        let inv = field.inv(a.get(rect.i0 + k, rect.j0 + k)).expect("pivot nonzero");
        for i2 in k + 1..m {
            let v = field.mul(a.get(rect.i0 + i2, rect.j0 + k), inv);
            a.set(rect.i0 + i2, rect.j0 + k, v);
        }
        k += 1;
        body[k - 1] = k;
        hdr[k - 1] = k;
    }
    // flush so the packed form matches the eager schedules bitwise
    for j in k..n {
        extend_header(a, &body, &mut hdr, j, k);
        catch_up_body(a, &mut body, &hdr, j, k);
    }
    (row_map, col_map, k)
}

fn base_case(
    field: &PrimeField,
    a: &mut DenseMatrix,
    rect: Rect,
    schedule: BaseSchedule,
) -> (Vec<usize>, Vec<usize>, usize) {
    match schedule {
        BaseSchedule::Crout => crout_rect(field, a, rect),
        BaseSchedule::LeftLooking => left_looking_rect(field, a, rect),
        BaseSchedule::RightLooking => iterative_pluq_rect(
            field,
            a,
            rect,
            PivotingStrategy::new(
                SearchOrder::ProductOrder,
                PermKind::Rotation,
                PermKind::Rotation,
            ),
        ),
    }
}

/// Reorders `map[range]` so that position `t` receives the value that was
/// at `order[t]` within the range.
fn reorder_map(map: &mut [usize], offset: usize, order: &[usize]) {
    let old: Vec<usize> = map[offset..offset + order.len()].to_vec();
    for (t, &src) in order.iter().enumerate() {
        map[offset + t] = old[src];
    }
}

fn tile_rect(
    field: &PrimeField,
    a: &mut DenseMatrix,
    rect: Rect,
    cfg: &BlockConfig,
    row_map: &mut Vec<usize>,
    col_map: &mut Vec<usize>,
) -> usize {
    let (m, n) = (rect.m, rect.n);
    *row_map = (0..m).collect();
    *col_map = (0..n).collect();
    if m.min(n) <= cfg.threshold {
        let (rm, cm, r) = base_case(field, a, rect, cfg.schedule);
        *row_map = rm;
        *col_map = cm;
        return r;
    }
    let (m1, n1) = (m / 2, n / 2);

    // A1 = leading quadrant
    let (mut p1, mut q1) = (Vec::new(), Vec::new());
    let r1 = tile_rect(field, a, rect.sub(0, 0, m1, n1), cfg, &mut p1, &mut q1);
    // B = P1^T A2, C = A3 Q1^T
    a.permute_rows_in(rect.sub(0, n1, m1, n - n1), &p1);
    a.permute_cols_in(rect.sub(m1, 0, m - m1, n1), &q1);
    reorder_map(row_map, 0, &p1);
    reorder_map(col_map, 0, &q1);
    // D = L1^-1 B1, E = C1 U1^-1
    trsm_unit_lower_left(field, a, rect.sub(0, 0, r1, r1), rect.sub(0, n1, r1, n - n1));
    trsm_upper_right(field, a, rect.sub(0, 0, r1, r1), rect.sub(m1, 0, m - m1, r1))
        .expect("U1 has nonzero pivots by construction");
    // F = B2 - M1 D, G = C2 - E V1, H = A4 - E D
    mm_acc(
        field,
        a,
        rect.sub(r1, n1, m1 - r1, n - n1),
        rect.sub(r1, 0, m1 - r1, r1),
        rect.sub(0, n1, r1, n - n1),
    );
    mm_acc(
        field,
        a,
        rect.sub(m1, r1, m - m1, n1 - r1),
        rect.sub(m1, 0, m - m1, r1),
        rect.sub(0, r1, r1, n1 - r1),
    );
    mm_acc(
        field,
        a,
        rect.sub(m1, n1, m - m1, n - n1),
        rect.sub(m1, 0, m - m1, r1),
        rect.sub(0, n1, r1, n - n1),
    );

    // the F and G quadrants are independent
    let f_rect = rect.sub(r1, n1, m1 - r1, n - n1);
    let g_rect = rect.sub(m1, r1, m - m1, n1 - r1);
    let (p2, q2, r2, p3, q3, r3);
    if cfg.parallel_fg && !f_rect.is_empty() && !g_rect.is_empty() {
        // the strict in-place discipline is relaxed here on purpose: the
        // two quadrants are copied out so each worker owns its data (and
        // its own reduction counter, folded back afterwards)
        let fblock = a.extract(f_rect);
        let gblock = a.extract(g_rect);
        let ff = field.clone();
        let fg = field.clone();
        ff.reset_reductions();
        fg.reset_reductions();
        let cfg2 = *cfg;
        let worker = move |f: PrimeField, mut block: DenseMatrix| {
            let mut pm = Vec::new();
            let mut cm = Vec::new();
            let full = block.full_rect();
            let r = tile_rect(&f, &mut block, full, &cfg2, &mut pm, &mut cm);
            (pm, cm, r, f.reductions(), block)
        };
        let (resf, resg) = std::thread::scope(|s| {
            let hf = s.spawn(move || worker(ff, fblock));
            let hg = s.spawn(move || worker(fg, gblock));
            (hf.join().expect("tile worker"), hg.join().expect("tile worker"))
        });
        field.add_reductions(resf.3 + resg.3);
        a.paste(f_rect, &resf.4);
        a.paste(g_rect, &resg.4);
        (p2, q2, r2) = (resf.0, resf.1, resf.2);
        (p3, q3, r3) = (resg.0, resg.1, resg.2);
    } else {
        let mut pm = Vec::new();
        let mut cm = Vec::new();
        let r = tile_rect(field, a, f_rect, cfg, &mut pm, &mut cm);
        (p2, q2, r2) = (pm, cm, r);
        let mut pm = Vec::new();
        let mut cm = Vec::new();
        let r = tile_rect(field, a, g_rect, cfg, &mut pm, &mut cm);
        (p3, q3, r3) = (pm, cm, r);
    }

    // propagate the quadrant permutations to their siblings:
    // H <- P3^T H Q2^T, E <- P3^T E, M1 <- P2^T M1, D <- D Q2^T, V1 <- V1 Q3^T
    a.permute_rows_in(rect.sub(m1, n1, m - m1, n - n1), &p3);
    a.permute_cols_in(rect.sub(m1, n1, m - m1, n - n1), &q2);
    a.permute_rows_in(rect.sub(m1, 0, m - m1, r1), &p3);
    a.permute_rows_in(rect.sub(r1, 0, m1 - r1, r1), &p2);
    a.permute_cols_in(rect.sub(0, n1, r1, n - n1), &q2);
    a.permute_cols_in(rect.sub(0, r1, r1, n1 - r1), &q3);
    reorder_map(row_map, r1, &p2);
    reorder_map(row_map, m1, &p3);
    reorder_map(col_map, n1, &q2);
    reorder_map(col_map, r1, &q3);

    // I = H1 U2^-1; K = H3 U2^-1; O = L3^-1 (H2 - I V2);
    // R = H4 - K V2 - M3 O.  I stays in place where H1 was.
    let u2 = rect.sub(r1, n1, r2, r2);
    let l3 = rect.sub(m1, r1, r3, r3);
    trsm_upper_right(field, a, u2, rect.sub(m1, n1, r3, r2))
        .expect("U2 has nonzero pivots by construction");
    trsm_upper_right(field, a, u2, rect.sub(m1 + r3, n1, m - m1 - r3, r2))
        .expect("U2 has nonzero pivots by construction");
    mm_acc(
        field,
        a,
        rect.sub(m1, n1 + r2, r3, n - n1 - r2),
        rect.sub(m1, n1, r3, r2),
        rect.sub(r1, n1 + r2, r2, n - n1 - r2),
    );
    trsm_unit_lower_left(field, a, l3, rect.sub(m1, n1 + r2, r3, n - n1 - r2));
    mm_acc(
        field,
        a,
        rect.sub(m1 + r3, n1 + r2, m - m1 - r3, n - n1 - r2),
        rect.sub(m1 + r3, n1, m - m1 - r3, r2),
        rect.sub(r1, n1 + r2, r2, n - n1 - r2),
    );
    mm_acc(
        field,
        a,
        rect.sub(m1 + r3, n1 + r2, m - m1 - r3, n - n1 - r2),
        rect.sub(m1 + r3, r1, m - m1 - r3, r3),
        rect.sub(m1, n1 + r2, r3, n - n1 - r2),
    );

    // bottom-right quadrant
    let mut p4 = Vec::new();
    let mut q4 = Vec::new();
    let r4 = tile_rect(
        field,
        a,
        rect.sub(m1 + r3, n1 + r2, m - m1 - r3, n - n1 - r2),
        cfg,
        &mut p4,
        &mut q4,
    );
    // [E2 M3 0 K] <- P4^T of it; [D2; V2; 0; O] <- itself Q4^T
    a.permute_rows_in(rect.sub(m1 + r3, 0, m - m1 - r3, n1 + r2), &p4);
    a.permute_cols_in(rect.sub(0, n1 + r2, m1 + r3, n - n1 - r2), &q4);
    reorder_map(row_map, m1 + r3, &p4);
    reorder_map(col_map, n1 + r2, &q4);

    // block rotations gathering the four pivot blocks to the leading
    // positions while preserving the relative order of dependent lines
    let mut row_order: Vec<usize> = Vec::with_capacity(m);
    row_order.extend(0..r1 + r2);
    row_order.extend(m1..m1 + r3 + r4);
    row_order.extend(r1 + r2..m1);
    row_order.extend(m1 + r3 + r4..m);
    a.permute_rows_in(rect, &row_order);
    reorder_map(row_map, 0, &row_order);

    let mut col_order: Vec<usize> = Vec::with_capacity(n);
    col_order.extend(0..r1);
    col_order.extend(n1..n1 + r2);
    col_order.extend(r1..r1 + r3);
    col_order.extend(n1 + r2..n1 + r2 + r4);
    col_order.extend(r1 + r3..n1);
    col_order.extend(n1 + r2 + r4..n);
    a.permute_cols_in(rect, &col_order);
    reorder_map(col_map, 0, &col_order);

    r1 + r2 + r3 + r4
}

fn wrap(
    field: &PrimeField,
    a: &DenseMatrix,
    run: impl FnOnce(&PrimeField, &mut DenseMatrix, Rect) -> (Vec<usize>, Vec<usize>, usize),
) -> PluqDecomposition {
    let mut w = a.clone();
    let rect = w.full_rect();
    let (rm, cm, r) = run(field, &mut w, rect);
    PluqDecomposition::from_parts(
        Permutation::from_one_line(rm).expect("map stays a permutation"),
        Permutation::from_one_line(cm).expect("map stays a permutation"),
        r,
        w,
        reveal_claim(&PivotingStrategy::new(
            SearchOrder::ProductOrder,
            PermKind::Rotation,
            PermKind::Rotation,
        )),
    )
}

/// Crout-scheduled PLUQ; reveals the rank profile matrix.
pub fn crout_pluq(field: &PrimeField, a: &DenseMatrix) -> PluqDecomposition {
    wrap(field, a, crout_rect)
}

/// Left-looking PLUQ; identical output to [`crout_pluq`].
pub fn left_looking_pluq(field: &PrimeField, a: &DenseMatrix) -> PluqDecomposition {
    wrap(field, a, left_looking_rect)
}

/// Right-looking PLUQ; identical output to [`crout_pluq`].
pub fn right_looking_pluq(field: &PrimeField, a: &DenseMatrix) -> PluqDecomposition {
    wrap(field, a, |f, w, rect| {
        iterative_pluq_rect(
            f,
            w,
            rect,
            PivotingStrategy::new(
                SearchOrder::ProductOrder,
                PermKind::Rotation,
                PermKind::Rotation,
            ),
        )
    })
}

/// Tile-recursive PLUQ; reveals the rank profile matrix for any threshold
/// and base schedule.
pub fn tile_recursive_pluq(
    field: &PrimeField,
    a: &DenseMatrix,
    cfg: &BlockConfig,
) -> PluqDecomposition {
    assert!(cfg.threshold >= 1, "threshold must be at least 1");
    wrap(field, a, |f, w, rect| {
        let mut rm = Vec::new();
        let mut cm = Vec::new();
        let r = tile_rect(f, w, rect, cfg, &mut rm, &mut cm);
        (rm, cm, r)
    })
}
