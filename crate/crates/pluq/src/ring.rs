//! Desk-scale laboratory for rank notions over small residue rings ℤ/nℤ
//! with zero divisors: McCoy rank, spanning rank, and the McCoy rank profile
//! matrix, all by exhaustive enumeration. This module is deliberately slow
//! and simple — it is ground truth, not an algorithm showcase — and refuses
//! inputs beyond its enumeration budget.

use crate::perm::SubPermutationMatrix;
use crate::Error;

/// Largest modulus accepted by [`SmallRing::new`].
pub const MAX_MODULUS: u64 = 12;
/// Largest matrix dimension accepted by the rank routines.
pub const MAX_DIM: usize = 4;
/// Budget for [`spanning_rank`]: factorization search is exponential in
/// `dim · modulus`.
pub const MAX_SPANNING_DIM: usize = 3;
pub const MAX_SPANNING_MODULUS: u64 = 6;

/// The ring ℤ/nℤ for a small modulus, with a precomputed unit table.
#[derive(Debug, Clone)]
pub struct SmallRing {
    n: u64,
    units: Vec<bool>,
}

impl SmallRing {
    pub fn new(n: u64) -> Result<SmallRing, Error> {
        if n < 2 || n > MAX_MODULUS {
            return Err(Error::BudgetExceeded("ring modulus outside 2..=12"));
        }
        let units = (0..n)
            .map(|x| (1..n).any(|y| x * y % n == 1))
            .collect();
        Ok(SmallRing { n, units })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn is_unit(&self, x: u64) -> bool {
        self.units[(x % self.n) as usize]
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.n
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.n - b % self.n) % self.n
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.n
    }
}

/// Dense matrix over a small residue ring, canonical residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMatrix {
    m: usize,
    n: usize,
    data: Vec<u64>,
}

impl RingMatrix {
    pub fn zeros(m: usize, n: usize) -> RingMatrix {
        RingMatrix {
            m,
            n,
            data: vec![0; m * n],
        }
    }

    pub fn from_rows(ring: &SmallRing, rows: &[Vec<u64>]) -> RingMatrix {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(m * n);
        for r in rows {
            assert_eq!(r.len(), n);
            data.extend(r.iter().map(|&x| x % ring.modulus()));
        }
        RingMatrix { m, n, data }
    }

    pub fn identity(n: usize) -> RingMatrix {
        let mut a = RingMatrix::zeros(n, n);
        for i in 0..n {
            a.set(i, i, 1);
        }
        a
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v;
    }

    /// Leading i×j submatrix.
    pub fn leading(&self, i: usize, j: usize) -> RingMatrix {
        let mut out = RingMatrix::zeros(i, j);
        for a in 0..i {
            for b in 0..j {
                out.set(a, b, self.get(a, b));
            }
        }
        out
    }

    /// `[self | u]`.
    pub fn with_col(&self, u: &[u64]) -> RingMatrix {
        assert_eq!(u.len(), self.m);
        let mut out = RingMatrix::zeros(self.m, self.n + 1);
        for i in 0..self.m {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j));
            }
            out.set(i, self.n, u[i]);
        }
        out
    }

    /// `[self; vᵀ]`.
    pub fn with_row(&self, v: &[u64]) -> RingMatrix {
        assert_eq!(v.len(), self.n);
        let mut out = RingMatrix::zeros(self.m + 1, self.n);
        for i in 0..self.m {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j));
            }
        }
        for (j, &x) in v.iter().enumerate() {
            out.set(self.m, j, x);
        }
        out
    }

    fn gather(&self, rows: &[usize], cols: &[usize]) -> RingMatrix {
        let mut out = RingMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    fn det(&self, ring: &SmallRing) -> u64 {
        debug_assert_eq!(self.m, self.n);
        match self.m {
            0 => 1,
            1 => self.get(0, 0),
            s => {
                let mut acc = 0;
                for j in 0..s {
                    let rows: Vec<usize> = (1..s).collect();
                    let cols: Vec<usize> = (0..s).filter(|&c| c != j).collect();
                    let minor = self.gather(&rows, &cols).det(ring);
                    let term = ring.mul(self.get(0, j), minor);
                    acc = if j % 2 == 0 {
                        ring.add(acc, term)
                    } else {
                        ring.sub(acc, term)
                    };
                }
                acc
            }
        }
    }
}

fn check_dims(a: &RingMatrix, limit: usize) -> Result<(), Error> {
    if a.rows() > limit || a.cols() > limit {
        Err(Error::BudgetExceeded("matrix dimension beyond enumeration budget"))
    } else {
        Ok(())
    }
}

/// All k-subsets of `0..n`, lexicographic.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for t in i..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for pos in 0..k {
            let mut p: Vec<usize> = rest.iter().map(|&x| x + usize::from(x >= pos)).collect();
            p.insert(0, pos);
            out.push(p);
        }
    }
    out
}

/// All vectors of length `len` over ℤ/nℤ.
fn vectors(ring: &SmallRing, len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * ring.modulus() as usize);
        for v in &out {
            for x in ring.elements() {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// McCoy rank: the largest s such that the ideal generated by the s×s
/// minors has a zero annihilator (no single nonzero ring element kills every
/// s-minor). Over a local ring (prime-power modulus) this coincides with
/// both "some s×s minor is a unit" ([`unit_minor_rank`]) and the
/// column-selection null-space reading ([`mccoy_rank_via_nullspace`]);
/// over square-free composite moduli such as 6 the three notions are
/// pairwise distinct — see the divergence tests below. Of the three, only
/// this annihilator form changes by at most one when a row or column is
/// appended, over every modulus.
pub fn mccoy_rank(ring: &SmallRing, a: &RingMatrix) -> Result<usize, Error> {
    check_dims(a, MAX_DIM)?;
    for s in (1..=a.rows().min(a.cols())).rev() {
        let mut minors = Vec::new();
        for rows in subsets(a.rows(), s) {
            for cols in subsets(a.cols(), s) {
                minors.push(a.gather(&rows, &cols).det(ring));
            }
        }
        let annihilated = ring
            .elements()
            .skip(1)
            .any(|z| minors.iter().all(|&d| ring.mul(z, d) == 0));
        if !annihilated {
            return Ok(s);
        }
    }
    Ok(0)
}

/// The largest s with a unit s×s minor. Agrees with [`mccoy_rank`] over
/// local rings (prime-power moduli) but undershoots over composite
/// square-free moduli such as ℤ/6ℤ, where a family of minors can generate
/// the whole ring without any single minor being a unit.
pub fn unit_minor_rank(ring: &SmallRing, a: &RingMatrix) -> Result<usize, Error> {
    check_dims(a, MAX_DIM)?;
    for s in (1..=a.rows().min(a.cols())).rev() {
        for rows in subsets(a.rows(), s) {
            for cols in subsets(a.cols(), s) {
                if ring.is_unit(a.gather(&rows, &cols).det(ring)) {
                    return Ok(s);
                }
            }
        }
    }
    Ok(0)
}

/// The column-selection null-space reading of the McCoy rank: the largest
/// r such that some selection of r columns has a right null-space reduced
/// to zero. Coincides with [`mccoy_rank`] over local rings but not in
/// general: over ℤ/6ℤ the matrix [[2,3],[0,0]] has annihilator rank 1
/// (the entries 2 and 3 together generate the whole ring) while each
/// single column has a nonzero annihilating scalar.
pub fn mccoy_rank_via_nullspace(ring: &SmallRing, a: &RingMatrix) -> Result<usize, Error> {
    check_dims(a, MAX_DIM)?;
    let all_rows: Vec<usize> = (0..a.rows()).collect();
    for r in (1..=a.rows().min(a.cols())).rev() {
        'cols: for cols in subsets(a.cols(), r) {
            let sub = a.gather(&all_rows, &cols);
            for x in vectors(ring, r) {
                if x.iter().all(|&v| v == 0) {
                    continue;
                }
                let kills = (0..sub.rows()).all(|i| {
                    let mut acc = 0;
                    for (k, &xv) in x.iter().enumerate() {
                        acc = ring.add(acc, ring.mul(sub.get(i, k), xv));
                    }
                    acc == 0
                });
                if kills {
                    continue 'cols;
                }
            }
            return Ok(r);
        }
    }
    Ok(0)
}

/// Spanning rank: the smallest r such that `a = B·C` with `B` m×r and `C`
/// r×n, by exhaustive search over `B` and per-column solves for `C`.
pub fn spanning_rank(ring: &SmallRing, a: &RingMatrix) -> Result<usize, Error> {
    check_dims(a, MAX_SPANNING_DIM)?;
    if ring.modulus() > MAX_SPANNING_MODULUS {
        return Err(Error::BudgetExceeded("spanning rank modulus outside 2..=6"));
    }
    let (m, n) = (a.rows(), a.cols());
    if a.data.iter().all(|&x| x == 0) {
        return Ok(0);
    }
    for r in 1..m.min(n) {
        // every candidate left factor, flattened row-major
        'bs: for bflat in vectors(ring, m * r) {
            for j in 0..n {
                let found = vectors(ring, r).into_iter().any(|c| {
                    (0..m).all(|i| {
                        let mut acc = 0;
                        for (k, &cv) in c.iter().enumerate() {
                            acc = ring.add(acc, ring.mul(bflat[i * r + k], cv));
                        }
                        acc == a.get(i, j)
                    })
                });
                if !found {
                    continue 'bs;
                }
            }
            return Ok(r);
        }
    }
    // A = A·I (or I·A) always works with r = min(m, n).
    Ok(m.min(n))
}

/// The McCoy rank profile matrix: the unique r-sub-permutation matrix whose
/// every leading submatrix has the same McCoy rank as the corresponding
/// leading submatrix of `a`, found by exhaustive candidate search.
///
/// Existence and uniqueness are guaranteed over local rings (prime-power
/// moduli). Over ℤ/6ℤ no candidate may exist — [[2,1],[1,2]] has leading
/// McCoy ranks (0,1,1,1), which no sub-permutation matrix realizes — and
/// [`Error::NoCandidate`] is returned.
pub fn mccoy_rpm(ring: &SmallRing, a: &RingMatrix) -> Result<SubPermutationMatrix, Error> {
    check_dims(a, MAX_DIM)?;
    let (m, n) = (a.rows(), a.cols());
    let mut target = vec![vec![0usize; n + 1]; m + 1];
    for (i, row) in target.iter_mut().enumerate() {
        for (j, t) in row.iter_mut().enumerate() {
            *t = mccoy_rank(ring, &a.leading(i, j))?;
        }
    }
    let r = target[m][n];
    let mut found: Option<SubPermutationMatrix> = None;
    for rows in subsets(m, r) {
        for cols in subsets(n, r) {
            for perm in permutations(r) {
                let pivots: Vec<(usize, usize)> =
                    (0..r).map(|s| (rows[s], cols[perm[s]])).collect();
                let cand = SubPermutationMatrix::new(m, n, pivots)
                    .expect("distinct rows and columns by construction");
                let ok = (0..=m)
                    .all(|i| (0..=n).all(|j| cand.leading_count(i, j) == target[i][j]));
                if ok {
                    if found.is_some() {
                        return Err(Error::MultipleCandidates);
                    }
                    found = Some(cand);
                }
            }
        }
    }
    found.ok_or(Error::NoCandidate)
}

/// Exhaustively confirms that over ℤ/4ℤ no 2×2 matrix with exactly one or
/// two nonzero entries has the same leading spanning ranks as
/// `[[0,2],[2,1]]` — so the spanning rank admits no rank profile matrix.
pub fn verify_cex_lemma() -> Result<bool, Error> {
    let ring = SmallRing::new(4)?;
    let a = RingMatrix::from_rows(&ring, &[vec![0, 2], vec![2, 1]]);
    let profile = |mat: &RingMatrix| -> Result<Vec<usize>, Error> {
        let mut out = Vec::new();
        for i in 1..=2 {
            for j in 1..=2 {
                out.push(spanning_rank(&ring, &mat.leading(i, j))?);
            }
        }
        Ok(out)
    };
    let target = profile(&a)?;
    for flat in vectors(&ring, 4) {
        let nonzero = flat.iter().filter(|&&x| x != 0).count();
        if nonzero != 1 && nonzero != 2 {
            continue;
        }
        let cand = RingMatrix::from_rows(&ring, &[flat[..2].to_vec(), flat[2..].to_vec()]);
        if profile(&cand)? == target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The four rank discrepancies of the bordered matrix `[[B, u], [vᵀ, α]]`
/// with respect to `B`, `[B u]` and `[B; vᵀ]`.
fn deltas(
    ring: &SmallRing,
    rank: &dyn Fn(&SmallRing, &RingMatrix) -> Result<usize, Error>,
    b: &RingMatrix,
    u: &[u64],
    v: &[u64],
    alpha: u64,
) -> Result<[i64; 4], Error> {
    let r = rank(ring, b)? as i64;
    let ru = rank(ring, &b.with_col(u))? as i64;
    let rv = rank(ring, &b.with_row(v))? as i64;
    let mut va = v.to_vec();
    va.push(alpha);
    let rall = rank(ring, &b.with_col(u).with_row(&va))? as i64;
    Ok([ru - r, rv - r, rall - ru, rall - rv])
}

fn delta_clauses_hold(d: [i64; 4]) -> bool {
    let [d1, d2, d3, d4] = d;
    if !d.iter().all(|&x| x == 0 || x == 1) {
        return false;
    }
    // (i) (δ1=0 ∧ δ4=1) ⟺ (δ2=0 ∧ δ3=1)
    if ((d1 == 0 && d4 == 1) != (d2 == 0 && d3 == 1))
        // (ii) (δ1=1 ∧ δ3=1) ⟺ (δ2=1 ∧ δ4=1)
        || ((d1 == 1 && d3 == 1) != (d2 == 1 && d4 == 1))
        // (iii) (δ1=1 ∧ δ3=0) ⇒ (δ2=0 ∧ δ4=1)
        || (d1 == 1 && d3 == 0 && !(d2 == 0 && d4 == 1))
        // (iv) δ1=1 ⇒ δ4=1
        || (d1 == 1 && d4 != 1)
        // (v) δ2=1 ⇒ δ3=1
        || (d2 == 1 && d3 != 1)
    {
        return false;
    }
    true
}

/// Checks the five discrepancy clauses for the McCoy rank over ℤ/`modulus`ℤ.
/// With `trials == 0`, runs the exhaustive 1×1 sweep (every B, u, v, α);
/// otherwise samples `trials` random bordered 2×2 instances.
///
/// The clauses hold over every prime-power modulus (where the McCoy rank is
/// witnessed by unit minors) but genuinely fail over square-free composite
/// moduli: over ℤ/6ℤ the instance B=[2], u=[1], v=[1], α=2 gives
/// discrepancies (1,1,0,0), breaking both "(δ1=1 ∧ δ3=0) ⇒ δ2=0" and
/// "δ1=1 ⇒ δ4=1". This is not an artifact of the rank notion: the same
/// bordered matrix [[2,1],[1,2]] violates the clauses under the unit-minor
/// and null-space readings as well. Callers should expect `false` for
/// moduli 6, 10 and 12.
pub fn verify_delta_lemma(
    modulus: u64,
    trials: usize,
    rng: &mut impl rand::Rng,
) -> Result<bool, Error> {
    let ring = SmallRing::new(modulus)?;
    if trials == 0 {
        for b in ring.elements() {
            for u in ring.elements() {
                for v in ring.elements() {
                    for alpha in ring.elements() {
                        let bm = RingMatrix::from_rows(&ring, &[vec![b]]);
                        let d = deltas(&ring, &mccoy_rank, &bm, &[u], &[v], alpha)?;
                        if !delta_clauses_hold(d) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        return Ok(true);
    }
    for _ in 0..trials {
        let mut b = RingMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                b.set(i, j, rng.gen_range(0..modulus));
            }
        }
        let u = [rng.gen_range(0..modulus), rng.gen_range(0..modulus)];
        let v = [rng.gen_range(0..modulus), rng.gen_range(0..modulus)];
        let alpha = rng.gen_range(0..modulus);
        let d = deltas(&ring, &mccoy_rank, &b, &u, &v, alpha)?;
        if !delta_clauses_hold(d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The spanning rank violates the discrepancy clauses: on the ℤ/4ℤ
/// counterexample the bordered discrepancies come out (1, 1, 0, 0), breaking
/// the clause that (δ1=1 ∧ δ3=0) forces (δ2=0 ∧ δ4=1). Returns those deltas.
pub fn spanning_delta_counterexample() -> Result<[i64; 4], Error> {
    let ring = SmallRing::new(4)?;
    let b = RingMatrix::from_rows(&ring, &[vec![0]]);
    deltas(&ring, &spanning_rank, &b, &[2], &[2], 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::matrix::DenseMatrix;
    use crate::oracle;
    use rand::SeedableRng;

    fn z4() -> SmallRing {
        SmallRing::new(4).unwrap()
    }

    fn cex(ring: &SmallRing) -> RingMatrix {
        RingMatrix::from_rows(ring, &[vec![0, 2], vec![2, 1]])
    }

    #[test]
    fn unit_table_of_z12() {
        let ring = SmallRing::new(12).unwrap();
        let units: Vec<u64> = ring.elements().filter(|&x| ring.is_unit(x)).collect();
        assert_eq!(units, vec![1, 5, 7, 11]);
    }

    #[test]
    fn modulus_budget_is_enforced() {
        assert!(matches!(SmallRing::new(1), Err(Error::BudgetExceeded(_))));
        assert!(matches!(SmallRing::new(13), Err(Error::BudgetExceeded(_))));
        let ring = SmallRing::new(8).unwrap();
        let a = RingMatrix::zeros(5, 2);
        assert!(matches!(
            mccoy_rank(&ring, &a),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            spanning_rank(&ring, &RingMatrix::zeros(2, 2)),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn mccoy_rank_of_counterexample_matrix() {
        let ring = z4();
        let a = cex(&ring);
        assert_eq!(mccoy_rank(&ring, &a).unwrap(), 1);
        // leading 1×2 row [0 2] has McCoy rank 0: no entry is a unit
        assert_eq!(mccoy_rank(&ring, &a.leading(1, 2)).unwrap(), 0);
        assert_eq!(mccoy_rank(&ring, &a.leading(1, 1)).unwrap(), 0);
        assert_eq!(mccoy_rank(&ring, &a.leading(2, 1)).unwrap(), 0);
    }

    #[test]
    fn mccoy_rank_of_identity_over_z6() {
        let ring = SmallRing::new(6).unwrap();
        assert_eq!(mccoy_rank(&ring, &RingMatrix::identity(4)).unwrap(), 4);
    }

    #[test]
    fn rank_notions_agree_exhaustively_over_prime_power_moduli() {
        // every 2×2 over the local rings ℤ/4ℤ, ℤ/8ℤ, ℤ/9ℤ: the annihilator,
        // unit-minor and null-space readings all coincide
        for modulus in [4u64, 8, 9] {
            let ring = SmallRing::new(modulus).unwrap();
            for flat in super::vectors(&ring, 4) {
                let a =
                    RingMatrix::from_rows(&ring, &[flat[..2].to_vec(), flat[2..].to_vec()]);
                let r = mccoy_rank(&ring, &a).unwrap();
                assert_eq!(r, mccoy_rank_via_nullspace(&ring, &a).unwrap());
                assert_eq!(r, unit_minor_rank(&ring, &a).unwrap());
            }
        }
    }

    #[test]
    fn rank_notions_diverge_pairwise_over_z6() {
        let ring = SmallRing::new(6).unwrap();
        // The column [2,3]: 2x=0 and 3x=0 force x=0, and the ideal (2,3) is
        // the whole ring, yet neither entry is a unit.
        let c = RingMatrix::from_rows(&ring, &[vec![2], vec![3]]);
        assert_eq!(mccoy_rank(&ring, &c).unwrap(), 1);
        assert_eq!(mccoy_rank_via_nullspace(&ring, &c).unwrap(), 1);
        assert_eq!(unit_minor_rank(&ring, &c).unwrap(), 0);
        // [[2,3],[0,0]]: the entries still generate the whole ring, but each
        // single column is killed by a nonzero scalar (3·2 = 2·3 = 0).
        let a = RingMatrix::from_rows(&ring, &[vec![2, 3], vec![0, 0]]);
        assert_eq!(mccoy_rank(&ring, &a).unwrap(), 1);
        assert_eq!(mccoy_rank_via_nullspace(&ring, &a).unwrap(), 0);
        assert_eq!(unit_minor_rank(&ring, &a).unwrap(), 0);
    }

    #[test]
    fn unit_minor_rank_can_jump_by_two_over_z6() {
        // Appending one column to [2;3] exposes the unit 2×2 minor
        // 2·1 − 3·1 = −1, so the unit-minor reading jumps 0 → 2. The
        // annihilator form never jumps (checked exhaustively below).
        let ring = SmallRing::new(6).unwrap();
        let b = RingMatrix::from_rows(&ring, &[vec![2], vec![3]]);
        assert_eq!(unit_minor_rank(&ring, &b).unwrap(), 0);
        assert_eq!(unit_minor_rank(&ring, &b.with_col(&[1, 1])).unwrap(), 2);
    }

    #[test]
    fn spanning_rank_of_counterexample_is_one() {
        let ring = z4();
        let a = cex(&ring);
        assert_eq!(spanning_rank(&ring, &a).unwrap(), 1);
        // the witness from the proof: [2;1]·[2 1]
        for i in 0..2 {
            for j in 0..2 {
                let b = [2u64, 1][i];
                let c = [2u64, 1][j];
                assert_eq!(ring.mul(b, c), a.get(i, j));
            }
        }
        // leading spanning ranks: 0 at 1×1, then 1 everywhere
        assert_eq!(spanning_rank(&ring, &a.leading(1, 1)).unwrap(), 0);
        assert_eq!(spanning_rank(&ring, &a.leading(1, 2)).unwrap(), 1);
        assert_eq!(spanning_rank(&ring, &a.leading(2, 1)).unwrap(), 1);
    }

    #[test]
    fn spanning_rank_of_zero_matrix_is_zero() {
        let ring = z4();
        assert_eq!(spanning_rank(&ring, &RingMatrix::zeros(3, 2)).unwrap(), 0);
    }

    #[test]
    fn spanning_rank_over_prime_modulus_matches_classical_rank() {
        let ring = SmallRing::new(5).unwrap();
        let f = PrimeField::new(5).unwrap();
        for flat in super::vectors(&ring, 4) {
            let a = RingMatrix::from_rows(&ring, &[flat[..2].to_vec(), flat[2..].to_vec()]);
            let dense = DenseMatrix::from_rows(&[flat[..2].to_vec(), flat[2..].to_vec()]);
            let classical = oracle::rank(&f, &dense);
            assert_eq!(spanning_rank(&ring, &a).unwrap(), classical);
            assert_eq!(mccoy_rank(&ring, &a).unwrap(), classical);
        }
    }

    #[test]
    fn mccoy_rpm_of_counterexample() {
        let ring = z4();
        let rpm = mccoy_rpm(&ring, &cex(&ring)).unwrap();
        assert_eq!(rpm.pivots(), &[(1, 1)]);
    }

    #[test]
    fn mccoy_rpm_of_identity() {
        let ring = SmallRing::new(6).unwrap();
        let rpm = mccoy_rpm(&ring, &RingMatrix::identity(3)).unwrap();
        assert_eq!(rpm.pivots(), &[(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn every_2x2_over_z4_has_exactly_one_candidate() {
        let ring = z4();
        for flat in super::vectors(&ring, 4) {
            let a = RingMatrix::from_rows(&ring, &[flat[..2].to_vec(), flat[2..].to_vec()]);
            assert!(mccoy_rpm(&ring, &a).is_ok(), "matrix {flat:?}");
        }
    }

    #[test]
    fn mccoy_rpm_over_prime_modulus_matches_field_oracle() {
        let ring = SmallRing::new(3).unwrap();
        let f = PrimeField::new(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let dense = DenseMatrix::random(3, 3, &f, &mut rng);
            let rows: Vec<Vec<u64>> = (0..3).map(|i| dense.row(i).to_vec()).collect();
            let a = RingMatrix::from_rows(&ring, &rows);
            assert_eq!(
                mccoy_rpm(&ring, &a).unwrap(),
                oracle::rpm_oracle(&f, &dense)
            );
        }
    }

    #[test]
    fn appending_a_line_moves_mccoy_rank_by_at_most_one() {
        for modulus in [4u64, 6] {
            let ring = SmallRing::new(modulus).unwrap();
            for flat in super::vectors(&ring, 4) {
                let b =
                    RingMatrix::from_rows(&ring, &[flat[..2].to_vec(), flat[2..].to_vec()]);
                let r = mccoy_rank(&ring, &b).unwrap();
                for u in super::vectors(&ring, 2) {
                    let ru = mccoy_rank(&ring, &b.with_col(&u)).unwrap();
                    let rv = mccoy_rank(&ring, &b.with_row(&u)).unwrap();
                    assert!(ru == r || ru == r + 1);
                    assert!(rv == r || rv == r + 1);
                }
            }
        }
    }

    #[test]
    fn no_mccoy_rpm_exists_for_some_z6_matrix() {
        // Leading McCoy ranks of [[2,1],[1,2]] over ℤ/6ℤ are (0,1,1,1):
        // one pivot cannot realize both off-diagonal unit counts, so the
        // profile matrix does not exist outside local rings.
        let ring = SmallRing::new(6).unwrap();
        let a = RingMatrix::from_rows(&ring, &[vec![2, 1], vec![1, 2]]);
        assert_eq!(mccoy_rank(&ring, &a.leading(1, 1)).unwrap(), 0);
        assert_eq!(mccoy_rank(&ring, &a.leading(1, 2)).unwrap(), 1);
        assert_eq!(mccoy_rank(&ring, &a.leading(2, 1)).unwrap(), 1);
        assert_eq!(mccoy_rank(&ring, &a).unwrap(), 1);
        assert!(matches!(mccoy_rpm(&ring, &a), Err(Error::NoCandidate)));
    }

    #[test]
    fn spanning_rank_profile_counterexample_sweep() {
        assert!(verify_cex_lemma().unwrap());
    }

    #[test]
    fn delta_clauses_hold_exhaustively_over_prime_power_moduli() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        for modulus in [4u64, 8, 9] {
            assert!(verify_delta_lemma(modulus, 0, &mut rng).unwrap());
        }
    }

    #[test]
    fn delta_clauses_fail_over_z6() {
        // B=[2], u=[1], v=[1], α=2 borders to [[2,1],[1,2]], whose only
        // 2×2 minor is 3 (not a unit, annihilated by 2): the four
        // discrepancy values are (1,1,0,0) under every rank notion, so
        // both the exhaustive and the sampled sweeps report a violation.
        let ring = SmallRing::new(6).unwrap();
        let b = RingMatrix::from_rows(&ring, &[vec![2]]);
        for rank in [
            &mccoy_rank as &dyn Fn(&SmallRing, &RingMatrix) -> Result<usize, Error>,
            &mccoy_rank_via_nullspace,
            &unit_minor_rank,
        ] {
            let d = deltas(&ring, rank, &b, &[1], &[1], 2).unwrap();
            assert_eq!(d, [1, 1, 0, 0]);
            assert!(!delta_clauses_hold(d));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        assert!(!verify_delta_lemma(6, 0, &mut rng).unwrap());
        assert!(!verify_delta_lemma(6, 10_000, &mut rng).unwrap());
    }

    #[test]
    fn spanning_rank_breaks_the_delta_clauses() {
        let d = spanning_delta_counterexample().unwrap();
        assert_eq!(d, [1, 1, 0, 0]);
        assert!(!delta_clauses_hold(d));
    }
}
