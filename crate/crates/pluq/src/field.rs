//! Word-sized prime field arithmetic with delayed modular reduction.
//!
//! Elements are canonical residues in `[0, p)` stored as `u64`. Every
//! arithmetic routine goes through a [`PrimeField`] handle, which also
//! tracks how many modular reductions it has performed — the quantity the
//! elimination schedules in this crate compete on.

use std::cell::Cell;

use crate::Error;

/// A canonical residue in `[0, p)`.
///
/// Kept as a plain machine word so matrices are flat `u64` buffers; all
/// operations that could leave the canonical range live on [`PrimeField`].
pub type FieldElement = u64;

/// Largest modulus for which products of two residues fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

/// Default bound under which a 4096-term dot product accumulates without
/// any intermediate reduction.
pub const DELAYED_MODULUS_BOUND: u64 = 1 << 26;

/// Odd-prime (and 2) modulus with a per-instance reduction counter.
///
/// Cloning yields an independent counter, so each thread or benchmark
/// variant works on its own tally.
#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u64,
    /// How many products can be accumulated in a `u64` before a reduction
    /// is forced: `floor(u64::MAX / (p-1)^2)`, clamped to `[1, 2^62]`.
    block_len: usize,
    reductions: Cell<u64>,
}

impl PrimeField {
    /// Builds the field of integers mod `p`. Fails if `p` is not a prime
    /// below [`MAX_MODULUS`].
    pub fn new(p: u64) -> Result<Self, Error> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let sq = (p - 1) as u128 * (p - 1) as u128;
        let block_len = if sq == 0 {
            1 << 62
        } else {
            ((u64::MAX as u128 / sq) as u64).clamp(1, 1 << 62) as usize
        };
        Ok(PrimeField {
            p,
            block_len,
            reductions: Cell::new(0),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Number of products that may pile up in the accumulator between
    /// reductions. For p < 2^26 this exceeds 4096.
    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// Modular reductions performed so far by this instance.
    pub fn reductions(&self) -> u64 {
        self.reductions.get()
    }

    pub fn reset_reductions(&self) {
        self.reductions.set(0);
    }

    /// Folds a worker clone's tally into this instance.
    pub fn add_reductions(&self, count: u64) {
        self.reductions.set(self.reductions.get() + count);
    }

    #[inline]
    fn reduce(&self, acc: u64) -> u64 {
        self.reductions.set(self.reductions.get() + 1);
        acc % self.p
    }

    /// Canonicalizes an arbitrary signed integer (used by parsers).
    pub fn from_i64(&self, v: i64) -> FieldElement {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.reduce(a * b)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, Error> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let (mut t, mut new_t): (i64, i64) = (0, 1);
        let (mut r, mut new_r): (i64, i64) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        self.reductions.set(self.reductions.get() + 1);
        Ok(t.rem_euclid(self.p as i64) as u64)
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, Error> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `sum_k a[k] * b[k]` with delayed reduction: products accumulate in a
    /// `u64` and a single reduction closes each block of `block_len` terms.
    pub fn dot(&self, a: impl IntoIterator<Item = u64>, b: impl IntoIterator<Item = u64>) -> FieldElement {
        let mut acc: u64 = 0;
        let mut pending = 0usize;
        let mut total = 0u64;
        for (x, y) in a.into_iter().zip(b) {
            acc += x * y;
            pending += 1;
            if pending == self.block_len {
                total = self.add(total, self.reduce(acc));
                acc = 0;
                pending = 0;
            }
        }
        if pending > 0 {
            total = self.add(total, self.reduce(acc));
        }
        total
    }

    /// `c - sum_k a[k] * b[k]`, the workhorse of the lazy schedules: one
    /// reduction per accumulator block instead of one per product.
    pub fn sub_dot(
        &self,
        c: FieldElement,
        a: impl IntoIterator<Item = u64>,
        b: impl IntoIterator<Item = u64>,
    ) -> FieldElement {
        self.sub(c, self.dot(a, b))
    }

    /// Uniform residue.
    pub fn sample(&self, rng: &mut impl rand::Rng) -> FieldElement {
        rng.gen_range(0..self.p)
    }

    /// Uniform nonzero residue.
    pub fn sample_nonzero(&self, rng: &mut impl rand::Rng) -> FieldElement {
        rng.gen_range(1..self.p)
    }
}

/// Deterministic Miller-Rabin, valid for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn rejects_composites_and_large_moduli() {
        assert!(matches!(PrimeField::new(91), Err(Error::NotPrime(91))));
        assert!(matches!(PrimeField::new(1), Err(Error::NotPrime(1))));
        assert!(matches!(
            PrimeField::new(1 << 33),
            Err(Error::ModulusTooLarge(_))
        ));
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new((1 << 31) - 1).is_ok());
    }

    #[test]
    fn small_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.neg(3), 4);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn exhaustive_inverses_mod_101() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            let i = f.inv(a).unwrap();
            assert_eq!(f.mul(a, i), 1, "a = {a}");
        }
        assert!(matches!(f.inv(0), Err(Error::ZeroInverse)));
    }

    #[test]
    fn counter_counts_reductions_not_additions() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.reductions(), 0);
        f.add(100, 100);
        assert_eq!(f.reductions(), 0);
        f.mul(57, 93);
        assert_eq!(f.reductions(), 1);
        // one block: a single reduction closes the whole dot product
        let a: Vec<u64> = (1..=100).collect();
        let b: Vec<u64> = (1..=100).collect();
        f.reset_reductions();
        f.dot(a.iter().copied(), b.iter().copied());
        assert_eq!(f.reductions(), 1);
    }

    #[test]
    fn block_len_shrinks_with_modulus() {
        assert!(PrimeField::new(101).unwrap().block_len() > 4096);
        assert!(PrimeField::new((1 << 26) - 5).unwrap().block_len() >= 4096);
        // 2^31 - 1 leaves room for only a few terms, but stays correct
        let f = PrimeField::new((1 << 31) - 1).unwrap();
        assert!(f.block_len() >= 1);
        assert!(f.block_len() < 4096);
    }

    proptest! {
        #[test]
        fn dot_matches_u128_oracle(
            seedp in 0usize..3,
            a in proptest::collection::vec(0u64..u64::MAX, 0..600),
        ) {
            let p = [101u64, (1 << 26) - 5, (1 << 31) - 1][seedp];
            let f = PrimeField::new(p).unwrap();
            let xs: Vec<u64> = a.iter().map(|v| v % p).collect();
            let ys: Vec<u64> = a.iter().map(|v| (v >> 7) % p).collect();
            let expect = xs
                .iter()
                .zip(&ys)
                .fold(0u128, |acc, (x, y)| (acc + *x as u128 * *y as u128) % p as u128)
                as u64;
            prop_assert_eq!(f.dot(xs.iter().copied(), ys.iter().copied()), expect);
        }

        #[test]
        fn field_ops_match_u128_oracle(a in 0u64..u64::MAX, b in 0u64..u64::MAX) {
            let p = (1 << 31) - 1u64;
            let f = PrimeField::new(p).unwrap();
            let (x, y) = (a % p, b % p);
            prop_assert_eq!(f.add(x, y), ((x as u128 + y as u128) % p as u128) as u64);
            prop_assert_eq!(f.sub(x, y), ((x as u128 + p as u128 - y as u128) % p as u128) as u64);
            prop_assert_eq!(f.mul(x, y), ((x as u128 * y as u128) % p as u128) as u64);
        }
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let f = PrimeField::new(101).unwrap();
        let mut r1 = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut r2 = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let a: Vec<u64> = (0..16).map(|_| f.sample(&mut r1)).collect();
        let b: Vec<u64> = (0..16).map(|_| f.sample(&mut r2)).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| x < 101));
        assert!(f.sample_nonzero(&mut r1) > 0);
    }
}
