//! Exact rational arithmetic: binomials, Bernoulli numbers and the harmonic
//! number families.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::Field;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Rat {
    Rat::from_integer(binomial_int(n, k))
}

pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn bernoulli_cache() -> &'static Mutex<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rat::one()]))
}

/// Bernoulli number `B_n` with `B_1 = -1/2`, from the recurrence
/// `sum_{j=0}^{n} C(n+1, j) B_j = 0`. Memoized.
pub fn bernoulli(n: usize) -> Rat {
    let mut cache = bernoulli_cache().lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= n {
        let m = cache.len();
        let mut s = Rat::zero();
        for (j, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                s += Rat::from_integer(binomial_int(m as u64 + 1, j as u64)) * b;
            }
        }
        let b_m = -s / Rat::from_integer(BigInt::from(m + 1));
        cache.push(b_m);
    }
    cache[n].clone()
}

/// `H_n = sum_{k=1}^{n} 1/k`.
pub fn harmonic(n: u64) -> Rat {
    harmonic_gen(n, 1)
}

/// `H_n^(m) = sum_{k=1}^{n} k^(-m)`; `m` may be zero or negative.
pub fn harmonic_gen(n: u64, m: i32) -> Rat {
    let mut s = Rat::zero();
    for k in 1..=n {
        let p = num_traits::pow(BigInt::from(k), m.unsigned_abs() as usize);
        if m >= 0 {
            s += Rat::new(BigInt::one(), p);
        } else {
            s += Rat::from_integer(p);
        }
    }
    s
}

/// `O_m = sum_{k=1}^{m} 1/(2k-1)`.
pub fn odd_harmonic(m: u64) -> Rat {
    let mut s = Rat::zero();
    for k in 1..=m {
        s += Rat::new(BigInt::one(), BigInt::from(2 * k - 1));
    }
    s
}

/// Incrementally extended tables of `H_n`, `O_n` and `H_n^(m)`.
///
/// Each entry is derived from its predecessor by a single addition, so
/// extending to `n` costs `O(n)` in total regardless of access pattern.
#[derive(Clone, Debug)]
pub struct HarmonicTable<S: Field> {
    ctx: S::Ctx,
    h: Vec<S>,
    o: Vec<S>,
    gen: Vec<(u32, Vec<S>)>,
}

impl<S: Field> HarmonicTable<S> {
    pub fn new(ctx: S::Ctx) -> Self {
        HarmonicTable { ctx, h: vec![S::zero_in(ctx)], o: vec![S::zero_in(ctx)], gen: Vec::new() }
    }

    pub fn ensure_h(&mut self, n: usize) {
        while self.h.len() <= n {
            let k = self.h.len() as u128;
            let next = self.h[self.h.len() - 1].plus(&S::recip_in(k, self.ctx));
            self.h.push(next);
        }
    }

    pub fn ensure_o(&mut self, n: usize) {
        while self.o.len() <= n {
            let k = self.o.len() as u128;
            let next = self.o[self.o.len() - 1].plus(&S::recip_in(2 * k - 1, self.ctx));
            self.o.push(next);
        }
    }

    /// `H_n`.
    pub fn h(&mut self, n: usize) -> &S {
        self.ensure_h(n);
        &self.h[n]
    }

    /// `O_n`.
    pub fn o(&mut self, n: usize) -> &S {
        self.ensure_o(n);
        &self.o[n]
    }

    /// `H_n^(order)` for `order >= 1`.
    pub fn h_gen(&mut self, n: usize, order: u32) -> &S {
        assert!(order >= 1, "HarmonicTable::h_gen needs a positive order");
        if order == 1 {
            return self.h(n);
        }
        let ctx = self.ctx;
        let idx = match self.gen.iter().position(|(m, _)| *m == order) {
            Some(i) => i,
            None => {
                self.gen.push((order, vec![S::zero_in(ctx)]));
                self.gen.len() - 1
            }
        };
        let table = &mut self.gen[idx].1;
        while table.len() <= n {
            let k = table.len() as u128;
            let mut term = S::one_in(ctx);
            for _ in 0..order {
                term = term.div_u128(k);
            }
            let next = table[table.len() - 1].plus(&term);
            table.push(next);
        }
        &table[n]
    }

    /// Cached `H` values `H_0..=H_n` as a slice.
    pub fn h_slice(&mut self, n: usize) -> &[S] {
        self.ensure_h(n);
        &self.h[..=n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(5, 6), int(0));
        assert_eq!(binomial(30, 15), int(155_117_520));
    }

    #[test]
    fn binomial_row_sums() {
        for n in 0..=30u64 {
            let s: Rat = (0..=n).map(|k| binomial(n, k)).sum();
            assert_eq!(s, Rat::from_integer(BigInt::one() << n));
        }
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(7), int(0));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn odd_bernoulli_numbers_vanish() {
        for n in 1..=15 {
            assert!(bernoulli(2 * n + 1).is_zero(), "B_{}", 2 * n + 1);
        }
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(0), int(0));
        assert_eq!(harmonic(3), rat(11, 6));
        assert_eq!(harmonic(5), rat(137, 60));
        assert_eq!(harmonic_gen(2, 2), rat(5, 4));
        assert_eq!(harmonic_gen(3, 2), rat(49, 36));
        assert_eq!(harmonic_gen(4, 0), int(4));
        assert_eq!(harmonic_gen(3, -1), int(6));
        assert_eq!(odd_harmonic(0), int(0));
        assert_eq!(odd_harmonic(1), int(1));
        assert_eq!(odd_harmonic(2), rat(4, 3));
        assert_eq!(odd_harmonic(3), rat(23, 15));
    }

    #[test]
    fn table_matches_direct_sums() {
        let mut t = HarmonicTable::<Rat>::new(());
        for n in 0..40u64 {
            assert_eq!(t.h(n as usize).clone(), harmonic(n));
            assert_eq!(t.o(n as usize).clone(), odd_harmonic(n));
            assert_eq!(t.h_gen(n as usize, 3).clone(), harmonic_gen(n, 3));
        }
    }

    #[test]
    fn values_are_reduced() {
        let h = harmonic(20);
        let g = num_integer::Integer::gcd(h.numer(), h.denom());
        assert!(g.is_one());
        assert!(h.denom() > &BigInt::zero());
    }

    proptest! {
        #[test]
        fn harmonic_steps(n in 1u64..200) {
            prop_assert_eq!(harmonic(n) - harmonic(n - 1), rat(1, n as i64));
            prop_assert_eq!(odd_harmonic(n) - odd_harmonic(n - 1), rat(1, 2 * n as i64 - 1));
        }

        #[test]
        fn even_odd_split(m in 1u64..150) {
            prop_assert_eq!(harmonic(2 * m), odd_harmonic(m) + rat(1, 2) * harmonic(m));
        }

        #[test]
        fn order_one_is_harmonic(n in 0u64..120) {
            prop_assert_eq!(harmonic_gen(n, 1), harmonic(n));
        }
    }
}
