//! Minimal arithmetic vocabulary shared by the exact (`Rat`) and numeric
//! (`BigFl`) evaluation paths, so series terms are written once and summed
//! either exactly or at working precision.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::Rat;
use crate::numeric::BigFl;

pub trait Field: Clone + Send + Sync + std::fmt::Debug {
    /// Construction context: nothing for rationals, the bit precision for
    /// floats.
    type Ctx: Copy + Send + Sync;

    fn zero_in(ctx: Self::Ctx) -> Self;
    fn from_u128_in(v: u128, ctx: Self::Ctx) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn over(&self, o: &Self) -> Self;
    fn div_u128(&self, d: u128) -> Self;
    fn mul_u128(&self, m: u128) -> Self;

    fn one_in(ctx: Self::Ctx) -> Self {
        Self::from_u128_in(1, ctx)
    }

    fn recip_in(d: u128, ctx: Self::Ctx) -> Self {
        Self::one_in(ctx).div_u128(d)
    }

    /// One step of compensated accumulation into `(sum, comp)`.
    fn accumulate(sum: &mut Self, comp: &mut Self, x: &Self);
}

impl Field for Rat {
    type Ctx = ();

    fn zero_in(_: ()) -> Self {
        Rat::zero()
    }
    fn from_u128_in(v: u128, _: ()) -> Self {
        Rat::from_integer(BigInt::from(v))
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn div_u128(&self, d: u128) -> Self {
        self / Rat::from_integer(BigInt::from(d))
    }
    fn mul_u128(&self, m: u128) -> Self {
        self * Rat::from_integer(BigInt::from(m))
    }
    fn accumulate(sum: &mut Self, _comp: &mut Self, x: &Self) {
        *sum += x;
    }
}

impl Field for BigFl {
    type Ctx = u32;

    fn zero_in(prec: u32) -> Self {
        BigFl::zero(prec)
    }
    fn from_u128_in(v: u128, prec: u32) -> Self {
        BigFl::from_u128(v, prec)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn div_u128(&self, d: u128) -> Self {
        BigFl::div_u128(self, d)
    }
    fn mul_u128(&self, m: u128) -> Self {
        BigFl::mul_u128(self, m)
    }
    // Neumaier's variant of Kahan summation.
    fn accumulate(sum: &mut Self, comp: &mut Self, x: &Self) {
        let t = &*sum + x;
        let c = if sum.abs() >= x.abs() { (&*sum - &t) + x } else { (x - &t) + &*sum };
        *comp = &*comp + &c;
        *sum = t;
    }
}

/// Ordered compensated sum.
#[derive(Clone, Debug)]
pub struct Accumulator<S: Field> {
    sum: S,
    comp: S,
}

impl<S: Field> Accumulator<S> {
    pub fn new(ctx: S::Ctx) -> Self {
        Accumulator { sum: S::zero_in(ctx), comp: S::zero_in(ctx) }
    }

    pub fn push(&mut self, x: &S) {
        S::accumulate(&mut self.sum, &mut self.comp, x);
    }

    pub fn total(&self) -> S {
        self.sum.plus(&self.comp)
    }
}

/// Divides `x` by the product of `factors`, folding factors into machine
/// integers while they fit.
pub fn div_by_product<S: Field>(x: &S, factors: &[u128]) -> S {
    let mut acc = x.clone();
    let mut d: u128 = 1;
    for &f in factors {
        match d.checked_mul(f) {
            Some(p) => d = p,
            None => {
                acc = acc.div_u128(d);
                d = f;
            }
        }
    }
    acc.div_u128(d)
}
