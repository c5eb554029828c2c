//! Binary arbitrary-precision floating point.
//!
//! A `BigFl` is `(-1)^neg * mag * 2^exp` with `mag` holding at most `prec`
//! significant bits. Every arithmetic result is rounded to nearest, ties to
//! even, at the larger of the operand precisions. Values are plain data: no
//! global rounding context, no NaN or infinity.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rat;

/// Guard bits added on top of the bits strictly needed for the requested
/// number of decimal digits.
pub const GUARD_BITS: u32 = 24;

/// Binary precision used to carry `digits` significant decimal digits.
pub fn prec_for_digits(digits: u32) -> u32 {
    // log2(10) = 3.3219...; round up, then add guard bits.
    ((digits as u64 * 33_220).div_ceil(10_000)) as u32 + GUARD_BITS
}

#[derive(Clone, Debug)]
pub struct BigFl {
    neg: bool,
    mag: BigUint,
    exp: i64,
    prec: u32,
}

fn round_mag(mag: BigUint, exp: i64, prec: u32) -> (BigUint, i64) {
    let bits = mag.bits();
    if bits <= prec as u64 {
        return (mag, exp);
    }
    let shift = bits - prec as u64;
    let round_bit = mag.bit(shift - 1);
    let sticky = shift >= 2 && mag.trailing_zeros().is_some_and(|tz| tz < shift - 1);
    let mut q = mag >> shift;
    let mut e = exp + shift as i64;
    if round_bit && (sticky || q.bit(0)) {
        q += 1u32;
        if q.bits() > prec as u64 {
            q >>= 1;
            e += 1;
        }
    }
    (q, e)
}

impl BigFl {
    fn from_parts(neg: bool, mag: BigUint, exp: i64, prec: u32) -> Self {
        if mag.is_zero() {
            return Self::zero(prec);
        }
        let (mag, exp) = round_mag(mag, exp, prec);
        BigFl { neg, mag, exp, prec }
    }

    pub fn zero(prec: u32) -> Self {
        BigFl { neg: false, mag: BigUint::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_u64(1, prec)
    }

    pub fn from_u64(v: u64, prec: u32) -> Self {
        Self::from_parts(false, BigUint::from(v), 0, prec)
    }

    pub fn from_u128(v: u128, prec: u32) -> Self {
        Self::from_parts(false, BigUint::from(v), 0, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_parts(v < 0, BigUint::from(v.unsigned_abs()), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self::from_parts(v.sign() == Sign::Minus, v.magnitude().clone(), 0, prec)
    }

    pub fn from_biguint(v: BigUint, prec: u32) -> Self {
        Self::from_parts(false, v, 0, prec)
    }

    /// Correctly rounded conversion of an exact rational.
    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        let num = Self::from_parts(r.numer().sign() == Sign::Minus, r.numer().magnitude().clone(), 0, u32::MAX);
        let den = Self::from_parts(false, r.denom().magnitude().clone(), 0, u32::MAX);
        num.div_prec(&den, prec)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "BigFl::from_f64 on non-finite value");
        if v == 0.0 {
            return Self::zero(prec);
        }
        let bits = v.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 { (frac, -1074) } else { (frac | (1u64 << 52), biased - 1075) };
        Self::from_parts(neg, BigUint::from(mant), exp, prec)
    }

    /// Parses a plain decimal literal such as `-1.25e-3`.
    pub fn parse_decimal(s: &str, prec: u32) -> Option<Self> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (mantissa, exp10) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i64>().ok()?),
            None => (body, 0),
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits: String = format!("{int_part}{frac_part}");
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let m: BigInt = digits.parse().ok()?;
        let scale = exp10 - frac_part.len() as i64;
        let ten = BigInt::from(10u32);
        let r = if scale >= 0 {
            Rat::from_integer(m * num_traits::pow(ten, scale as usize))
        } else {
            Rat::new(m, num_traits::pow(ten, (-scale) as usize))
        };
        let r = if neg { -r } else { r };
        Some(Self::from_rat(&r, prec))
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    /// Position of the highest set bit plus one, i.e. `floor(log2|x|) + 1`.
    /// Zero maps to `i64::MIN`.
    pub fn top_bit(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mag.bits() as i64
        }
    }

    pub fn abs(&self) -> Self {
        BigFl { neg: false, ..self.clone() }
    }

    /// Rounds to a new precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_parts(self.neg, self.mag.clone(), self.exp, prec)
    }

    /// Multiplies by `2^k` exactly.
    pub fn ldexp(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFl { exp: self.exp + k, ..self.clone() }
    }

    fn add_signed(&self, other: &Self, negate_other: bool, prec: u32) -> Self {
        let other_neg = other.neg ^ negate_other;
        if other.is_zero() {
            return self.with_prec(prec);
        }
        if self.is_zero() {
            return Self::from_parts(other_neg, other.mag.clone(), other.exp, prec);
        }
        let (ta, tb) = (self.top_bit(), other.top_bit());
        // A summand below a quarter ulp of the other cannot change the
        // correctly rounded result.
        if ta > tb + prec as i64 + 2 {
            return self.with_prec(prec);
        }
        if tb > ta + prec as i64 + 2 {
            return Self::from_parts(other_neg, other.mag.clone(), other.exp, prec);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mag << (self.exp - e) as u64;
        let b = &other.mag << (other.exp - e) as u64;
        if self.neg == other_neg {
            Self::from_parts(self.neg, a + b, e, prec)
        } else {
            match a.cmp(&b) {
                Ordering::Equal => Self::zero(prec),
                Ordering::Greater => Self::from_parts(self.neg, a - b, e, prec),
                Ordering::Less => Self::from_parts(other_neg, b - a, e, prec),
            }
        }
    }

    fn mul_prec(&self, other: &Self, prec: u32) -> Self {
        Self::from_parts(self.neg ^ other.neg, &self.mag * &other.mag, self.exp + other.exp, prec)
    }

    fn div_prec(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.is_zero(), "BigFl division by zero");
        if self.is_zero() {
            return Self::zero(prec);
        }
        let need = prec as i64 + 2 + other.mag.bits() as i64 - self.mag.bits() as i64;
        let k = need.max(0) as u64;
        let (q, r) = (&self.mag << k).div_rem(&other.mag);
        let (q, extra) = if r.is_zero() { (q, 0) } else { ((q << 1u32) | BigUint::one(), 1) };
        Self::from_parts(self.neg ^ other.neg, q, self.exp - k as i64 - other.exp - extra, prec)
    }

    /// Division by a machine integer.
    pub fn div_u128(&self, d: u128) -> Self {
        assert!(d != 0, "BigFl division by zero");
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec;
        let dmag = BigUint::from(d);
        let need = prec as i64 + 2 + dmag.bits() as i64 - self.mag.bits() as i64;
        let k = need.max(0) as u64;
        let (q, r) = (&self.mag << k).div_rem(&dmag);
        let (q, extra) = if r.is_zero() { (q, 0) } else { ((q << 1u32) | BigUint::one(), 1) };
        Self::from_parts(self.neg, q, self.exp - k as i64 - extra, prec)
    }

    pub fn mul_u128(&self, m: u128) -> Self {
        Self::from_parts(self.neg, &self.mag * BigUint::from(m), self.exp, self.prec)
    }

    /// `1/d` at precision `prec`.
    pub fn recip_u128(d: u128, prec: u32) -> Self {
        Self::one(prec).div_u128(d)
    }

    pub fn square(&self) -> Self {
        self.mul_prec(self, self.prec)
    }

    pub fn powi(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Nearest `f64` (truncating beyond 64 bits; exact enough for
    /// diagnostics and range decisions).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mag.bits();
        let (top, e) = if bits > 64 {
            ((&self.mag >> (bits - 64)).to_u64().unwrap_or(u64::MAX), self.exp + (bits - 64) as i64)
        } else {
            (self.mag.to_u64().unwrap_or(u64::MAX), self.exp)
        };
        // Two scaling steps keep each power of two inside the f64 range.
        let e = e.clamp(-2200, 2200) as i32;
        let v = top as f64 * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// Exact value as a rational number.
    pub fn to_rat(&self) -> Rat {
        let m = BigInt::from_biguint(if self.neg { Sign::Minus } else { Sign::Plus }, self.mag.clone());
        if self.exp >= 0 {
            Rat::from_integer(m << self.exp as u64)
        } else {
            Rat::new(m, BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Largest integer `<= self` when `|self| < 2^62`.
    pub fn floor_i64(&self) -> i64 {
        let r = self.to_rat();
        r.floor().to_integer().to_i64().expect("BigFl::floor_i64 out of range")
    }

    /// Decimal rendering with `sig` significant digits, rounded half to even
    /// on the exact binary value. Positional notation for moderate
    /// magnitudes, scientific otherwise.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return if sig == 1 { "0".to_string() } else { format!("0.{}", "0".repeat(sig - 1)) };
        }
        let (digits, e10) = self.decimal_digits(sig);
        let sign = if self.neg { "-" } else { "" };
        if (-5..21).contains(&e10) {
            if e10 >= 0 {
                let int_len = e10 as usize + 1;
                if int_len >= sig {
                    format!("{sign}{}{}", digits, "0".repeat(int_len - sig))
                } else {
                    format!("{sign}{}.{}", &digits[..int_len], &digits[int_len..])
                }
            } else {
                format!("{sign}0.{}{}", "0".repeat((-e10 - 1) as usize), digits)
            }
        } else {
            let rest = if sig > 1 { format!(".{}", &digits[1..]) } else { String::new() };
            format!("{sign}{}{rest}e{e10}", &digits[..1])
        }
    }

    /// Returns `(d, e)` with `d` a string of exactly `sig` digits such that
    /// `|self| ≈ 0.d * 10^(e+1)`, i.e. first digit has weight `10^e`.
    fn decimal_digits(&self, sig: usize) -> (String, i64) {
        let r = self.to_rat().abs();
        let log2 = self.top_bit() as f64;
        let mut e10 = ((log2 - 1.0) * std::f64::consts::LOG10_2).floor() as i64;
        let ten = BigInt::from(10u32);
        loop {
            let shift = sig as i64 - 1 - e10;
            let scaled = if shift >= 0 {
                &r * Rat::from_integer(num_traits::pow(ten.clone(), shift as usize))
            } else {
                &r / Rat::from_integer(num_traits::pow(ten.clone(), (-shift) as usize))
            };
            let n = round_half_even(&scaled);
            let lo = num_traits::pow(ten.clone(), sig - 1);
            let hi = &lo * &ten;
            if n >= hi {
                e10 += 1;
                continue;
            }
            if n < lo {
                e10 -= 1;
                continue;
            }
            return (n.to_string(), e10);
        }
    }
}

fn round_half_even(r: &Rat) -> BigInt {
    let fl = r.floor();
    let frac = r - &fl;
    let half = Rat::new(BigInt::one(), BigInt::from(2u32));
    let base = fl.to_integer();
    match frac.cmp(&half) {
        Ordering::Less => base,
        Ordering::Greater => base + 1,
        Ordering::Equal => {
            if base.is_even() {
                base
            } else {
                base + 1
            }
        }
    }
}

impl PartialEq for BigFl {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFl {}

impl PartialOrd for BigFl {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFl {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return if other.neg { Ordering::Greater } else { Ordering::Less },
            (false, true) => return if self.neg { Ordering::Less } else { Ordering::Greater },
            _ => {}
        }
        if self.neg != other.neg {
            return if self.neg { Ordering::Less } else { Ordering::Greater };
        }
        let mag_order = match self.top_bit().cmp(&other.top_bit()) {
            Ordering::Equal => {
                let e = self.exp.min(other.exp);
                let a = &self.mag << (self.exp - e) as u64;
                let b = &other.mag << (other.exp - e) as u64;
                a.cmp(&b)
            }
            o => o,
        };
        if self.neg {
            mag_order.reverse()
        } else {
            mag_order
        }
    }
}

impl fmt::Display for BigFl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(30).max(1);
        f.write_str(&self.to_decimal_string(sig))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&BigFl> for &BigFl {
            type Output = BigFl;
            fn $method(self, rhs: &BigFl) -> BigFl {
                let f: fn(&BigFl, &BigFl, u32) -> BigFl = $body;
                f(self, rhs, self.prec.max(rhs.prec))
            }
        }
        impl $trait<BigFl> for BigFl {
            type Output = BigFl;
            fn $method(self, rhs: BigFl) -> BigFl {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BigFl> for BigFl {
            type Output = BigFl;
            fn $method(self, rhs: &BigFl) -> BigFl {
                (&self).$method(rhs)
            }
        }
        impl $trait<BigFl> for &BigFl {
            type Output = BigFl;
            fn $method(self, rhs: BigFl) -> BigFl {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b, p| a.add_signed(b, false, p));
binop!(Sub, sub, |a, b, p| a.add_signed(b, true, p));
binop!(Mul, mul, |a, b, p| a.mul_prec(b, p));
binop!(Div, div, |a, b, p| a.div_prec(b, p));

impl Neg for BigFl {
    type Output = BigFl;
    fn neg(mut self) -> BigFl {
        if !self.is_zero() {
            self.neg = !self.neg;
        }
        self
    }
}

impl Neg for &BigFl {
    type Output = BigFl;
    fn neg(self) -> BigFl {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    const P: u32 = 200;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_integers_are_exact() {
        let a = BigFl::from_i64(-7, P);
        let b = BigFl::from_u64(3, P);
        assert_eq!((&a + &b).to_rat(), rat(-4, 1));
        assert_eq!((&a * &b).to_rat(), rat(-21, 1));
        assert_eq!((&a - &a).to_rat(), rat(0, 1));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_is_correctly_rounded() {
        let x = BigFl::from_u64(1, 60).div_u128(3);
        let exact = rat(1, 3);
        let err = (x.to_rat() - exact.clone()).abs();
        // Half an ulp at 60 bits for a value in [1/4, 1/2).
        let half_ulp = Rat::new(BigInt::one(), BigInt::one() << 62u32);
        assert!(err <= half_ulp);
        let y = BigFl::one(60) / BigFl::from_u64(3, 60);
        assert_eq!(x, y);
    }

    #[test]
    fn ties_round_to_even() {
        // 2^4 + 1 with 4 bits of precision: 17 -> 16, 19 -> 20.
        assert_eq!(BigFl::from_u64(17, 4).to_rat(), rat(16, 1));
        assert_eq!(BigFl::from_u64(19, 4).to_rat(), rat(20, 1));
        assert_eq!(BigFl::from_u64(25, 4).to_rat(), rat(24, 1));
    }

    #[test]
    fn tiny_addend_is_absorbed() {
        let one = BigFl::one(64);
        let tiny = BigFl::one(64).ldexp(-100);
        assert_eq!(&one + &tiny, one);
        assert_eq!(&tiny + &one, one);
    }

    #[test]
    fn ordering_matches_rationals() {
        let vals = [-3.5, -1.0, -0.25, 0.0, 1e-30, 0.5, 2.0, 1e20];
        for &a in &vals {
            for &b in &vals {
                let (x, y) = (BigFl::from_f64(a, P), BigFl::from_f64(b, P));
                assert_eq!(x.cmp(&y), a.partial_cmp(&b).unwrap(), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn decimal_rendering() {
        let third = BigFl::from_rat(&rat(1, 3), P);
        assert_eq!(third.to_decimal_string(10), "0.3333333333");
        assert_eq!(BigFl::from_u64(6, P).to_decimal_string(5), "6.0000");
        assert_eq!(BigFl::from_rat(&rat(-45, 8), P).to_decimal_string(4), "-5.625");
        assert_eq!(BigFl::from_rat(&rat(1, 1000), P).to_decimal_string(3), "0.00100");
        assert_eq!(BigFl::from_f64(3.2e-20, P).to_decimal_string(3), "3.20e-20");
        assert_eq!(BigFl::from_u64(999_999, P).to_decimal_string(3), "1000000");
        assert_eq!(BigFl::zero(P).to_decimal_string(3), "0.00");
    }

    #[test]
    fn parse_round_trip() {
        let x = BigFl::parse_decimal("1.6449340668482264364724151666460251892", P).unwrap();
        assert_eq!(x.to_decimal_string(30), "1.64493406684822643647241516665");
        let y = BigFl::parse_decimal("-2.5e-3", P).unwrap();
        assert_eq!(y, BigFl::from_rat(&rat(-1, 400), P));
        assert!(BigFl::parse_decimal("abc", P).is_none());
    }

    #[test]
    fn f64_round_trip() {
        for v in [1.0, -0.1, 123456.789, 5e-300, 1.7e300] {
            assert_eq!(BigFl::from_f64(v, 64).to_f64(), v);
        }
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let x = BigFl::from_rat(&rat(7, 5), P);
        let mut acc = BigFl::one(P);
        for _ in 0..13 {
            acc = &acc * &x;
        }
        let diff = (&x.powi(13) - &acc).abs();
        assert!(diff <= BigFl::one(P).ldexp(-(P as i64) + 10));
    }
}
