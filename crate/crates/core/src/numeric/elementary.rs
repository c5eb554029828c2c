//! Elementary functions and the constants `pi`, `ln 2` at arbitrary binary
//! precision. Each routine works with extra guard bits and rounds once at
//! the end.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::BigFl;

const EXTRA: u32 = 32;

fn cached(key: (&'static str, u32), compute: impl FnOnce() -> BigFl) -> BigFl {
    static CACHE: OnceLock<Mutex<HashMap<(&'static str, u32), BigFl>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return v.clone();
    }
    // Computed outside the lock; a racing thread computes the same value and
    // the first insertion wins.
    let v = compute();
    cache.lock().unwrap_or_else(|e| e.into_inner()).entry(key).or_insert(v).clone()
}

/// `sum_{i>=0} (-1)^i / ((2i+1) k^(2i+1))` using only integer divisions.
fn atan_recip(k: u128, prec: u32) -> BigFl {
    let k2 = k * k;
    let mut power = BigFl::one(prec).div_u128(k);
    let mut sum = power.clone();
    let mut i: u128 = 1;
    loop {
        power = power.div_u128(k2);
        let term = power.div_u128(2 * i + 1);
        if term.is_zero() || term.top_bit() < -(prec as i64) - 4 {
            break;
        }
        sum = if i % 2 == 1 { &sum - &term } else { &sum + &term };
        i += 1;
    }
    sum
}

/// `pi` by Machin's formula.
pub fn pi(prec: u32) -> BigFl {
    cached(("pi", prec), || {
        let wp = prec + EXTRA;
        let a = atan_recip(5, wp).ldexp(4);
        let b = atan_recip(239, wp).ldexp(2);
        (&a - &b).with_prec(prec)
    })
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2(prec: u32) -> BigFl {
    cached(("ln2", prec), || {
        let wp = prec + EXTRA;
        let mut power = BigFl::one(wp).div_u128(3);
        let mut sum = power.clone();
        let mut i: u128 = 1;
        loop {
            power = power.div_u128(9);
            let term = power.div_u128(2 * i + 1);
            if term.top_bit() < -(wp as i64) - 4 {
                break;
            }
            sum = &sum + &term;
            i += 1;
        }
        sum.ldexp(1).with_prec(prec)
    })
}

/// `atanh(z)` for `|z| <= 1/2` by its Taylor series.
fn atanh_small(z: &BigFl) -> BigFl {
    let wp = z.prec();
    let z2 = z.square();
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut i: u128 = 1;
    loop {
        power = &power * &z2;
        let term = power.div_u128(2 * i + 1);
        if term.is_zero() || term.top_bit() < sum.top_bit() - wp as i64 - 4 {
            break;
        }
        sum = &sum + &term;
        i += 1;
    }
    sum
}

pub fn exp(x: &BigFl) -> BigFl {
    let prec = x.prec();
    if x.is_zero() {
        return BigFl::one(prec);
    }
    let xf = x.to_f64();
    assert!(xf.abs() < 1e15, "exp argument out of range");
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let kbits = 64 - k.unsigned_abs().leading_zeros();
    let wp = prec + EXTRA + kbits;
    let mut r = x.with_prec(wp);
    if k != 0 {
        let kl = ln2(wp).mul_u128(k.unsigned_abs() as u128);
        r = if k > 0 { &r - &kl } else { &r + &kl };
    }
    // Halve the argument `j` times so the series converges quickly, then
    // square back.
    let j = ((wp as f64).sqrt() / 2.0) as i64 + 1;
    let wp = wp + j as u32;
    let r = r.with_prec(wp).ldexp(-j);
    let mut term = BigFl::one(wp);
    let mut sum = BigFl::one(wp);
    let mut i: u128 = 1;
    loop {
        term = (&term * &r).div_u128(i);
        if term.is_zero() || term.top_bit() < -(wp as i64) - 2 {
            break;
        }
        sum = &sum + &term;
        i += 1;
    }
    for _ in 0..j {
        sum = sum.square();
    }
    sum.ldexp(k).with_prec(prec)
}

/// Natural logarithm of a positive value.
pub fn ln(x: &BigFl) -> BigFl {
    assert!(!x.is_negative() && !x.is_zero(), "ln of a non-positive value");
    let prec = x.prec();
    let wp = prec + EXTRA;
    // x = m * 2^e with m in [1/sqrt 2, sqrt 2).
    let mut e = x.top_bit() - 1;
    let mut m = x.with_prec(wp).ldexp(-e);
    if m.to_f64() > std::f64::consts::SQRT_2 {
        m = m.ldexp(-1);
        e += 1;
    }
    let one = BigFl::one(wp);
    let z = &(&m - &one) / &(&m + &one);
    let mut r = atanh_small(&z).ldexp(1);
    if e != 0 {
        let lk = ln2(wp + 64).mul_u128(e.unsigned_abs() as u128).with_prec(wp);
        r = if e > 0 { &r + &lk } else { &r - &lk };
    }
    r.with_prec(prec)
}

/// `ln(1 + x)` for `x > -1`, accurate for tiny `x`.
pub fn ln1p(x: &BigFl) -> BigFl {
    let prec = x.prec();
    if x.is_zero() {
        return BigFl::zero(prec);
    }
    let xf = x.to_f64();
    if !(-0.5..=1.0).contains(&xf) {
        return ln(&(x + &BigFl::one(prec)));
    }
    let wp = prec + EXTRA;
    let x = x.with_prec(wp);
    let z = &x / &(&x + &BigFl::from_u64(2, wp));
    atanh_small(&z).ldexp(1).with_prec(prec)
}

/// `(sinh x, cosh x)`.
pub fn sinh_cosh(x: &BigFl) -> (BigFl, BigFl) {
    let prec = x.prec();
    let wp = prec + EXTRA;
    let e = exp(&x.with_prec(wp));
    let inv = &BigFl::one(wp) / &e;
    ((&e - &inv).ldexp(-1).with_prec(prec), (&e + &inv).ldexp(-1).with_prec(prec))
}

pub fn sqrt(x: &BigFl) -> BigFl {
    assert!(!x.is_negative(), "sqrt of a negative value");
    let prec = x.prec();
    if x.is_zero() {
        return x.clone();
    }
    let wp = prec + EXTRA;
    let x = x.with_prec(wp);
    let e = x.top_bit() & !1;
    let scaled = x.ldexp(-e);
    let mut y = BigFl::from_f64(scaled.to_f64().sqrt(), wp);
    // Newton doubles the correct bits per step from ~50.
    let mut bits = 50u32;
    while bits < wp + 4 {
        y = (&y + &(&scaled / &y)).ldexp(-1);
        bits *= 2;
    }
    y.ldexp(e / 2).with_prec(prec)
}
