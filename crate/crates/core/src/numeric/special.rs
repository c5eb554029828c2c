//! Riemann and Hurwitz zeta values, Euler's constant and the digamma
//! function, all by Euler–Maclaurin summation.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::elementary::{ln, ln2};
use super::BigFl;
use crate::exact::{bernoulli, Rat};

fn cache() -> &'static Mutex<HashMap<(u32, u32), BigFl>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), BigFl>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn bernoulli_fl(n: usize, prec: u32) -> BigFl {
    BigFl::from_rat(&bernoulli(n), prec)
}

/// `zeta(k)` for integer `k >= 2`, summing `m` terms directly and
/// correcting with Euler–Maclaurin until the correction drops below the
/// working precision.
pub fn zeta(k: u32, m: u64, prec: u32) -> BigFl {
    assert!(k >= 2, "zeta needs k >= 2");
    let key = (k, prec);
    if let Some(v) = cache().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return v.clone();
    }
    let wp = prec + 32;
    let mut direct = BigFl::zero(wp);
    for n in (1..m).rev() {
        direct = &direct + &BigFl::one(wp).div_u128(n as u128).powi(k);
    }
    let mf = BigFl::from_u64(m, wp);
    let inv_m = BigFl::one(wp).div_u128(m as u128);
    let m_pow_k = mf.powi(k);
    let mut total = &direct + &(&mf / &m_pow_k).div_u128(k as u128 - 1);
    total = &total + &(&BigFl::one(wp) / &m_pow_k).ldexp(-1);
    // Term j: B_{2j}/(2j)! * k(k+1)...(k+2j-2) * m^{-k-2j+1}.
    let mut factor = &BigFl::one(wp) / &m_pow_k;
    let inv_m2 = inv_m.square();
    let mut rising = Rat::from_integer(k.into()); // k(k+1)...(k+2j-2) / (2j)!
    rising /= Rat::from_integer(2.into());
    let mut j = 1usize;
    let mut prev_mag = i64::MAX;
    loop {
        let b = bernoulli(2 * j);
        let coeff = BigFl::from_rat(&(&b * &rising), wp);
        let term = &(&coeff * &factor) * &inv_m;
        let mag = term.top_bit();
        if term.is_zero() || mag < -(wp as i64) - 4 {
            break;
        }
        assert!(mag < prev_mag, "Euler-Maclaurin terms stopped decreasing; increase m");
        prev_mag = mag;
        total = &total + &term;
        // Advance: rising *= (k+2j-1)(k+2j) / ((2j+1)(2j+2)); factor *= m^-2.
        let kk = k as i64 + 2 * j as i64;
        rising *= Rat::new(((kk - 1) * kk).into(), (((2 * j + 1) * (2 * j + 2)) as i64).into());
        factor = &factor * &inv_m2;
        j += 1;
    }
    let v = total.with_prec(prec);
    cache().lock().unwrap_or_else(|e| e.into_inner()).entry(key).or_insert(v).clone()
}

/// Euler's constant from `H_m = ln m + gamma + 1/(2m) - sum B_{2j}/(2j m^{2j})`.
pub fn euler_gamma(prec: u32) -> BigFl {
    let key = (0, prec);
    if let Some(v) = cache().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return v.clone();
    }
    let wp = prec + 32;
    let m: u64 = (wp as u64 / 4).max(20);
    let mut h = BigFl::zero(wp);
    for n in (1..=m).rev() {
        h = &h + &BigFl::one(wp).div_u128(n as u128);
    }
    let mf = BigFl::from_u64(m, wp);
    let mut g = &(&h - &ln(&mf)) - &BigFl::one(wp).div_u128(2 * m as u128);
    let inv_m2 = BigFl::one(wp).div_u128(m as u128 * m as u128);
    let mut pow = inv_m2.clone();
    for j in 1.. {
        let term = (&bernoulli_fl(2 * j, wp) * &pow).div_u128(2 * j as u128);
        if term.is_zero() || term.top_bit() < -(wp as i64) - 4 {
            break;
        }
        g = &g + &term;
        pow = &pow * &inv_m2;
    }
    let v = g.with_prec(prec);
    cache().lock().unwrap_or_else(|e| e.into_inner()).entry(key).or_insert(v).clone()
}

/// Argument above which the asymptotic expansions are used directly: the
/// smallest asymptotic term is about `exp(-2 pi x)`.
fn asymptotic_threshold(prec: u32) -> u64 {
    (prec as u64 * 12 / 100).max(8) + 2
}

/// Digamma `psi(x)` for `x > 0`.
pub fn digamma(x: &BigFl) -> BigFl {
    assert!(!x.is_negative() && !x.is_zero(), "digamma needs x > 0");
    let prec = x.prec();
    let wp = prec + 16;
    let threshold = asymptotic_threshold(wp);
    let mut y = x.with_prec(wp);
    let mut shift = BigFl::zero(wp);
    let one = BigFl::one(wp);
    while y.to_f64() < threshold as f64 {
        shift = &shift + &(&one / &y);
        y = &y + &one;
    }
    let inv = &one / &y;
    let inv2 = inv.square();
    let mut r = &ln(&y) - &inv.ldexp(-1);
    let mut pow = inv2.clone();
    for j in 1.. {
        let term = (&bernoulli_fl(2 * j, wp) * &pow).div_u128(2 * j as u128);
        if term.is_zero() || term.top_bit() < r.top_bit().max(-(wp as i64)) - wp as i64 - 4 {
            break;
        }
        r = &r - &term;
        pow = &pow * &inv2;
    }
    (&r - &shift).with_prec(prec)
}

/// Hurwitz zeta `sum_{k>=0} (x+k)^{-s}` for integer `s >= 2`, `x > 0`.
pub fn hurwitz_zeta(s: u32, x: &BigFl) -> BigFl {
    assert!(s >= 2, "hurwitz_zeta needs s >= 2");
    assert!(!x.is_negative() && !x.is_zero(), "hurwitz_zeta needs x > 0");
    let prec = x.prec();
    let wp = prec + 16;
    let threshold = asymptotic_threshold(wp);
    let one = BigFl::one(wp);
    let mut y = x.with_prec(wp);
    let mut head = BigFl::zero(wp);
    while y.to_f64() < threshold as f64 {
        head = &head + &(&one / &y).powi(s);
        y = &y + &one;
    }
    let inv = &one / &y;
    let inv2 = inv.square();
    let y_pow = inv.powi(s); // y^{-s}
    let mut r = &(&y * &y_pow).div_u128(s as u128 - 1) + &y_pow.ldexp(-1);
    // Term j: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * y^{-s-2j+1}.
    let mut rising = Rat::new(s.into(), 2.into());
    let mut pow = &y_pow * &inv;
    for j in 1usize.. {
        let term = &BigFl::from_rat(&(&bernoulli(2 * j) * &rising), wp) * &pow;
        if term.is_zero() || term.top_bit() < r.top_bit() - wp as i64 - 4 {
            break;
        }
        r = &r + &term;
        let kk = s as i64 + 2 * j as i64;
        rising *= Rat::new(((kk - 1) * kk).into(), (((2 * j + 1) * (2 * j + 2)) as i64).into());
        pow = &pow * &inv2;
    }
    (&r + &head).with_prec(prec)
}

/// Real extension of `H_x = psi(x+1) + gamma`.
pub fn harmonic_real(x: &BigFl) -> BigFl {
    let prec = x.prec();
    &digamma(&(x + &BigFl::one(prec))) + &euler_gamma(prec)
}

/// Real extension of `O_x = (psi(x + 1/2) + gamma)/2 + ln 2`.
pub fn odd_harmonic_real(x: &BigFl) -> BigFl {
    let prec = x.prec();
    let half = BigFl::one(prec).ldexp(-1);
    let p = &digamma(&(x + &half)) + &euler_gamma(prec);
    &p.ldexp(-1) + &ln2(prec)
}

/// Real extension of `H_x^(m) = zeta(m) - zeta(m, x+1)` for `m >= 2`.
pub fn harmonic_gen_real(x: &BigFl, m: u32, zeta_m: &BigFl) -> BigFl {
    zeta_m - &hurwitz_zeta(m, &(x + &BigFl::one(x.prec())))
}
