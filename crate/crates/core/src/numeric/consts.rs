//! Decimal-precision front ends for the constants and numeric evaluation
//! of `ZExpr` values.

use super::{elementary, prec_for_digits, special, BigFl, GUARD_BITS};
use crate::error::{Error, Result};
use crate::field::Accumulator;
use crate::zexpr::{ConstSym, ZExpr};

pub const MIN_DIGITS: u32 = 30;

fn check_digits(digits: u32) -> Result<()> {
    if digits < MIN_DIGITS {
        return Err(Error::Config(format!("precision must be at least {MIN_DIGITS} digits, got {digits}")));
    }
    Ok(())
}

/// Decimal digits carried by a binary precision (guard bits excluded).
pub fn digits_for_prec(prec: u32) -> u32 {
    (prec.saturating_sub(GUARD_BITS) as u64 * 30_103 / 100_000) as u32
}

/// Number of direct terms in the Euler–Maclaurin evaluation of `zeta`.
fn zeta_direct_terms(prec: u32) -> u64 {
    2 * digits_for_prec(prec).max(MIN_DIGITS) as u64
}

pub fn zeta_prec(k: u32, prec: u32) -> BigFl {
    special::zeta(k, zeta_direct_terms(prec), prec)
}

pub fn const_pi(digits: u32) -> Result<BigFl> {
    check_digits(digits)?;
    Ok(elementary::pi(prec_for_digits(digits)))
}

pub fn const_ln2(digits: u32) -> Result<BigFl> {
    check_digits(digits)?;
    Ok(elementary::ln2(prec_for_digits(digits)))
}

pub fn const_zeta(k: i64, digits: u32) -> Result<BigFl> {
    check_digits(digits)?;
    if k < 2 {
        return Err(Error::Domain(format!("zeta({k}) diverges or is outside the supported range (need k >= 2)")));
    }
    Ok(zeta_prec(k as u32, prec_for_digits(digits)))
}

pub fn sym_value(sym: ConstSym, prec: u32) -> BigFl {
    match sym {
        ConstSym::Unit => BigFl::one(prec),
        ConstSym::Ln2 => elementary::ln2(prec),
        ConstSym::Zeta(k) => zeta_prec(k, prec),
        ConstSym::PiPow(k) => elementary::pi(prec + 16).powi(k).with_prec(prec),
    }
}

/// Numeric value at binary precision `prec`, summed in canonical symbol
/// order.
pub fn zx_numeric_prec(a: &ZExpr, prec: u32) -> BigFl {
    let wp = prec + 16;
    let mut acc = Accumulator::<BigFl>::new(wp);
    for (sym, c) in a.iter() {
        acc.push(&(&BigFl::from_rat(c, wp) * &sym_value(*sym, wp)));
    }
    acc.total().with_prec(prec)
}

pub fn zx_numeric(a: &ZExpr, digits: u32) -> Result<BigFl> {
    check_digits(digits)?;
    Ok(zx_numeric_prec(a, prec_for_digits(digits)))
}
