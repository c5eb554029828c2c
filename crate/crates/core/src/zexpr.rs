//! Rational linear combinations of a fixed family of constants: `1`,
//! `ln 2`, `zeta(k)` and powers of `pi`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli, Rat};

/// Basis symbol. The derived order (variant first, then argument) is the
/// canonical iteration and rendering order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstSym {
    Unit,
    Ln2,
    /// `zeta(k)`, `k >= 2`.
    Zeta(u32),
    /// `pi^k`, `k >= 1`.
    PiPow(u32),
}

impl ConstSym {
    pub fn zeta(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("zeta({k}) is not a basis constant (need k >= 2)")));
        }
        Ok(ConstSym::Zeta(k))
    }

    pub fn pi_pow(k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::Domain("pi^0 is not a basis constant".into()));
        }
        Ok(ConstSym::PiPow(k))
    }
}

impl fmt::Display for ConstSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstSym::Unit => write!(f, "1"),
            ConstSym::Ln2 => write!(f, "ln2"),
            ConstSym::Zeta(k) => write!(f, "z{k}"),
            ConstSym::PiPow(1) => write!(f, "pi"),
            ConstSym::PiPow(k) => write!(f, "pi^{k}"),
        }
    }
}

impl FromStr for ConstSym {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { input: s.to_string(), reason: "unknown constant".into() };
        match s {
            "1" => Ok(ConstSym::Unit),
            "ln2" => Ok(ConstSym::Ln2),
            "pi" => Ok(ConstSym::PiPow(1)),
            _ => {
                if let Some(k) = s.strip_prefix("pi^") {
                    ConstSym::pi_pow(k.parse().map_err(|_| bad())?)
                } else if let Some(k) = s.strip_prefix('z') {
                    ConstSym::zeta(k.parse().map_err(|_| bad())?)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// Which representation `normalize` rewrites even zeta values into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalMode {
    KeepZeta,
    PreferPi,
}

/// `sum c_i * sym_i` with non-zero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZExpr {
    terms: BTreeMap<ConstSym, Rat>,
}

impl ZExpr {
    pub fn zero() -> Self {
        ZExpr::default()
    }

    pub fn term(c: Rat, sym: ConstSym) -> Self {
        let mut e = ZExpr::zero();
        e.add_term(sym, c);
        e
    }

    pub fn rational(c: Rat) -> Self {
        Self::term(c, ConstSym::Unit)
    }

    pub fn int(c: i64) -> Self {
        Self::rational(Rat::from_integer(c.into()))
    }

    pub fn sym(sym: ConstSym) -> Self {
        Self::term(Rat::one(), sym)
    }

    /// `zeta(k)` with unit coefficient.
    pub fn zeta(k: u32) -> Self {
        Self::sym(ConstSym::Zeta(k))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ConstSym, Rat)>) -> Self {
        let mut e = ZExpr::zero();
        for (s, c) in terms {
            e.add_term(s, c);
        }
        e
    }

    fn add_term(&mut self, sym: ConstSym, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(sym).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&sym);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, sym: ConstSym) -> Rat {
        self.terms.get(&sym).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&ConstSym, &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<ConstSym> {
        self.terms.keys().copied().collect()
    }

    /// The value when the expression is a plain rational number.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&ConstSym::Unit).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &ZExpr) -> ZExpr {
        let mut r = self.clone();
        for (s, c) in &other.terms {
            r.add_term(*s, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> ZExpr {
        if c.is_zero() {
            return ZExpr::zero();
        }
        ZExpr { terms: self.terms.iter().map(|(s, v)| (*s, v * c)).collect() }
    }

    pub fn sub(&self, other: &ZExpr) -> ZExpr {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn normalize(&self, mode: NormalMode) -> ZExpr {
        let mut r = ZExpr::zero();
        for (s, c) in &self.terms {
            match (mode, *s) {
                (NormalMode::PreferPi, ConstSym::Zeta(k)) if k % 2 == 0 => {
                    let (pi_coeff, _) = even_zeta_pi_coeff(k / 2);
                    r.add_term(ConstSym::PiPow(k), c * pi_coeff);
                }
                (NormalMode::KeepZeta, ConstSym::PiPow(k)) if k % 2 == 0 => {
                    let (pi_coeff, _) = even_zeta_pi_coeff(k / 2);
                    r.add_term(ConstSym::Zeta(k), c / pi_coeff);
                }
                _ => r.add_term(*s, c.clone()),
            }
        }
        r
    }
}

/// Coefficient `r` with `zeta(2n) = r * pi^(2n)`, i.e.
/// `(-1)^(n+1) 2^(2n) B_(2n) / (2 (2n)!)`, and the exponent `2n`.
fn even_zeta_pi_coeff(n: u32) -> (Rat, u32) {
    let two_n = 2 * n as usize;
    let mut fact = BigInt::one();
    for i in 2..=two_n {
        fact *= i;
    }
    let sign = if n % 2 == 1 { Rat::one() } else { -Rat::one() };
    let c = sign * Rat::from_integer(BigInt::one() << two_n) * bernoulli(two_n) / Rat::from_integer(2 * fact);
    (c, 2 * n)
}

/// `zeta(2n)` as a rational multiple of `pi^(2n)`.
pub fn zeta_even_to_pi(n: i64) -> Result<ZExpr> {
    if n < 1 {
        return Err(Error::Domain(format!("zeta_even_to_pi needs n >= 1, got {n}")));
    }
    let (c, k) = even_zeta_pi_coeff(n as u32);
    Ok(ZExpr::term(c, ConstSym::PiPow(k)))
}

fn fmt_coeff_term(f: &mut fmt::Formatter<'_>, c: &Rat, sym: ConstSym, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    }
    let a = c.abs();
    match sym {
        ConstSym::Unit => write!(f, "{a}"),
        _ if a.is_one() => write!(f, "{sym}"),
        _ => write!(f, "{a}*{sym}"),
    }
}

impl fmt::Display for ZExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            fmt_coeff_term(f, c, *s, i == 0)?;
        }
        Ok(())
    }
}

impl FromStr for ZExpr {
    type Err = Error;

    /// Parses the canonical rendering, e.g. `4 - 2*ln2 - z2` or
    /// `1/4*z2 + 7/8*z3`.
    fn from_str(input: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let s = input.trim();
        if s == "0" {
            return Ok(ZExpr::zero());
        }
        let mut e = ZExpr::zero();
        let mut rest = s;
        let mut sign = Rat::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -Rat::one();
            rest = r;
        }
        loop {
            let cut = [" + ", " - "].iter().filter_map(|d| rest.find(d)).min();
            let (piece, next) = match cut {
                Some(i) => (&rest[..i], Some(&rest[i..])),
                None => (rest, None),
            };
            let piece = piece.trim();
            if piece.is_empty() {
                return Err(bad("empty term"));
            }
            let (coeff, sym) = match piece.split_once('*') {
                Some((c, s)) => (parse_rat(c).ok_or_else(|| bad("bad coefficient"))?, s.parse::<ConstSym>()?),
                None => match parse_rat(piece) {
                    Some(c) => (c, ConstSym::Unit),
                    None => (Rat::one(), piece.parse::<ConstSym>()?),
                },
            };
            e.add_term(sym, sign * coeff);
            match next {
                None => break,
                Some(n) => {
                    sign = if n.starts_with(" - ") { -Rat::one() } else { Rat::one() };
                    rest = &n[3..];
                }
            }
        }
        Ok(e)
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit() || b == b'/') {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n.parse().ok()?, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}
