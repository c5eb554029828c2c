//! Exact values of the series families as `ZExpr`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, harmonic, harmonic_gen, int, rat, Rat};
use crate::spec::{HalfVariant, SeriesSpec};
use crate::zexpr::{ConstSym, ZExpr};

/// Largest `s` for which the alternating binomial sum may be evaluated in
/// `f64`; beyond it the terms cancel catastrophically.
pub const FLOAT_BINOMIAL_SUM_MAX_S: u32 = 25;

fn factorial(n: u32) -> Rat {
    (1..=n as i64).fold(Rat::one(), |acc, i| acc * int(i))
}

/// `sum_{j=0}^{s-1} (-1)^j C(s-1, j) / (j+1)^p`, exactly.
pub fn alternating_binomial_sum(s: u32, p: u32) -> Rat {
    assert!(s >= 1);
    let mut acc = Rat::zero();
    for j in 0..s as u64 {
        let t = binomial(s as u64 - 1, j) / Rat::from_integer(num_traits::pow((j + 1).into(), p as usize));
        if j % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// The same sum in `f64`, refused above `FLOAT_BINOMIAL_SUM_MAX_S`.
pub fn alternating_binomial_sum_f64(s: u32, p: u32) -> Result<f64> {
    if s == 0 || s > FLOAT_BINOMIAL_SUM_MAX_S {
        return Err(Error::Domain(format!(
            "floating-point binomial sum refused for s={s} (allowed 1..={FLOAT_BINOMIAL_SUM_MAX_S})"
        )));
    }
    let mut acc = 0.0;
    let mut c = 1.0f64;
    for j in 0..s {
        let t = c / ((j + 1) as f64).powi(p as i32);
        acc += if j % 2 == 0 { t } else { -t };
        c = c * (s - 1 - j) as f64 / (j + 1) as f64;
    }
    Ok(acc)
}

pub fn eval_a3(s: u32) -> ZExpr {
    if s == 0 {
        ZExpr::term(int(6), ConstSym::Zeta(4))
    } else {
        ZExpr::rational(int(6) * alternating_binomial_sum(s, 4))
    }
}

pub fn eval_an(n: u32, s: u32) -> Result<ZExpr> {
    if n < 2 {
        return Err(Error::Domain(format!("An needs n >= 2, got n={n}")));
    }
    Ok(if s == 0 {
        ZExpr::term(factorial(n), ConstSym::Zeta(n + 1))
    } else {
        ZExpr::rational(factorial(n) * alternating_binomial_sum(s, n + 1))
    })
}

pub fn eval_axl(k: u32) -> ZExpr {
    if k == 0 {
        ZExpr::term(int(2), ConstSym::Zeta(3))
    } else {
        let h = harmonic(k as u64);
        ZExpr::rational((&h * &h + harmonic_gen(k as u64, 2)) / int(k as i64))
    }
}

/// Both sides of the finite identity
/// `sum_{j<k} (-1)^j C(k-1,j)/(j+1)^3 = (H_k^2 + H_k^(2)) / (2k)`.
pub fn corollary_sides(k: u32) -> Result<(Rat, Rat)> {
    if k < 1 {
        return Err(Error::Domain("corollary_sides needs k >= 1".into()));
    }
    let lhs = alternating_binomial_sum(k, 3);
    let h = harmonic(k as u64);
    let rhs = (&h * &h + harmonic_gen(k as u64, 2)) / int(2 * k as i64);
    Ok((lhs, rhs))
}

fn z2() -> ZExpr {
    ZExpr::zeta(2)
}

fn one() -> ZExpr {
    ZExpr::int(1)
}

fn ln2() -> ZExpr {
    ZExpr::sym(ConstSym::Ln2)
}

/// `sum_{m>=1} 1/(2m(2m+1)) = 1 - ln 2`.
fn even_odd_aux() -> ZExpr {
    one().sub(&ln2())
}

/// `sum_{k>=0} 1/(2k+1)^2 = (3/4) zeta(2)`.
fn odd_squares() -> ZExpr {
    z2().scale(&rat(3, 4))
}

/// `T_d = sum_{m,n>=0} 1/((2m+1)(2n+1)(2m+2n+d))`.
pub fn eval_base_t(j: u32) -> Result<ZExpr> {
    match j {
        1 => Ok(z2()),
        2 => Ok(ZExpr::term(rat(7, 8), ConstSym::Zeta(3))),
        3 => Ok(z2().scale(&rat(1, 2))),
        _ => Err(Error::Domain(format!("baseT index must be 1, 2 or 3, got {j}"))),
    }
}

/// The same double sum restricted to `m, n >= 1`, obtained from `T_1` by
/// removing the `m = 0` and `n = 0` lines: `T_1 = 2 sum_k 1/(2k+1)^2 - 1 + B`.
fn b_inter() -> ZExpr {
    let t1 = eval_base_t(1).expect("valid index");
    t1.sub(&odd_squares().scale(&int(2))).add(&one())
}

/// `sum_{m>=1} 1/(2m(2m+1)^2) = sum 1/(2m(2m+1)) - (sum_{k>=0} 1/(2k+1)^2 - 1)`.
fn even_odd_square_aux() -> ZExpr {
    even_odd_aux().sub(&odd_squares()).add(&one())
}

/// `(ln series, on series)` starting from the odd-harmonic form of the
/// restricted sum, `B = sum O_m/(2m(2m+1)) + 1 - sum_{k>=0} 1/(2k+1)^2`.
/// The ln series then follows from `H_{2m+1} - H_m/2 = O_m + 1/(2m+1)`.
pub fn ln_on_via_odd_harmonic_route() -> (ZExpr, ZExpr) {
    let on = b_inter().sub(&one()).add(&odd_squares());
    let ln = on.add(&even_odd_square_aux()).scale(&int(2));
    (ln, on)
}

/// `(ln series, on series)` starting from the harmonic form
/// `B = sum (H_{2m+1} - 1 - H_m/2)/(2m(2m+1))`, so that half the ln series
/// is `B + sum 1/(2m(2m+1))`; the on series follows from the same
/// numerator identity read backwards.
pub fn ln_on_via_harmonic_route() -> (ZExpr, ZExpr) {
    let ln = b_inter().add(&even_odd_aux()).scale(&int(2));
    let on = ln.scale(&rat(1, 2)).sub(&even_odd_square_aux());
    (ln, on)
}

pub fn eval_ln_series() -> ZExpr {
    ZExpr::from_terms([(ConstSym::Unit, int(4)), (ConstSym::Ln2, int(-2)), (ConstSym::Zeta(2), int(-1))])
}

pub fn eval_on_series() -> ZExpr {
    ZExpr::term(rat(1, 4), ConstSym::Zeta(2))
}

fn halfint_literal(v: HalfVariant) -> ZExpr {
    let (c2, c3) = match v {
        HalfVariant::A => (16, -14),
        HalfVariant::B => (-8, 14),
        HalfVariant::C => (24, -28),
    };
    ZExpr::from_terms([(ConstSym::Zeta(2), int(c2)), (ConstSym::Zeta(3), int(c3))])
}

/// Derives the half-integer sums from the base sums (each factor
/// `x + 1/2 = (2x+1)/2`, so four factors scale by 16) and checks the
/// result against the stated coefficients.
pub fn eval_halfint(v: HalfVariant) -> ZExpr {
    let t = |j| eval_base_t(j).expect("valid index");
    let a = t(1).sub(&t(2)).scale(&int(16));
    let b = t(2).sub(&t(3)).scale(&int(16));
    let derived = match v {
        HalfVariant::A => a,
        HalfVariant::B => b,
        // 1/((N+1/2)(N+1)) - 1/((N+1)(N+3/2)) = 1/((N+1/2)(N+1)(N+3/2)).
        HalfVariant::C => a.sub(&b),
    };
    assert_eq!(derived, halfint_literal(v), "half-integer derivation drifted from the stated value");
    derived
}

pub fn eval_aux(spec: SeriesSpec) -> Result<ZExpr> {
    match spec {
        SeriesSpec::EvenOddAux => Ok(even_odd_aux()),
        SeriesSpec::OddSquares => Ok(odd_squares()),
        SeriesSpec::BInter => Ok(b_inter()),
        other => Err(Error::Unsupported { method: "eval_aux".into(), spec: other.to_string() }),
    }
}

/// Closed form of any family that has one.
pub fn closed_form(spec: &SeriesSpec) -> Result<ZExpr> {
    spec.validate()?;
    match *spec {
        SeriesSpec::A3 { s } => Ok(eval_a3(s)),
        SeriesSpec::An { n, s } => eval_an(n, s),
        SeriesSpec::AXl { k } => Ok(eval_axl(k)),
        SeriesSpec::LnSeries => Ok(eval_ln_series()),
        SeriesSpec::OnSeries => Ok(eval_on_series()),
        SeriesSpec::HalfInt(v) => Ok(eval_halfint(v)),
        SeriesSpec::BaseT(j) => eval_base_t(j),
        SeriesSpec::S111 => Ok(ZExpr::term(int(2), ConstSym::Zeta(3))),
        SeriesSpec::EvenOddAux | SeriesSpec::OddSquares | SeriesSpec::BInter => eval_aux(*spec),
        SeriesSpec::TornheimRaw { .. } => {
            Err(Error::Unsupported { method: "closed form".into(), spec: format!("{spec} (numerical only)") })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_examples() {
        assert_eq!(eval_a3(0), ZExpr::term(int(6), ConstSym::Zeta(4)));
        assert_eq!(eval_a3(1), ZExpr::int(6));
        assert_eq!(eval_a3(2), ZExpr::rational(rat(45, 8)));
    }

    #[test]
    fn an_examples() {
        assert_eq!(eval_an(2, 0).unwrap(), ZExpr::term(int(2), ConstSym::Zeta(3)));
        assert_eq!(eval_an(2, 2).unwrap(), ZExpr::rational(rat(7, 4)));
        assert_eq!(eval_an(4, 0).unwrap(), ZExpr::term(int(24), ConstSym::Zeta(5)));
        assert!(eval_an(1, 0).is_err());
    }

    #[test]
    fn axl_examples() {
        assert_eq!(eval_axl(0), ZExpr::term(int(2), ConstSym::Zeta(3)));
        assert_eq!(eval_axl(1), ZExpr::int(2));
        assert_eq!(eval_axl(3), ZExpr::rational(rat(85, 54)));
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(corollary_sides(1).unwrap(), (int(1), int(1)));
        assert_eq!(corollary_sides(2).unwrap(), (rat(7, 8), rat(7, 8)));
        let (l, r) = corollary_sides(5).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn float_path_is_refused_for_large_s() {
        assert!(alternating_binomial_sum_f64(25, 4).is_ok());
        assert!(alternating_binomial_sum_f64(26, 4).is_err());
        let f = alternating_binomial_sum_f64(2, 4).unwrap();
        assert!((f - 15.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn aux_values() {
        assert_eq!(eval_aux(SeriesSpec::EvenOddAux).unwrap().to_string(), "1 - ln2");
        assert_eq!(eval_aux(SeriesSpec::OddSquares).unwrap().to_string(), "3/4*z2");
        assert_eq!(eval_aux(SeriesSpec::BInter).unwrap().to_string(), "1 - 1/2*z2");
        assert!(eval_aux(SeriesSpec::S111).is_err());
    }

    #[test]
    fn routes_agree() {
        let (ln_a, on_a) = ln_on_via_odd_harmonic_route();
        let (ln_b, on_b) = ln_on_via_harmonic_route();
        assert_eq!(ln_a, ln_b);
        assert_eq!(on_a, on_b);
        assert_eq!(ln_a, eval_ln_series());
        assert_eq!(on_a, eval_on_series());
    }

    #[test]
    fn tornheim_has_no_closed_form() {
        assert!(closed_form(&SeriesSpec::TornheimRaw { a: 1, b: 1, c: 1 }).is_err());
    }
}
