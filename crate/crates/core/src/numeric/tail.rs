//! Rigorous upper bounds for truncation tails.
//!
//! Every bound is an integral of a decreasing majorant of the form
//! `sum_p a_p (ln x + c)^p / x^q` over `[N, inf)`, using
//! `H_n <= ln n + 1` and `O_n <= ln(n)/2 + 1`.

use super::elementary::ln;
use super::BigFl;
use crate::error::{Error, Result};
use crate::exact::{int, rat, Rat};
use crate::spec::{HalfVariant, SeriesSpec};

/// Smallest truncation point for which the majorants are valid.
pub const MIN_TAIL_N: u64 = 10;

/// `sum_p coeffs[p] (ln x + shift)^p / x^q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Majorant {
    pub coeffs: Vec<Rat>,
    pub shift: Rat,
    pub q: u32,
}

impl Majorant {
    fn new(coeffs: Vec<Rat>, shift: Rat, q: u32) -> Self {
        Majorant { coeffs, shift, q }
    }

    fn scaled(mut self, k: i64) -> Self {
        for c in &mut self.coeffs {
            *c *= int(k);
        }
        self
    }

    /// `int_N^inf` of the majorant.
    pub fn integral(&self, n: u64, prec: u32) -> BigFl {
        assert!(self.q >= 2, "majorant must decay faster than 1/x");
        let wp = prec + 16;
        let nf = BigFl::from_u64(n, wp);
        let y = &ln(&nf) + &BigFl::from_rat(&self.shift, wp);
        let q1 = (self.q - 1) as u128;
        let mut total = BigFl::zero(wp);
        for (p, a) in self.coeffs.iter().enumerate() {
            if a == &int(0) {
                continue;
            }
            // sum_j p!/(p-j)! y^{p-j} / (q-1)^{j+1}
            let mut inner = BigFl::zero(wp);
            let mut falling: u128 = 1;
            for j in 0..=p {
                let mut term = y.powi((p - j) as u32).mul_u128(falling);
                for _ in 0..=j {
                    term = term.div_u128(q1);
                }
                inner = &inner + &term;
                falling *= (p - j) as u128;
            }
            total = &total + &(&BigFl::from_rat(a, wp) * &inner);
        }
        let npow = nf.powi(self.q - 1);
        (&total / &npow).with_prec(prec)
    }
}

fn check_n(n: u64) -> Result<()> {
    if n < MIN_TAIL_N {
        return Err(Error::Domain(format!("tail bounds need N >= {MIN_TAIL_N}, got {n}")));
    }
    Ok(())
}

/// `1 + s/N`.
fn shift_by(s: u32, n: u64) -> Rat {
    int(1) + rat(s as i64, n as i64)
}

/// `(ln x + c)^p` with unit coefficient.
fn power(p: usize) -> Vec<Rat> {
    let mut v = vec![int(0); p + 1];
    v[p] = int(1);
    v
}

/// Majorant of the reduced summand at indices beyond `n`.
pub fn diagonal_majorant(spec: &SeriesSpec, n: u64) -> Result<Majorant> {
    check_n(n)?;
    spec.validate()?;
    let inv_n = rat(1, n as i64);
    let m = match *spec {
        SeriesSpec::A3 { s } => Majorant::new(power(2), shift_by(s, n), 2).scaled(2),
        SeriesSpec::An { n: order, s } => {
            Majorant::new(power(order as usize - 1), shift_by(s, n), 2).scaled(order as i64 - 1)
        }
        SeriesSpec::AXl { k } => Majorant::new(power(1), shift_by(k, n), 2),
        SeriesSpec::S111 => Majorant::new(power(1), int(1), 2).scaled(2),
        SeriesSpec::LnSeries => Majorant::new(vec![int(0), rat(1, 4)], int(3), 2),
        SeriesSpec::OnSeries => Majorant::new(vec![int(0), rat(1, 8)], int(2), 2),
        SeriesSpec::EvenOddAux | SeriesSpec::OddSquares => Majorant::new(vec![rat(1, 4)], int(0), 2),
        SeriesSpec::BaseT(_) => Majorant::new(vec![int(0), rat(1, 4)], int(2) + inv_n, 2),
        SeriesSpec::HalfInt(HalfVariant::C) => Majorant::new(power(1), int(2) + inv_n, 4).scaled(2),
        SeriesSpec::HalfInt(_) => Majorant::new(power(1), int(2) + inv_n, 3).scaled(2),
        SeriesSpec::BInter => Majorant::new(vec![int(0), rat(1, 4)], int(2), 2),
        SeriesSpec::TornheimRaw { .. } => {
            return Err(Error::Unsupported { method: "diagonal".into(), spec: spec.to_string() })
        }
    };
    Ok(m)
}

/// Majorants of the row sums (and column sums, when they differ) outside
/// the box `[start, n]^d`. `None` when no bound is implemented.
pub fn raw_majorants(spec: &SeriesSpec, n: u64) -> Result<Option<Vec<Majorant>>> {
    check_n(n)?;
    spec.validate()?;
    if spec.dimension() == 1 {
        return diagonal_majorant(spec, n).map(|m| Some(vec![m]));
    }
    let row = |m: Majorant| Some(vec![m.scaled(2)]);
    let out = match *spec {
        SeriesSpec::A3 { s } | SeriesSpec::An { n: 3, s } => {
            row(Majorant::new(vec![int(1), int(1), int(2)], shift_by(s, n), 2))
        }
        SeriesSpec::An { .. } => None,
        SeriesSpec::S111 => row(Majorant::new(power(1), int(2), 2)),
        SeriesSpec::TornheimRaw { a, b, c } => {
            Some(vec![Majorant::new(power(1), int(2), a + c), Majorant::new(power(1), int(2), b + c)])
        }
        SeriesSpec::BaseT(_) | SeriesSpec::BInter => row(Majorant::new(vec![int(0), rat(1, 8)], int(2), 2)),
        SeriesSpec::HalfInt(HalfVariant::C) => row(Majorant::new(power(1), int(2), 4)),
        SeriesSpec::HalfInt(_) => row(Majorant::new(power(1), int(2), 3)),
        _ => unreachable!("one-dimensional families handled above"),
    };
    Ok(out)
}

/// Upper bound for `sum_{N > n}` of the reduced summands.
pub fn diagonal_tail_bound(spec: &SeriesSpec, n: u64, prec: u32) -> Result<BigFl> {
    Ok(diagonal_majorant(spec, n)?.integral(n, prec))
}

/// Upper bound for the raw series outside the box `[start, n]^d`.
pub fn raw_tail_bound(spec: &SeriesSpec, n: u64, prec: u32) -> Result<Option<BigFl>> {
    Ok(raw_majorants(spec, n)?.map(|ms| ms.iter().fold(BigFl::zero(prec), |acc, m| &acc + &m.integral(n, prec))))
}
