//! Numerical oracles: raw truncated sums, reduced single sums, and
//! quadrature of the integral representation of `A_n(s)`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::consts::MIN_DIGITS;
use super::quad::{tanh_sinh, QuadOutcome};
use super::sum::{diagonal_partial, diagonal_tail_accel, raw_partial, raw_tail_accel, raw_term_count, Region};
use super::tail::{diagonal_tail_bound, raw_tail_bound, MIN_TAIL_N};
use super::{prec_for_digits, BigFl, GUARD_BITS};
use crate::error::{Error, Result};
use crate::spec::SeriesSpec;

pub const DIGITS_ENV: &str = "TORNZETA_DIGITS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Raw,
    Diagonal,
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Raw => "raw",
            Method::Diagonal => "diagonal",
            Method::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "raw" => Ok(Method::Raw),
            "diagonal" | "diag" => Ok(Method::Diagonal),
            "quadrature" | "quad" => Ok(Method::Quadrature),
            _ => Err(Error::Parse { input: s.into(), reason: "expected raw, diagonal or quadrature".into() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericCfg {
    pub digits: u32,
    /// Cutoff: box side for raw sums, last reduced index for diagonal sums.
    pub n_max: u64,
    pub quad_levels: u32,
    pub method: Method,
    /// Add a midpoint Euler–Maclaurin estimate of the discarded tail.
    pub accelerate: bool,
}

impl Default for NumericCfg {
    fn default() -> Self {
        NumericCfg { digits: 50, n_max: 1_000_000, quad_levels: 10, method: Method::Diagonal, accelerate: true }
    }
}

impl NumericCfg {
    pub fn validate(&self) -> Result<()> {
        if self.digits < MIN_DIGITS {
            return Err(Error::Config(format!("digits must be >= {MIN_DIGITS}, got {}", self.digits)));
        }
        if self.n_max < 10 {
            return Err(Error::Config(format!("n_max must be >= 10, got {}", self.n_max)));
        }
        if !(3..=16).contains(&self.quad_levels) {
            return Err(Error::Config(format!("quad_levels must be in 3..=16, got {}", self.quad_levels)));
        }
        Ok(())
    }

    /// Defaults with `digits` taken from `TORNZETA_DIGITS` when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = NumericCfg::default();
        if let Ok(v) = std::env::var(DIGITS_ENV) {
            cfg.digits =
                v.trim().parse().map_err(|_| Error::Config(format!("{DIGITS_ENV}={v:?} is not a digit count")))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn prec(&self) -> u32 {
        prec_for_digits(self.digits)
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_n_max(mut self, n_max: u64) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn with_accelerate(mut self, accelerate: bool) -> Self {
        self.accelerate = accelerate;
        self
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub value: BigFl,
    pub method: Method,
    pub n_used: Option<u64>,
    pub levels_used: Option<u32>,
    /// Allowance for the discarded part: the rigorous majorant for plain
    /// sums, the estimated residual after acceleration, zero for
    /// quadrature. `None` when no bound is available.
    pub tail_bound: Option<BigFl>,
    /// Rigorous majorant of everything beyond the cutoff, before any
    /// acceleration.
    pub truncation_bound: Option<BigFl>,
    /// Quadrature level difference plus a rounding allowance.
    pub error_estimate: BigFl,
    pub accelerated: bool,
    pub elapsed_secs: f64,
}

impl OracleResult {
    /// `tail_bound + error_estimate`, or `None` without a tail bound.
    pub fn allowance(&self) -> Option<BigFl> {
        self.tail_bound.as_ref().map(|t| t + &self.error_estimate)
    }
}

/// Generous bound on accumulated rounding for `terms` additions.
fn rounding_allowance(value: &BigFl, terms: u128, prec: u32) -> BigFl {
    let bits = 128 - terms.max(1).leading_zeros() as i64 + 2;
    value.abs().ldexp(bits - prec as i64)
}

/// Upper bound for the reduced-series tail beyond `n` (raw-box tail for
/// Tornheim series); `None` where no bound is implemented.
pub fn tail_estimate(spec: &SeriesSpec, n: u64, prec: u32) -> Result<Option<BigFl>> {
    if spec.has_closed_form() {
        diagonal_tail_bound(spec, n, prec).map(Some)
    } else {
        raw_tail_bound(spec, n, prec)
    }
}

pub fn oracle(spec: &SeriesSpec, cfg: &NumericCfg) -> Result<OracleResult> {
    match cfg.method {
        Method::Raw => oracle_raw(spec, cfg),
        Method::Diagonal => oracle_diagonal(spec, cfg),
        Method::Quadrature => oracle_quadrature(spec, cfg),
    }
}

/// Truncated defining sum over the box `[start, n_max]^d`. Cutoffs below
/// the tail-bound range are accepted and carry no bound.
pub fn oracle_raw(spec: &SeriesSpec, cfg: &NumericCfg) -> Result<OracleResult> {
    let t0 = Instant::now();
    let prec = cfg.prec();
    let n = cfg.n_max;
    let partial: BigFl = raw_partial(spec, Region::Box(n), prec)?;
    let terms = raw_term_count(spec, Region::Box(n)).unwrap_or(u128::MAX);
    let truncation_bound = if n >= MIN_TAIL_N { raw_tail_bound(spec, n, prec)? } else { None };
    let accelerate = cfg.accelerate && spec.dimension() <= 2;
    let (value, tail_bound, quad_err) = if accelerate {
        let t = raw_tail_accel(spec, n, prec)?;
        (&partial + &t.value, Some(t.error), BigFl::zero(prec))
    } else {
        (partial, truncation_bound.clone(), BigFl::zero(prec))
    };
    let error_estimate = &quad_err + &rounding_allowance(&value, terms, prec);
    Ok(OracleResult {
        value,
        method: Method::Raw,
        n_used: Some(n),
        levels_used: None,
        tail_bound,
        truncation_bound,
        error_estimate,
        accelerated: accelerate,
        elapsed_secs: t0.elapsed().as_secs_f64(),
    })
}

/// Reduced single sum up to index `n_max`.
pub fn oracle_diagonal(spec: &SeriesSpec, cfg: &NumericCfg) -> Result<OracleResult> {
    let t0 = Instant::now();
    let prec = cfg.prec();
    let n = cfg.n_max;
    let partial: BigFl = diagonal_partial(spec, n, prec)?;
    let truncation_bound = if n >= MIN_TAIL_N { Some(diagonal_tail_bound(spec, n, prec)?) } else { None };
    let (value, tail_bound) = if cfg.accelerate {
        let t = diagonal_tail_accel(spec, n, prec)?;
        (&partial + &t.value, Some(t.error))
    } else {
        (partial, truncation_bound.clone())
    };
    let error_estimate = rounding_allowance(&value, n as u128, prec);
    Ok(OracleResult {
        value,
        method: Method::Diagonal,
        n_used: Some(n),
        levels_used: None,
        tail_bound,
        truncation_bound,
        error_estimate,
        accelerated: cfg.accelerate,
        elapsed_secs: t0.elapsed().as_secs_f64(),
    })
}

fn an_params(spec: &SeriesSpec) -> Result<(u32, u32)> {
    spec.validate()?;
    match *spec {
        SeriesSpec::A3 { s } => Ok((3, s)),
        SeriesSpec::An { n, s } => Ok((n, s)),
        _ => Err(Error::Unsupported { method: "quadrature".into(), spec: spec.to_string() }),
    }
}

/// `A_n(s) = int_0^1 (1-t)^(s-1) (-ln t)^n dt`.
fn an_quadrature(n: u32, s: u32, prec: u32, levels: u32) -> QuadOutcome {
    tanh_sinh(
        |p| {
            let lp = (-p.ln_t).powi(n);
            if s == 0 {
                &lp / p.omt
            } else {
                &lp * &p.omt.powi(s - 1)
            }
        },
        prec,
        levels,
        prec - GUARD_BITS,
    )
}

/// Tanh-sinh quadrature of the integral representation of `A_n(s)`.
pub fn oracle_quadrature(spec: &SeriesSpec, cfg: &NumericCfg) -> Result<OracleResult> {
    let t0 = Instant::now();
    let (n, s) = an_params(spec)?;
    let prec = cfg.prec();
    let q = an_quadrature(n, s, prec, cfg.quad_levels);
    if !q.converged {
        return Err(Error::NoConvergence(format!(
            "quadrature for {spec} did not reach {} digits within {} levels (last difference {})",
            cfg.digits,
            cfg.quad_levels,
            q.error.to_decimal_string(3)
        )));
    }
    let error_estimate = &q.error + &rounding_allowance(&q.value, 1u128 << q.levels_used.min(100), prec);
    Ok(OracleResult {
        value: q.value,
        method: Method::Quadrature,
        n_used: None,
        levels_used: Some(q.levels_used),
        tail_bound: Some(BigFl::zero(prec)),
        truncation_bound: None,
        error_estimate,
        accelerated: false,
        elapsed_secs: t0.elapsed().as_secs_f64(),
    })
}

/// Level differences `|I_l - I_{l-1}|` of the `A_n(s)` quadrature.
pub fn quadrature_history(spec: &SeriesSpec, cfg: &NumericCfg) -> Result<Vec<BigFl>> {
    let (n, s) = an_params(spec)?;
    Ok(an_quadrature(n, s, cfg.prec(), cfg.quad_levels).history)
}
