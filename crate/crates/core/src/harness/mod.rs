//! Closed form against oracle comparisons, suites and report output.

mod emit;
mod suite;

pub use emit::{emit, Format};
pub use suite::{run_suite, SuiteEntry, SuiteManifest, SuiteOutcome};

use crate::closed_form::closed_form;
use crate::error::{Error, Result};
use crate::numeric::consts::zx_numeric_prec;
use crate::numeric::{oracle, BigFl, NumericCfg, OracleResult};
use crate::spec::SeriesSpec;
use crate::zexpr::ZExpr;

#[derive(Clone, Debug)]
pub struct EvalReport {
    pub spec: SeriesSpec,
    pub closed_form: ZExpr,
    pub closed_numeric: BigFl,
    /// `None` when the oracle failed; see `reason`.
    pub oracle: Option<OracleResult>,
    pub abs_err: Option<BigFl>,
    pub rel_err: Option<BigFl>,
    pub tolerance: f64,
    pub pass: bool,
    pub reason: Option<String>,
}

impl EvalReport {
    /// The threshold `abs_err` was compared against.
    pub fn threshold(&self) -> Option<BigFl> {
        let o = self.oracle.as_ref()?;
        let tol = BigFl::from_f64(self.tolerance, o.value.prec());
        Some(match o.allowance() {
            Some(a) if a > tol => a,
            _ => tol,
        })
    }
}

pub(crate) fn check_tolerance(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Config(format!("tolerance must be positive and finite, got {tol}")));
    }
    Ok(())
}

/// Compares the closed form of `spec` with the oracle selected by `cfg`.
///
/// Passes when `abs_err <= max(tol, tail_bound + error_estimate)`. Oracle
/// failures produce a failing report; only invalid input is an error.
pub fn verify(spec: &SeriesSpec, cfg: &NumericCfg, tol: f64) -> Result<EvalReport> {
    check_tolerance(tol)?;
    spec.validate()?;
    let closed = closed_form(spec)?;
    let prec = cfg.prec();
    let closed_numeric = zx_numeric_prec(&closed, prec);
    let mut report = EvalReport {
        spec: *spec,
        closed_form: closed,
        closed_numeric,
        oracle: None,
        abs_err: None,
        rel_err: None,
        tolerance: tol,
        pass: false,
        reason: None,
    };
    match oracle(spec, cfg) {
        Ok(o) => {
            let abs_err = (&o.value - &report.closed_numeric).abs();
            let rel_err =
                if report.closed_numeric.is_zero() { None } else { Some(&abs_err / &report.closed_numeric.abs()) };
            report.oracle = Some(o);
            let threshold = report.threshold().expect("oracle present");
            report.pass = abs_err <= threshold;
            if !report.pass {
                report.reason = Some(format!(
                    "abs_err {} exceeds {}",
                    abs_err.to_decimal_string(6),
                    threshold.to_decimal_string(6)
                ));
            }
            report.abs_err = Some(abs_err);
            report.rel_err = rel_err;
        }
        Err(e) => report.reason = Some(e.to_string()),
    }
    Ok(report)
}
