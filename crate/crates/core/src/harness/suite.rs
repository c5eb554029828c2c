use rayon::prelude::*;

use super::{check_tolerance, verify, EvalReport};
use crate::error::{Error, Result};
use crate::numeric::{Method, NumericCfg};
use crate::spec::{HalfVariant, SeriesSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteEntry {
    pub spec: SeriesSpec,
    pub cfg: NumericCfg,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteManifest {
    pub name: String,
    pub entries: Vec<SuiteEntry>,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub reports: Vec<EvalReport>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> usize {
        self.reports.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.reports.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }
}

pub const PRESETS: [&str; 2] = ["paper-full", "smoke"];

struct Builder<'a> {
    base: &'a NumericCfg,
    entries: Vec<SuiteEntry>,
}

impl Builder<'_> {
    fn add(&mut self, spec: SeriesSpec, method: Method, n_max: u64, accelerate: bool, tol: f64) {
        let cfg = self.base.clone().with_method(method).with_n_max(n_max).with_accelerate(accelerate);
        self.entries.push(SuiteEntry { spec, cfg, tol });
    }

    fn quad(&mut self, spec: SeriesSpec, tol: f64) {
        self.add(spec, Method::Quadrature, self.base.n_max, false, tol);
    }

    fn diag(&mut self, spec: SeriesSpec, n_max: u64, tol: f64) {
        self.add(spec, Method::Diagonal, n_max, true, tol);
    }

    fn raw(&mut self, spec: SeriesSpec, n_max: u64, tol: f64) {
        self.add(spec, Method::Raw, n_max, true, tol);
    }
}

impl SuiteManifest {
    /// Named preset; `base` supplies precision and quadrature levels.
    pub fn preset(name: &str, base: &NumericCfg) -> Result<Self> {
        match name {
            "paper-full" => Ok(Self::paper_full(base)),
            "smoke" => Ok(Self::smoke(base)),
            _ => Err(Error::Manifest(format!("unknown preset {name:?}; expected one of {PRESETS:?}"))),
        }
    }

    /// Every identity with a closed form, each checked by at least one
    /// oracle, most by two independent ones.
    pub fn paper_full(base: &NumericCfg) -> Self {
        let mut b = Builder { base, entries: Vec::new() };
        let a3_0 = SeriesSpec::A3 { s: 0 };
        b.quad(a3_0, 1e-8);
        b.add(a3_0, Method::Diagonal, 1_000_000, false, 1e-8);
        b.diag(a3_0, 100_000, 1e-8);
        b.raw(a3_0, 100, 1e-8);
        for s in 1..=20 {
            b.diag(SeriesSpec::A3 { s }, 10_000, 1e-6);
        }
        for n in 2..=5 {
            for s in 0..=5 {
                b.quad(SeriesSpec::An { n, s }, 1e-10);
            }
        }
        for (n, s) in [(2, 0), (4, 0), (5, 2), (6, 0), (6, 3)] {
            b.diag(SeriesSpec::An { n, s }, 10_000, 1e-8);
        }
        for k in 0..=10 {
            b.diag(SeriesSpec::AXl { k }, 10_000, 1e-6);
        }
        b.diag(SeriesSpec::S111, 10_000, 1e-6);
        b.raw(SeriesSpec::S111, 200, 1e-6);
        b.diag(SeriesSpec::LnSeries, 100_000, 1e-8);
        b.diag(SeriesSpec::OnSeries, 100_000, 1e-8);
        for v in HalfVariant::ALL {
            b.raw(SeriesSpec::HalfInt(v), 200, 1e-6);
            b.diag(SeriesSpec::HalfInt(v), 100_000, 1e-8);
        }
        b.add(SeriesSpec::HalfInt(HalfVariant::C), Method::Raw, 2000, false, 1e-3);
        for d in 1..=3 {
            b.diag(SeriesSpec::BaseT(d), 100_000, 1e-8);
        }
        b.raw(SeriesSpec::BaseT(2), 200, 1e-8);
        b.diag(SeriesSpec::EvenOddAux, 100_000, 1e-8);
        b.diag(SeriesSpec::OddSquares, 100_000, 1e-8);
        b.diag(SeriesSpec::BInter, 100_000, 1e-8);
        b.raw(SeriesSpec::BInter, 200, 1e-8);
        SuiteManifest { name: "paper-full".into(), entries: b.entries }
    }

    /// Six fast identities at cutoff `10^4`.
    pub fn smoke(base: &NumericCfg) -> Self {
        let mut b = Builder { base, entries: Vec::new() };
        b.quad(SeriesSpec::A3 { s: 0 }, 1e-8);
        b.diag(SeriesSpec::A3 { s: 2 }, 10_000, 1e-6);
        b.diag(SeriesSpec::AXl { k: 3 }, 10_000, 1e-6);
        b.diag(SeriesSpec::OnSeries, 10_000, 1e-8);
        b.diag(SeriesSpec::HalfInt(HalfVariant::A), 10_000, 1e-6);
        b.diag(SeriesSpec::BaseT(2), 10_000, 1e-8);
        SuiteManifest { name: "smoke".into(), entries: b.entries }
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::Manifest(format!("manifest {:?} is empty", self.name)));
        }
        for (i, e) in self.entries.iter().enumerate() {
            let ctx = |err: Error| Error::Manifest(format!("entry {i} ({}): {err}", e.spec));
            check_tolerance(e.tol).map_err(ctx)?;
            e.cfg.validate().map_err(ctx)?;
            e.spec.validate().map_err(ctx)?;
            if !e.spec.has_closed_form() {
                return Err(ctx(Error::Unsupported { method: "verify".into(), spec: e.spec.to_string() }));
            }
        }
        Ok(())
    }
}

/// Verifies every entry; reports come back in manifest order.
pub fn run_suite(manifest: &SuiteManifest, parallel: bool) -> Result<SuiteOutcome> {
    manifest.validate()?;
    let run = |e: &SuiteEntry| verify(&e.spec, &e.cfg, e.tol);
    let reports: Result<Vec<EvalReport>> = if parallel {
        manifest.entries.par_iter().map(run).collect()
    } else {
        manifest.entries.iter().map(run).collect()
    };
    Ok(SuiteOutcome { reports: reports? })
}
