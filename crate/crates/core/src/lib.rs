//! Closed forms of Tornheim-like double series, harmonic-number sums and
//! related zeta-value identities, with independent high-precision numerical
//! checks.

pub mod closed_form;
pub mod error;
pub mod exact;
pub mod field;
pub mod harness;
pub mod numeric;
pub mod spec;
pub mod zexpr;

pub use error::{Error, Result};
pub use harness::{emit, run_suite, verify, EvalReport, Format, SuiteManifest};
pub use numeric::{Method, NumericCfg, OracleResult};
pub use spec::{HalfVariant, SeriesKind, SeriesSpec};
pub use zexpr::{ConstSym, NormalMode, ZExpr};
