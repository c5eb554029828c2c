mod bigfl;
pub mod consts;
pub mod elementary;
pub mod family;
pub mod oracle;
pub mod quad;
pub mod special;
pub mod sum;
pub mod tail;

pub use bigfl::{prec_for_digits, BigFl, GUARD_BITS};
pub use oracle::{
    oracle, oracle_diagonal, oracle_quadrature, oracle_raw, tail_estimate, Method, NumericCfg, OracleResult,
};
