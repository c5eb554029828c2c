//! Identifiers for the series families, with a compact text syntax such as
//! `A3:s=2`, `An:n=4,s=0`, `halfint:c` or `tornheim:a=2,b=1,c=1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HalfVariant {
    A,
    B,
    C,
}

impl HalfVariant {
    pub const ALL: [HalfVariant; 3] = [HalfVariant::A, HalfVariant::B, HalfVariant::C];

    fn letter(self) -> char {
        match self {
            HalfVariant::A => 'a',
            HalfVariant::B => 'b',
            HalfVariant::C => 'c',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesSpec {
    /// `sum_{n,m>=1} H_{n+m+s} / (n m (n+m+s))`.
    A3 { s: u32 },
    /// The `(n-1)`-fold analogue of `A3`.
    An { n: u32, s: u32 },
    /// `sum_{m>=1} H_{m+k} / (m (m+k))`.
    AXl { k: u32 },
    /// `sum_{m>=1} (2 H_{2m+1} - H_m) / (2m (2m+1))`.
    LnSeries,
    /// `sum_{m>=1} O_m / (2m (2m+1))`.
    OnSeries,
    /// Double series over half-integer shifts `m + 1/2`, `n + 1/2`.
    HalfInt(HalfVariant),
    /// `sum_{m,n>=0} 1 / ((2m+1)(2n+1)(2m+2n+d))` for `d = 1, 2, 3`.
    BaseT(u32),
    /// `sum_{m,n>=1} 1 / (m n (m+n))`.
    S111,
    /// `sum_{m>=1} 1 / (2m (2m+1))`.
    EvenOddAux,
    /// `sum_{k>=0} 1 / (2k+1)^2`.
    OddSquares,
    /// `sum_{m,n>=1} 1 / (m^a n^b (m+n)^c)`; numerical only.
    TornheimRaw { a: u32, b: u32, c: u32 },
    /// `sum_{m,n>=1} 1 / ((2m+1)(2n+1)(2m+2n+1))`.
    BInter,
}

/// Parameter-free family tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesKind {
    A3,
    An,
    AXl,
    LnSeries,
    OnSeries,
    HalfInt,
    BaseT,
    S111,
    EvenOddAux,
    OddSquares,
    TornheimRaw,
    BInter,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 12] = [
        SeriesKind::A3,
        SeriesKind::An,
        SeriesKind::AXl,
        SeriesKind::LnSeries,
        SeriesKind::OnSeries,
        SeriesKind::HalfInt,
        SeriesKind::BaseT,
        SeriesKind::S111,
        SeriesKind::EvenOddAux,
        SeriesKind::OddSquares,
        SeriesKind::TornheimRaw,
        SeriesKind::BInter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::A3 => "A3",
            SeriesKind::An => "An",
            SeriesKind::AXl => "aXL",
            SeriesKind::LnSeries => "ln",
            SeriesKind::OnSeries => "on",
            SeriesKind::HalfInt => "halfint",
            SeriesKind::BaseT => "baseT",
            SeriesKind::S111 => "S111",
            SeriesKind::EvenOddAux => "evenodd",
            SeriesKind::OddSquares => "oddsq",
            SeriesKind::TornheimRaw => "tornheim",
            SeriesKind::BInter => "binter",
        }
    }
}

impl SeriesSpec {
    pub fn kind(&self) -> SeriesKind {
        match self {
            SeriesSpec::A3 { .. } => SeriesKind::A3,
            SeriesSpec::An { .. } => SeriesKind::An,
            SeriesSpec::AXl { .. } => SeriesKind::AXl,
            SeriesSpec::LnSeries => SeriesKind::LnSeries,
            SeriesSpec::OnSeries => SeriesKind::OnSeries,
            SeriesSpec::HalfInt(_) => SeriesKind::HalfInt,
            SeriesSpec::BaseT(_) => SeriesKind::BaseT,
            SeriesSpec::S111 => SeriesKind::S111,
            SeriesSpec::EvenOddAux => SeriesKind::EvenOddAux,
            SeriesSpec::OddSquares => SeriesKind::OddSquares,
            SeriesSpec::TornheimRaw { .. } => SeriesKind::TornheimRaw,
            SeriesSpec::BInter => SeriesKind::BInter,
        }
    }

    pub fn name(&self) -> &'static str {
        self.kind().name()
    }

    /// Parameter text after the colon, empty for parameterless families.
    pub fn params(&self) -> String {
        match *self {
            SeriesSpec::A3 { s } => format!("s={s}"),
            SeriesSpec::An { n, s } => format!("n={n},s={s}"),
            SeriesSpec::AXl { k } => format!("k={k}"),
            SeriesSpec::HalfInt(v) => v.letter().to_string(),
            SeriesSpec::BaseT(j) => j.to_string(),
            SeriesSpec::TornheimRaw { a, b, c } => format!("a={a},b={b},c={c}"),
            _ => String::new(),
        }
    }

    /// Checks the parameter ranges, including convergence of Tornheim
    /// series.
    pub fn validate(&self) -> Result<()> {
        match *self {
            SeriesSpec::An { n, .. } if n < 2 => Err(Error::Domain(format!("An needs n >= 2, got n={n}"))),
            SeriesSpec::BaseT(j) if !(1..=3).contains(&j) => {
                Err(Error::Domain(format!("baseT index must be 1, 2 or 3, got {j}")))
            }
            SeriesSpec::TornheimRaw { a, b, c } => {
                let ok = a >= 1
                    && b >= 1
                    && c >= 1
                    && a + c >= 2
                    && b + c >= 2
                    && (a + b + c >= 4 || (a, b, c) == (1, 1, 1));
                if ok {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("tornheim:a={a},b={b},c={c} is outside the convergence region")))
                }
            }
            _ => Ok(()),
        }
    }

    pub fn has_closed_form(&self) -> bool {
        !matches!(self, SeriesSpec::TornheimRaw { .. })
    }

    /// Number of summation indices in the defining series.
    pub fn dimension(&self) -> u32 {
        match *self {
            SeriesSpec::An { n, .. } => n - 1,
            SeriesSpec::A3 { .. }
            | SeriesSpec::HalfInt(_)
            | SeriesSpec::BaseT(_)
            | SeriesSpec::S111
            | SeriesSpec::TornheimRaw { .. }
            | SeriesSpec::BInter => 2,
            _ => 1,
        }
    }

    /// Smallest value of each summation index.
    pub fn index_start(&self) -> u64 {
        match self {
            SeriesSpec::HalfInt(_) | SeriesSpec::BaseT(_) | SeriesSpec::OddSquares => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params();
        if p.is_empty() {
            write!(f, "{}", self.name())
        } else {
            write!(f, "{}:{}", self.name(), p)
        }
    }
}

fn keyed(input: &str, params: &str, keys: &[&str]) -> Result<Vec<u32>> {
    let bad = |reason: String| Error::Parse { input: input.to_string(), reason };
    let mut out = vec![None; keys.len()];
    for part in params.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| bad(format!("expected key=value, got `{part}`")))?;
        let idx = keys
            .iter()
            .position(|key| key.eq_ignore_ascii_case(k.trim()))
            .ok_or_else(|| bad(format!("unknown parameter `{}`", k.trim())))?;
        let v: u32 = v.trim().parse().map_err(|_| bad(format!("`{}` is not a non-negative integer", v.trim())))?;
        if out[idx].replace(v).is_some() {
            return Err(bad(format!("parameter `{}` given twice", keys[idx])));
        }
    }
    keys.iter().zip(out).map(|(k, v)| v.ok_or_else(|| bad(format!("missing parameter `{k}`")))).collect()
}

impl FromStr for SeriesSpec {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s = input.trim();
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (s, None),
        };
        let bad = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let need = || params.ok_or_else(|| bad("missing parameters"));
        let none = || if params.is_some() { Err(bad("takes no parameters")) } else { Ok(()) };
        let spec = match name.to_ascii_lowercase().as_str() {
            "a3" => SeriesSpec::A3 { s: keyed(input, need()?, &["s"])?[0] },
            "an" => {
                let v = keyed(input, need()?, &["n", "s"])?;
                SeriesSpec::An { n: v[0], s: v[1] }
            }
            "axl" => SeriesSpec::AXl { k: keyed(input, need()?, &["k"])?[0] },
            "ln" => none().map(|_| SeriesSpec::LnSeries)?,
            "on" => none().map(|_| SeriesSpec::OnSeries)?,
            "halfint" => match need()?.to_ascii_lowercase().as_str() {
                "a" => SeriesSpec::HalfInt(HalfVariant::A),
                "b" => SeriesSpec::HalfInt(HalfVariant::B),
                "c" => SeriesSpec::HalfInt(HalfVariant::C),
                _ => return Err(bad("halfint variant must be a, b or c")),
            },
            "baset" => SeriesSpec::BaseT(need()?.parse().map_err(|_| bad("baseT index must be 1, 2 or 3"))?),
            "s111" => none().map(|_| SeriesSpec::S111)?,
            "evenodd" => none().map(|_| SeriesSpec::EvenOddAux)?,
            "oddsq" => none().map(|_| SeriesSpec::OddSquares)?,
            "binter" => none().map(|_| SeriesSpec::BInter)?,
            "tornheim" => {
                let v = keyed(input, need()?, &["a", "b", "c"])?;
                SeriesSpec::TornheimRaw { a: v[0], b: v[1], c: v[2] }
            }
            _ => return Err(bad("unknown series family")),
        };
        spec.validate()?;
        Ok(spec)
    }
}
