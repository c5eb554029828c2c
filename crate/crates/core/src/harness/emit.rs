use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use super::EvalReport;
use crate::error::{Error, Result};
use crate::numeric::BigFl;

/// Significant digits of every number in emitted reports.
pub const REPORT_DIGITS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse { input: s.into(), reason: "expected text, json or csv".into() }),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

fn dec(x: &BigFl) -> String {
    x.to_decimal_string(REPORT_DIGITS)
}

#[derive(Serialize)]
struct JsonRow {
    spec: &'static str,
    params: String,
    closed_form_text: String,
    closed_numeric: String,
    oracle_value: Option<String>,
    oracle_method: Option<&'static str>,
    n_used: Option<u64>,
    abs_err: Option<String>,
    tail_bound: Option<String>,
    pass: bool,
}

impl JsonRow {
    fn new(r: &EvalReport) -> Self {
        let o = r.oracle.as_ref();
        JsonRow {
            spec: r.spec.name(),
            params: r.spec.params(),
            closed_form_text: r.closed_form.to_string(),
            closed_numeric: dec(&r.closed_numeric),
            oracle_value: o.map(|o| dec(&o.value)),
            oracle_method: o.map(|o| o.method.as_str()),
            n_used: o.and_then(|o| o.n_used),
            abs_err: r.abs_err.as_ref().map(dec),
            tail_bound: o.and_then(|o| o.tail_bound.as_ref()).map(dec),
            pass: r.pass,
        }
    }

    fn csv_record(&self) -> [String; 10] {
        let opt = |s: &Option<String>| s.clone().unwrap_or_default();
        [
            self.spec.to_string(),
            self.params.clone(),
            self.closed_form_text.clone(),
            self.closed_numeric.clone(),
            opt(&self.oracle_value),
            self.oracle_method.unwrap_or_default().to_string(),
            self.n_used.map(|n| n.to_string()).unwrap_or_default(),
            opt(&self.abs_err),
            opt(&self.tail_bound),
            self.pass.to_string(),
        ]
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "spec",
    "params",
    "closed_form",
    "closed_numeric",
    "oracle_value",
    "method",
    "n_used",
    "abs_err",
    "tail_bound",
    "pass",
];

fn io_err(context: &str) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { context: context.to_string(), source }
}

fn text_line(r: &EvalReport) -> String {
    let status = if r.pass { "PASS" } else { "FAIL" };
    let mut line = format!(
        "{status}  {:<24} {:<28} closed={}",
        r.spec.to_string(),
        r.closed_form.to_string(),
        dec(&r.closed_numeric)
    );
    if let Some(o) = &r.oracle {
        line.push_str(&format!(" oracle={} method={}", dec(&o.value), o.method));
        if let Some(n) = o.n_used {
            line.push_str(&format!(" n={n}"));
        }
        if let Some(l) = o.levels_used {
            line.push_str(&format!(" levels={l}"));
        }
    }
    if let Some(e) = &r.abs_err {
        line.push_str(&format!(" abs_err={}", e.to_decimal_string(3)));
    }
    if let Some(t) = r.threshold() {
        line.push_str(&format!(" allowed={}", t.to_decimal_string(3)));
    }
    if let Some(reason) = &r.reason {
        line.push_str(&format!(" ({reason})"));
    }
    line
}

/// Writes `reports` to `sink`. Output bytes depend only on the reports.
pub fn emit(reports: &[EvalReport], format: Format, sink: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => {
            for r in reports {
                writeln!(sink, "{}", text_line(r)).map_err(io_err("writing text report"))?;
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            writeln!(sink, "{passed}/{} passed", reports.len()).map_err(io_err("writing text report"))?;
        }
        Format::Json => {
            let rows: Vec<JsonRow> = reports.iter().map(JsonRow::new).collect();
            serde_json::to_writer_pretty(&mut *sink, &rows)
                .map_err(|e| Error::Io { context: "writing JSON report".into(), source: e.into() })?;
            writeln!(sink).map_err(io_err("writing JSON report"))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *sink);
            let csv_err = |e: csv::Error| Error::Io { context: "writing CSV report".into(), source: e.into() };
            w.write_record(CSV_HEADER).map_err(csv_err)?;
            for r in reports {
                w.write_record(JsonRow::new(r).csv_record()).map_err(csv_err)?;
            }
            w.flush().map_err(io_err("writing CSV report"))?;
        }
    }
    sink.flush().map_err(io_err("flushing report"))
}
