mod common;

use common::*;
use tornzeta::harness::{SuiteEntry, SuiteManifest};
use tornzeta::numeric::consts::const_zeta;
use tornzeta::{emit, run_suite, verify, Format, HalfVariant, Method, NumericCfg, SeriesKind, SeriesSpec};

fn base() -> NumericCfg {
    NumericCfg::default()
}

#[test]
fn verify_examples() {
    let r = verify(&SeriesSpec::OnSeries, &base(), 1e-8).unwrap();
    assert!(r.pass);
    assert!(abs_diff(&r.closed_numeric, ON_SERIES) < 1e-33);

    let c = base().with_n_max(10_000);
    let r = verify(&SeriesSpec::A3 { s: 1 }, &c, 1e-6).unwrap();
    assert!(r.pass);
    assert_eq!(r.closed_form.to_string(), "6");

    let c = base().with_method(Method::Raw).with_n_max(2000).with_accelerate(false);
    let r = verify(&SeriesSpec::HalfInt(HalfVariant::C), &c, 1e-3).unwrap();
    assert!(r.pass);
    assert!(abs_diff(&r.closed_numeric, HALFINT_C) < 1e-32);
}

#[test]
fn pass_rule_uses_tail_bound() {
    let c = base().with_n_max(1000).with_accelerate(false);
    let r = verify(&SeriesSpec::A3 { s: 0 }, &c, 1e-12).unwrap();
    let o = r.oracle.as_ref().unwrap();
    let err = r.abs_err.clone().unwrap();
    assert!(err.to_f64() > 1e-12);
    assert!(r.pass);
    assert_eq!(r.threshold().unwrap(), o.allowance().unwrap());
    let rel = r.rel_err.clone().unwrap();
    assert!((rel.to_f64() - err.to_f64() / r.closed_numeric.to_f64()).abs() < 1e-12);
}

#[test]
fn oracle_failure_is_a_failing_report() {
    let c = NumericCfg { quad_levels: 3, ..base().with_method(Method::Quadrature) };
    let r = verify(&SeriesSpec::An { n: 5, s: 5 }, &c, 1e-10).unwrap();
    assert!(!r.pass);
    assert!(r.oracle.is_none());
    assert!(r.reason.is_some());
}

#[test]
fn invalid_input_is_rejected() {
    assert!(verify(&SeriesSpec::S111, &base(), 0.0).is_err());
    assert!(verify(&SeriesSpec::S111, &base(), f64::NAN).is_err());
    assert!(verify(&SeriesSpec::TornheimRaw { a: 1, b: 1, c: 2 }, &base(), 1e-8).is_err());
}

#[test]
fn manifests_are_validated() {
    let empty = SuiteManifest { name: "empty".into(), entries: vec![] };
    assert!(run_suite(&empty, false).is_err());
    let zero_tol =
        SuiteManifest { name: "z".into(), entries: vec![SuiteEntry { spec: SeriesSpec::S111, cfg: base(), tol: 0.0 }] };
    assert!(run_suite(&zero_tol, false).is_err());
    let bad_cfg = SuiteManifest {
        name: "c".into(),
        entries: vec![SuiteEntry { spec: SeriesSpec::S111, cfg: base().with_n_max(3), tol: 1e-6 }],
    };
    assert!(run_suite(&bad_cfg, false).is_err());
    assert!(SuiteManifest::preset("nope", &base()).is_err());
}

#[test]
fn paper_full_covers_every_family() {
    let m = SuiteManifest::paper_full(&base());
    m.validate().unwrap();
    for kind in SeriesKind::ALL {
        if kind == SeriesKind::TornheimRaw {
            continue;
        }
        assert!(m.entries.iter().any(|e| e.spec.kind() == kind), "{kind:?} missing");
    }
    for v in HalfVariant::ALL {
        assert!(m.entries.iter().any(|e| e.spec == SeriesSpec::HalfInt(v)));
    }
    for j in 1..=3 {
        assert!(m.entries.iter().any(|e| e.spec == SeriesSpec::BaseT(j)));
    }
}

#[test]
fn smoke_suite_passes_in_order() {
    let m = SuiteManifest::smoke(&base());
    assert_eq!(m.entries.len(), 6);
    let out = run_suite(&m, true).unwrap();
    assert!(out.all_pass());
    let order: Vec<_> = out.reports.iter().map(|r| r.spec).collect();
    let want: Vec<_> = m.entries.iter().map(|e| e.spec).collect();
    assert_eq!(order, want);
}

#[test]
fn reports_are_deterministic() {
    for f in [Format::Json, Format::Csv, Format::Text] {
        let (a, b) = smoke_bytes(f);
        assert!(!a.is_empty());
        assert_eq!(a, b, "{f}");
    }
}

#[test]
fn json_schema() {
    let r = verify(&SeriesSpec::OnSeries, &base(), 1e-8).unwrap();
    let mut buf = Vec::new();
    emit(&[r], Format::Json, &mut buf).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
    let row = &v.as_array().unwrap()[0];
    let keys: Vec<&str> = row.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    for k in [
        "spec",
        "params",
        "closed_form_text",
        "closed_numeric",
        "oracle_value",
        "oracle_method",
        "n_used",
        "abs_err",
        "tail_bound",
        "pass",
    ] {
        assert!(keys.contains(&k), "{k}");
    }
    assert_eq!(row["pass"], serde_json::Value::Bool(true));
    assert_eq!(row["closed_form_text"], "1/4*z2");
    assert!(row["closed_numeric"].is_string());
}

#[test]
fn csv_header() {
    let r = verify(&SeriesSpec::A3 { s: 2 }, &base().with_n_max(1000), 1e-6).unwrap();
    let mut buf = Vec::new();
    emit(&[r], Format::Csv, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "spec,params,closed_form,closed_numeric,oracle_value,method,n_used,abs_err,tail_bound,pass"
    );
    let row = lines.next().unwrap();
    assert!(row.ends_with(",true"));
    assert!(lines.next().is_none());
}

#[test]
fn thirty_digit_rendering_of_zeta2() {
    let r = verify(&SeriesSpec::BaseT(1), &base().with_n_max(1000), 1e-3).unwrap();
    let mut buf = Vec::new();
    emit(&[r], Format::Json, &mut buf).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
    let z2 = const_zeta(2, 30).unwrap().to_decimal_string(30);
    assert_eq!(v[0]["closed_numeric"], z2.as_str());
    assert_eq!(z2, "1.64493406684822643647241516665");
}

#[test]
fn broken_sink_reports_context() {
    struct Broken;
    impl std::io::Write for Broken {
        fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
            Err(std::io::Error::other("disk full"))
        }
        fn flush(&mut self) -> std::io::Result<()> {
            Ok(())
        }
    }
    let r = verify(&SeriesSpec::OnSeries, &base().with_n_max(100), 1e-2).unwrap();
    for f in [Format::Text, Format::Json, Format::Csv] {
        let err = emit(std::slice::from_ref(&r), f, &mut Broken).unwrap_err();
        assert!(err.to_string().contains("writing"), "{err}");
    }
}
