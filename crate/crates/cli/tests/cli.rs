use std::process::{Command, Output};

fn tornzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tornzeta")).args(args).env_remove("TORNZETA_DIGITS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_symbolic_and_numeric() {
    let o = tornzeta(&["eval", "A3:s=0"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("6*z4"), "{s}");
    assert!(s.contains("6.49393940226682914909602217925"), "{s}");

    let o = tornzeta(&["eval", "A3:s=0", "--pi"]);
    assert!(stdout(&o).contains("1/15*pi^4"));

    let o = tornzeta(&["eval", "halfint:c"]);
    assert!(stdout(&o).contains("24*z2 - 28*z3"));
}

#[test]
fn eval_rejects_oracle_only_and_bad_specs() {
    let o = tornzeta(&["eval", "tornheim:a=1,b=1,c=2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tornzeta(&["eval", "A7:s=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_methods() {
    let o = tornzeta(&["oracle", "An:n=2,s=0", "--method", "quadrature"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("2.40411380631918857079947632302"));

    let o = tornzeta(&["oracle", "tornheim:a=1,b=1,c=2", "--method", "raw", "--nmax", "100"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0.5411616168"), "{}", stdout(&o));

    let o = tornzeta(&["oracle", "S111", "--nmax", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = tornzeta(&["verify", "on", "--nmax", "10000"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS"));

    let o = tornzeta(&["verify", "A3:s=0", "--nmax", "1000", "--no-accel", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["pass"], true);
    assert_eq!(v[0]["n_used"], 1000);

    let o = tornzeta(&["verify", "An:n=5,s=5", "--method", "quadrature", "--levels", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));

    let o = tornzeta(&["verify", "on", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn smoke_suite_to_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let o = tornzeta(&["suite", "--preset", "smoke", "--format", "csv", "--out", a.to_str().unwrap()]);
    assert!(o.status.success());
    let o = tornzeta(&["suite", "--preset", "smoke", "--format", "csv", "--sequential", "--out", b.to_str().unwrap()]);
    assert!(o.status.success());
    let x = std::fs::read(&a).unwrap();
    assert_eq!(x, std::fs::read(&b).unwrap());
    let text = String::from_utf8(x).unwrap();
    assert!(
        text.starts_with("spec,params,closed_form,closed_numeric,oracle_value,method,n_used,abs_err,tail_bound,pass\n")
    );
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn paper_full_suite_exits_zero() {
    let o = tornzeta(&["suite", "--preset", "paper-full"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("83/83 passed"));
}

#[test]
fn suite_errors() {
    assert_eq!(tornzeta(&["suite", "--preset", "nope"]).status.code(), Some(2));
    let o = tornzeta(&["suite", "--preset", "smoke", "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent-dir/x.json"));
}

#[test]
fn constants_and_digits() {
    let o = tornzeta(&["constants", "--zeta", "3", "--digits", "40"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("3.141592653589793238462643383279502884197"), "{s}");
    assert!(s.contains("1.202056903159594285399738161511449990765"), "{s}");

    assert_eq!(tornzeta(&["constants", "--zeta", "1"]).status.code(), Some(2));
    assert_eq!(tornzeta(&["constants", "--digits", "20"]).status.code(), Some(2));
}

#[test]
fn digits_from_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_tornzeta")).args(["constants"]).env("TORNZETA_DIGITS", v).output().unwrap()
    };
    let o = run("35");
    assert!(o.status.success());
    assert!(stdout(&o).contains("pi    = 3.1415926535897932384626433832795029\n"), "{}", stdout(&o));
    assert_eq!(run("many").status.code(), Some(2));
    assert_eq!(run("12").status.code(), Some(2));
}

#[test]
fn bernoulli_numbers() {
    assert_eq!(stdout(&tornzeta(&["bernoulli", "4"])).trim(), "B_4 = -1/30");
    assert_eq!(stdout(&tornzeta(&["bernoulli", "7"])).trim(), "B_7 = 0");
    assert_eq!(stdout(&tornzeta(&["bernoulli", "12"])).trim(), "B_12 = -691/2730");
}
