use std::path::PathBuf;
use std::process::{Command, Output};

use zetasum_core::Ball;

fn zetasum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetasum"))
        .args(args)
        .env_remove("ZETASUM_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// The `value` line of an estimate, parsed back into a ball.
fn value_of(text: &str) -> Ball {
    let line = text.lines().find(|l| l.starts_with("value")).expect("value line");
    let rest = line["value".len()..].trim();
    let (mid, rad) = rest.split_once(" ± ").expect("m ± r");
    Ball::from_decimal(mid).unwrap().widen(rad.parse().unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zetasum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn zero_table_lifecycle() {
    let path = scratch("z1000.txt");
    let p = path.to_str().unwrap();
    let found = stdout(&zetasum(&["zeros", "find", "--t-max", "1000", "--out", p]));
    assert!(found.starts_with("649 zeros\n"), "{found}");

    let imported = stdout(&zetasum(&["zeros", "import", "--in", p]));
    assert!(imported.contains("649 zeros"));
    assert!(imported.contains("first       14.1347251"), "{imported}");
    let info = stdout(&zetasum(&["zeros", "info", "--in", p]));
    assert!(info.contains("height_max  1000\n"), "{info}");

    let est = stdout(&zetasum(&[
        "estimate", "--phi", "builtin:inv_power:2", "--method", "theorem1", "--n", "649", "--zeros", p,
    ]));
    let v = value_of(&est);
    assert!(v.overlaps(&Ball::from_decimal("0.0231049931154189707889338104").unwrap()), "{est}");
    assert!(v.rad() <= 1.1e-8);
}

#[test]
fn nothing_below_the_first_zero() {
    let out = stdout(&zetasum(&["zeros", "find", "--t-max", "10"]));
    assert!(out.starts_with("0 zeros\n"), "{out}");
}

#[test]
fn increasing_weight_is_rejected() {
    let out = zetasum(&["estimate", "--phi", "t", "--n", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("phifunc: make_phi"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn wrong_method_is_reported() {
    let out = zetasum(&["estimate", "--phi", "builtin:inv_t", "--method", "theorem1", "--n", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("estimator: convergent_total"));
}

#[test]
fn compare_bounds_example() {
    let out = stdout(&zetasum(&["compare-bounds", "--phi", "builtin:inv_power:2", "--T", "1000"]));
    assert!(out.contains("Lehman bound   4.009e-6"), "{out}");
    assert!(out.contains("ratio          402.29"), "{out}");
}

#[test]
fn table1_first_row_and_csv() {
    let csv = scratch("table1.csv");
    let out = stdout(&zetasum(&["table1", "--max-n", "10", "--csv", csv.to_str().unwrap()]));
    assert!(out.contains("-0.49986259   -0.52733908"), "{out}");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n,T,naive,accelerated,bound\n10,"), "{text}");
    assert!(text.trim_end().ends_with(",1.96e-2"), "{text}");
}

#[test]
fn constant_h_small_run() {
    let out = stdout(&zetasum(&["constants", "H", "--n", "100"]));
    let v = value_of(&out);
    assert!(v.overlaps(&Ball::from_decimal("-0.0171594043070981495").unwrap()), "{out}");
}

#[test]
fn certified_output_is_deterministic() {
    let args = ["estimate", "--phi", "1/(t^2 + 1)", "--method", "theorem1", "--n", "50"];
    let a = stdout(&zetasum(&args));
    let b = stdout(&zetasum(&args));
    assert_eq!(a, b);
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_zetasum"))
        .args(["compare-bounds", "--phi", "builtin:inv_square", "--T", "1000"])
        .env("ZETASUM_PRECISION_BITS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cli: configure"));

    let out = Command::new(env!("CARGO_BIN_EXE_zetasum"))
        .args(["compare-bounds", "--phi", "builtin:inv_square", "--T", "1000"])
        .env("ZETASUM_PRECISION_BITS", "256")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn fast_mode_is_labelled() {
    let out = stdout(&zetasum(&["--mode", "fast", "zeros", "find", "--t-max", "100"]));
    assert!(out.starts_with("29 zeros\n"));
    assert!(out.contains("not certified"));
}
