//! End-to-end tests of the command-line interface: CSV schemas, exit
//! codes, and the figure endpoints.

use std::process::{Command, Output};

fn apsidal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apsidal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn table_emits_expected_grid() {
    let out = apsidal(&["table", "--max-n", "8", "--e", "0,0.3,0.9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,e,C");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 27);
    // Every n = 2 row is 2π regardless of e; the n = 0 rows vanish.
    for row in &rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 3);
        let n: u32 = fields[0].parse().unwrap();
        let value: f64 = fields[2].parse().unwrap();
        if n == 0 {
            assert_eq!(value, 0.0);
        }
        if n == 2 {
            assert!((value - std::f64::consts::TAU).abs() < 1e-14);
        }
    }
}

#[test]
fn table_output_is_deterministic() {
    let a = apsidal(&["table", "--max-n", "6", "--e", "0.1,0.9"]);
    let b = apsidal(&["table", "--max-n", "6", "--e", "0.1,0.9"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn run_emits_trajectory_csv() {
    let out = apsidal(&[
        "run",
        "--algorithm",
        "VV",
        "--steps",
        "10000",
        "--sample-every",
        "10",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,qx,qy,px,py,E,L,lrl_angle,h0_dev");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 1001);
    let first: Vec<f64> = rows[0].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
    assert_eq!(first[7], 0.0); // lrl_angle starts at zero
    let last: Vec<f64> = rows[1000].split(',').map(|v| v.parse().unwrap()).collect();
    // Final sample sits at t = P = 2π a^{3/2} of the reference orbit.
    let period = std::f64::consts::TAU * (1.0f64 / 0.19).powf(1.5);
    assert!((last[0] - period).abs() < 1e-9 * period);
    // Angular momentum is conserved exactly by kick/drift stages.
    assert!((last[6] - 1.0).abs() < 1e-13);
}

#[test]
fn run_rejects_unknown_algorithm_with_exit_2() {
    let out = apsidal(&["run", "--algorithm", "XX"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_rejects_too_few_steps_with_exit_2() {
    let out = apsidal(&["run", "--algorithm", "VV", "--steps", "50"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_reports_singularity_with_exit_3() {
    let out = apsidal(&[
        "run",
        "--algorithm",
        "VV",
        "--steps",
        "200",
        "--qx",
        "5e-9",
        "--qy",
        "0",
        "--px",
        "0",
        "--py",
        "1e-4",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("step"), "stderr should name the step: {err}");
}

#[test]
fn predict_prints_expected_totals() {
    let out = apsidal(&["predict", "--algorithm", "C", "--e", "0.9", "--p", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let scaled: f64 = extract(&text, "scaled total");
    assert!((scaled - 0.003570).abs() < 1e-5, "C scaled total {scaled}");

    let out = apsidal(&["predict", "--algorithm", "FR", "--e", "0.9", "--p", "1"]);
    let scaled: f64 = extract(&stdout(&out), "scaled total");
    assert!((scaled + 10.8987).abs() < 2e-4, "FR scaled total {scaled}");

    // Equal pair coefficients: the second-order prediction vanishes.
    let out = apsidal(&["predict", "--algorithm", "TI"]);
    let scaled: f64 = extract(&stdout(&out), "scaled total");
    assert_eq!(scaled, 0.0);
}

fn extract(text: &str, key: &str) -> f64 {
    text.lines()
        .find(|l| l.starts_with(key))
        .unwrap_or_else(|| panic!("missing `{key}` in:\n{text}"))
        .rsplit(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn verify_passes_for_vv_and_c() {
    let out = apsidal(&["verify", "--algorithm", "VV", "--steps", "4000"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("PASS"));

    let out = apsidal(&["verify", "--algorithm", "C", "--steps", "10000"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn verify_out_of_regime_communicates_through_exit_code() {
    // At 100 steps per period the step size is far outside the asymptotic
    // regime: the measurement misses the prediction and the command says
    // so through exit code 4.
    let out = apsidal(&["verify", "--algorithm", "FR", "--steps", "100"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).starts_with("FAIL"));
}

#[test]
fn figure_one_endpoints_match_theory() {
    let out = apsidal(&["figure", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "t_over_P,series_name,value");
    for series in ["I", "II"] {
        let last = text
            .lines()
            .filter(|l| l.split(',').nth(1) == Some(series))
            .next_back()
            .unwrap();
        let fields: Vec<&str> = last.split(',').collect();
        let t_over_p: f64 = fields[0].parse().unwrap();
        let value: f64 = fields[2].parse().unwrap();
        assert!((t_over_p - 1.0).abs() < 1e-12);
        assert!(
            (value + 45.333).abs() < 0.01,
            "{series} endpoint {value} should be near -45.333"
        );
    }
}

#[test]
fn figure_three_vv_endpoint() {
    let out = apsidal(&["figure", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let last_vv = text
        .lines()
        .filter(|l| l.split(',').nth(1) == Some("VV"))
        .next_back()
        .unwrap();
    let value: f64 = last_vv.split(',').nth(2).unwrap().parse().unwrap();
    assert!((value + 1.8888).abs() < 1e-3, "VV endpoint {value}");
}

#[test]
fn figure_rejects_out_of_range_number() {
    let out = apsidal(&["figure", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn figure_five_emits_energy_series() {
    // A malformed steps value is a usage error.
    let out = apsidal(&["figure", "5", "--steps", "not-a-number"]);
    assert_eq!(out.status.code(), Some(2));

    let out = apsidal(&["figure", "5", "--steps", "2000"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for series in ["C", "CPRIME", "4S"] {
        let first = text
            .lines()
            .find(|l| l.split(',').nth(1) == Some(series))
            .unwrap();
        let value: f64 = first.split(',').nth(2).unwrap().parse().unwrap();
        assert_eq!(value, 0.0, "energy series {series} starts at zero");
    }
}

#[test]
fn run_writes_file_when_out_given() {
    let dir = std::env::temp_dir().join("apsidal-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("vv.csv");
    let out = apsidal(&[
        "run",
        "--algorithm",
        "VV",
        "--steps",
        "500",
        "--sample-every",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    assert_eq!(contents.lines().count(), 7); // header + 6 samples
    std::fs::remove_file(&path).unwrap();
}
