//! Golden tests for the command-line interface: output bytes, JSON shapes,
//! and exit codes.

mod common;

use std::f64::consts::PI;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ppdf"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

#[test]
fn eval_phi_rows_round_trip_exactly() {
    let (code, stdout, _) = run(&["eval", "--func", r#"{"kind":"phi"}"#, "--points", "0:2:5"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "x,f");
    assert_eq!(lines.len(), 6);
    let phi = ppdf::funcs::make_phi().unwrap();
    for (k, line) in lines[1..].iter().enumerate() {
        let (xs, fs) = line.split_once(',').unwrap();
        let x: f64 = xs.parse().unwrap();
        let f: f64 = fs.parse().unwrap();
        assert_eq!(x, 0.5 * k as f64);
        // Shortest round-trip printing: the parsed value is the evaluation,
        // bit for bit.
        assert_eq!(f.to_bits(), phi.eval(x).to_bits(), "row {line}");
    }
    assert!(stdout.ends_with("\n2,0\n"), "support endpoint row: {stdout}");
}

#[test]
fn eval_gaussian_origin_golden_bytes() {
    let (code, stdout, _) =
        run(&["eval", "--func", r#"{"kind":"gaussian"}"#, "--points", "0:0:1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "x,f\n0,1\n");
}

#[test]
fn eval_quartic_hits_its_planted_double_zero() {
    // b = 1/6 with a = 0 places a double zero at x = sqrt(3/(4π)).
    let x = (3.0 / (4.0 * PI)).sqrt();
    let points = format!("{x}:{x}:1");
    let (code, stdout, _) = run(&[
        "eval",
        "--func",
        r#"{"kind":"hermite4","a":0.0,"b":0.16666666666666666}"#,
        "--points",
        &points,
    ]);
    assert_eq!(code, 0);
    let val: f64 = stdout.lines().nth(1).unwrap().split_once(',').unwrap().1.parse().unwrap();
    assert!(val.abs() < 1e-12, "value at the double zero: {val}");
}

#[test]
fn transform_triangle_vanishes_at_half_golden_bytes() {
    let (code, stdout, _) =
        run(&["transform", "--func", r#"{"kind":"triangle"}"#, "--xi", "0.5:0.5:1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "xi,fhat\n0.5,0\n");
}

#[test]
fn transform_gaussian_at_one_prints_e_to_minus_pi() {
    let (code, stdout, _) =
        run(&["transform", "--func", r#"{"kind":"gaussian"}"#, "--xi", "1:1:1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, format!("xi,fhat\n1,{}\n", (-PI).exp()));
}

#[test]
fn transform_bump_square_matches_bessel_closed_form() {
    let (code, stdout, _) = run(&[
        "transform",
        "--func",
        r#"{"kind":"m_alpha_sq","alpha":1.0}"#,
        "--xi",
        "1:1:1",
    ]);
    assert_eq!(code, 0);
    let got: f64 = stdout.lines().nth(1).unwrap().split_once(',').unwrap().1.parse().unwrap();
    let want = common::bump_power_hat(1, 1, 1.0).powi(2);
    assert!(((got - want) / want).abs() < 1e-9, "{got} vs {want}");
}

#[test]
fn zeros_report_shape_and_count() {
    let (code, stdout, _) = run(&[
        "zeros",
        "--func",
        r#"{"kind":"triangle"}"#,
        "--region",
        "-1.2,1.2,-1,1",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["total_count"], 8);
    let zeros = v["zeros"].as_array().unwrap();
    assert_eq!(zeros.len(), 4);
    for row in zeros {
        let row = row.as_array().unwrap();
        assert_eq!(row.len(), 4, "rows are [re, im, mult, class]");
        let re = row[0].as_f64().unwrap();
        assert!(
            (re.abs() - 0.5).abs() < 1e-9 || (re.abs() - 1.0).abs() < 1e-9,
            "unexpected zero at {re}"
        );
        assert_eq!(row[1].as_f64().unwrap(), 0.0);
        assert_eq!(row[2], 2);
        assert_eq!(row[3], "Real");
    }
}

#[test]
fn check_polya_rejects_the_gaussian_with_exit_1() {
    let (code, stdout, _) =
        run(&["check", "--criterion", "polya", "--func", r#"{"kind":"gaussian"}"#]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn check_posdef_accepts_the_triangle() {
    let (code, stdout, _) =
        run(&["check", "--criterion", "posdef", "--func", r#"{"kind":"triangle"}"#]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn certify_quartic_positional_shorthand() {
    let (code, stdout, _) = run(&["certify", "hermite4", "0", "0.16666666666666666"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["status"], "EXTREMAL");
}

#[test]
fn certify_mixture_not_extremal_with_exit_1() {
    let (code, stdout, _) = run(&[
        "certify",
        "--func",
        r#"{"kind":"mixture","inner":{"kind":"triangle"},"atoms":[[1.0,0.5],[3.0,0.5]]}"#,
    ]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["status"], "NOT_EXTREMAL");
}

#[test]
fn certify_pure_gaussian_is_extremal() {
    let (code, stdout, _) = run(&["certify", "--func", r#"{"kind":"gaussian"}"#]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["status"], "EXTREMAL");
}

#[test]
fn counterexample_reports_published_radius_and_planted_zeros() {
    let (code, stdout, _) = run(&["counterexample", "0.7853981633974483"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let r = v["r"].as_f64().unwrap();
    let x = v["x_zeta"].as_f64().unwrap();
    assert!((r - 3.342775).abs() < 5e-4, "r = {r}");
    assert!((x - 1.303).abs() < 5e-3, "x_zeta = {x}");
    let zeros = v["zero_report"]["zeros"].as_array().unwrap();
    let planted: Vec<&serde_json::Value> =
        zeros.iter().filter(|z| z[3] == "NonReal").collect();
    assert_eq!(planted.len(), 4);
    let rho = r / (2.0 * PI);
    for z in planted {
        let (re, im) = (z[0].as_f64().unwrap(), z[1].as_f64().unwrap());
        assert!((re.abs() - rho * (0.25 * PI).cos()).abs() < 1e-6);
        assert!((im.abs() - rho * (0.25 * PI).sin()).abs() < 1e-6);
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["transform", "--func", r#"{"kind":"triangle"}"#, "--xi", "0:3:7"],
        vec!["zeros", "--func", r#"{"kind":"wu"}"#, "--region", "-4,4,-2,2"],
        vec!["check", "--criterion", "gram", "--func", r#"{"kind":"gaussian"}"#, "--seed", "9"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn unknown_kind_is_a_usage_error() {
    let (code, _, stderr) =
        run(&["eval", "--func", r#"{"kind":"zigzag"}"#, "--points", "0:1:2"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&stderr).unwrap();
    assert!(v["error"].as_str().unwrap().contains("zigzag"));
}

#[test]
fn missing_source_is_a_usage_error() {
    let (code, _, stderr) = run(&["eval", "--points", "0:1:2"]);
    assert_eq!(code, 2);
    assert!(serde_json::from_str::<serde_json::Value>(&stderr).unwrap()["error"].is_string());
}

#[test]
fn conflicting_sources_are_a_usage_error() {
    let (code, _, stderr) = run(&[
        "eval",
        "--func",
        r#"{"kind":"phi"}"#,
        "--file",
        "does-not-matter.json",
        "--points",
        "0:1:2",
    ]);
    assert_eq!(code, 2);
    assert!(serde_json::from_str::<serde_json::Value>(&stderr).unwrap()["error"].is_string());
}

#[test]
fn malformed_range_is_a_usage_error() {
    let (code, _, stderr) =
        run(&["eval", "--func", r#"{"kind":"phi"}"#, "--points", "0:1"]);
    assert_eq!(code, 2);
    assert!(serde_json::from_str::<serde_json::Value>(&stderr).unwrap()["error"].is_string());
}

#[test]
fn out_of_domain_angle_is_a_usage_error() {
    let (code, _, stderr) = run(&["counterexample", "0"]);
    assert_eq!(code, 2);
    assert!(serde_json::from_str::<serde_json::Value>(&stderr).unwrap()["error"].is_string());
}

#[test]
fn descriptor_file_source() {
    let dir = std::env::temp_dir().join(format!("ppdf-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("phi.json");
    std::fs::write(&path, r#"{"kind":"phi"}"#).unwrap();
    let (code, stdout, _) =
        run(&["eval", "--file", path.to_str().unwrap(), "--points", "0:0:1"]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code, 0);
    assert_eq!(stdout, format!("x,f\n0,{}\n", ppdf::funcs::make_phi().unwrap().eval(0.0)));
}

#[test]
fn json_flag_emits_parseable_rows() {
    let (code, stdout, _) = run(&[
        "eval",
        "--func",
        r#"{"kind":"gaussian"}"#,
        "--points",
        "0:1:3",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["x"], 0.0);
    assert_eq!(rows[0]["f"], 1.0);
    assert_eq!(rows[2]["x"], 1.0);
    assert_eq!(rows[2]["f"].as_f64().unwrap().to_bits(), (-PI).exp().to_bits());
}

#[test]
fn help_prints_and_exits_zero() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["eval", "transform", "zeros", "check", "certify", "counterexample"] {
        assert!(stdout.contains(sub), "help misses {sub}");
    }
}
