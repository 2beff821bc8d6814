use std::process::{Command, Output};

use serde_json::Value;

fn wharm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wharm")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.ends_with('\n'));
    serde_json::from_str(&text).unwrap()
}

fn value(out: &Output) -> (f64, f64) {
    let v = json_of(out);
    (v["value"]["re"].as_f64().unwrap(), v["value"]["im"].as_f64().unwrap())
}

#[test]
fn eval_examples() {
    let out = wharm(&["eval", "kernel", "--alpha", "0", "--z", "0.5,0"]);
    assert!(out.status.success());
    let (re, im) = value(&out);
    assert!((re - 3.0).abs() < 1e-14 && im == 0.0);

    let (re, _) = value(&wharm(&["eval", "f-factor", "--alpha", "1", "--k", "1", "--x", "0.999"]));
    assert!((re - 0.5).abs() < 1e-3);

    let (re, im) = value(&wharm(&["eval", "p", "--alpha", "1", "--k", "1", "--z", "0,1"]));
    assert!(re.abs() < 1e-15 && (im + 1.0).abs() < 1e-15);
}

#[test]
fn negative_alpha_and_points_parse() {
    let out = wharm(&["eval", "kernel", "--alpha", "-1/2", "--z", "-0.3,-0.2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn exit_codes() {
    assert_eq!(wharm(&["eval", "kernel", "--alpha", "x", "--z", "0,0"]).status.code(), Some(2));
    assert_eq!(wharm(&["eval", "nope"]).status.code(), Some(2));
    assert_eq!(wharm(&["eval", "f-factor", "--alpha", "1", "--k", "1", "--x", "1.5"]).status.code(), Some(3));
    let out = wharm(&["--out", "/nonexistent-dir/out.json", "eval", "kernel", "--alpha", "0", "--z", "0,0"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_is_deterministic_and_clean() {
    let a = wharm(&["verify", "poly-kernel", "--seed", "7"]);
    let b = wharm(&["verify", "poly-kernel", "--seed", "7"]);
    assert!(a.status.success());
    assert!(a.stderr.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let report = json_of(&a);
    assert_eq!(report["failures"], 0);
    assert_eq!(report["seed"], 7);
    assert_eq!(report["suite"], "poly-kernel");
}

#[test]
fn verify_all_aggregates() {
    let out = wharm(&["verify", "all", "--tol", "1e-8", "--cases", "5"]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["suite"], "all");
    assert!(report["cases"].as_u64().unwrap() > 0);
    assert!(report["max_residual"].as_f64().unwrap() >= 0.0);
}

#[test]
fn verify_csv() {
    let out = wharm(&["--format", "csv", "verify", "zeros", "--cases", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("index,check,passed,residual\n"));
}

#[test]
fn foa_examples() {
    let out = wharm(&["foa", "construct", "--angles", "1/2,1/4,1/8"]);
    let etas: Vec<u64> = json_of(&out)["family"].as_array().unwrap().iter().map(|e| e["eta"].as_u64().unwrap()).collect();
    assert_eq!(etas, vec![1, 2, 4]);

    let out = wharm(&["foa", "check", "--family", r#"[{"angle":"1/2","eta":1}]"#]);
    assert_eq!(out.status.code(), Some(3));
    let report = json_of(&out);
    assert_eq!(report["admissible"], false);
    assert_eq!(report["witness"], 2);

    let out = wharm(&["foa", "construct", "--angles", "1/2,1/4,1/2"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["witness"], 3);
}

#[test]
fn foa_lower_bound_certificate() {
    let family = r#"[{"angle":"1/2","eta":1},{"angle":"1/3","eta":1},{"angle":"irr:s:1.4","eta":3}]"#;
    let out = wharm(&["foa", "lower-bound", "--family", family]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["leq"], true);
    assert_eq!(v["minimal"], true);
    let out = wharm(&["foa", "minimize", "--family", family]);
    assert_eq!(json_of(&out)["input_minimal"], false);
    let out = wharm(&["foa", "lower-bound", "--family", r#"[{"angle":"1/2","eta":1}]"#]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["witness"], 2);
}

#[test]
fn roots_and_certify() {
    let v = json_of(&wharm(&["roots", "--coeffs", "-1;0;1"]));
    let mut re: Vec<f64> = v["roots"].as_array().unwrap().iter().map(|z| z["re"].as_f64().unwrap()).collect();
    re.sort_by(f64::total_cmp);
    assert!((re[0] + 1.0).abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12);

    let v = json_of(&wharm(&["certify", "--alpha", "1/2", "--k", "4"]));
    assert_eq!(v["verdict"], "CircleFree_Inside");
    assert!(v.get("roots").is_none());
    let v = json_of(&wharm(&["certify", "--alpha", "0", "--k", "3"]));
    assert_eq!(v["verdict"], "Undecided");
    assert_eq!(v["roots"].as_array().unwrap().len(), 3);
}

fn csv_column(text: &str, column: usize) -> Vec<f64> {
    text.lines().skip(1).map(|l| l.split(',').nth(column).unwrap().parse().unwrap()).collect()
}

#[test]
fn trace_counterexample_geodesic_is_zero() {
    let out = wharm(&["trace", "--what", "geodesic", "--alpha", "0", "--coeffs", "0;1", "--center", "1", "--x", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("y,u_re,u_im,u_over_y_re,u_over_y_im\n"));
    assert!(csv_column(&text, 3).iter().all(|v| *v == 0.0));
}

#[test]
fn trace_zero_function() {
    let out = wharm(&["trace", "--what", "ray", "--alpha", "1/2", "--coeffs", "0", "--theta", "1/3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(csv_column(&text, 1).iter().chain(&csv_column(&text, 3)).all(|v| *v == 0.0));
}

#[test]
fn trace_ray_normalization_converges() {
    // Im(z³) along θ = 2π/7: u/t³ = sin(3θ).
    let out = wharm(&["trace", "--what", "ray", "--alpha", "0", "--coeffs", "0;0;1", "--theta", "2/7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let expected = (6.0 * std::f64::consts::PI / 7.0).sin();
    assert!((csv_column(&text, 3).last().unwrap() - expected).abs() < 1e-12);
}

#[test]
fn trace_writes_file() {
    let path = std::env::temp_dir().join(format!("wharm-trace-{}.csv", std::process::id()));
    let path_str = path.to_str().unwrap();
    let out = wharm(&["--out", path_str, "trace", "--what", "geodesic", "--alpha", "0", "--coeffs", "1", "--x", "0.5"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().count(), 26);
}

#[test]
fn recover_round_trip() {
    let v = json_of(&wharm(&["recover", "--alpha", "1", "--coeffs", "1;0,2;-3;0.5,0.5"]));
    assert!(v["max_coeff_error"].as_f64().unwrap() < 1e-6);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 4);
}
