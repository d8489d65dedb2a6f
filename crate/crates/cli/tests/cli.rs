use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orlicz-approx"))
}

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn norm_of_single_harmonic_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "f.json", r#"{"coeffs": [[1, 1.0, 0.0]]}"#);
    let out = run(&["norm", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    let row = &v["rows"][0];
    for key in ["luxemburg", "orlicz", "ratio"] {
        assert!((row[key].as_f64().unwrap() - 1.0).abs() < 1e-12, "{key}: {row}");
    }
}

#[test]
fn en_table_of_fifth_harmonic() {
    let input = corpus("harmonic5.json");
    let out = run(&["en-table", "--input", input.to_str().unwrap(), "--n", "1..8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,best_approximation"));
    let values: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values, vec![1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
}

#[test]
fn modulus_and_kfunc_tables_have_one_row_per_increment() {
    let input = corpus("mixed.json");
    let space = corpus("space_variable.json");
    for command in ["modulus", "kfunc"] {
        let out = run(&[
            command,
            "--input",
            input.to_str().unwrap(),
            "--space",
            space.to_str().unwrap(),
            "--delta",
            "0.1..0.5:4",
            "--alpha",
            "1.5",
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert!((rows[0]["delta"].as_f64().unwrap() - 0.1).abs() < 1e-15);
        assert!((rows[3]["delta"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    }
}

#[test]
fn kfunc_matches_closed_form_for_harmonic() {
    let input = corpus("harmonic5.json");
    let out = run(&["kfunc", "--input", input.to_str().unwrap(), "--delta", "0.05..0.5:3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let expected = (5.0 * cols[0]).min(1.0);
        assert!((cols[1] - expected).abs() < 1e-8, "{line}");
    }
}

#[test]
fn samples_are_accepted_as_input() {
    let input = corpus("samples_mixed.json");
    let out = run(&["norm", "--input", input.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out).lines().nth(1).unwrap().to_owned();
    let lux: f64 = line.split(',').next().unwrap().parse().unwrap();
    assert!((lux - 0.75f64.sqrt()).abs() < 1e-10, "{line}");
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("table.csv");
    let input = corpus("harmonic5.json");
    let out = run(&[
        "en-table",
        "--input",
        input.to_str().unwrap(),
        "--n",
        "4..6",
        "--format",
        "csv",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(target).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn missing_file_is_an_io_error() {
    let out = run(&["norm", "--input", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not/here.json"));
}

#[test]
fn malformed_file_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "bad.json", "{\n  \"coeffs\": [[1, 1.0]]\n}");
    let out = run(&["norm", "--input", &input]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("bad.json"), "{err}");
    assert!(err.contains("coeffs"), "{err}");

    let broken = write(&dir, "broken.json", "{\n  \"coeffs\": [[1, 1.0, 0.0]\n");
    let out = run(&["norm", "--input", &broken]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("broken.json:"), "{err}");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["norm"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    let input = corpus("harmonic5.json");
    let input = input.to_str().unwrap();
    assert_eq!(run(&["en-table", "--input", input, "--n", "5..2"]).status.code(), Some(2));
    assert_eq!(run(&["modulus", "--input", input, "--alpha", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["report", "--input", input, "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn invalid_thread_count_is_rejected() {
    let input = corpus("harmonic5.json");
    let out = bin()
        .args(["norm", "--input", input.to_str().unwrap()])
        .env("ORLICZ_APPROX_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_csv_lists_every_verdict() {
    let out = run(&["verify", "--seed", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("name,lhs,rhs,margin,passed\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn report_bundles_every_table() {
    let input = corpus("mixed.json");
    let out = bin()
        .args(["report", "--input", input.to_str().unwrap(), "--n", "1..3", "--delta", "0.2..1:2"])
        .env("ORLICZ_APPROX_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "report");
    assert_eq!(v["en_table"].as_array().unwrap().len(), 3);
    assert_eq!(v["kfunc"].as_array().unwrap().len(), 2);
    assert_eq!(v["modulus"].as_array().unwrap().len(), 2);
    assert_eq!(v["norm"].as_array().unwrap().len(), 1);
    let total = v["summary"]["total"].as_u64().unwrap();
    assert_eq!(v["verdicts"].as_array().unwrap().len() as u64, total);
    assert!(v["verdicts"].as_array().unwrap().iter().any(|x| x["name"].as_str().unwrap().starts_with("input/")));
}
