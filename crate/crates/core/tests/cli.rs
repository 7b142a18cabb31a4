use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degenerate-seidel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn matrix_json_for_bell_numbers() {
    let out = bin(&[
        "matrix",
        "--seq",
        "bell",
        "--rows",
        "3",
        "--mode",
        "degenerate",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["mode"], "degenerate");
    let entry = json["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["n"] == 1 && e["k"] == 1)
        .unwrap();
    assert_eq!(entry["poly"], "3 - l");
}

#[test]
fn matrix_text_for_fubini_numbers() {
    let out = bin(&["matrix", "--seq", "fubini", "--rows", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("a_{0,2} = 6 - 6*l + 2*l^2"));
}

#[test]
fn classical_all_ones_gives_powers_of_two() {
    let out = bin(&[
        "matrix",
        "--initial",
        "1,1,1",
        "--mode",
        "classical",
        "--rows",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("final sequence: 1, 2, 4\n"));
}

#[test]
fn too_few_initial_terms_is_a_usage_error() {
    let out = bin(&["matrix", "--initial", "1,x - l", "--rows", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("insufficient initial terms"));
}

#[test]
fn evaluated_matrix_csv() {
    let out = bin(&[
        "matrix", "--seq", "bell", "--rows", "3", "--format", "csv", "--lambda", "1/2",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,k,value"));
    assert!(text.contains("\n1,1,5/2\n"));

    let symbolic = stdout(&bin(&[
        "matrix",
        "--seq",
        "bell-poly",
        "--rows",
        "2",
        "--format",
        "csv",
    ]));
    assert!(symbolic.starts_with("n,k,poly\n"));
}

#[test]
fn seq_output_formats() {
    assert_eq!(stdout(&bin(&["seq", "bell", "--n", "2"])), "1, 1, 2 - l\n");
    assert_eq!(
        stdout(&bin(&["seq", "fubini", "--n", "4", "--lambda", "0"])),
        "1, 1, 3, 13, 75\n"
    );
    let json: serde_json::Value = serde_json::from_str(&stdout(&bin(&[
        "seq",
        "bell-poly",
        "--n",
        "2",
        "--format",
        "json",
    ])))
    .unwrap();
    assert_eq!(json["sequence"], "bell-poly");
    assert_eq!(json["terms"][2], "x^2 + x - l*x");
}

#[test]
fn check_reports_expected_discrepancy() {
    let out = bin(&["check", "--id", "thm_2_10_a_as_printed", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let report = &json[0];
    assert_eq!(report["status"], "expected-discrepancy");
    assert_eq!(report["first_failure"]["n"], 1);
}

#[test]
fn check_single_identity_passes() {
    let out = bin(&[
        "check",
        "--id",
        "thm_2_5_a",
        "--nmax",
        "6",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("check_id,range,status,n,k_or_l,residual\n"));
    assert!(text.contains("thm_2_5_a,"));
    assert!(text.contains(",pass,"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bin(&["check", "--id", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        bin(&["check", "--all", "--nmax", "65"]).status.code(),
        Some(2)
    );
    assert_eq!(bin(&["seq", "catalan", "--n", "3"]).status.code(), Some(2));
    assert_eq!(bin(&["matrix", "--initial", "1,x^"]).status.code(), Some(2));
    assert_eq!(bin(&[]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("degenerate-seidel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bell.json");
    let out = bin(&[
        "seq",
        "bell",
        "--n",
        "3",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        written,
        "{\"sequence\":\"bell\",\"terms\":[\"1\",\"1\",\"2 - l\",\"5 - 6*l + 2*l^2\"]}\n"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
