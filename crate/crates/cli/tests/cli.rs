//! End-to-end tests of the `latslice` binary: exit codes, output shapes,
//! config handling.

use std::process::{Command, Output};

fn latslice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latslice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect()
}

#[test]
fn count_family_example() {
    let out = latslice(&["count", "--family", "T_k", "--k", "10"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["count"], 22);
    assert_eq!(lines[0]["instance"], "T_k(n=3,k=10)");
    // summary footer closes the stream
    assert!(lines.last().unwrap().get("summary").is_some());
}

#[test]
fn check_meyer_holds_with_ratio() {
    let out = latslice(&[
        "check",
        "discrete_meyer",
        "--family",
        "K_h",
        "--n",
        "3",
        "--h",
        "1000",
    ]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["verdict"], "holds");
    let ratio: Vec<i64> = lines[0]["witnesses"]["section_ratio"]
        .as_str()
        .unwrap()
        .split('/')
        .map(|p| p.parse().unwrap())
        .collect();
    let approx = ratio[0] as f64 / ratio[1] as f64;
    assert!((approx - 9.0).abs() < 0.1, "ratio {approx}");
}

#[test]
fn usage_error_names_offending_field() {
    let out = latslice(&["check", "unconditional_dilate", "--family", "cube", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("field m"), "stderr: {err}");
}

#[test]
fn unknown_family_is_usage_error() {
    let out = latslice(&["count", "--family", "mystery"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mystery"));
}

#[test]
fn body_literals() {
    let out = latslice(&["count", "--body-vertices", "(1,0);(-1,0);(0,2);(0,-2)"]);
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out)[0]["count"], 7);
    let out = latslice(&["count", "--body-halfspaces", "(1,0|1);(-1,0|1);(0,1|1);(0,-1|1)"]);
    assert_eq!(stdout_lines(&out)[0]["count"], 9);
    let out = latslice(&["count", "--body-ball", "25", "--n", "2"]);
    assert_eq!(stdout_lines(&out)[0]["count"], 81);
    // unbounded H-form is rejected with a diagnostic
    let out = latslice(&["count", "--body-halfspaces", "(1,0|1)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unbounded"));
}

#[test]
fn section_scan_of_cube() {
    let out = latslice(&["section", "--family", "cube", "--n", "3", "--normal", "1,2,4"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["per_level"]["0"], 1);
    assert_eq!(lines[0]["per_level"]["1"], 3);
}

#[test]
fn failing_verdict_exits_two() {
    // a decreasing radius list makes the vol_approx deviation grow, which
    // the check must flag as a failure
    let out = latslice(&[
        "check",
        "vol_approx",
        "--family",
        "cross_h",
        "--n",
        "2",
        "--h",
        "9",
        "--r",
        "8,4,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["verdict"], "fails");
    assert!(lines[0]["flags"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f.as_str().unwrap().contains("decrease")));
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join("latslice-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("count.cfg");
    std::fs::write(&path, "command = count\nfamily = T_k\nk = 10\nn = 3\n").unwrap();
    let out = latslice(&["--config", path.to_str().unwrap(), "count", "--k", "3"]);
    assert!(out.status.success());
    // the flag wins over the file
    assert_eq!(stdout_lines(&out)[0]["count"], 8);
}

#[test]
fn malformed_config_exits_one() {
    let dir = std::env::temp_dir().join("latslice-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.cfg");
    std::fs::write(&path, "command = count\nbogus_field = 3\n").unwrap();
    let out = latslice(&["--config", path.to_str().unwrap(), "count"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus_field"));
}

#[test]
fn dump_config_roundtrip() {
    let dir = std::env::temp_dir().join("latslice-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.cfg");
    std::fs::write(
        &path,
        "command = sweep\ncheck_id = brunn\nfamily = slab\nn = 4\nk_range = 1..3\n",
    )
    .unwrap();
    let out = latslice(&["--config", path.to_str().unwrap(), "dump-config"]);
    assert!(out.status.success());
    let dumped = String::from_utf8_lossy(&out.stdout).to_string();
    // canonical form parses back to itself
    let path2 = dir.join("sweep2.cfg");
    std::fs::write(&path2, &dumped).unwrap();
    let out2 = latslice(&["--config", path2.to_str().unwrap(), "dump-config"]);
    assert_eq!(dumped, String::from_utf8_lossy(&out2.stdout));
    assert!(dumped.contains("command = sweep"));
    assert!(dumped.contains("k_range = 1..3"));
}

#[test]
fn csv_sweep_summary() {
    let out = latslice(&[
        "sweep",
        "brunn",
        "--family",
        "slab",
        "--n",
        "4",
        "--k-range",
        "1..3",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        vec!["check_id", "family", "params", "lhs", "rhs", "ratio_float", "verdict", "witnesses", "bounds"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3);
    // the slab rows are tight: lhs = rhs = 2^k
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[3], (1u64 << (i + 1)).to_string());
        assert_eq!(row[3], row[4]);
        assert_eq!(&row[6], "holds");
    }
}

#[test]
fn scan_slicing_rows() {
    let out = latslice(&["scan-slicing", "--lattice-basis", "Z2", "--r", "3,5", "--normal-bound", "1"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines[1]["total"], 81);
    assert_eq!(lines[1]["r"], 5);
}

#[test]
fn fuzz_is_deterministic_and_bounded() {
    let args = ["fuzz", "wills", "--n", "2", "--seed", "12", "--budget", "15"];
    let a = latslice(&args);
    let b = latslice(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    for line in stdout_lines(&a) {
        if let Some(r) = line.get("ratio_float") {
            assert!(r.as_f64().unwrap() <= 1.0);
        }
    }
}
