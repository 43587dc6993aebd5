//! Black box checks of the twinperm binary: stream handling, output
//! shapes, reproducibility flags and exit codes.

use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twinperm"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().expect("no exit code"),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn run_stdin(args: &[&str], input: &str) -> String {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(
        out.status.success(),
        "{args:?} with stdin failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn detect_reduce_maxlen_rmax_emit_stable_shapes() {
    let red = run_ok(&["reduce", "--perm", "9,2,7,1"]);
    assert_eq!(red, "{\"pattern\":[4,2,3,1]}\n");

    let det = run_ok(&["detect", "--kind", "tight", "--r", "2", "--k", "2", "--perm", "2 5 1 4 3 6"]);
    assert!(det.starts_with("{\"found\":true,\"certificate\":{\"kind\":\"tight\",\"r\":2,\"k\":2,\"position_sets\":"));

    let ml = run_ok(&["maxlen", "--kind", "block", "--r", "2", "--perm", "1,4,3,2,5"]);
    assert!(ml.starts_with("{\"k_max\":2,\"certificate\":"));

    let rm = run_ok(&["rmax", "--kind", "tight", "--k", "2", "--perm", "1,2,3,4,5,6,7,8"]);
    assert!(rm.starts_with("{\"r_max\":4,\"certificate\":"));

    let miss = run_ok(&["detect", "--kind", "tight", "--r", "2", "--k", "3", "--perm", "4,5,6,9,8,7,1,2,3,12,11,10"]);
    assert_eq!(miss, "{\"found\":false,\"certificate\":null}\n");
}

#[test]
fn every_construction_family_round_trips_through_detect() {
    let families: [(&str, &[&str]); 9] = [
        ("pi-k", &["--k", "3", "--n", "15"]),
        ("pi-rk", &["--r", "3", "--k", "3", "--n", "16"]),
        ("quadratic", &["--r", "4"]),
        ("alternating", &["--n", "12"]),
        ("pi2", &[]),
        ("pi3", &[]),
        ("intro-tight4", &[]),
        ("intro-block4", &[]),
        ("intro-blocktight4", &[]),
    ];
    for (family, extra) in families {
        let mut args = vec!["construct", "--family", family];
        args.extend_from_slice(extra);
        let text = run_ok(&args);
        assert!(
            text.trim().split_whitespace().all(|t| t.parse::<i64>().is_ok()),
            "{family} did not emit a plain permutation: {text:?}"
        );
        let piped = run_stdin(
            &["detect", "--kind", "block", "--r", "2", "--k", "1", "--perm", "-"],
            &text,
        );
        assert!(piped.starts_with("{\"found\":"), "{family} text did not round-trip");
    }
}

#[test]
fn multi_line_sources_emit_one_json_line_each() {
    let out = run_stdin(&["reduce", "--perm", "-"], "1 2 3\n# comment\n\n3 2 1\n");
    assert_eq!(out, "{\"pattern\":[1,2,3]}\n{\"pattern\":[3,2,1]}\n");

    let path = std::env::temp_dir().join(format!("twinperm-in-{}", std::process::id()));
    std::fs::write(&path, "2 1\n1 2\n").unwrap();
    let out = run_ok(&["reduce", "--file", path.to_str().unwrap()]);
    assert_eq!(out.lines().count(), 2);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn out_flag_redirects_the_payload() {
    let path = std::env::temp_dir().join(format!("twinperm-out-{}", std::process::id()));
    let stdout = run_ok(&["reduce", "--perm", "3,1,2", "--out", path.to_str().unwrap()]);
    assert!(stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "{\"pattern\":[3,1,2]}\n");
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn invalid_input_exits_two_with_stderr_diagnostic() {
    let (code, err) = exit_code(&["detect", "--kind", "tight", "--r", "2", "--k", "2", "--perm", "1,1,2"]);
    assert_eq!(code, 2);
    assert!(err.contains("duplicate"));

    let (code, _) = exit_code(&["detect", "--kind", "sideways", "--r", "2", "--k", "2", "--perm", "1,2"]);
    assert_eq!(code, 2);

    let (code, _) = exit_code(&["mc", "--stat", "bt_len", "--n", "10", "--r", "2", "--format", "xml"]);
    assert_eq!(code, 2);

    let (code, _) = exit_code(&["nonsense"]);
    assert_eq!(code, 2);

    let (code, _) = exit_code(&["detect", "--kind", "tight", "--r", "2", "--k", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn resource_guards_exit_three() {
    let (code, err) = exit_code(&["mc", "--stat", "tt_len", "--n", "500", "--r", "2", "--trials", "2"]);
    assert_eq!(code, 3);
    assert!(err.contains("limited to n <= 150"), "guard message missing: {err}");

    let (code, _) = exit_code(&["search-f", "--r", "2", "--k", "2", "--n-max", "20"]);
    assert_eq!(code, 3);

    let (code, _) = exit_code(&["count-q", "--r", "4", "--k", "3"]);
    assert_eq!(code, 3);
}

#[test]
fn sampling_is_reproducible_across_flags() {
    let base = run_ok(&["mc", "--stat", "bt_len", "--n", "80", "--r", "2", "--trials", "40", "--threads", "1"]);
    let seeded = run_ok(&["mc", "--stat", "bt_len", "--n", "80", "--r", "2", "--trials", "40", "--seed", "24301", "--threads", "1"]);
    assert_eq!(base, seeded, "default seed is not 0x5EED");

    let threaded = run_ok(&["mc", "--stat", "bt_len", "--n", "80", "--r", "2", "--trials", "40", "--threads", "7"]);
    assert_eq!(base, threaded, "worker count changed the estimates");

    let out = bin()
        .args(["mc", "--stat", "bt_len", "--n", "80", "--r", "2", "--trials", "40"])
        .env("TWINPERM_THREADS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(base, String::from_utf8(out.stdout).unwrap(), "env worker count changed the estimates");
}

#[test]
fn mc_csv_carries_the_pinned_header() {
    let out = run_ok(&["mc", "--stat", "btt_len", "--n", "50", "--r", "2", "--trials", "10", "--threads", "1", "--format", "csv"]);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "statistic,n,r,trials,seed,mean,var,min,max,q05,q50,q95,reference"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("btt_len,50,2,10,24301,"));
}

#[test]
fn search_and_probability_reports_keep_contract_order() {
    let sf = run_ok(&["search-f", "--r", "2", "--k", "2", "--n-max", "6", "--threads", "2"]);
    assert!(sf.starts_with("{\"f\":6,\"reports\":[{\"r\":2,\"k\":2,\"n\":4,\"outcome\":\"avoider-found\",\"witness\":"));

    let cq = run_ok(&["count-q", "--r", "2", "--k", "2"]);
    assert_eq!(cq, "{\"r\":2,\"k\":2,\"q\":20}\n");

    let eq = run_ok(&["check-prob", "--n", "6", "--r", "2", "--k", "2", "--sets", "1,2;3,4"]);
    assert!(eq.starts_with("{\"n\":6,\"trials\":720,\"hits\":360,\"probability\":0.5,"));

    let ind = run_ok(&["check-prob", "--n", "8", "--r", "2", "--k", "2", "--sets", "1,2;3,4", "--sets2", "5,6;7,8"]);
    assert!(ind.starts_with("{\"n\":8,\"total\":40320,\"joint_count\":10080,"));
    assert!(ind.trim_end().ends_with("\"equal\":true}"));
}
