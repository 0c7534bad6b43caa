use std::process::{Command, Output};

fn statecomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_statecomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn witness_prints_text_format() {
    let out = statecomp(&["witness", "U:n=4"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "dfa 4\nalphabet a b c\ninitial 0\nfinals 3\na 1 2 3 0\nb 1 0 2 3\nc 0 1 2 0\n"
    );
}

#[test]
fn complexity_and_bound_agree() {
    let c = statecomp(&["complexity", "k-lstar", "--m", "4", "--n", "5"]);
    let b = statecomp(&["bound", "KL*", "--m", "4", "--n", "5"]);
    assert_eq!(stdout(&c), "88\n");
    assert_eq!(stdout(&b), "88\n");
    let open = statecomp(&["bound", "symdiff-star", "--m", "3", "--n", "3"]);
    assert_eq!(stdout(&open), "open\n");
}

#[test]
fn verify_csv_is_reproducible() {
    let args = ["verify", "kstar-lstar", "--m", "4", "--n", "5", "--format", "csv", "--no-timing"];
    let a = statecomp(&args);
    assert!(a.status.success());
    assert_eq!(
        stdout(&a),
        "op,status,m,n,expected,measured,verdict,millis\nkstar-lstar,theorem,4,5,226,226,match,0\n"
    );
    assert_eq!(stdout(&a), stdout(&statecomp(&args)));
}

#[test]
fn verify_json_has_one_object_per_cell() {
    let out = statecomp(&["verify", "union", "--m", "3..4", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cells = v.as_array().unwrap();
    assert_eq!(cells.len(), 2);
    assert_eq!(cells[1]["m"], 4);
    assert_eq!(cells[1]["measured"], 12);
}

#[test]
fn oracle_reports_zero_disagreements() {
    let out = statecomp(&[
        "oracle", "kstar-l", "--m", "4", "--n", "5", "--words", "500", "--maxlen", "12", "--seed", "7",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("words=500 maxlen=12 seed=7 disagreements=0"));
    let out = statecomp(&["oracle", "star", "--n", "3", "--maxlen", "8", "--exhaustive", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["disagreements"], 0);
    assert_eq!(v["seed"], serde_json::Value::Null);
}

#[test]
fn conjecture_scan_marks_large_pairs() {
    let out = statecomp(&["conjecture", "--pairs", "3:3,6:6", "--format", "csv", "--no-timing"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("inter-star,conjecture,3,3,384,384,match,0"));
    assert!(text.contains("inter-star,conjecture,6,6,51539607552,,skipped: cap,0"));
}

#[test]
fn monoid_sizes() {
    assert_eq!(stdout(&statecomp(&["monoid", "U:n=3"])), "27\n");
    assert_eq!(stdout(&statecomp(&["monoid", "U:n=4", "--letters", "ab"])), "24\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bound", "nope", "--n", "3"][..],
        &["verify", "star", "--n", "2..4"],
        &["witness", "Q:n=3"],
        &["complexity", "star", "--n", "2"],
        &["frobnicate"],
    ] {
        let out = statecomp(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}
