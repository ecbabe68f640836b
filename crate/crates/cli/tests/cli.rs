use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn atomwork(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atomwork"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("star.fam"), "3 4\n1100\n1010\n1001\n").unwrap();
    std::fs::write(dir.path().join("disjoint3.fam"), "3 3\n100\n010\n001\n").unwrap();
    let o = atomwork(
        dir.path(),
        &[
            "generate",
            "--kind",
            "witness-rich",
            "--depth",
            "3",
            "--seed",
            "7",
            "--family",
            "rich.fam",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    dir
}

#[test]
fn star_family_has_tau_one() {
    let dir = workspace();
    let o = atomwork(
        dir.path(),
        &["pierce", "--in", "star.fam", "--out", "p.json"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tau=1"));
    let report = read_json(&dir.path().join("p.json"));
    assert_eq!(report["v"], "v1");
    assert_eq!(report["results"]["solution"]["tau"], 1);
    let v = atomwork(dir.path(), &["verify", "p.json"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn witness_chain_report_verifies() {
    let dir = workspace();
    let o = atomwork(
        dir.path(),
        &[
            "witness",
            "--in",
            "rich.fam",
            "--B-from-file",
            "--n",
            "3",
            "--out",
            "chain.report",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = atomwork(dir.path(), &["verify", "chain.report"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    let text = stdout(&v);
    assert!(text.contains("result: pass"));
    let report = read_json(&dir.path().join("chain.report"));
    assert!(
        report["results"]["verification"]["trace_count"]
            .as_u64()
            .unwrap()
            >= 6
    );
}

#[test]
fn pq_failure_lists_violation() {
    let dir = workspace();
    let o = atomwork(
        dir.path(),
        &["pq", "--in", "disjoint3.fam", "--p", "3", "--q", "2"],
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("fails"));
    assert!(text.contains("violation: S0 S1 S2"));
    let strict = atomwork(
        dir.path(),
        &[
            "pq",
            "--in",
            "disjoint3.fam",
            "--p",
            "3",
            "--q",
            "2",
            "--strict",
            "--out",
            "pq.json",
        ],
    );
    assert_eq!(strict.status.code(), Some(1));
    let report = read_json(&dir.path().join("pq.json"));
    assert_eq!(
        report["results"]["report"]["violation"],
        serde_json::json!([0, 1, 2])
    );
    assert_eq!(
        atomwork(dir.path(), &["verify", "pq.json"]).status.code(),
        Some(0)
    );
    let holds = atomwork(
        dir.path(),
        &["pq", "--in", "disjoint3.fam", "--p", "4", "--strict"],
    );
    assert_eq!(holds.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    let dir = workspace();
    std::fs::write(dir.path().join("bad.fam"), "2 3\n101\n1x1\n").unwrap();
    let o = atomwork(dir.path(), &["pierce", "--in", "bad.fam"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    assert_eq!(
        atomwork(dir.path(), &["pierce", "--in", "missing.fam"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(atomwork(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        atomwork(dir.path(), &["pq", "--in", "star.fam"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        atomwork(dir.path(), &["witness", "--in", "star.fam", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        atomwork(dir.path(), &["atoms", "--in", "star.fam", "--B", "9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn budget_overrun_exits_three() {
    let dir = workspace();
    let o = atomwork(
        dir.path(),
        &["shatter", "--in", "rich.fam", "--n", "3", "--budget", "2"],
    );
    assert_eq!(o.status.code(), Some(3));
    let o = atomwork(
        dir.path(),
        &[
            "pq", "--in", "rich.fam", "--p", "4", "--q", "3", "--budget", "1",
        ],
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_rejects_tampering() {
    let dir = workspace();
    let o = atomwork(
        dir.path(),
        &["pierce", "--in", "star.fam", "--out", "p.json"],
    );
    assert!(o.status.success());

    let mut report = read_json(&dir.path().join("p.json"));
    report["results"]["solution"]["piercing_points"] = serde_json::json!([1]);
    std::fs::write(dir.path().join("bad.json"), report.to_string()).unwrap();
    let v = atomwork(dir.path(), &["verify", "bad.json"]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("solution: fail"));

    std::fs::write(dir.path().join("star.fam"), "3 4\n1100\n1010\n1011\n").unwrap();
    let v = atomwork(dir.path(), &["verify", "p.json"]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("input_digest: fail"));
}

#[test]
fn every_report_kind_verifies() {
    let dir = workspace();
    let runs: &[&[&str]] = &[
        &[
            "atoms",
            "--in",
            "rich.fam",
            "--sets",
            "A1,A2",
            "--B-from-file",
        ],
        &["shatter", "--in", "rich.fam", "--profile", "4"],
        &["shatter", "--in", "rich.fam", "--n", "3", "--greedy"],
        &["pq", "--in", "rich.fam", "--p", "3", "--q", "3"],
        &["pierce", "--in", "star.fam", "--greedy"],
        &["disjoint", "--in", "rich.fam", "--B-from-file"],
        &[
            "witness",
            "--in",
            "rich.fam",
            "--B-from-file",
            "--n",
            "3",
            "--exhaustive",
        ],
        &[
            "generate",
            "--kind",
            "halfplane-grid",
            "--count",
            "4",
            "--seed",
            "3",
            "--family",
            "h.fam",
        ],
    ];
    for (k, args) in runs.iter().enumerate() {
        let out = format!("r{k}.json");
        let mut full = args.to_vec();
        full.extend(["--out", out.as_str()]);
        let o = atomwork(dir.path(), &full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let v = atomwork(dir.path(), &["verify", &out]);
        assert_eq!(v.status.code(), Some(0), "{args:?}: {}", stdout(&v));
    }
}

#[test]
fn command_echo_and_generated_stdout() {
    let dir = workspace();
    let o = atomwork(
        dir.path(),
        &[
            "pierce",
            "--threads",
            "2",
            "--in",
            "star.fam",
            "--out",
            "p.json",
        ],
    );
    assert!(o.status.success());
    let report = read_json(&dir.path().join("p.json"));
    assert_eq!(
        report["command"],
        serde_json::json!(["pierce", "--in", "star.fam"])
    );

    let o = atomwork(
        dir.path(),
        &[
            "generate",
            "--kind",
            "witness-rich",
            "--depth",
            "3",
            "--seed",
            "7",
        ],
    );
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(dir.path().join("rich.fam")).unwrap()
    );
}
