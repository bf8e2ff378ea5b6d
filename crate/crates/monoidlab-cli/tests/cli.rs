use std::path::PathBuf;
use std::process::{Command, Output};

use monoidlab::conditions::{Certificate, Report, Status};

fn monoidlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monoidlab")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("monoidlab-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn independence_violation_exits_2() {
    let o = monoidlab(&["check", "independence", "--semigroup", "numerical:1", "--depth", "6"]);
    assert_eq!(code(&o), 2);
    let text = stdout(&o);
    assert!(text.contains("Violated"), "{text}");
    assert!(text.contains("5+P") && text.contains("6+P"), "{text}");
}

#[test]
fn braid_word_equality_exits_0() {
    let o = monoidlab(&["word", "eq", "--semigroup", "braid:3", "s1.s2.s1", "s2.s1.s2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("Equal"));
    let o = monoidlab(&["word", "eq", "--semigroup", "braid:3", "s1.s2", "s2.s1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("NotEqual"));
}

#[test]
fn ktheory_free2_single_summand() {
    let o = monoidlab(&["ktheory", "--semigroup", "free2", "--ambient", "free:2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("clique=")).count(), 1, "{text}");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&monoidlab(&[])), 64);
    assert_eq!(code(&monoidlab(&["check", "nonsense", "--semigroup", "free2"])), 64);
    assert_eq!(code(&monoidlab(&["check", "independence"])), 64);
    assert_eq!(code(&monoidlab(&["check", "independence", "--semigroup", "no-such-monoid"])), 64);
    assert_eq!(code(&monoidlab(&["check", "independence", "--semigroup", "free2", "--depth", "0"])), 64);
    assert_eq!(code(&monoidlab(&["check", "toeplitz", "--semigroup", "free2", "--p", "a"])), 64);
    assert_eq!(code(&monoidlab(&["replay", "/nonexistent/report.json"])), 64);
}

#[test]
fn help_and_catalog_exit_0() {
    assert_eq!(code(&monoidlab(&["--help"])), 0);
    let o = monoidlab(&["catalog", "list"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("numerical"));
    let o = monoidlab(&["catalog", "show", "free2"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn unknown_verdict_exits_3() {
    let o = monoidlab(&["check", "g0", "--semigroup", "numerical:1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn structured_report_round_trips_and_replays() {
    let o = monoidlab(&["check", "pure-infinite", "--semigroup", "free2", "--format", "structured"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let r = Report::from_json(&text).unwrap();
    assert_eq!(r.status, Status::Witness);
    assert_eq!(format!("{}\n", r.to_json()), text);

    let path = temp_file("witness.json", &text);
    let o = monoidlab(&["replay", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("REPLAYED"));

    let mut bad = r.clone();
    bad.certificate = Certificate::DisjointPair { side: "left".into(), p: "a".into(), q: "a.b".into() };
    let path = temp_file("tampered.json", &bad.to_json());
    let o = monoidlab(&["replay", path.to_str().unwrap()]);
    assert_eq!(code(&o), 70);
    assert!(stdout(&o).starts_with("MISMATCH"));
}

#[test]
fn violated_report_replays() {
    let o = monoidlab(&["check", "independence", "--semigroup", "numerical:1", "--depth", "6", "--format", "structured"]);
    assert_eq!(code(&o), 2);
    let path = temp_file("violated.json", &stdout(&o));
    assert_eq!(code(&monoidlab(&["replay", path.to_str().unwrap()])), 0);
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["check", "independence", "--semigroup", "numerical:1", "--depth", "6", "--format", "structured"][..],
        &["ideals", "enumerate", "--semigroup", "raam:path3", "--depth", "2"][..],
        &["boundary", "--semigroup", "free2", "--depth", "2", "--format", "structured"][..],
        &["check", "toeplitz", "--semigroup", "free2", "--ambient", "free:2", "--p", "a", "--q", "b"][..],
    ] {
        let a = monoidlab(args);
        let b = monoidlab(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn boundary_reads_a_dump() {
    let dump = "elements\n0 P\n1 aP\n2 bP\n3 empty zero\nmeet\n0 1 2 3\n1 1 3 3\n2 3 2 3\n3 3 3 3\ncovers\n";
    let path = temp_file("lattice.txt", dump);
    let o = monoidlab(&["boundary", "--dump", path.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.is_object());
}

#[test]
fn selftest_passes() {
    let o = monoidlab(&["selftest", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}
