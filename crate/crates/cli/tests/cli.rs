//! End-to-end tests of the `mplab` binary: output contracts, exit codes,
//! JSON mode, determinism across worker counts, and database round trips.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn mplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mplab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mplab(args);
    assert!(
        out.status.success(),
        "`mplab {}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn classical_db() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/classical.mpdb")
}

#[test]
fn abundancy_of_672_is_three() {
    assert_eq!(stdout(&["abundancy", "672"]), "3/1\n");
}

#[test]
fn scalar_verbs_agree_on_672() {
    assert_eq!(stdout(&["sigma", "672"]), "2016\n");
    assert_eq!(stdout(&["rad", "672"]), "42\n");
    assert_eq!(
        stdout(&["factor", "672"]),
        "prime\texponent\n2\t5\n3\t1\n7\t1\n"
    );
}

#[test]
fn loopy_scan_reports_zero_counterexamples() {
    assert_eq!(
        stdout(&["lemma-check", "loopy", "--e-max", "3", "--k-max", "4", "--margin", "200"]),
        "0 counterexamples\n"
    );
}

#[test]
fn verify_bound_covers_the_whole_catalog() {
    let db = classical_db();
    let text = stdout(&["verify-bound", "--db", db.to_str().unwrap()]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k\tm\tbeta\trad\tverdict");
    assert_eq!(lines.len(), 20, "header + 19 records");
    assert!(!text.contains("violates"));
    // Exactly one fringe record: the squarefree even perfect number 6.
    let boundary: Vec<&str> = lines.iter().copied().filter(|l| l.ends_with("boundary")).collect();
    assert_eq!(boundary, ["2\t6\t5/6\t6\tboundary"]);
}

#[test]
fn search_output_is_ascending_and_headered() {
    let text = stdout(&["search", "--limit", "40000"]);
    assert_eq!(
        text,
        "k\tm\n2\t6\n2\t28\n3\t120\n2\t496\n3\t672\n2\t8128\n4\t30240\n4\t32760\n"
    );
    let filtered = stdout(&["search", "--limit", "40000", "--k", "3"]);
    assert_eq!(filtered, "k\tm\n3\t120\n3\t672\n");
}

#[test]
fn identical_argv_gives_byte_identical_output() {
    let args = ["search", "--limit", "100000", "--segment-len", "4096"];
    let first = stdout(&args);
    let second = stdout(&args);
    assert_eq!(first, second);
    // Worker count must not leak into stdout either.
    let two = stdout(&["--workers", "2", "search", "--limit", "100000", "--segment-len", "4096"]);
    let eight = stdout(&["--workers", "8", "search", "--limit", "100000", "--segment-len", "4096"]);
    assert_eq!(two, eight);
    assert_eq!(first, two);
}

#[test]
fn exit_codes_separate_usage_from_domain_errors() {
    // Unknown verb and unknown flag are usage errors.
    assert_eq!(mplab(&["no-such-verb"]).status.code(), Some(2));
    assert_eq!(mplab(&["sigma", "--bogus", "5"]).status.code(), Some(2));
    assert_eq!(mplab(&["abundancy", "notanumber"]).status.code(), Some(2));
    // Missing required mode flags.
    assert_eq!(mplab(&["factorial"]).status.code(), Some(2));
    assert_eq!(mplab(&["repdigit", "--base", "2"]).status.code(), Some(2));
    // Domain errors exit 1.
    assert_eq!(mplab(&["rad", "0"]).status.code(), Some(1));
    let out = mplab(&["repdigit", "--base", "10", "--rank", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("divides base"));
    // Success exits 0.
    assert_eq!(mplab(&["sigma", "6"]).status.code(), Some(0));
}

#[test]
fn json_mode_emits_line_delimited_records() {
    let line = stdout(&["--json", "abundancy", "672"]);
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["numerator"], "3");
    assert_eq!(v["denominator"], "1");

    let lines = stdout(&["--json", "search", "--limit", "1000"]);
    let hits: Vec<serde_json::Value> = lines
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(hits.len(), 5); // 6, 28, 120, 496, 672
    assert_eq!(hits[2]["m"], 120);
    assert_eq!(hits[2]["k"], 3);
}

#[test]
fn repdigit_scan_finds_the_binary_hits() {
    let text = stdout(&["repdigit", "--base", "2", "--d-max", "10", "--s-max", "2"]);
    assert_eq!(
        text,
        "d\ts\tstatus\tk\tvalue\n2\t1\thit\t2\t6\n8\t2\thit\t3\t120\n"
    );
}

#[test]
fn repdigit_chain_and_rank_examples() {
    let chain = stdout(&["repdigit", "--base", "10", "--chain", "2"]);
    assert_eq!(chain, "s\trepunit\tratio\n0\t1\t1/1\n1\t11\t12/11\n2\t1111\t1224/1111\n");
    assert_eq!(stdout(&["repdigit", "--base", "2", "--rank", "7"]), "3\n");
    assert_eq!(stdout(&["repdigit", "--base", "10", "--rank", "3"]), "3\n");
}

#[test]
fn factorial_modes() {
    assert_eq!(stdout(&["factorial", "--scan", "30"]), "n\n3\n");
    assert_eq!(stdout(&["factorial", "--monotonicity", "50"]), "true\n");
    let ratio: f64 = stdout(&["factorial", "--rad-ratio", "10"]).trim().parse().unwrap();
    assert!((ratio - 0.354_009_631_612_486_16).abs() < 1e-12);
    let shifted = stdout(&["factorial", "--shifted", "5"]);
    assert_eq!(
        shifted,
        "n\tstatus\tk\n1\tprime\t\n2\tprime\t\n3\tprime\t\n4\tnot-multiperfect\t\n5\tnot-multiperfect\t\n"
    );
}

#[test]
fn abc_quality_pair_and_poly() {
    let pair = stdout(&["abc-quality", "--a", "1", "--b", "8"]);
    assert_eq!(pair, "a\tb\tc\tradical\tquality\n1\t8\t9\t6\t1.226294385530917\n");

    let rows = stdout(&["abc-quality", "--poly", "1,0,0,-2", "--range", "5,5"]);
    assert_eq!(rows, "x\tvalue\tradical\texponent\n5\t123\t123\t2.9899782515341085\n");

    // Repeated roots are a domain error.
    let out = mplab(&["abc-quality", "--poly", "1,-2,1", "--range", "2,5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("repeated roots"));

    // --poly without a mode, and --a mixed with --poly, are usage errors.
    assert_eq!(mplab(&["abc-quality", "--poly", "1,0,1"]).status.code(), Some(2));
    assert_eq!(
        mplab(&["abc-quality", "--a", "1", "--poly", "1,0,1", "--range", "2,3"]).status.code(),
        Some(2)
    );
}

#[test]
fn ingest_validates_and_from_search_appends() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("seed.mpdb");
    std::fs::write(&db, "k=2; m=2 * 3; src=classical\n").unwrap();

    let listing = stdout(&["ingest", "--db", db.to_str().unwrap()]);
    assert_eq!(listing, "k\tm\tsrc\n2\t6\tclassical\n");

    let appended = stdout(&["ingest", "--db", db.to_str().unwrap(), "--from-search", "1000"]);
    assert_eq!(appended, "action\tm\nappended\t28\nappended\t120\nappended\t496\nappended\t672\nskipped\t6\n");

    // Idempotent: a second pass appends nothing.
    let again = stdout(&["ingest", "--db", db.to_str().unwrap(), "--from-search", "1000"]);
    assert_eq!(
        again,
        "action\tm\nskipped\t6\nskipped\t28\nskipped\t120\nskipped\t496\nskipped\t672\n"
    );

    // The grown file verifies clean end to end.
    let verified = stdout(&["verify-bound", "--db", db.to_str().unwrap()]);
    assert_eq!(verified.lines().count(), 6);
    assert!(!verified.contains("violates"));
}

#[test]
fn corrupt_database_fails_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("bad.mpdb");
    let mut f = std::fs::File::create(&db).unwrap();
    writeln!(f, "k=2; m=2 * 3; src=ok").unwrap();
    writeln!(f, "k=3; m=2^2 * 3; src=wrong-sigma").unwrap();
    writeln!(f, "k=2; m=4 * 3; src=not-a-prime").unwrap();
    drop(f);

    let out = mplab(&["ingest", "--db", db.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr: {err}");
    assert!(err.contains("line 3"), "stderr: {err}");
}

#[test]
fn gap_report_probes_are_composite() {
    let text = stdout(&[
        "lemma-check", "loopy", "--e-max", "3", "--k-max", "3", "--margin", "0", "--gap-report",
    ]);
    assert_eq!(text, "chain\tp\tp_prime\n2\t4\tfalse\n2,2\t10\tfalse\n2,2,2\t22\tfalse\n");
    // The bare-sum variant has an empty gap: nothing divides.
    let statement = stdout(&[
        "lemma-check", "loopy", "--e-max", "3", "--k-max", "3", "--margin", "0", "--gap-report",
        "--statement-b",
    ]);
    assert_eq!(statement, "chain\tp\tp_prime\n");
}

#[test]
fn euler_product_identity_verb() {
    let text = stdout(&["lemma-check", "euler-product", "--first-k", "2", "--height", "10000"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("prime\tlhs\trhs\ttail_bound\twithin"));
    for line in lines {
        assert!(line.ends_with("\ttrue"), "identity outside tail: {line}");
    }
}

#[test]
fn help_text_exists_for_every_verb() {
    for verb in [
        "factor", "sigma", "abundancy", "rad", "search", "verify-bound", "lemma-check",
        "repdigit", "factorial", "abc-quality", "ingest",
    ] {
        let out = mplab(&[verb, "--help"]);
        assert!(out.status.success(), "{verb} --help failed");
        assert!(!out.stdout.is_empty());
    }
}
