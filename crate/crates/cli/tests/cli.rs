//! End-to-end runs of the `p2mcb` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

const TRIANGLE: &str = "p 3 3\ne 0 1 1\ne 1 2 1\ne 0 2 3\n";
const K4: &str = "p 4 6\ne 0 1 1\ne 0 2 1\ne 0 3 1\ne 1 2 1\ne 1 3 1\ne 2 3 1\n";
const K23: &str = "p 5 6\ne 0 2 1\ne 0 3 1\ne 0 4 1\ne 1 2 1\ne 1 3 1\ne 1 4 1\n";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_p2mcb"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn p2mcb");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn triangle_closes_through_its_long_edge() {
    let o = run(&["mcb", "-", "--explicit", "--stats"], TRIANGLE);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("c 3 0 1 2 w=5\n"), "{out}");
    assert!(out.contains("long_edges=1\n"));
    assert!(out.contains("total_weight=5\n"));
}

#[test]
fn implicit_output_lists_long_edges() {
    let o = run(&["mcb", "-"], TRIANGLE);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("LONG\nl 0 2 w=3 d=2\n"));
}

#[test]
fn k23_has_two_squares() {
    let o = run(&["mcb", "-", "--explicit", "--stats"], K23);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("c 4 ")).count(), 2);
    assert!(out.contains("cycles=2\n"));
    assert!(out.contains("total_weight=8\n"));
}

#[test]
fn k4_is_rejected_with_code_2() {
    let o = run(&["mcb", "-"], K4);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_input_exits_1() {
    for bad in [
        "p 3 1\ne 0 1 x\n",
        "e 0 1 1\n",
        "p 2 1\ne 0 5 1\n",
        "p 2 2\ne 0 1 1\n",
    ] {
        let o = run(&["mcb", "-"], bad);
        assert_eq!(o.status.code(), Some(1), "{bad:?}");
    }
    assert_eq!(
        run(&["mcb", "/nonexistent/graph"], "").status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(1));
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let args = ["gen", "--n", "40", "--seed", "7"];
    let a = run(&args, "");
    let b = run(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let g = mcb_core::parse_graph(&text).unwrap();
    let mut again = Vec::new();
    mcb_core::write_graph(&g, &mut again).unwrap();
    assert_eq!(String::from_utf8(again).unwrap(), text);
    assert_ne!(
        run(&["gen", "--n", "40", "--seed", "8"], "").stdout,
        a.stdout
    );
}

#[test]
fn verify_passes_and_detects_faults() {
    let g = stdout(&run(&["gen", "--n", "10", "--seed", "3"], ""));
    let ok = run(&["verify", "-"], &g);
    assert_eq!(ok.status.code(), Some(0));
    let out = stdout(&ok);
    assert!(
        out.contains("simple=pass") && out.contains("weight=pass"),
        "{out}"
    );
    let bad = run(&["verify", "--inject-fault", "-"], &g);
    assert_eq!(bad.status.code(), Some(3));
    assert!(stdout(&bad).contains("count=fail"));
}

#[test]
fn json_output_parses() {
    let o = run(
        &["mcb", "-", "--format", "json", "--explicit", "--stats"],
        K23,
    );
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["stats"]["cycles"], 2);
    assert_eq!(doc["cycles"].as_array().unwrap().len(), 2);
    assert_eq!(doc["stats"]["total_weight"], "8");
}

#[test]
fn decompose_dumps_components_and_parts() {
    let g = stdout(&run(
        &["gen", "--n", "30", "--seed", "1", "--delete-prob", "0"],
        "",
    ));
    let o = run(&["decompose", "-"], &g);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("COMPONENT 0 "), "{out}");
    assert!(out.lines().any(|l| l.starts_with("part 0 bags")));
}

#[test]
fn bench_reports_each_size() {
    let o = run(&["bench", "--sizes", "50,500", "--repeats", "1"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}
