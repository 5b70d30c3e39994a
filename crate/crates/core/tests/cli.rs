use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sumset-ramsey"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sumset-ramsey-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn search_finds_support_pair() {
    let o = run(&["--machine", "search", "--group", "Z/4 Z/4 Z", "--bound", "1", "--coloring", "support", "--size", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("outcome=found"), "{text}");
    assert!(text.contains("color=Seq[(1/2,0)]"), "{text}");
    assert!(text.contains("element=(1,0,0)\nelement=(3,2,0)"), "{text}");
}

#[test]
fn search_without_witness_exits_one() {
    let o = run(&["--machine", "search", "--group", "Z/3 Z/3", "--coloring", "support", "--size", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("outcome=none-in-domain"));
}

#[test]
fn node_cap_exits_two() {
    let o = run(&[
        "--machine", "--node-limit", "5", "search", "--group", "Z/3 Z/3 Z/3 Z/3", "--coloring", "support", "--size", "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_input_exits_three() {
    assert_eq!(run(&["search", "--group", "Z/q", "--coloring", "support", "--size", "2"]).status.code(), Some(3));
    assert_eq!(run(&["search", "--group", "Z/4", "--coloring", "nonsense", "--size", "2"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn saved_config_replays_identically() {
    let cfg = scratch("replay.json");
    let first = run(&[
        "--machine",
        "--save-config",
        cfg.to_str().unwrap(),
        "search",
        "--group",
        "Z/4 Z/4",
        "--coloring",
        "random 3 11",
        "--size",
        "3",
    ]);
    let second = run(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(first.status.code(), second.status.code());
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn table_coloring_file() {
    let path = scratch("table.txt");
    std::fs::write(&path, "# parity of Z/4\ntable\n0 -> 0\n1 -> 1\n2 -> 0\n3 -> 1\n").unwrap();
    let o = run(&["--machine", "search", "--group", "Z/4", "--coloring", path.to_str().unwrap(), "--size", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("outcome=found"));
}

#[test]
fn analyze_reports_classification() {
    let o = run(&["--machine", "analyze", "--group", "Z/4 Z/2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("order=8"), "{text}");
    assert!(text.contains("two_torsion=4"), "{text}");
}

#[test]
fn minimal_matches_fixture() {
    let o = run(&["--machine", "minimal", "--family", "nat", "--colors", "2", "--size", "2", "--max", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("m=12"));
}

#[test]
fn construct_prop42() {
    let z4_8 = "Z/4 Z/4 Z/4 Z/4 Z/4 Z/4 Z/4 Z/4";
    let o = run(&["--machine", "construct", "--method", "prop42", "--group", z4_8, "--coloring", "random 2 3", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).matches("element=").count(), 2);

    // eight basis vectors are too few for a monochromatic 4-set under this colouring
    let o = run(&["--machine", "construct", "--method", "prop42", "--group", z4_8, "--coloring", "random 2 3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_paper_passes() {
    let o = run(&["--machine", "verify-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
