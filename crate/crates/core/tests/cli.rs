use std::path::Path;
use std::process::{Command, Output};

use comention::synth;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_comention")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn full_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let warc = dir.path().join("election.warc.gz");
    let file = std::fs::File::create(&warc).unwrap();
    synth::write_warc(&synth::election_pages(), file, true).unwrap();
    let dict = dir.path().join("persons.txt");
    std::fs::write(&dict, synth::election_dictionary().names().join("\n")).unwrap();
    let store = dir.path().join("store");

    let out = run(&["ingest", "--dict", path(&dict), "--store", path(&store), "--workers", "2", path(&warc)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["files_read"], 1);
    assert_eq!(report["pages_emitted"], 365);
    let comentions = report["comentions"].as_u64().unwrap();
    assert!(comentions > 365);

    let ndjson = dir.path().join("records.ndjson");
    assert_eq!(code(&run(&["export", "--store", path(&store), "--out", path(&ndjson)])), 0);
    let exported = std::fs::read_to_string(&ndjson).unwrap();
    assert_eq!(exported.lines().count() as u64, comentions);

    let copy = dir.path().join("copy");
    assert_eq!(code(&run(&["import", "--store", path(&copy), path(&ndjson)])), 0);
    let again = dir.path().join("again.ndjson");
    assert_eq!(code(&run(&["export", "--store", path(&copy), "--out", path(&again)])), 0);
    assert_eq!(std::fs::read_to_string(&again).unwrap(), exported);

    let out = run(&["stats", "--store", path(&store), "--per-year"]);
    assert_eq!(code(&out), 0);
    let years: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(years["2008"].as_u64().unwrap() + years["2009"].as_u64().unwrap(), comentions);

    let out = run(&["stats", "--store", path(&store), "--weights"]);
    let weights: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let total: u64 = weights.as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).sum();
    assert_eq!(total, comentions);

    let graph = dir.path().join("graph.json");
    let out = run(&[
        "graph", "--store", path(&store), "--person", synth::OBAMA, "--person", synth::MCCAIN, "--from", "2008-05-01", "--to", "2009-05-01",
        "--min-entry-weight", "0.2", "--min-edge-weight", "0.025", "--window-days", "30", "--out", path(&graph),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let g: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&graph).unwrap()).unwrap();
    assert_eq!(g["frames"].as_array().unwrap().len(), 13);

    let out = run(&["graph", "--store", path(&store), "--person", synth::PALIN, "--from", "2008-01-01", "--to", "2010-01-01", "--out", "-"]);
    let g: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(g["edges"].as_array().unwrap().iter().any(|e| e["a"] == synth::MCCAIN && e["b"] == synth::PALIN));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["stats", "--store", "x"])), 1, "one of --weights/--per-year is required");
    assert_eq!(code(&run(&["graph", "--store", "x", "--from", "2008-01-01", "--to", "2009-01-01", "--out", "-"])), 1);

    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope");
    assert_eq!(code(&run(&["export", "--store", path(&missing), "--out", "-"])), 2);
    std::fs::create_dir(&missing).unwrap();
    let out = run(&["graph", "--store", path(&missing), "--person", "A", "--from", "2009-01-01", "--to", "2008-01-01", "--out", "-"]);
    assert_eq!(code(&out), 2);
    let out = run(&["graph", "--store", path(&missing), "--person", "A", "--from", "2008-01-01", "--to", "2009-01-01", "--min-edge-weight", "2", "--out", "-"]);
    assert_eq!(code(&out), 2);

    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "\n# nobody\n").unwrap();
    let out = run(&["ingest", "--dict", path(&empty), "--store", path(&missing), "x.warc"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn ingest_reports_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let dict = dir.path().join("d.txt");
    std::fs::write(&dict, "Barack Obama\nJohn McCain\n").unwrap();
    let store = dir.path().join("s");
    let out = run(&["ingest", "--dict", path(&dict), "--store", path(&store), path(&dir.path().join("missing.warc"))]);
    assert_eq!(code(&out), 2);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["errors"].as_array().unwrap().len(), 1);
}
