use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netcomplexity")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn missing_file_exits_2_with_json_error() {
    let out = run(&["compute", "/nonexistent/edges.csv"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("{\"error\":\"io\""), "{err}");
}

#[test]
fn duplicate_edge_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    std::fs::write(&path, "a,b\na,b\n").unwrap();
    let out = run(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("duplicate_edge"));
}

#[test]
fn edgeless_graph_has_zero_index() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    std::fs::write(&path, "n=4\n").unwrap();
    let out = run(&["compute", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"phi_structural\": 0"), "{text}");
    assert!(text.contains("\"phi_over_n\": 0.0"), "{text}");
}

#[test]
fn three_cycle_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    std::fs::write(&path, "a,b\nb,c\nc,a\n").unwrap();
    let text = stdout(&run(&["bounds", path.to_str().unwrap()]));
    assert!(text.contains("\"lower\": 3"), "{text}");
    assert!(text.contains("\"upper\": 3"), "{text}");
}

#[test]
fn path_with_distinct_dynamics() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    std::fs::write(&path, "1,2\n2,3\n").unwrap();
    let text = stdout(&run(&["compute", path.to_str().unwrap(), "--grouping", "distinct"]));
    assert!(text.contains("\"phi_structural\": 2"), "{text}");
}

#[test]
fn experiment_prints_records_then_summary() {
    let out = run(&["experiment", "--model", "ba", "--n", "30", "--k", "1,30", "--trials", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let (records, summary) = text.split_once("\n\n").unwrap();
    assert_eq!(records.lines().count(), 11);
    assert_eq!(summary.lines().count(), 3);
    assert!(summary.starts_with("k,trials,min,q1,median,q3,max,mean"));
}
