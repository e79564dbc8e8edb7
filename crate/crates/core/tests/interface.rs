use std::path::Path;

use netcomplexity::experiment::{run_experiment, ExperimentConfig, GraphSource, RECORDS_HEADER};
use netcomplexity::io::{parse_edge_list, parse_edge_list_str, write_edge_list, EdgeListOptions};
use netcomplexity::{generate, GeneratorSpec};

#[test]
fn generated_graphs_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for spec in [
        GeneratorSpec::barabasi_albert(40, 2, 1),
        GeneratorSpec::watts_strogatz(40, 4, 0.5, 1),
    ] {
        let g = generate(&spec).unwrap();
        let path = dir.path().join("g.csv");
        std::fs::write(&path, write_edge_list(&g)).unwrap();
        let back = parse_edge_list(&path, EdgeListOptions { require_header: true }).unwrap();
        assert_eq!(back, g);
    }
}

#[test]
fn missing_file_is_an_io_error() {
    let e = parse_edge_list(Path::new("/nonexistent/edges.csv"), EdgeListOptions::default())
        .unwrap_err();
    assert_eq!(e.kind(), "io");
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn ws_sweep_row_accounting_and_determinism() {
    let cfg = ExperimentConfig {
        source: GraphSource::Generator(GeneratorSpec::watts_strogatz(100, 4, 0.5, 0)),
        k_values: vec![1, 25, 50, 75, 100],
        trials: 100,
        master_seed: 2024,
    };
    let a = run_experiment(&cfg).unwrap();
    let csv = a.records_csv();
    assert_eq!(csv.lines().next(), Some(RECORDS_HEADER));
    assert_eq!(csv.lines().count(), 1 + 500);
    assert_eq!(a.summary_csv().lines().count(), 1 + 5);

    let b = run_experiment(&cfg).unwrap();
    assert_eq!(csv, b.records_csv());
    assert_eq!(a.summary_csv(), b.summary_csv());
}

#[test]
fn ba_medians_grow_with_k() {
    let cfg = ExperimentConfig {
        source: GraphSource::Generator(GeneratorSpec::barabasi_albert(100, 2, 0)),
        k_values: vec![1, 25, 50, 75, 100],
        trials: 100,
        master_seed: 7,
    };
    let res = run_experiment(&cfg).unwrap();
    let medians: Vec<f64> = res.summary.iter().map(|s| s.median).collect();
    assert!(medians.windows(2).all(|w| w[0] <= w[1]), "{medians:?}");
}

#[test]
fn rewire_source_keeps_edge_count() {
    let g = parse_edge_list_str("a,b\nb,c\nc,a\na,c", Path::new("x"), EdgeListOptions::default())
        .unwrap();
    let cfg = ExperimentConfig {
        source: GraphSource::Rewire(g),
        k_values: vec![1, 3],
        trials: 10,
        master_seed: 1,
    };
    let res = run_experiment(&cfg).unwrap();
    assert_eq!(res.records.len(), 20);
    assert!(res.records.iter().all(|r| r.phi_structural <= 3));
}
