use std::fs;
use std::path::Path;

use mdlab::harness::{self, ExperimentConfig, ExperimentKind};

fn read_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}

fn run_with_threads(config: &ExperimentConfig, threads: usize) -> Vec<(String, Vec<u8>)> {
    let dir = tempfile::tempdir().unwrap();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap();
    pool.install(|| harness::run_experiment(config, dir.path()))
        .unwrap();
    read_all(dir.path())
}

#[test]
fn profile_experiment_layout() {
    let config = ExperimentConfig::from_json(
        r#"{"experiment":"profile","seq":"poly:0,0,1","seeds":10,"Nmax":32768}"#,
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = harness::run_experiment(&config, dir.path()).unwrap();
    let files = read_all(dir.path());
    assert_eq!(
        files.iter().filter(|(n, _)| n.ends_with(".csv")).count(),
        10
    );
    assert!(files.iter().any(|(n, _)| n == "profile_summary.json"));
    assert_eq!(out.summary["config_hash"], config.hash());
    let header = String::from_utf8(files[0].1.clone()).unwrap();
    assert!(header.starts_with("N,D_N,ND_N,running_max_ND,log2N\n128,"));
}

#[test]
fn norms_experiment_reports_exact_l2() {
    let config = ExperimentConfig::from_json(
        r#"{"experiment":"norms","seq":"poly:0,0,1","N":256,"grid":65536}"#,
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = harness::run_experiment(&config, dir.path()).unwrap();
    assert_eq!(out.summary["norms"]["l2"], 256);
    for key in ["l1", "l4", "holder"] {
        assert!(out.summary["norms"].get(key).is_some());
    }
}

#[test]
fn reruns_are_byte_identical_for_any_thread_count() {
    let configs = [
        r#"{"experiment":"profile","seq":"thm5:d=2","seeds":3,"Nmax":4096}"#,
        r#"{"experiment":"t4","seeds":3,"lmax":12}"#,
        r#"{"experiment":"sl","seeds":2,"levels":[4,8,16]}"#,
    ];
    for text in configs {
        let config = ExperimentConfig::from_json(text).unwrap();
        let one = run_with_threads(&config, 1);
        assert_eq!(one, run_with_threads(&config, 4), "{text}");
        assert_eq!(one, run_with_threads(&config, 1), "{text}");
    }
}

#[test]
fn fit_slope_is_reproducible() {
    let config = ExperimentConfig::from_json(
        r#"{"experiment":"profile","seq":"poly:0,0,1","seeds":1,"Nmax":8192}"#,
    )
    .unwrap();
    let a = harness::run_experiment(&config, tempfile::tempdir().unwrap().path()).unwrap();
    let b = harness::run_experiment(&config, tempfile::tempdir().unwrap().path()).unwrap();
    assert_eq!(a.summary["fits"][0]["slope"], b.summary["fits"][0]["slope"]);
}

#[test]
fn config_errors() {
    assert!(ExperimentConfig::from_json(r#"{"experiment":"unknown"}"#).is_err());
    let no_seq = ExperimentConfig::new(ExperimentKind::Profile);
    assert!(harness::run_experiment(&no_seq, tempfile::tempdir().unwrap().path()).is_err());
    let file = tempfile::NamedTempFile::new().unwrap();
    let config = ExperimentConfig::from_json(r#"{"experiment":"t4","seeds":1,"lmax":2}"#).unwrap();
    assert!(harness::run_experiment(&config, &file.path().join("sub")).is_err());
}
