use std::process::{Command, Output};

fn mdlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdlab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_and_sl() {
    let o = mdlab(&["cfrac", "expand", "--rat", "355/113"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[3; 7, 16]\n");
    let o = mdlab(&["cfrac", "sl", "--alpha", "1/3", "--beta", "2", "--L", "2"]);
    assert_eq!(stdout(&o), "6\n");
}

#[test]
fn profile_csv_columns() {
    let o = mdlab(&[
        "disc",
        "profile",
        "--seq",
        "poly:0,0,1",
        "--alpha",
        "seed:1",
        "--checkpoints",
        "2^7..2^9",
        "--out",
        "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,D_N,ND_N,log2N"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn norms_json() {
    let o = mdlab(&[
        "expsum",
        "norms",
        "--seq",
        "poly:0,0,1",
        "--n",
        "256",
        "--grid",
        "4096",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["l2"], 256);
}

#[test]
fn gcdsum_and_dilation() {
    let o = mdlab(&[
        "gcdsum",
        "eval",
        "--weights",
        "interval:0,0.00390625,512",
        "--c",
        "10",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["within_bound"], true);
    let o = mdlab(&[
        "dilation", "t4", "--family", "shrink:2", "--alpha", "1/3", "--eta", "0.5", "--lmax", "5",
        "--out", "csv",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("L,measure,H_L,h_max,hit,ratio\n"));
    assert!(text
        .lines()
        .skip(2)
        .all(|l| l.split(',').nth(4) == Some("3")));
}

#[test]
fn arith_repr_csv() {
    let o = mdlab(&[
        "arith", "repr", "--poly", "0,0,1", "--range", "10", "--mode", "diff", "--out", "csv",
    ]);
    assert!(stdout(&o).lines().any(|l| l == "8,1"));
}

#[test]
fn out_dir_and_global_flags() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = mdlab(&[
        "--seed",
        "4",
        "--threads",
        "2",
        "--out-dir",
        d,
        "dilation",
        "t4",
        "--lmax",
        "3",
    ]);
    assert!(o.status.success());
    assert!(dir.path().join("dilation_t4.csv").exists());

    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"experiment":"t4","seeds":2,"lmax":4}"#).unwrap();
    let o = mdlab(&[
        "experiment",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        d,
    ]);
    assert!(o.status.success());
    assert!(dir.path().join("t4_summary.json").exists());
}

#[test]
fn exit_codes() {
    assert_eq!(
        mdlab(&["disc", "profile", "--seq", "nope:1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        mdlab(&["cfrac", "expand", "--rat", "1/0"]).status.code(),
        Some(2)
    );
    assert_eq!(mdlab(&["frobnicate"]).status.code(), Some(2));
    // certification failing at the precision cap
    assert_eq!(
        mdlab(&[
            "cfrac",
            "sl",
            "--alpha",
            "golden",
            "--L",
            "200",
            "--precision-cap",
            "256"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        mdlab(&["cfrac", "expand", "--rat", "7/2"]).status.code(),
        Some(0)
    );
}
