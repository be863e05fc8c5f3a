use std::fs;
use std::process::{Command, Output};

fn permfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permfield"))
        .args(args)
        .env_remove("PERMFIELD_MAX_FIELD_SIZE")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn field_info() {
    let o = permfield(&["field-info", "--p", "2", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("modulus = x^2 + x + 1"));

    let o = permfield(&["field-info", "--p", "4", "--n", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not prime"));

    let o = permfield(&["field-info", "--p", "3", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["q"], 9);
    assert!(v["generator"].as_u64().unwrap() < 9);
}

#[test]
fn check_pp_exit_codes() {
    let o = permfield(&["check-pp", "--p", "2", "--n", "2", "--poly", "x^3", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["is_permutation"], false);
    let w = v["witness"].as_array().unwrap();
    assert_ne!(w[0], w[1]);

    for (p, n) in [("2", "1"), ("3", "2"), ("7", "1")] {
        assert_eq!(code(&permfield(&["check-pp", "--p", p, "--n", n, "--poly", "x"])), 0);
    }
    assert_eq!(code(&permfield(&["check-pp", "--poly", "x^"])), 2);
    assert_eq!(code(&permfield(&["check-pp", "--p", "2", "--n", "2", "--poly", "7*x"])), 2);
}

#[test]
fn check_pp_complete_monomials_over_f16() {
    // w*x^10 is not even a permutation of F_16 (gcd(10, 15) = 5). The exponent
    // (Q^2 + 3Q + 4)/2 = 16 does give a complete monomial: w*x^16 acts as w*x.
    let o = permfield(&["check-pp", "--p", "2", "--n", "4", "--poly", "w*x^10", "--complete"]);
    assert_eq!(code(&o), 1);
    let o = permfield(&["check-pp", "--p", "2", "--n", "4", "--poly", "w*x^16", "--complete"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn enumerate() {
    let o = permfield(&["enumerate", "--family", "cubic", "--Q", "5", "--verify"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("count 8 (expected 8)"));
    assert!(out.trim_end().ends_with("PASS"));

    let o = permfield(&["enumerate", "--family", "quartic", "--Q", "7", "--verify", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 25);
    assert_eq!(lines[0]["family"], "quartic");
    assert_eq!(lines[0]["field"]["n"], 3);
    assert_eq!(lines[24]["summary"]["count"], 24);
    assert_eq!(lines[24]["summary"]["result"], "PASS");

    assert_eq!(code(&permfield(&["enumerate", "--family", "wulin", "--Q", "8"])), 2);
    assert_eq!(code(&permfield(&["enumerate", "--family", "sextic", "--Q", "8"])), 2);
    assert_eq!(code(&permfield(&["enumerate", "--family", "wulin", "--Q", "2^2", "--verify"])), 0);
}

#[test]
fn sweep_equivalence() {
    let o = permfield(&["sweep-equivalence", "--max-q", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("tower comparisons: 0"));

    let o = permfield(&["sweep-equivalence", "--max-q", "4", "--samples", "all"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("mismatches: 0"));

    let args = ["sweep-equivalence", "--max-q", "64", "--samples", "20", "--seed", "1", "--format", "csv"];
    let a = permfield(&args);
    assert_eq!(code(&a), 0);
    let b = permfield(&[&args[..], &["--workers", "3"]].concat());
    assert_eq!(a.stdout, b.stdout, "output depends on the worker count");

    assert_eq!(code(&permfield(&["sweep-equivalence", "--samples", "many"])), 2);
}

#[test]
fn mols_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cubic = dir.path().join("cubic");
    let o = permfield(&["gen-mols", "--construction", "cubic", "--Q", "2", "--verify", "--out", cubic.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS"));
    assert_eq!(fs::read_dir(&cubic).unwrap().count(), 3);
    let first = fs::read_to_string(cubic.join("square_001.csv")).unwrap();
    assert!(first.starts_with("# order=4; poly="));

    let quartic = dir.path().join("quartic");
    let o = permfield(&[
        "gen-mols", "--construction", "quartic", "--Q", "2", "--verify", "--format", "json", "--out",
        quartic.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((v["squares"].as_u64(), v["order"].as_u64()), (Some(7), Some(8)));
    assert_eq!(code(&permfield(&["verify-mols", quartic.to_str().unwrap()])), 0);

    // Duplicate one square: the set is no longer orthogonal.
    let dup = dir.path().join("dup");
    fs::create_dir(&dup).unwrap();
    for name in ["square_001.csv", "square_002.csv"] {
        fs::copy(cubic.join(name), dup.join(name)).unwrap();
    }
    fs::copy(cubic.join("square_001.csv"), dup.join("square_003.csv")).unwrap();
    let o = permfield(&["verify-mols", dup.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not orthogonal: squares 0 and 2"));

    let nowhere = dir.path().join("x");
    assert_eq!(code(&permfield(&["gen-mols", "--construction", "quintic", "--Q", "11", "--out", nowhere.to_str().unwrap()])), 2);
    assert_eq!(code(&permfield(&["gen-mols", "--construction", "cubic", "--Q", "2", "--alpha", "1", "--out", nowhere.to_str().unwrap()])), 2);
    assert!(!nowhere.exists());
}

#[test]
fn config_layers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("permfield.toml");
    fs::write(&cfg, "max_field_size = 16\nformat = \"json\"\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(code(&permfield(&["--config", c, "field-info", "--p", "2", "--n", "5"])), 2);
    let o = permfield(&["--config", c, "--max-field-size", "64", "field-info", "--p", "2", "--n", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with('{'));

    let o = Command::new(env!("CARGO_BIN_EXE_permfield"))
        .args(["field-info", "--p", "2", "--n", "5"])
        .env("PERMFIELD_MAX_FIELD_SIZE", "16")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert_eq!(code(&permfield(&["--workers", "0", "field-info"])), 2);
}
