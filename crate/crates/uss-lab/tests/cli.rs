//! End-to-end checks of the batch runner: reproducible outputs, the sweep
//! table shapes, and the exit-code contract.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uss-lab"))
}

#[test]
fn same_config_same_seed_byte_identical() {
    let run = || {
        let out = bin()
            .args([
                "game", "uss-ind", "--scheme", "bb84", "--n", "1", "--strategy", "random-basis",
                "--trials", "2000", "--seed", "77",
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn exact_game_reports_known_value() {
    let out = bin()
        .args([
            "game", "uss-ind", "--scheme", "bb84", "--n", "1", "--strategy", "random-basis",
            "--exact",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"schema\": 1"));
    assert!(text.contains("\"win_probability\": 0.75"));
}

#[test]
fn low_t_sweep_column_is_powers_of_two() {
    let out = bin()
        .args(["sweep", "low-t", "--kappa-max", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let wins: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(wins.len(), 4);
    for (kappa, w) in wins.iter().enumerate() {
        assert!((w - 0.5f64.powi(kappa as i32)).abs() < 1e-9);
    }
}

#[test]
fn xor_sweep_diffs_are_tiny() {
    let out = bin()
        .args(["sweep", "xor-lemma", "--n-max", "4", "--samples", "2", "--seed", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let diff: f64 = line.split(',').nth(5).unwrap().parse().unwrap();
        assert!(diff <= 1e-9, "{line}");
    }
}

#[test]
fn fidelity_table_is_monotone() {
    let out = bin()
        .args(["pbt-fidelity", "--d", "2", "--n-max", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let fe: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!((fe[0] - 0.25).abs() < 1e-9);
    for w in fe.windows(2) {
        assert!(w[1] >= w[0] - 1e-9);
    }
}

#[test]
fn demo_round_trips_and_fails_loud() {
    let ok = bin()
        .args(["demo", "--scheme", "qrom", "--n", "2", "--seed", "3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));

    let missing = bin()
        .args(["demo", "--scheme", "bb84", "--n", "2", "--seed", "3", "--drop-share", "1"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));
    assert!(!missing.stderr.is_empty());
}

#[test]
fn config_errors_exit_two() {
    let bad_strategy = bin()
        .args(["game", "uss-ind", "--strategy", "nope", "--exact"])
        .output()
        .unwrap();
    assert_eq!(bad_strategy.status.code(), Some(2));

    let missing_seed = bin()
        .args(["game", "uss-ind", "--scheme", "bb84", "--n", "1", "--trials", "10"])
        .output()
        .unwrap();
    assert_eq!(missing_seed.status.code(), Some(2));
}

#[test]
fn circuit_file_drives_the_low_t_attack() {
    let dir = std::env::temp_dir().join("uss-lab-circuit-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("recon.txt");
    std::fs::write(&path, "CNOT 1 0\nT 0\n").unwrap();
    let out = bin()
        .args([
            "game",
            "uss-search",
            "--strategy",
            "low-t",
            "--exact",
            "--circuit",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"win_probability\": 0.5"), "{text}");

    std::fs::write(&path, "SWAP 0 1\n").unwrap();
    let bad = bin()
        .args([
            "game",
            "uss-search",
            "--strategy",
            "low-t",
            "--exact",
            "--circuit",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn transcript_dump_is_json() {
    let out = bin()
        .args([
            "game", "uss-search", "--scheme", "pad", "--kappa", "1", "--strategy", "low-t",
            "--exact", "--seed", "9", "--dump-transcript",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("\"modified_circuit\""), "{err}");
}
