mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::fixture_path;

fn ldpc3(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldpc3"))
        .current_dir(dir)
        .env_remove("LDPC3_THREADS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn error_category(out: &Output) -> String {
    let line = String::from_utf8_lossy(&out.stderr)
        .lines()
        .last()
        .unwrap_or_default()
        .to_string();
    let v: serde_json::Value = serde_json::from_str(&line).expect("machine-readable error");
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn construct_verify_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = ldpc3(
        d,
        &[
            "construct",
            "--n",
            "200",
            "--m",
            "100",
            "--seed",
            "1",
            "--out",
            "c.alist",
            "--log",
            "c.log",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(d.join("c.alist.manifest.json").exists());
    assert!(d.join("c.log.manifest.json").exists());

    let out = ldpc3(
        d,
        &["verify", "--code", "c.alist", "--t", "2", "--out", "v.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(d.join("v.json")).unwrap()).unwrap();
    assert_eq!(report["patterns_checked"], 200 + 19_900);
    assert_eq!(report["failures"].as_array().unwrap().len(), 0);

    let out = ldpc3(
        d,
        &[
            "replay",
            "--manifest",
            "c.alist.manifest.json",
            "--out",
            "r.alist",
            "--log",
            "r.log",
        ],
    );
    assert!(out.status.success());
    assert_eq!(
        std::fs::read(d.join("c.alist")).unwrap(),
        std::fs::read(d.join("r.alist")).unwrap()
    );
    assert_eq!(
        std::fs::read(d.join("c.log")).unwrap(),
        std::fs::read(d.join("r.log")).unwrap()
    );

    let out = ldpc3(
        d,
        &[
            "replay",
            "--manifest",
            "v.json.manifest.json",
            "--out",
            "r.json",
        ],
    );
    assert!(out.status.success());
    assert_eq!(
        std::fs::read(d.join("v.json")).unwrap(),
        std::fs::read(d.join("r.json")).unwrap()
    );

    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(d.join("v.json.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["subcommand"], "verify");
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
    assert!(manifest["code_sha256"].as_str().unwrap().len() == 64);
    assert!(manifest["wall_time_secs"].as_f64().is_some());

    std::fs::write(
        d.join("c.alist"),
        std::fs::read(fixture_path("six_cycle.alist")).unwrap(),
    )
    .unwrap();
    let out = ldpc3(
        d,
        &[
            "replay",
            "--manifest",
            "v.json.manifest.json",
            "--out",
            "r2.json",
        ],
    );
    assert_eq!(out.status.code(), Some(8));
    assert_eq!(error_category(&out), "manifest_mismatch");
}

#[test]
fn verify_exit_code_tracks_failures() {
    let dir = tempfile::tempdir().unwrap();
    let code = fixture_path("girth6.alist");
    let out = ldpc3(
        dir.path(),
        &["verify", "--code", code.to_str().unwrap(), "--t", "2"],
    );
    assert_eq!(out.status.code(), Some(0));
    let out = ldpc3(
        dir.path(),
        &[
            "verify",
            "--code",
            code.to_str().unwrap(),
            "--t",
            "3",
            "--out",
            "v.json",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("v.json")).unwrap()).unwrap();
    assert!(!report["failures"].as_array().unwrap().is_empty());
}

#[test]
fn analyze_reports_six_cycles_of_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let code = fixture_path("girth6.alist");
    let out = ldpc3(
        dir.path(),
        &[
            "analyze",
            "--code",
            code.to_str().unwrap(),
            "--critical-numbers",
        ],
    );
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        csv.lines().next(),
        Some("type,support,V,C,cond_a,cond_b,critical_number")
    );
    let rows: Vec<&str> = csv.lines().filter(|l| l.starts_with("\"(3,3)\"")).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.ends_with(",3")));
}

#[test]
fn decode_reads_a_received_word() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("w.txt"), "1 1 1\n").unwrap();
    let code = fixture_path("six_cycle.alist");
    let out = ldpc3(
        dir.path(),
        &[
            "decode",
            "--code",
            code.to_str().unwrap(),
            "--received",
            "w.txt",
        ],
    );
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "status fixed_point\niterations 2\noutput 111\nresidual_support 0 1 2\n"
    );
    std::fs::write(dir.path().join("w.txt"), "1 2 1\n").unwrap();
    let out = ldpc3(
        dir.path(),
        &[
            "decode",
            "--code",
            code.to_str().unwrap(),
            "--received",
            "w.txt",
        ],
    );
    assert_eq!(
        (out.status.code(), error_category(&out).as_str()),
        (Some(4), "malformed_input")
    );
}

#[test]
fn error_categories_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = ldpc3(d, &["verify", "--code", "missing.alist"]);
    assert_eq!(
        (out.status.code(), error_category(&out).as_str()),
        (Some(3), "io")
    );
    std::fs::write(d.join("bad.alist"), "3 2\n1 x\n").unwrap();
    let out = ldpc3(d, &["analyze", "--code", "bad.alist"]);
    assert_eq!(
        (out.status.code(), error_category(&out).as_str()),
        (Some(4), "malformed_input")
    );
    let out = ldpc3(
        d,
        &["construct", "--n", "100", "--m", "40", "--out", "x.alist"],
    );
    assert_eq!(
        (out.status.code(), error_category(&out).as_str()),
        (Some(5), "infeasible_parameters")
    );
    let out = ldpc3(
        d,
        &[
            "construct",
            "--n",
            "60",
            "--m",
            "30",
            "--max-evictions",
            "0",
            "--out",
            "x.alist",
        ],
    );
    assert_eq!(
        (out.status.code(), error_category(&out).as_str()),
        (Some(6), "construction_failed")
    );
    let code = fixture_path("six_cycle.alist");
    let out = ldpc3(
        d,
        &[
            "simulate",
            "--code",
            code.to_str().unwrap(),
            "--alpha-list",
            "0.7",
        ],
    );
    assert_eq!(
        (out.status.code(), error_category(&out).as_str()),
        (Some(7), "invalid_argument")
    );
    let out = ldpc3(
        d,
        &["verify", "--code", code.to_str().unwrap(), "--no-such-flag"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_lists_every_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = ldpc3(dir.path(), &["simulate", "--help"]);
    let help = String::from_utf8(out.stdout).unwrap();
    for flag in [
        "--code",
        "--alpha-list",
        "--min-failures",
        "--max-trials",
        "--seed",
        "--ceiling",
        "--out",
        "--threads",
    ] {
        assert!(help.contains(flag), "{flag}");
    }
}

#[test]
fn outputs_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let code = fixture_path("girth6.alist");
    let code = code.to_str().unwrap();
    let mut seen: Vec<Vec<Vec<u8>>> = Vec::new();
    for threads in ["1", "2", "8"] {
        let t = format!("t{threads}");
        let files = [
            format!("{t}.alist"),
            format!("{t}.csv"),
            format!("{t}.json"),
            format!("{t}.fer.csv"),
        ];
        ldpc3(
            d,
            &[
                "--threads",
                threads,
                "construct",
                "--n",
                "200",
                "--m",
                "100",
                "--seed",
                "3",
                "--out",
                &files[0],
            ],
        );
        ldpc3(
            d,
            &[
                "--threads",
                threads,
                "analyze",
                "--code",
                code,
                "--out",
                &files[1],
            ],
        );
        ldpc3(
            d,
            &[
                "--threads",
                threads,
                "verify",
                "--code",
                code,
                "--out",
                &files[2],
            ],
        );
        let out = ldpc3(
            d,
            &[
                "--threads",
                threads,
                "simulate",
                "--code",
                code,
                "--alpha-list",
                "0.03,0.01",
                "--min-failures",
                "20",
                "--seed",
                "5",
                "--out",
                &files[3],
            ],
        );
        assert!(out.status.success());
        seen.push(
            files
                .iter()
                .map(|f| std::fs::read(d.join(f)).unwrap())
                .collect(),
        );
    }
    assert_eq!(seen[0], seen[1]);
    assert_eq!(seen[0], seen[2]);
}
