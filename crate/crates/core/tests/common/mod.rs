#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(rel: &str) -> String {
    crate_dir().join("fixtures").join(rel).to_string_lossy().into_owned()
}

pub fn golden_dir() -> PathBuf {
    crate_dir().join("fixtures").join("golden")
}

/// Set to rewrite the golden files from the current build.
pub fn blessing() -> bool {
    std::env::var_os("STYLOMETER_BLESS").is_some_and(|v| !v.is_empty())
}

pub fn run_bin(args: &[&str], threads: usize) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stylometer"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads.to_string())
        .env_remove("STYLOMETER_WORDLISTS")
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

/// `(golden file name, argv)` for every single-table command.
pub fn golden_commands() -> Vec<(&'static str, Vec<String>)> {
    let m = fixture("corpus/manifest.tsv");
    let cmd = |parts: &[&str]| -> Vec<String> {
        let mut v: Vec<String> = vec![parts[0].to_string(), "--manifest".into(), m.clone()];
        v.extend(parts[1..].iter().map(|s| s.to_string()));
        v
    };
    vec![
        ("summary.tsv", cmd(&["summary", "--group-by", "group"])),
        ("topk.tsv", cmd(&["topk", "--k", "10", "--baseline", "GPT"])),
        ("stats.tsv", cmd(&["stats", "--window", "50", "--sliding"])),
        ("pos.tsv", cmd(&["pos"])),
        ("categories.tsv", cmd(&["categories", "--baseline", "GPT"])),
        (
            "specificity.tsv",
            cmd(&["specificity", "--p0", "group=GPT", "--threshold", "3", "--k", "10"]),
        ),
        ("distance.tsv", cmd(&["distance", "--group-by", "group,subgroup,origin"])),
    ]
}

pub fn report_args(out: &Path) -> Vec<String> {
    vec![
        "report".into(),
        "--manifest".into(),
        fixture("corpus/manifest.tsv"),
        "--baseline".into(),
        "GPT".into(),
        "--window".into(),
        "50".into(),
        "--out".into(),
        out.to_string_lossy().into_owned(),
    ]
}

/// Sorted `(file name, bytes)` of a directory.
pub fn read_dir_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    v.sort();
    v
}

/// Compares every golden command and the report bundle with the stored
/// files, under both thread counts and twice each. Returns the mismatches.
pub fn golden_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    let dir = golden_dir();
    for (name, args) in golden_commands() {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let mut outputs = Vec::new();
        for threads in [1, 4, 1, 4] {
            let out = run_bin(&argv, threads);
            if !out.status.success() {
                bad.push(format!("{name}: exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
            }
            outputs.push(out.stdout);
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            bad.push(format!("{name}: output differs between runs or thread counts"));
        }
        let path = dir.join(name);
        if blessing() {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &outputs[0]).unwrap();
        } else if std::fs::read(&path).ok().as_deref() != Some(&outputs[0][..]) {
            bad.push(format!("{name}: differs from {}", path.display()));
        }
    }

    let mut bundles = Vec::new();
    for threads in [1, 4, 1] {
        let tmp = tempfile::tempdir().unwrap();
        let out_dir = tmp.path().join("bundle");
        let args = report_args(&out_dir);
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run_bin(&argv, threads);
        if !out.status.success() {
            bad.push(format!("report: exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
            return bad;
        }
        bundles.push(read_dir_files(&out_dir));
    }
    if bundles.windows(2).any(|w| w[0] != w[1]) {
        bad.push("report: bundle differs between runs or thread counts".into());
    }
    let report_dir = dir.join("report");
    if blessing() {
        let _ = std::fs::remove_dir_all(&report_dir);
        std::fs::create_dir_all(&report_dir).unwrap();
        for (n, b) in &bundles[0] {
            std::fs::write(report_dir.join(n), b).unwrap();
        }
    } else if !report_dir.is_dir() || read_dir_files(&report_dir) != bundles[0] {
        bad.push(format!("report: bundle differs from {}", report_dir.display()));
    }
    bad
}
