//! End-to-end runs of the `evcs` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn evcs(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evcs"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], cwd: &Path) -> String {
    let out = evcs(args, cwd);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write_secret(dir: &Path) {
    let secret = evcs::image::patterns::half_and_half(40, 48).unwrap();
    fs::write(dir.join("s.pbm"), evcs::save_pbm(&secret, evcs::PbmVariant::P1)).unwrap();
}

fn value<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no `{key}` in\n{out}"))
}

#[test]
fn share_then_extend_keeps_old_files() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_secret(dir);
    ok(&["share", "--scheme", "kgrouped", "--k", "3", "--n", "4", "--in", "s.pbm", "--seed", "7", "--out-dir", "d/"], dir);
    let before: Vec<Vec<u8>> = (1..=4).map(|t| fs::read(dir.join(format!("d/share_{t:04}.pbm"))).unwrap()).collect();
    assert!(dir.join("d/dealer.json").exists());
    assert!(!dir.join("d/share_0005.pbm").exists());

    let out = ok(&["extend", "--state", "d/dealer.json", "--count", "3"], dir);
    assert_eq!(value(&out, "issued"), "5..7");
    for t in 5..=7 {
        assert!(dir.join(format!("d/share_{t:04}.pbm")).exists());
    }
    for (t, bytes) in (1..=4).zip(&before) {
        assert_eq!(&fs::read(dir.join(format!("d/share_{t:04}.pbm"))).unwrap(), bytes);
    }
}

#[test]
fn pipeline_is_byte_identical_across_runs() {
    let runs: Vec<Vec<(String, Vec<u8>)>> = (0..2)
        .map(|_| {
            let tmp = tempfile::tempdir().unwrap();
            let dir = tmp.path();
            write_secret(dir);
            ok(&["share", "--scheme", "better3", "--k", "3", "--n", "5", "--in", "s.pbm", "--out-dir", "d"], dir);
            ok(&["extend", "--state", "d/dealer.json", "--count", "2"], dir);
            ok(&["recover", "--out", "r.pbm", "d/share_0001.pbm", "d/share_0006.pbm", "d/share_0007.pbm"], dir);
            let mut files: Vec<(String, Vec<u8>)> = ["d/dealer.json", "d/share_0007.pbm", "r.pbm"]
                .iter()
                .map(|f| (f.to_string(), fs::read(dir.join(f)).unwrap()))
                .collect();
            let report = ok(&["contrast", "--secret", "s.pbm", "--state", "d/dealer.json", "--partition", "2,1"], dir);
            files.push(("report".into(), report.into_bytes()));
            files
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn xor_of_one_group_is_lossless() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_secret(dir);
    ok(&["share", "--scheme", "kgrouped", "--k", "4", "--n", "8", "--in", "s.pbm", "--seed", "3", "--out-dir", "d"], dir);
    ok(
        &["recover", "--mode", "xor", "--out", "r.pbm", "d/share_0005.pbm", "d/share_0006.pbm", "d/share_0007.pbm", "d/share_0008.pbm"],
        dir,
    );
    let out = ok(&["contrast", "--secret", "s.pbm", "--recovered", "r.pbm"], dir);
    assert_eq!(value(&out, "alpha"), "1.000000");
    let out = ok(
        &["contrast", "--secret", "s.pbm", "--mode", "xor", "--shares", "d/share_0001.pbm", "d/share_0002.pbm", "d/share_0003.pbm", "d/share_0004.pbm"],
        dir,
    );
    assert_eq!(value(&out, "alpha"), "1.000000");
}

#[test]
fn partition_contrast_uses_the_state() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_secret(dir);
    ok(&["share", "--scheme", "kgrouped", "--k", "2", "--n", "6", "--in", "s.pbm", "--out-dir", "d"], dir);
    let out = ok(&["contrast", "--secret", "s.pbm", "--state", "d/dealer.json", "--partition", "1,1", "--seed", "5"], dir);
    assert_eq!(value(&out, "partition"), "[1,1]");
    let picked: Vec<usize> = value(&out, "shares").split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(picked.len(), 2);
    assert_ne!((picked[0] - 1) / 2, (picked[1] - 1) / 2);

    let bad = evcs(&["contrast", "--secret", "s.pbm", "--state", "d/dealer.json", "--partition", "3"], dir);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn tampered_share_blocks_extension() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_secret(dir);
    ok(&["share", "--scheme", "better2", "--k", "2", "--n", "3", "--in", "s.pbm", "--out-dir", "d"], dir);
    let state = fs::read(dir.join("d/dealer.json")).unwrap();
    fs::copy(dir.join("d/share_0001.pbm"), dir.join("d/share_0002.pbm")).unwrap();
    let out = evcs(&["extend", "--state", "d/dealer.json"], dir);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(fs::read(dir.join("d/dealer.json")).unwrap(), state);

    fs::remove_file(dir.join("d/share_0002.pbm")).unwrap();
    ok(&["extend", "--state", "d/dealer.json"], dir);
}

#[test]
fn theory_and_curves() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let out = ok(&["theory", "--table", "I", "--kmax", "4"], dir);
    assert!(out.contains("13/112"));
    let csv = ok(&["theory", "--table", "II", "--csv"], dir);
    assert!(csv.lines().any(|l| l.starts_with("5,inf,-,16,617,")));
    let csv = ok(&["theory", "--table", "IV", "--kmax", "4", "--mode", "xor", "--csv"], dir);
    assert!(csv.lines().any(|l| l.starts_with("4,inf,\"[1,1,1,1]\",3,49,")));

    let out = ok(&["convergence", "--curve", "rgvcs-xor", "--k", "2", "--epsilon", "0.05"], dir);
    assert_eq!(value(&out, "n"), "15");
    let out = ok(&["convergence", "--curve", "better", "--k", "3"], dir);
    assert_eq!(value(&out, "n"), "34");
    let out = ok(&["compare", "--a", "rgvcs-xor", "--b", "rgvcs-or", "--k", "3", "--t-max", "40"], dir);
    assert_eq!(value(&out, "classification"), "strictly_better");
}

#[test]
fn usage_and_runtime_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    assert_eq!(evcs(&[], dir).status.code(), Some(2));
    assert_eq!(evcs(&["share", "--scheme", "kgrouped"], dir).status.code(), Some(2));
    assert_eq!(evcs(&["theory", "--table", "IX"], dir).status.code(), Some(2));
    assert_eq!(evcs(&["convergence", "--curve", "better", "--k", "4"], dir).status.code(), Some(2));
    let missing = evcs(&["recover", "--out", "r.pbm", "nope.pbm"], dir);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("nope.pbm"));
    fs::write(dir.join("junk.pbm"), b"P1\n2 2\n0 1 x").unwrap();
    let junk = evcs(&["recover", "--out", "r.pbm", "junk.pbm"], dir);
    assert_eq!(junk.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&junk.stderr).contains("byte 11"));
    assert_eq!(evcs(&["--help"], dir).status.code(), Some(0));
}
