use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use spf_core::store::load_witness;

fn spf(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spf"));
    cmd.args(args).env_remove("SPF_CACHE_DIR");
    if let Some(c) = cache {
        cmd.arg("--cache-dir").arg(c);
    }
    cmd.output().expect("spf runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn strip_ms(mut v: Vec<Value>) -> Vec<Value> {
    for x in &mut v {
        if let Some(o) = x.as_object_mut() {
            o.remove("ms");
        }
    }
    v
}

#[test]
fn gamma_and_sym_are_not_isomorphic_at_p3() {
    let out = spf(&["iso", "--lhs", "Gamma(3)", "--rhs", "S(3)"], None);
    assert_eq!(out.status.code(), Some(1));
    let r = &lines(&out)[0];
    assert_eq!(r["status"], "refuted");
    assert_eq!(r["dims"], serde_json::json!([10, 10]));
}

#[test]
fn isomorphic_pair_is_verified_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = spf(&["iso", "--lhs", "Gamma(2,1)", "--rhs", "Gamma(1,2)"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(0));
    let r = &lines(&out)[0];
    assert_eq!(r["status"], "verified");
    let rel = r["witness_file"].as_str().expect("witness path");
    let w = load_witness(&dir.path().join(rel)).unwrap();
    assert_eq!(w.map.rows(), 18);
}

#[test]
fn mullineux_of_hook() {
    let out = spf(&["mullineux", "--lambda", "2,1"], None);
    assert!(out.status.success());
    assert_eq!(lines(&out)[0]["mullineux"], "(3)");
    let out = spf(&["--format", "text", "mullineux", "--lambda", "(2,1)"], None);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(3)");
}

#[test]
fn usage_errors_exit_2() {
    let out = spf(&["eval", "--expr", "S(3"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 3"));
    let out = spf(&["ext", "--mu", "2,1", "--nu", "2"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = spf(&["--d", "2", "eval", "--expr", "S(3)"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = spf(&["--p", "4", "info"], None);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn eval_reports_dimension_and_factors() {
    let out = spf(&["eval", "--expr", "Gamma(2,1)"], None);
    assert!(out.status.success());
    let v = &lines(&out)[0];
    assert_eq!(v["dim"], 18);
    let total: u64 = v["character"].as_array().unwrap().iter().map(|c| c[1].as_u64().unwrap()).sum();
    assert_eq!(total, 18);
}

#[test]
fn reruns_are_deterministic() {
    let args = ["verify", "--suite", "mullineux", "--seed", "7"];
    let a = strip_ms(lines(&spf(&args, None)));
    let b = strip_ms(lines(&spf(&args, None)));
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["eval", "--expr", "dual(S(2,1))"];
    let first = spf(&args, Some(dir.path()));
    assert!(first.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "bin"))
        .collect();
    assert_eq!(files.len(), 1);
    let second = spf(&args, Some(dir.path()));
    assert_eq!(first.stdout, second.stdout);

    let name = files[0].file_name().unwrap().to_string_lossy().into_owned();
    assert!(name.ends_with(&format!("-v{}.bin", env!("CARGO_PKG_VERSION"))));
    let stale = dir.path().join(name.replace(env!("CARGO_PKG_VERSION"), "0.0.0-old"));
    std::fs::rename(&files[0], &stale).unwrap();
    let third = spf(&args, Some(dir.path()));
    assert_eq!(third.stdout, first.stdout);
    assert!(files[0].exists());

    let mut bytes = std::fs::read(&files[0]).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0xff;
    std::fs::write(&files[0], bytes).unwrap();
    let fourth = spf(&args, Some(dir.path()));
    assert!(fourth.status.success());
    assert_eq!(fourth.stdout, first.stdout);
    assert!(String::from_utf8_lossy(&fourth.stderr).contains("warning"));
}

#[test]
fn info_caches_schur_structure() {
    let dir = tempfile::tempdir().unwrap();
    let a = lines(&spf(&["--d", "2", "info"], Some(dir.path())));
    let b = lines(&spf(&["--d", "2", "info"], Some(dir.path())));
    assert_eq!(a[0]["cached"], false);
    assert_eq!(b[0]["cached"], true);
    assert_eq!(a[0]["schur_dim"], 10);
}

#[test]
fn identity_suite_flags_only_the_misstated_cells() {
    let out = spf(&["verify", "--suite", "identities"], None);
    assert_eq!(out.status.code(), Some(1));
    let v = lines(&out);
    let count = |s: &str| v.iter().filter(|r| r["status"] == s).count();
    assert!(count("verified") >= 20);
    assert_eq!(count("refuted"), 0);
    for r in v.iter().filter(|r| r["status"] == "discrepancy") {
        assert!(r["id"].as_str().unwrap().starts_with("identity/hom-sym-as-stated/"));
    }
    assert_eq!(count("discrepancy"), 3);
}

#[test]
fn simple_tensor_table_at_p3() {
    let out = spf(&["--format", "text", "table", "--kind", "simple-tensor"], None);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("L(2,1) ⊗ L(1,1,1): dim 1, simple ≅ L(1,1,1)"));
    assert!(text.contains("L(2,1) ⊗ L(2,1): dim 10, not simple"));
    assert_eq!(out.status.code(), Some(1));
}
