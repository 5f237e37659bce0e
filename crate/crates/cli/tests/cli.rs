use std::path::Path;
use std::process::{Command, Output};

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn modification_listings() {
    let o = brauer(&["modifications", "C2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("2 modifications\n"));
    assert!(stdout(&brauer(&["modifications", "C1"])).starts_with("1 modification\n"));
    let o = brauer(&["modifications", "C3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(brauer(&["verify", "2:4"]).status.code(), Some(0));
    assert_eq!(brauer(&["verify", "6:36"]).status.code(), Some(2));
    assert_eq!(brauer(&["verify", "2:8", "--max-q", "4"]).status.code(), Some(3));
    assert_eq!(brauer(&["modifications", "C5", "--max-order", "4"]).status.code(), Some(3));
    assert_eq!(brauer(&["frobnicate"]).status.code(), Some(2));
    let o = brauer(&["component", "2:8", "--zeros", "[[1,1]]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not associative"));
}

#[test]
fn verify_summaries() {
    for spec in ["2:4", "3:9"] {
        let text = stdout(&brauer(&["verify", spec]));
        assert!(text.trim_end().ends_with("2/2 pass"), "{text}");
    }
    let text = stdout(&brauer(&["verify", "2:16"]));
    assert!(text.trim_end().ends_with("14/14 pass"), "{text}");
}

#[test]
fn monoid_json_round_trips() {
    let o = brauer(&["monoid", "2:4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    let typed: brauer_core::monoid::MonoidJson = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(serde_json::to_value(&typed).unwrap(), v);

    let o = brauer(&["verify", "2:8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let typed: brauer_core::verify::VerificationReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(serde_json::to_value(&typed).unwrap(), v);
}

fn cached_runs(dir: &Path, args: &[&str]) -> (Vec<u8>, Vec<u8>, Vec<u8>) {
    let fresh = brauer(args).stdout;
    let mut with_cache: Vec<&str> = args.to_vec();
    let d = dir.to_str().unwrap();
    with_cache.extend(["--cache-dir", d]);
    let miss = brauer(&with_cache).stdout;
    let hit = brauer(&with_cache).stdout;
    (fresh, miss, hit)
}

#[test]
fn cache_hits_match_fresh_runs() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["monoid", "2:16"][..],
        &["verify", "2:16", "--format", "json"][..],
        &["verify", "2:16"][..],
        &["monoid", "2:16", "--format", "text"][..],
    ] {
        let (fresh, miss, hit) = cached_runs(dir.path(), args);
        assert_eq!(fresh, miss, "{args:?}");
        assert_eq!(fresh, hit, "{args:?}");
    }
    // Two result kinds, each cached once.
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let o = brauer(&["monoid", "2:4", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), brauer(&["monoid", "2:4"]).stdout);
}
