use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run_in(dir: &Path, args: &[&str], config_env: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_clj-smell"));
    cmd.args(args).current_dir(dir).env_remove("CLJ_SMELL_CONFIG");
    if let Some(p) = config_env {
        cmd.env("CLJ_SMELL_CONFIG", p);
    }
    cmd.output().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

fn project() -> TempDir {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("f.clj"), "(ns f)\n\n(not (empty? xs))\n").unwrap();
    dir
}

#[test]
fn text_output_and_exit_code() {
    let dir = project();
    let out = run_in(dir.path(), &["lint", "f.clj"], None);
    assert_eq!(out.status.code(), Some(1));
    let stdout = text(&out.stdout);
    assert!(stdout.starts_with("f.clj:3:1: warning: [improper-emptiness-check] "), "{stdout}");
    assert!(stdout.contains("\n  suggestion: (seq xs)"));
    assert!(text(&out.stderr).contains("1 finding(s)"));
    assert!(!stdout.contains("finding(s)"));
}

#[test]
fn json_output_carries_every_field() {
    let dir = project();
    let out = run_in(dir.path(), &["lint", "--format", "json", "f.clj"], None);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let d = &v["diagnostics"][0];
    assert_eq!(d["file"], "f.clj");
    assert_eq!((d["line"].as_u64(), d["col"].as_u64()), (Some(3), Some(1)));
    assert_eq!((d["endLine"].as_u64(), d["endCol"].as_u64()), (Some(3), Some(18)));
    assert_eq!(d["rule"], "improper-emptiness-check");
    assert_eq!(d["category"], "clojure-specific");
    assert_eq!(d["severity"], "warning");
    assert_eq!(d["suggestion"], "(seq xs)");
    assert!(d["message"].as_str().is_some_and(|m| !m.is_empty()));
    assert_eq!(v["summary"]["diagnostics"], 1);
    assert!(out.stderr.is_empty());
}

#[test]
fn exit_code_ignores_format_and_follows_fail_level() {
    let dir = project();
    for format in ["text", "json"] {
        let out = run_in(dir.path(), &["lint", "--format", format, "--fail-level", "error", "f.clj"], None);
        assert_eq!(out.status.code(), Some(0), "{format}");
    }
    let out = run_in(dir.path(), &["lint", "--disable", "improper-emptiness-check", "f.clj"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn enable_turns_on_opt_in_rules() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("g.clj"), "(get m :k)\n").unwrap();
    let out = run_in(dir.path(), &["lint", "g.clj"], None);
    assert!(out.stdout.is_empty());
    let out = run_in(dir.path(), &["lint", "--enable", "missing-map-default", "g.clj"], None);
    assert!(text(&out.stdout).contains("[missing-map-default]"));
    assert_eq!(out.status.code(), Some(0), "info findings stay below the default fail level");
}

#[test]
fn config_from_environment_and_flag() {
    let dir = project();
    let cfg = dir.path().join("strict.edn");
    std::fs::write(&cfg, "{:rules {:improper-emptiness-check {:severity :error}}}").unwrap();
    let out = run_in(dir.path(), &["lint", "f.clj"], Some(&cfg));
    assert!(text(&out.stdout).contains(": error: [improper-emptiness-check]"));
    let other = dir.path().join("off.edn");
    std::fs::write(&other, "{:rules {:improper-emptiness-check false}}").unwrap();
    let out = run_in(dir.path(), &["lint", "--config", "off.edn", "f.clj"], Some(&cfg));
    assert!(out.stdout.is_empty(), "explicit flag wins over the environment");
}

#[test]
fn usage_and_config_failures_exit_2() {
    let dir = project();
    let out = run_in(dir.path(), &["lint", "--format", "yaml"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(text(&out.stderr).contains("--format"));
    let out = run_in(dir.path(), &["lint", "--enable", "bogus", "f.clj"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = run_in(dir.path(), &["lint", "--config", "missing.edn"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = run_in(dir.path(), &["lint", "no-such-dir"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rules_and_explain() {
    let dir = TempDir::new().unwrap();
    let out = run_in(dir.path(), &["rules"], None);
    assert_eq!(text(&out.stdout).lines().count(), 24);
    let out = run_in(dir.path(), &["rules", "--explain", "redundant-do"], None);
    let s = text(&out.stdout);
    assert!(s.contains("(when ready? (do (log) (run)))") && s.contains("(when ready? (log) (run))"));
}

#[test]
fn stats_on_empty_directory() {
    let dir = TempDir::new().unwrap();
    let out = run_in(dir.path(), &["stats"], None);
    assert_eq!(out.status.code(), Some(0));
    let s = text(&out.stdout);
    assert!(s.contains("files: 0") && s.contains("findings: 0"));
    assert!(s.trim_end().ends_with("implemented 24/26 catalog smells (out of scope: Shotgun Surgery, Inappropriate Intimacy)"));
}
