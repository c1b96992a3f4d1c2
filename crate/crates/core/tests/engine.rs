use std::fs;
use std::path::{Path, PathBuf};

use clj_smell_core::engine::{aggregate, discover_files, find_config, lint_paths, load_config, Config, IO_ERROR};
use clj_smell_core::Severity;
use tempfile::TempDir;

fn write(root: &Path, rel: &str, text: &str) -> PathBuf {
    let path = root.join(rel);
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(&path, text).unwrap();
    path
}

fn tree() -> TempDir {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "src/app/core.clj", "(ns app.core)\n(defn f [x] (not (nil? x)))\n");
    write(dir.path(), "src/app/ui.cljs", "(ns app.ui)\n(defn g [xs] (into [] xs))\n");
    write(dir.path(), "src/app/shared.cljc", "(ns app.shared)\n(def x #?(:clj 1 :cljs 2))\n");
    write(dir.path(), "src/app/notes.txt", "(not (nil? x))");
    write(dir.path(), "test/app/core_test.clj", "(ns app.core-test)\n(doall (map inc [1]))\n");
    dir
}

fn config_for(paths: &[PathBuf]) -> Config {
    Config { paths: paths.to_vec(), ..Config::default() }
}

#[test]
fn discovery_filters_sorts_and_marks_tests() {
    let dir = tree();
    let (files, errors) = discover_files(&config_for(&[dir.path().to_path_buf()]));
    assert!(errors.is_empty());
    let names: Vec<_> = files.iter().map(|f| f.path.strip_prefix(dir.path()).unwrap().to_string_lossy().replace('\\', "/")).collect();
    assert_eq!(names, ["src/app/core.clj", "src/app/shared.cljc", "src/app/ui.cljs", "test/app/core_test.clj"]);
    let tests: Vec<bool> = files.iter().map(|f| f.is_test).collect();
    assert_eq!(tests, [false, false, false, true]);
}

#[test]
fn overlapping_roots_are_deduplicated() {
    let dir = tree();
    let roots = [dir.path().to_path_buf(), dir.path().join("src"), dir.path().join("src/app/core.clj")];
    let (files, _) = discover_files(&config_for(&roots));
    assert_eq!(files.len(), 4);
}

#[test]
fn missing_root_is_an_error() {
    let dir = tree();
    let (files, errors) = discover_files(&config_for(&[dir.path().join("nope")]));
    assert!(files.is_empty());
    assert_eq!(errors.len(), 1);
}

#[test]
fn config_file_is_found_upwards_and_applied() {
    let dir = tree();
    write(dir.path(), ".clj-smell.edn", "{:paths [\"src\"] :fail-level :error :rules {:verbose-check false}}");
    let nested = dir.path().join("src/app");
    assert_eq!(find_config(&nested).unwrap(), dir.path().join(".clj-smell.edn").canonicalize().unwrap());
    let config = load_config(&nested, None).unwrap();
    assert_eq!(config.fail_level, Severity::Error);
    assert!(!config.is_enabled("verbose-check"));
    let run = lint_paths(&config);
    assert_eq!(run.results.len(), 3);
    let rules: Vec<_> = run.results.iter().flat_map(|r| &r.diagnostics).map(|d| d.rule_id.as_str()).collect();
    assert_eq!(rules, ["unnecessary-into"]);
    assert_eq!(aggregate(&run.results, &config, false).1, 0);
}

#[test]
fn broken_config_is_an_error() {
    let dir = tree();
    let path = write(dir.path(), "bad.edn", "{:paths [");
    assert!(load_config(dir.path(), Some(&path)).is_err());
    let path = write(dir.path(), "vec.edn", "[1 2]");
    assert!(load_config(dir.path(), Some(&path)).is_err());
}

#[test]
fn test_files_skip_production_rules_and_exit_code_follows_findings() {
    let dir = tree();
    let config = config_for(&[dir.path().to_path_buf()]);
    let run = lint_paths(&config);
    let rules: Vec<_> = run.results.iter().flat_map(|r| &r.diagnostics).map(|d| d.rule_id.as_str()).collect();
    assert_eq!(rules, ["verbose-check", "unnecessary-into"]);
    assert_eq!(aggregate(&run.results, &config, false).1, 1);
    let lenient = Config { fail_level: Severity::Error, ..config };
    assert_eq!(aggregate(&run.results, &lenient, false).1, 0);
}

#[test]
fn unreadable_file_is_reported_and_fails_hard() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bin.clj"), [0xff, 0xfe, 0x00]).unwrap();
    let config = config_for(&[dir.path().to_path_buf()]);
    let run = lint_paths(&config);
    assert_eq!(run.results[0].diagnostics[0].rule_id, IO_ERROR);
    assert_eq!(aggregate(&run.results, &config, false).1, 2);
}

#[test]
fn parallel_and_sequential_runs_agree() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let parallel = config_for(std::slice::from_ref(&corpus));
    let sequential = Config { parallel: false, ..parallel.clone() };
    let a = lint_paths(&parallel).results;
    let b = lint_paths(&sequential).results;
    assert!(a.len() >= 144);
    assert_eq!(a, b);
}
