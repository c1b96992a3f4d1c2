//! Annotated fixture corpus harness.
//!
//! A fixture file marks each expected finding with a `;; @expect rule-id`
//! comment on the line above the offending form. Expectations are
//! line-granular.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::LazyLock;

use rayon::prelude::*;
use regex::Regex;
use serde::Serialize;
use thiserror::Error;
use walkdir::WalkDir;

use crate::engine::{lint_source, Config, ConfigError, TestPaths, CONFIG_FILE};
use crate::rules::find_rule;

static DIRECTIVE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^\s*;+\s*@expect\b(.*)$").unwrap());

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Expectation {
    pub line: u32,
    pub rule_id: String,
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("{file}:{line}: unknown rule `{rule}` in @expect")]
    UnknownRule { file: String, line: u32, rule: String },
    #[error("{file}:{line}: @expect without a rule id")]
    EmptyDirective { file: String, line: u32 },
    #[error("{file}:{line}: @expect is not followed by code")]
    Dangling { file: String, line: u32 },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

fn is_comment_or_blank(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with(';')
}

/// Collects the `@expect` directives of one file, sorted by line.
pub fn parse_expectations(file: &str, source: &str) -> Result<Vec<Expectation>, FixtureError> {
    let mut out = Vec::new();
    let mut pending: Vec<(u32, String)> = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let lineno = idx as u32 + 1;
        if let Some(caps) = DIRECTIVE.captures(line) {
            let ids: Vec<&str> = caps[1].split_whitespace().collect();
            if ids.is_empty() {
                return Err(FixtureError::EmptyDirective { file: file.into(), line: lineno });
            }
            for id in ids {
                if find_rule(id).is_none() {
                    return Err(FixtureError::UnknownRule { file: file.into(), line: lineno, rule: id.into() });
                }
                pending.push((lineno, id.to_string()));
            }
        } else if !is_comment_or_blank(line) {
            out.extend(pending.drain(..).map(|(_, rule_id)| Expectation { line: lineno, rule_id }));
        }
    }
    if let Some((line, _)) = pending.first() {
        return Err(FixtureError::Dangling { file: file.into(), line: *line });
    }
    out.sort();
    Ok(out)
}

/// One expected or emitted finding that had no counterpart.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Mismatch {
    pub file: String,
    pub line: u32,
    pub rule_id: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub files: usize,
    pub matched: usize,
    pub missing: Vec<Mismatch>,
    pub unexpected: Vec<Mismatch>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }

    fn merge(&mut self, other: Report) {
        self.files += other.files;
        self.matched += other.matched;
        self.missing.extend(other.missing);
        self.unexpected.extend(other.unexpected);
    }
}

/// Multiset difference of expected and found `(line, rule)` pairs.
pub fn compare(file: &str, expected: &[Expectation], found: &[Expectation]) -> Report {
    let mut counts: BTreeMap<&Expectation, i64> = BTreeMap::new();
    for e in expected {
        *counts.entry(e).or_default() += 1;
    }
    for f in found {
        *counts.entry(f).or_default() -= 1;
    }
    let mut report = Report { files: 1, ..Report::default() };
    let mismatch = |e: &Expectation| Mismatch { file: file.to_string(), line: e.line, rule_id: e.rule_id.clone() };
    for (e, n) in counts {
        for _ in 0..n.max(0) {
            report.missing.push(mismatch(e));
        }
        for _ in 0..(-n).max(0) {
            report.unexpected.push(mismatch(e));
        }
    }
    report.matched = expected.len() - report.missing.len();
    report
}

/// Config for a fixture: `base` overlaid with the nearest config file
/// between the fixture's directory and the corpus root.
fn config_for(file: &Path, root: &Path, base: &Config) -> Result<Config, FixtureError> {
    let mut config = base.clone();
    let Some(dir) = file.parent() else { return Ok(config) };
    let found = dir
        .ancestors()
        .take_while(|d| d.starts_with(root))
        .map(|d| d.join(CONFIG_FILE))
        .find(|p| p.is_file());
    if let Some(path) = found {
        let text = std::fs::read_to_string(&path).map_err(|source| FixtureError::Io { path: path.clone(), source })?;
        config.apply_edn(&text, &path)?;
    }
    Ok(config)
}

fn check_file(path: &Path, root: &Path, base: &Config, tests: &TestPaths) -> Result<Report, FixtureError> {
    let rel = path.strip_prefix(root).unwrap_or(path).to_string_lossy().replace('\\', "/");
    let source = std::fs::read_to_string(path).map_err(|source| FixtureError::Io { path: path.to_path_buf(), source })?;
    let expected = parse_expectations(&rel, &source)?;
    let config = config_for(path, root, base)?;
    let result = lint_source(&rel, &source, tests.is_test(&rel), &config);
    let found: Vec<Expectation> = result
        .diagnostics
        .iter()
        .map(|d| Expectation { line: d.span.start.line, rule_id: d.rule_id.clone() })
        .collect();
    Ok(compare(&rel, &expected, &found))
}

/// Source files under `dir`, sorted.
pub fn corpus_files(dir: &Path, config: &Config) -> Vec<PathBuf> {
    WalkDir::new(dir)
        .sort_by_file_name()
        .into_iter()
        .filter_map(Result::ok)
        .filter(|e| e.file_type().is_file())
        .filter(|e| {
            e.path()
                .extension()
                .and_then(|x| x.to_str())
                .is_some_and(|x| config.extensions.iter().any(|c| c == x))
        })
        .map(|e| e.into_path())
        .collect()
}

/// Lints every fixture under `dir` and compares against its directives.
/// Files are checked concurrently; the merged report is in path order.
pub fn run_corpus(dir: &Path, base: &Config) -> Result<Report, FixtureError> {
    let tests = TestPaths::new(&base.test_paths).unwrap_or_else(|_| TestPaths::new(&[]).expect("empty glob set"));
    let files = corpus_files(dir, base);
    let reports: Vec<Result<Report, FixtureError>> =
        files.par_iter().map(|f| check_file(f, dir, base, &tests)).collect();
    let mut total = Report::default();
    for r in reports {
        total.merge(r?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(line: u32, rule: &str) -> Expectation {
        Expectation { line, rule_id: rule.into() }
    }

    #[test]
    fn directive_applies_to_next_code_line() {
        let src = "(ns a)\n\n;; @expect redundant-do\n\n; note\n(when c (do a b))\n";
        assert_eq!(parse_expectations("f", src).unwrap(), [exp(6, "redundant-do")]);
        assert!(parse_expectations("f", "(ns a)\n(inc 1)\n").unwrap().is_empty());
    }

    #[test]
    fn directives_stack() {
        let src = ";; @expect redundant-do\n;; @expect verbose-check redundant-do\n(x)";
        assert_eq!(
            parse_expectations("f", src).unwrap(),
            [exp(3, "redundant-do"), exp(3, "redundant-do"), exp(3, "verbose-check")]
        );
    }

    #[test]
    fn bad_directives() {
        assert!(matches!(parse_expectations("f", ";; @expect bogus-rule\n(x)"), Err(FixtureError::UnknownRule { .. })));
        assert!(matches!(parse_expectations("f", ";; @expect\n(x)"), Err(FixtureError::EmptyDirective { .. })));
        assert!(matches!(parse_expectations("f", "(x)\n;; @expect redundant-do\n"), Err(FixtureError::Dangling { .. })));
    }

    #[test]
    fn multiset_comparison() {
        let r = compare("f", &[exp(1, "a"), exp(1, "a"), exp(2, "b")], &[exp(1, "a"), exp(3, "c")]);
        assert_eq!(r.matched, 1);
        assert_eq!(r.missing.len(), 2);
        assert_eq!(r.unexpected.len(), 1);
        assert!(!r.passed());
        assert!(compare("f", &[exp(1, "a")], &[exp(1, "a")]).passed());
    }
}
