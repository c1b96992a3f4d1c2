use rayon::prelude::*;
use serde::Serialize;

use super::config::Config;
use super::discover::{discover_files, DiscoveryError, SourceFile};
use super::suppress::Suppressions;
use crate::reader::{read_forms, Span};
use crate::rules::{registry, Category, Diagnostic, FileContext, Severity};
use crate::syntax::parse_ns;

pub const PARSE_ERROR: &str = "parse-error";
pub const IO_ERROR: &str = "io-error";
pub const CONFIG_WARNING: &str = "config-warning";

/// Findings for one file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileResult {
    pub path: String,
    pub diagnostics: Vec<Diagnostic>,
    pub suppressed_count: usize,
}

fn tool_diagnostic(rule: &str, severity: Severity, span: Span, file: &str, message: String) -> Diagnostic {
    Diagnostic {
        rule_id: rule.to_string(),
        category: Category::Tool,
        severity,
        span,
        file: file.to_string(),
        message,
        suggestion: None,
    }
}

/// Lints in-memory source text.
pub fn lint_source(path: &str, source: &str, is_test: bool, config: &Config) -> FileResult {
    let read = read_forms(source);
    let mut detected: Vec<Diagnostic> = read
        .errors
        .iter()
        .map(|e| tool_diagnostic(PARSE_ERROR, Severity::Error, e.span, path, e.message.clone()))
        .collect();
    let ns = read.forms.iter().find_map(parse_ns).unwrap_or_default();
    let file = FileContext {
        path: path.to_string(),
        source: source.to_string(),
        comments: read.comments,
        ns,
        is_test,
        features: config.features.clone(),
    };
    for rule in registry() {
        let id = rule.descriptor.id;
        if !config.is_enabled(id) {
            continue;
        }
        if let Some(settings) = config.settings(id) {
            detected.extend(rule.run(&read.forms, &file, settings));
        }
    }
    let suppressions = Suppressions::parse(source, &file.comments);
    let before = detected.len();
    detected.retain(|d| d.category == Category::Tool || !suppressions.suppresses(d));
    let suppressed_count = before - detected.len();
    for (comment, problem) in &suppressions.problems {
        detected.push(tool_diagnostic(CONFIG_WARNING, Severity::Warning, comment.span, path, problem.clone()));
    }
    detected.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()).then_with(|| a.message.cmp(&b.message)));
    FileResult { path: path.to_string(), diagnostics: detected, suppressed_count }
}

/// Reads and lints one discovered file.
pub fn lint_file(file: &SourceFile, config: &Config) -> FileResult {
    match std::fs::read_to_string(&file.path) {
        Ok(source) => lint_source(&file.display, &source, file.is_test, config),
        Err(e) => FileResult {
            path: file.display.clone(),
            diagnostics: vec![tool_diagnostic(IO_ERROR, Severity::Error, Span::default(), &file.display, e.to_string())],
            suppressed_count: 0,
        },
    }
}

/// Results of linting every discovered file.
#[derive(Debug, Clone, Default)]
pub struct LintRun {
    pub results: Vec<FileResult>,
    pub errors: Vec<DiscoveryError>,
}

/// Discovers and lints files, in parallel when the config allows it.
/// Results come back in discovery order either way.
pub fn lint_paths(config: &Config) -> LintRun {
    let (files, errors) = discover_files(config);
    let results = if config.parallel {
        files.par_iter().map(|f| lint_file(f, config)).collect()
    } else {
        files.iter().map(|f| lint_file(f, config)).collect()
    };
    LintRun { results, errors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lint(src: &str) -> FileResult {
        lint_source("f.clj", src, false, &Config::default())
    }

    #[test]
    fn finds_and_sorts() {
        let r = lint("(ns a)\n\n(not (empty? xs))\n");
        let ids: Vec<_> = r.diagnostics.iter().map(|d| d.rule_id.as_str()).collect();
        assert_eq!(ids, ["improper-emptiness-check"]);
        assert_eq!((r.diagnostics[0].span.start.line, r.diagnostics[0].span.start.col), (3, 1));
    }

    #[test]
    fn empty_and_broken_files() {
        assert!(lint("").diagnostics.is_empty());
        let r = lint("(defn f [x]");
        assert_eq!(r.diagnostics.len(), 1);
        assert_eq!(r.diagnostics[0].rule_id, PARSE_ERROR);
        assert_eq!(r.diagnostics[0].severity, Severity::Error);
    }

    #[test]
    fn suppression_directives() {
        let r = lint("; clj-smell: ignore[redundant-do]\n(when c (do a b))");
        assert!(r.diagnostics.is_empty());
        assert_eq!(r.suppressed_count, 1);
        let r = lint("; clj-smell: ignore[verbose-check]\n(when c (do a b))");
        assert_eq!(r.diagnostics.len(), 1);
        let r = lint("; clj-smell: ignore-file[]\n(when c (do a b))\n(not (nil? x))");
        assert!(r.diagnostics.is_empty());
        assert_eq!(r.suppressed_count, 2);
        let r = lint("; clj-smell: ignore(x)\n(a)");
        assert_eq!(r.diagnostics[0].rule_id, CONFIG_WARNING);
    }
}
