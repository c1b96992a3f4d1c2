//! Command-line front end: argument parsing, output formatting and exit codes.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use clj_smell_core::engine::{aggregate, lint_paths, load_config, Config, FileResult, OutputFormat};
use clj_smell_core::rules::{find_rule, registry, ParamDefault, RuleDescriptor};
use clj_smell_core::{Diagnostic, Severity};
use serde::Serialize;

pub const CONFIG_ENV: &str = "CLJ_SMELL_CONFIG";

#[derive(Debug, Parser, PartialEq, Eq)]
#[command(name = "clj-smell", version, about = "Detects code smells in Clojure sources")]
pub struct Command {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand, PartialEq, Eq)]
pub enum Verb {
    /// Report smells in files or directories
    Lint(LintArgs),
    /// List the detectors
    Rules {
        /// Describe one rule with an example and its rewrite
        #[arg(long, value_name = "RULE")]
        explain: Option<String>,
    },
    /// Count findings per rule and category
    Stats(TargetArgs),
}

#[derive(Debug, clap::Args, PartialEq, Eq, Default)]
pub struct TargetArgs {
    /// Files or directories to analyze (defaults to the configured paths, then `.`)
    pub paths: Vec<PathBuf>,
    /// Config file (defaults to $CLJ_SMELL_CONFIG, then the nearest .clj-smell.edn)
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Lint files one at a time
    #[arg(long)]
    pub no_parallel: bool,
}

#[derive(Debug, clap::Args, PartialEq, Eq, Default)]
pub struct LintArgs {
    #[command(flatten)]
    pub targets: TargetArgs,
    /// Lowest severity that makes the run fail
    #[arg(long, value_enum, value_name = "LEVEL")]
    pub fail_level: Option<Level>,
    /// Turn a rule on (repeatable)
    #[arg(long, value_name = "RULE")]
    pub enable: Vec<String>,
    /// Turn a rule off (repeatable)
    #[arg(long, value_name = "RULE")]
    pub disable: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Info,
    Warning,
    Error,
}

impl From<Level> for Severity {
    fn from(l: Level) -> Severity {
        match l {
            Level::Info => Severity::Info,
            Level::Warning => Severity::Warning,
            Level::Error => Severity::Error,
        }
    }
}

/// Parses `argv` including the program name.
pub fn parse_args<I, T>(argv: I) -> Result<Command, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Command::try_parse_from(argv)
}

/// Process-level inputs that are not arguments.
#[derive(Debug, Clone, Default)]
pub struct Environment {
    pub cwd: PathBuf,
    pub config_env: Option<PathBuf>,
}

impl Environment {
    pub fn from_process() -> Environment {
        Environment {
            cwd: std::env::current_dir().unwrap_or_else(|_| PathBuf::from(".")),
            config_env: std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from),
        }
    }
}

#[derive(Debug, Serialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct JsonDiagnostic {
    pub file: String,
    pub line: u32,
    pub col: u32,
    pub end_line: u32,
    pub end_col: u32,
    pub rule: String,
    pub category: String,
    pub severity: String,
    pub message: String,
    pub suggestion: Option<String>,
}

impl From<&Diagnostic> for JsonDiagnostic {
    fn from(d: &Diagnostic) -> JsonDiagnostic {
        JsonDiagnostic {
            file: d.file.clone(),
            line: d.span.start.line,
            col: d.span.start.col,
            end_line: d.span.end.line,
            end_col: d.span.end.col,
            rule: d.rule_id.clone(),
            category: d.category.as_str().to_string(),
            severity: d.severity.as_str().to_string(),
            message: d.message.clone(),
            suggestion: d.suggestion.clone(),
        }
    }
}

#[derive(Debug, Serialize, Default, PartialEq, Eq)]
pub struct Summary {
    pub files: usize,
    pub diagnostics: usize,
    pub errors: usize,
    pub warnings: usize,
    pub infos: usize,
    pub suppressed: usize,
}

impl Summary {
    fn of(results: &[FileResult]) -> Summary {
        let mut s = Summary { files: results.len(), ..Summary::default() };
        for r in results {
            s.suppressed += r.suppressed_count;
            for d in &r.diagnostics {
                s.diagnostics += 1;
                match d.severity {
                    Severity::Error => s.errors += 1,
                    Severity::Warning => s.warnings += 1,
                    Severity::Info => s.infos += 1,
                }
            }
        }
        s
    }

    fn line(&self) -> String {
        format!(
            "{} file(s), {} finding(s): {} error(s), {} warning(s), {} info; {} suppressed",
            self.files, self.diagnostics, self.errors, self.warnings, self.infos, self.suppressed
        )
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    diagnostics: Vec<JsonDiagnostic>,
    summary: &'a Summary,
}

/// One text-format finding, with its suggestion line if any.
pub fn format_text(d: &Diagnostic) -> String {
    let mut out = format!(
        "{}:{}:{}: {}: [{}] {}",
        d.file, d.span.start.line, d.span.start.col, d.severity, d.rule_id, d.message
    );
    if let Some(s) = &d.suggestion {
        out.push_str("\n  suggestion: ");
        out.push_str(s);
    }
    out
}

struct Failure(String);

fn resolve_config(args: &TargetArgs, env: &Environment) -> Result<Config, Failure> {
    let explicit = args.config.as_ref().or(env.config_env.as_ref()).map(|p| absolutize(p, &env.cwd));
    let mut config = load_config(&env.cwd, explicit.as_deref()).map_err(|e| Failure(e.to_string()))?;
    if !args.paths.is_empty() {
        config.paths = args.paths.clone();
    }
    if let Some(f) = args.format {
        config.output = match f {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        };
    }
    if args.no_parallel {
        config.parallel = false;
    }
    Ok(config)
}

fn absolutize(path: &Path, cwd: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        cwd.join(path)
    }
}

fn switch_rules(config: &mut Config, ids: &[String], on: bool) -> Result<(), Failure> {
    for id in ids {
        if !config.set_enabled(id, on) {
            return Err(Failure(format!("unknown rule `{id}`")));
        }
        if on && find_rule(id).is_some_and(|r| r.descriptor.category == clj_smell_core::Category::Traditional) {
            config.traditional_enabled = true;
        }
    }
    Ok(())
}

/// Executes a parsed command and returns the exit code.
pub fn run(cmd: &Command, env: &Environment, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cmd.verb {
        Verb::Lint(args) => lint(args, env, out, err),
        Verb::Rules { explain: None } => list_rules(out).map(|_| 0),
        Verb::Rules { explain: Some(id) } => explain(id, out).map(|_| 0),
        Verb::Stats(args) => stats(args, env, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Failure(message)) => {
            let _ = writeln!(err, "clj-smell: {message}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure(e.to_string())
}

fn report_warnings(config: &Config, err: &mut dyn Write) -> Result<(), Failure> {
    for w in &config.warnings {
        writeln!(err, "warning: {w}").map_err(io)?;
    }
    Ok(())
}

fn lint(args: &LintArgs, env: &Environment, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let mut config = resolve_config(&args.targets, env)?;
    switch_rules(&mut config, &args.enable, true)?;
    switch_rules(&mut config, &args.disable, false)?;
    if let Some(level) = args.fail_level {
        config.fail_level = level.into();
    }
    report_warnings(&config, err)?;
    let run = lint_paths(&config);
    for e in &run.errors {
        writeln!(err, "clj-smell: {}: {}", e.path, e.message).map_err(io)?;
    }
    let (_, code) = aggregate(&run.results, &config, !run.errors.is_empty());
    let summary = Summary::of(&run.results);
    match config.output {
        OutputFormat::Text => {
            for d in run.results.iter().flat_map(|r| &r.diagnostics) {
                writeln!(out, "{}", format_text(d)).map_err(io)?;
            }
            writeln!(err, "{}", summary.line()).map_err(io)?;
        }
        OutputFormat::Json => {
            let report = JsonReport {
                diagnostics: run.results.iter().flat_map(|r| &r.diagnostics).map(JsonDiagnostic::from).collect(),
                summary: &summary,
            };
            let text = serde_json::to_string_pretty(&report).map_err(|e| Failure(e.to_string()))?;
            writeln!(out, "{text}").map_err(io)?;
        }
    }
    Ok(code)
}

fn rule_line(d: &RuleDescriptor) -> String {
    format!(
        "{:<28} {:<16} {:<8} {}{} [{}]",
        d.id,
        d.category.as_str(),
        d.default_severity.as_str(),
        d.catalog_name,
        if d.default_enabled { "" } else { " (opt-in)" },
        d.sources.join(", ")
    )
}

fn list_rules(out: &mut dyn Write) -> Result<(), Failure> {
    for rule in registry() {
        writeln!(out, "{}", rule_line(&rule.descriptor)).map_err(io)?;
    }
    Ok(())
}

fn param_text(p: &ParamDefault) -> String {
    match p {
        ParamDefault::Int(n) => n.to_string(),
        ParamDefault::Ratio(r) => r.to_string(),
        ParamDefault::Flag(b) => b.to_string(),
        ParamDefault::Names(ns) => format!("[{}]", ns.join(" ")),
    }
}

fn explain(id: &str, out: &mut dyn Write) -> Result<(), Failure> {
    let rule = find_rule(id).ok_or_else(|| Failure(format!("unknown rule `{id}`")))?;
    let d = &rule.descriptor;
    let mut text = format!(
        "{} ({})\ncategory: {}\ndefault severity: {}{}\nsources: {}\n\n{}\n",
        d.id,
        d.catalog_name,
        d.category.as_str(),
        d.default_severity.as_str(),
        if d.default_enabled { "" } else { " (disabled by default)" },
        d.sources.join(", "),
        d.description
    );
    if !d.params.is_empty() {
        text.push_str("\nparameters:\n");
        for (name, default) in d.params {
            text.push_str(&format!("  :{name} {}\n", param_text(default)));
        }
    }
    text.push_str(&format!("\nfires on:\n{}\n\nrewrite:\n{}\n", indent(d.example), indent(d.rewrite)));
    out.write_all(text.as_bytes()).map_err(io)
}

fn indent(code: &str) -> String {
    code.lines().map(|l| format!("  {l}")).collect::<Vec<_>>().join("\n")
}

fn stats(args: &TargetArgs, env: &Environment, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let config = resolve_config(args, env)?;
    report_warnings(&config, err)?;
    let run = lint_paths(&config);
    for e in &run.errors {
        writeln!(err, "clj-smell: {}: {}", e.path, e.message).map_err(io)?;
    }
    let (stats, code) = aggregate(&run.results, &config, !run.errors.is_empty());
    match config.output {
        OutputFormat::Json => {
            let text = serde_json::to_string_pretty(&stats).map_err(|e| Failure(e.to_string()))?;
            writeln!(out, "{text}").map_err(io)?;
        }
        OutputFormat::Text => {
            let mut text = format!("files: {}\nfindings: {}\nsuppressed: {}\n\nby category:\n", stats.files, stats.diagnostics, stats.suppressed);
            for (cat, n) in &stats.per_category {
                text.push_str(&format!("  {cat:<28} {n}\n"));
            }
            text.push_str("\nby rule:\n");
            for (rule, n) in &stats.per_rule {
                text.push_str(&format!("  {rule:<28} {n}\n"));
            }
            text.push('\n');
            text.push_str(&stats.coverage_line());
            writeln!(out, "{text}").map_err(io)?;
        }
    }
    Ok(if code == 2 { 2 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_verbs() {
        let cmd = parse_args(["clj-smell", "lint", "src"]).unwrap();
        let Verb::Lint(args) = cmd.verb else { panic!() };
        assert_eq!(args.targets.paths, [PathBuf::from("src")]);
        let cmd = parse_args(["clj-smell", "rules", "--explain", "redundant-do"]).unwrap();
        assert_eq!(cmd.verb, Verb::Rules { explain: Some("redundant-do".into()) });
        let cmd = parse_args(["clj-smell", "lint", "--enable", "a", "--enable", "b", "--disable", "c"]).unwrap();
        let Verb::Lint(args) = cmd.verb else { panic!() };
        assert_eq!(args.enable, ["a", "b"]);
        assert_eq!(args.disable, ["c"]);
    }

    #[test]
    fn usage_errors() {
        for argv in [
            &["clj-smell", "lint", "--format", "yaml"][..],
            &["clj-smell"],
            &["clj-smell", "lint", "--bogus"],
            &["clj-smell", "frobnicate"],
            &["clj-smell", "lint", "--fail-level", "fatal"],
        ] {
            let e = parse_args(argv).unwrap_err();
            assert_eq!(e.exit_code(), 2, "{argv:?}");
        }
    }

    #[test]
    fn rule_listing_has_one_line_per_rule() {
        let mut out = Vec::new();
        let cmd = parse_args(["clj-smell", "rules"]).unwrap();
        assert_eq!(run(&cmd, &Environment::default(), &mut out, &mut Vec::new()), 0);
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 24);
        assert!(text.lines().all(|l| l.contains("[G")));
    }

    #[test]
    fn explain_unknown_rule_fails() {
        let cmd = parse_args(["clj-smell", "rules", "--explain", "nope"]).unwrap();
        let mut err = Vec::new();
        assert_eq!(run(&cmd, &Environment::default(), &mut Vec::new(), &mut err), 2);
        assert!(String::from_utf8(err).unwrap().contains("unknown rule"));
    }
}
