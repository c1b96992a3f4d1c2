use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::reader::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    ClojureSpecific,
    Functional,
    Traditional,
    /// Pseudo-rules raised by the tool itself (parse errors, I/O, config).
    Tool,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::ClojureSpecific => "clojure-specific",
            Category::Functional => "functional",
            Category::Traditional => "traditional",
            Category::Tool => "tool",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown severity `{0}` (expected info, warning or error)")]
pub struct UnknownSeverity(pub String);

impl FromStr for Severity {
    type Err = UnknownSeverity;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "info" => Ok(Severity::Info),
            "warning" => Ok(Severity::Warning),
            "error" => Ok(Severity::Error),
            other => Err(UnknownSeverity(other.to_string())),
        }
    }
}

/// One finding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub rule_id: String,
    pub category: Category,
    pub severity: Severity,
    pub span: Span,
    pub file: String,
    pub message: String,
    pub suggestion: Option<String>,
}

impl Diagnostic {
    /// Ordering key within a file.
    pub fn sort_key(&self) -> (u32, u32, &str) {
        (self.span.start.line, self.span.start.col, &self.rule_id)
    }
}

/// Default value of a rule parameter, as declared in the registry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamDefault {
    Int(i64),
    Ratio(f64),
    Flag(bool),
    Names(&'static [&'static str]),
}

/// Effective value of a rule parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Int(i64),
    Ratio(f64),
    Flag(bool),
    Names(Vec<String>),
}

impl From<ParamDefault> for ParamValue {
    fn from(d: ParamDefault) -> Self {
        match d {
            ParamDefault::Int(n) => ParamValue::Int(n),
            ParamDefault::Ratio(r) => ParamValue::Ratio(r),
            ParamDefault::Flag(b) => ParamValue::Flag(b),
            ParamDefault::Names(names) => ParamValue::Names(names.iter().map(|s| s.to_string()).collect()),
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(n) => write!(f, "{n}"),
            ParamValue::Ratio(r) => write!(f, "{r}"),
            ParamValue::Flag(b) => write!(f, "{b}"),
            ParamValue::Names(names) => write!(f, "[{}]", names.join(" ")),
        }
    }
}

/// Static metadata for one detector.
#[derive(Debug, Clone, Copy)]
pub struct RuleDescriptor {
    pub id: &'static str,
    pub category: Category,
    pub default_severity: Severity,
    pub default_enabled: bool,
    pub params: &'static [(&'static str, ParamDefault)],
    /// Name of the smell in the catalog.
    pub catalog_name: &'static str,
    /// Evidence tags of the grey-literature sources.
    pub sources: &'static [&'static str],
    pub description: &'static str,
    /// Code that triggers the rule.
    pub example: &'static str,
    /// A compliant version of `example`.
    pub rewrite: &'static str,
}

impl RuleDescriptor {
    pub fn param_default(&self, name: &str) -> Option<ParamDefault> {
        self.params.iter().find(|(n, _)| *n == name).map(|(_, d)| *d)
    }
}
