use std::collections::BTreeMap;

use super::types::{Diagnostic, ParamValue, RuleDescriptor, Severity};
use crate::reader::{CommentRecord, Form, Span};
use crate::syntax::{walk_with_options, NsInfo, WalkOptions, WalkState};

/// Everything detectors may know about the file being analyzed.
#[derive(Debug, Clone)]
pub struct FileContext {
    pub path: String,
    pub source: String,
    pub comments: Vec<CommentRecord>,
    pub ns: NsInfo,
    pub is_test: bool,
    pub features: Vec<String>,
}

impl FileContext {
    /// Context for an in-memory snippet: no namespace, not a test file,
    /// `:clj` features.
    pub fn for_source(path: &str, source: &str, comments: Vec<CommentRecord>, forms: &[Form]) -> FileContext {
        let ns = forms.iter().find_map(crate::syntax::parse_ns).unwrap_or_default();
        FileContext {
            path: path.to_string(),
            source: source.to_string(),
            comments,
            ns,
            is_test: false,
            features: vec!["clj".to_string()],
        }
    }
}

/// Effective configuration of one rule.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleSettings {
    pub enabled: bool,
    pub severity: Option<Severity>,
    pub params: BTreeMap<String, ParamValue>,
}

impl RuleSettings {
    pub fn defaults(desc: &RuleDescriptor) -> RuleSettings {
        RuleSettings {
            enabled: desc.default_enabled,
            severity: None,
            params: desc.params.iter().map(|(n, d)| (n.to_string(), ParamValue::from(*d))).collect(),
        }
    }
}

/// Handed to a detector while it runs: file facts, parameters and the
/// output buffer.
pub struct Ctx<'c> {
    pub file: &'c FileContext,
    settings: &'c RuleSettings,
    desc: &'static RuleDescriptor,
    out: Vec<Diagnostic>,
}

impl<'c> Ctx<'c> {
    pub fn new(file: &'c FileContext, settings: &'c RuleSettings, desc: &'static RuleDescriptor) -> Ctx<'c> {
        Ctx { file, settings, desc, out: Vec::new() }
    }

    pub fn into_diagnostics(self) -> Vec<Diagnostic> {
        self.out
    }

    fn param(&self, name: &str) -> ParamValue {
        self.settings
            .params
            .get(name)
            .cloned()
            .or_else(|| self.desc.param_default(name).map(ParamValue::from))
            .unwrap_or_else(|| panic!("rule {} has no parameter {name}", self.desc.id))
    }

    pub fn int(&self, name: &str) -> i64 {
        match self.param(name) {
            ParamValue::Int(n) => n,
            ParamValue::Ratio(r) => r as i64,
            other => panic!("parameter {name} is not numeric: {other}"),
        }
    }

    pub fn ratio(&self, name: &str) -> f64 {
        match self.param(name) {
            ParamValue::Ratio(r) => r,
            ParamValue::Int(n) => n as f64,
            other => panic!("parameter {name} is not numeric: {other}"),
        }
    }

    pub fn flag(&self, name: &str) -> bool {
        match self.param(name) {
            ParamValue::Flag(b) => b,
            other => panic!("parameter {name} is not a flag: {other}"),
        }
    }

    pub fn names(&self, name: &str) -> Vec<String> {
        match self.param(name) {
            ParamValue::Names(v) => v,
            other => panic!("parameter {name} is not a name list: {other}"),
        }
    }

    /// Walks `forms` with the file's namespace and features.
    pub fn walk<'a>(&self, forms: &'a [Form], mut visitor: impl FnMut(&'a Form, &WalkState<'a>))
    where
        'c: 'a,
    {
        let opts = WalkOptions { descend_quoted: false, features: self.file.features.clone() };
        walk_with_options(forms, &self.file.ns, &opts, &mut visitor);
    }

    pub fn report(&mut self, span: Span, message: impl Into<String>, suggestion: Option<String>) {
        self.report_as(self.desc.default_severity, span, message, suggestion);
    }

    /// Reports with a finding-specific default severity; a configured
    /// severity still takes precedence.
    pub fn report_as(&mut self, severity: Severity, span: Span, message: impl Into<String>, suggestion: Option<String>) {
        self.out.push(Diagnostic {
            rule_id: self.desc.id.to_string(),
            category: self.desc.category,
            severity: self.settings.severity.unwrap_or(severity),
            span,
            file: self.file.path.clone(),
            message: message.into(),
            suggestion,
        });
    }
}
