use super::core_names::is_core_name;
use super::ns::NsInfo;
use crate::reader::{Form, FormKind};
use std::collections::HashSet;

/// Local names introduced by one binding construct.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScopeFrame {
    names: HashSet<String>,
}

impl ScopeFrame {
    pub fn contains(&self, name: &str) -> bool {
        self.names.contains(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }
}

/// Stack of frames; the innermost frame is last.
#[derive(Debug, Clone, Default)]
pub struct Scope {
    frames: Vec<ScopeFrame>,
}

impl Scope {
    pub fn new() -> Scope {
        Scope::default()
    }

    pub fn push(&mut self) {
        self.frames.push(ScopeFrame::default());
    }

    pub fn pop(&mut self) {
        self.frames.pop();
    }

    /// Binds `name` in the innermost frame (opening one if needed).
    pub fn bind(&mut self, name: &str) {
        if self.frames.is_empty() {
            self.push();
        }
        if let Some(frame) = self.frames.last_mut() {
            frame.names.insert(name.to_string());
        }
    }

    pub fn is_bound(&self, name: &str) -> bool {
        self.frames.iter().rev().any(|f| f.contains(name))
    }

    pub fn depth(&self) -> usize {
        self.frames.len()
    }

    pub fn frames(&self) -> &[ScopeFrame] {
        &self.frames
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    /// Bound by an enclosing binding construct.
    Local,
    /// A `clojure.core` var or special form; carries the unqualified name.
    Core(String),
    /// A var in another namespace, resolved through an alias, a refer, or a
    /// fully qualified name.
    Aliased { ns: String, name: String },
    /// Java interop: `.method`, `Class.`, `Class/member`.
    Interop,
    Unknown,
}

impl Resolution {
    pub fn core_name(&self) -> Option<&str> {
        match self {
            Resolution::Core(name) => Some(name),
            _ => None,
        }
    }

    pub fn is_var(&self, ns: &str, name: &str) -> bool {
        matches!(self, Resolution::Aliased { ns: n, name: m } if n == ns && m == name)
    }
}

fn is_class_like(ns: &str) -> bool {
    ns.rsplit('.').next().and_then(|seg| seg.chars().next()).is_some_and(char::is_uppercase)
}

/// Resolves a symbol form against the local scope and the namespace
/// declaration.
pub fn resolve_symbol(sym: &Form, scope: &Scope, ns: &NsInfo) -> Resolution {
    let FormKind::Symbol(sym) = &sym.kind else {
        return Resolution::Unknown;
    };
    match &sym.ns {
        None => {
            let name = sym.name.as_str();
            if scope.is_bound(name) {
                return Resolution::Local;
            }
            if name.len() > 1 && name != ".." && (name.starts_with('.') || name.ends_with('.')) {
                return Resolution::Interop;
            }
            if let Some(from) = ns.refers.get(name) {
                return Resolution::Aliased { ns: from.clone(), name: name.to_string() };
            }
            if is_core_name(name) && !ns.core_excludes.contains(name) {
                return Resolution::Core(name.to_string());
            }
            Resolution::Unknown
        }
        Some(qualifier) => {
            let name = sym.name.as_str();
            let full = ns.aliases.get(qualifier).map(String::as_str).unwrap_or(qualifier);
            if full == "clojure.core" && is_core_name(name) {
                return Resolution::Core(name.to_string());
            }
            if ns.aliases.contains_key(qualifier) {
                return Resolution::Aliased { ns: full.to_string(), name: name.to_string() };
            }
            if is_class_like(qualifier) || ns.imports_class(qualifier).is_some() {
                return Resolution::Interop;
            }
            Resolution::Aliased { ns: full.to_string(), name: name.to_string() }
        }
    }
}
