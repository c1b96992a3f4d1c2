use crate::reader::{Form, FormKind};
use std::collections::{BTreeMap, BTreeSet};

/// What an `(ns ...)` declaration says about name resolution.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NsInfo {
    pub name: String,
    /// alias → full namespace, from `:require ... :as` / `:as-alias`
    pub aliases: BTreeMap<String, String>,
    /// referred symbol → source namespace, from `:refer` / `:use :only`
    pub refers: BTreeMap<String, String>,
    /// fully qualified class names from `:import`
    pub imports: BTreeSet<String>,
    /// core names hidden by `(:refer-clojure :exclude [...])`
    pub core_excludes: BTreeSet<String>,
    /// skipped clauses and overwritten entries
    pub notes: Vec<String>,
}

impl NsInfo {
    /// Whether `simple` is the unqualified name of an imported class.
    pub fn imports_class(&self, simple: &str) -> Option<&str> {
        self.imports
            .iter()
            .find(|full| full.rsplit('.').next() == Some(simple))
            .map(String::as_str)
    }

    fn add_alias(&mut self, alias: &str, full: &str) {
        if let Some(prev) = self.aliases.insert(alias.to_string(), full.to_string()) {
            if prev != full {
                self.notes.push(format!("alias {alias} redefined: {prev} -> {full}"));
            }
        }
    }

    fn add_refer(&mut self, name: &str, from: &str) {
        if let Some(prev) = self.refers.insert(name.to_string(), from.to_string()) {
            if prev != from {
                self.notes.push(format!("refer {name} redefined: {prev} -> {from}"));
            }
        }
    }
}

fn symbol_text(form: &Form) -> Option<String> {
    form.unwrap_meta().as_symbol().map(|s| s.to_string())
}

/// Returns the clause keyword of `(:require ...)` or `[:require ...]`.
fn clause(form: &Form) -> Option<(&str, &[Form])> {
    let items = match &form.kind {
        FormKind::List(items) | FormKind::Vector(items) => items,
        _ => return None,
    };
    let (head, rest) = items.split_first()?;
    match &head.kind {
        FormKind::Keyword(k) if k.ns.is_none() => Some((k.name.as_str(), rest)),
        // old-style (require ...) inside ns
        FormKind::Symbol(s) if s.ns.is_none() => Some((s.name.as_str(), rest)),
        _ => None,
    }
}

fn is_ns_head(form: &Form) -> bool {
    match form.head().and_then(Form::as_symbol) {
        Some(s) => s.name == "ns" && matches!(s.ns.as_deref(), None | Some("clojure.core")),
        None => false,
    }
}

/// Parses a `(ns ...)` form; `None` for anything else.
pub fn parse_ns(form: &Form) -> Option<NsInfo> {
    if !is_ns_head(form) {
        return None;
    }
    let items: Vec<&Form> = Form::live(form.args()).collect();
    let mut info = NsInfo { name: items.first().and_then(|f| symbol_text(f)).unwrap_or_default(), ..NsInfo::default() };
    for item in items.iter().skip(1) {
        if matches!(item.kind, FormKind::Str(_) | FormKind::Map(_)) {
            continue;
        }
        let Some((name, args)) = clause(item) else {
            info.notes.push(format!("skipped ns clause at {}", item.span.start));
            continue;
        };
        match name {
            "require" => {
                for spec in Form::live(args) {
                    libspec(&mut info, "", spec, false);
                }
            }
            "use" => {
                for spec in Form::live(args) {
                    libspec(&mut info, "", spec, true);
                }
            }
            "import" => {
                for (class, _) in import_entries(args) {
                    info.imports.insert(class);
                }
            }
            "refer-clojure" => {
                let mut it = Form::live(args);
                while let (Some(k), Some(v)) = (it.next(), it.next()) {
                    if k.as_keyword().is_some_and(|k| k.name == "exclude") {
                        if let FormKind::Vector(names) | FormKind::List(names) | FormKind::Set(names) = &v.kind {
                            info.core_excludes.extend(names.iter().filter_map(|n| n.simple_symbol().map(str::to_string)));
                        }
                    }
                }
            }
            "gen-class" | "load" => {}
            other => info.notes.push(format!("unrecognized ns clause :{other}")),
        }
    }
    Some(info)
}

fn join_ns(prefix: &str, name: &str) -> String {
    if prefix.is_empty() {
        name.to_string()
    } else {
        format!("{prefix}.{name}")
    }
}

fn libspec(info: &mut NsInfo, prefix: &str, spec: &Form, is_use: bool) {
    match &spec.kind {
        FormKind::Symbol(_) => {
            if let Some(name) = symbol_text(spec) {
                if is_use {
                    info.notes.push(format!("(:use {}) refers every public name", join_ns(prefix, &name)));
                }
            }
        }
        FormKind::Keyword(_) => {}
        FormKind::Vector(items) | FormKind::List(items) => {
            let items: Vec<&Form> = Form::live(items).collect();
            let Some(lib) = items.first().and_then(|f| symbol_text(f)) else {
                info.notes.push(format!("malformed libspec at {}", spec.span.start));
                return;
            };
            let rest = &items[1..];
            // prefix list: (clojure [string :as str] set)
            let is_prefix_list = !rest.is_empty() && rest.iter().all(|f| !matches!(f.kind, FormKind::Keyword(_)))
                && (matches!(spec.kind, FormKind::List(_)) || rest.iter().any(|f| matches!(f.kind, FormKind::Vector(_) | FormKind::List(_))));
            if is_prefix_list {
                let base = join_ns(prefix, &lib);
                for sub in rest {
                    libspec(info, &base, sub, is_use);
                }
                return;
            }
            let full = join_ns(prefix, &lib);
            let mut i = 0;
            while i + 1 < rest.len() {
                let (key, value) = (rest[i], rest[i + 1]);
                match key.as_keyword().map(|k| k.name.as_str()) {
                    Some("as") | Some("as-alias") => {
                        if let Some(alias) = symbol_text(value) {
                            info.add_alias(&alias, &full);
                        }
                    }
                    Some("refer") | Some("only") => {
                        if let FormKind::Vector(names) | FormKind::List(names) = &value.kind {
                            for n in names.iter().filter_map(Form::simple_symbol) {
                                info.add_refer(n, &full);
                            }
                        } else {
                            info.notes.push(format!("{full} refers every public name"));
                        }
                    }
                    Some("rename") => {
                        if let Some(pairs) = value.as_map() {
                            for pair in pairs.chunks(2) {
                                if let [_, to] = pair {
                                    if let Some(n) = to.simple_symbol() {
                                        info.add_refer(n, &full);
                                    }
                                }
                            }
                        }
                    }
                    _ => {}
                }
                i += 2;
            }
        }
        _ => info.notes.push(format!("malformed libspec at {}", spec.span.start)),
    }
}

/// Expands `:import` arguments into (fully qualified class, spec form) pairs.
/// Handles `java.util.Date`, `(java.util Date UUID)` and `[java.util Date]`.
pub fn import_entries(args: &[Form]) -> Vec<(String, &Form)> {
    let mut out = Vec::new();
    for spec in Form::live(args) {
        let spec_inner = match &spec.kind {
            FormKind::Quote(inner) => inner.as_ref(),
            _ => spec,
        };
        match &spec_inner.kind {
            FormKind::Symbol(_) => {
                if let Some(name) = symbol_text(spec_inner) {
                    out.push((name, spec));
                }
            }
            FormKind::List(items) | FormKind::Vector(items) => {
                let mut it = Form::live(items);
                if let Some(pkg) = it.next().and_then(symbol_text) {
                    for class in it.filter_map(symbol_text) {
                        out.push((format!("{pkg}.{class}"), spec));
                    }
                }
            }
            _ => {}
        }
    }
    out
}

/// Finds the `:import` clauses of an ns form and expands them.
pub fn ns_imports(form: &Form) -> Vec<(String, &Form)> {
    if !is_ns_head(form) {
        return Vec::new();
    }
    Form::live(form.args())
        .filter_map(clause)
        .filter(|(name, _)| *name == "import")
        .flat_map(|(_, args)| import_entries(args))
        .collect()
}
