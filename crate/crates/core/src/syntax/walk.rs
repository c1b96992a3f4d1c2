//! Pre-order traversal that tracks local bindings.
//!
//! The walker knows the binding shapes of `let`-like forms, `for`/`doseq`,
//! `fn`/`defn`/`defmacro`, `letfn`, `catch`, `as->` and method bodies of
//! `defrecord`/`deftype`/`reify`/`proxy`/`extend-*`. User macros are opaque
//! and walked as plain invocations.

use super::features::select_branch;
use super::ns::NsInfo;
use super::scope::{resolve_symbol, Resolution, Scope};
use crate::reader::{Form, FormKind};

/// Traversal state handed to visitors.
#[derive(Debug)]
pub struct WalkState<'a> {
    scope: Scope,
    ancestors: Vec<&'a Form>,
    ns: &'a NsInfo,
    pattern_depth: usize,
}

impl<'a> WalkState<'a> {
    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    pub fn ns(&self) -> &'a NsInfo {
        self.ns
    }

    /// Enclosing forms, outermost first; the visited form is not included.
    pub fn ancestors(&self) -> &[&'a Form] {
        &self.ancestors
    }

    pub fn parent(&self) -> Option<&'a Form> {
        self.ancestors.last().copied()
    }

    /// True while visiting a binding pattern (parameter vectors, the
    /// left-hand side of `let` pairs, ...).
    pub fn in_pattern(&self) -> bool {
        self.pattern_depth > 0
    }

    pub fn resolve(&self, sym: &Form) -> Resolution {
        resolve_symbol(sym, &self.scope, self.ns)
    }

    /// The `clojure.core` name `sym` refers to, if it refers to one.
    pub fn core_name<'f>(&self, sym: &'f Form) -> Option<&'f str> {
        let s = sym.as_symbol()?;
        match self.resolve(sym) {
            Resolution::Core(_) => Some(s.name.as_str()),
            _ => None,
        }
    }

    /// Core name of the head of a list form.
    pub fn head_core<'f>(&self, form: &'f Form) -> Option<&'f str> {
        self.core_name(form.head()?)
    }

    pub fn is_core_call(&self, form: &Form, name: &str) -> bool {
        self.head_core(form) == Some(name)
    }

    pub fn is_bound(&self, name: &str) -> bool {
        self.scope.is_bound(name)
    }
}

#[derive(Debug, Clone)]
pub struct WalkOptions {
    /// Also walk inside quoted and syntax-quoted forms.
    pub descend_quoted: bool,
    /// Active reader-conditional features.
    pub features: Vec<String>,
}

impl Default for WalkOptions {
    fn default() -> Self {
        WalkOptions { descend_quoted: false, features: vec!["clj".to_string()] }
    }
}

pub type Visitor<'a, 'v> = dyn FnMut(&'a Form, &WalkState<'a>) + 'v;

/// Walks `forms` in pre-order with default options.
pub fn walk_with_scope<'a>(forms: &'a [Form], ns: &'a NsInfo, visitor: &mut Visitor<'a, '_>) {
    walk_with_options(forms, ns, &WalkOptions::default(), visitor);
}

pub fn walk_with_options<'a>(forms: &'a [Form], ns: &'a NsInfo, opts: &WalkOptions, visitor: &mut Visitor<'a, '_>) {
    let mut walker = Walker {
        st: WalkState { scope: Scope::new(), ancestors: Vec::new(), ns, pattern_depth: 0 },
        visitor,
        opts,
    };
    for form in forms {
        walker.visit(form);
    }
}

/// Every local name a binding pattern introduces, in source order.
pub fn destructured_names(pattern: &Form) -> Vec<&str> {
    let mut out = Vec::new();
    collect_names(pattern, &mut out);
    out
}

fn collect_names<'f>(pattern: &'f Form, out: &mut Vec<&'f str>) {
    let pattern = pattern.unwrap_meta();
    match &pattern.kind {
        FormKind::Symbol(s) if s.ns.is_none() => {
            if s.name != "&" {
                out.push(&s.name);
            }
        }
        FormKind::Vector(items) => {
            let live: Vec<&Form> = Form::live(items).collect();
            let mut i = 0;
            while i < live.len() {
                if live[i].as_keyword().is_some_and(|k| k.name == "as") {
                    if let Some(sym) = live.get(i + 1) {
                        collect_names(sym, out);
                    }
                    i += 2;
                    continue;
                }
                collect_names(live[i], out);
                i += 1;
            }
        }
        FormKind::Map(items) => {
            let live: Vec<&Form> = Form::live(items).collect();
            for pair in live.chunks(2) {
                let [key, value] = pair else { continue };
                match key.as_keyword() {
                    Some(k) if matches!(k.name.as_str(), "keys" | "strs" | "syms") => {
                        if let FormKind::Vector(names) = &value.kind {
                            for n in Form::live(names) {
                                match &n.kind {
                                    FormKind::Symbol(s) => out.push(&s.name),
                                    FormKind::Keyword(k) => out.push(&k.name),
                                    _ => {}
                                }
                            }
                        }
                    }
                    Some(k) if k.name == "as" => collect_names(value, out),
                    Some(_) => {}
                    None => collect_names(key, out),
                }
            }
        }
        _ => {}
    }
}

struct Walker<'a, 'v, 'o> {
    st: WalkState<'a>,
    visitor: &'v mut Visitor<'a, 'v>,
    opts: &'o WalkOptions,
}

fn binding_head(name: &str) -> bool {
    matches!(
        name,
        "let" | "let*" | "loop" | "loop*" | "when-let" | "if-let" | "when-some" | "if-some" | "when-first"
            | "with-open" | "dotimes" | "with-local-vars"
    )
}

impl<'a> Walker<'a, '_, '_> {
    fn visit(&mut self, form: &'a Form) {
        match &form.kind {
            FormKind::Discard(_) => return,
            FormKind::ReaderCond { splicing, branches } => {
                let Some(chosen) = select_branch(branches, &self.opts.features) else { return };
                if *splicing {
                    if let FormKind::List(items) | FormKind::Vector(items) = &chosen.kind {
                        for item in items {
                            self.visit(item);
                        }
                    }
                } else {
                    self.visit(chosen);
                }
                return;
            }
            _ => {}
        }
        (self.visitor)(form, &self.st);
        self.st.ancestors.push(form);
        self.descend(form);
        self.st.ancestors.pop();
    }

    fn descend(&mut self, form: &'a Form) {
        match &form.kind {
            FormKind::Quote(inner) | FormKind::SyntaxQuote(inner) => {
                if self.opts.descend_quoted {
                    self.visit(inner);
                }
            }
            FormKind::Meta { target, .. } => self.visit(target),
            FormKind::AnonFn { body, max_arg, rest } => {
                self.st.scope.push();
                self.st.scope.bind("%");
                for n in 1..=*max_arg {
                    self.st.scope.bind(&format!("%{n}"));
                }
                if *rest {
                    self.st.scope.bind("%&");
                }
                self.visit(body);
                self.st.scope.pop();
            }
            FormKind::List(items) => self.descend_list(items),
            _ => {
                for child in form.children() {
                    self.visit(child);
                }
            }
        }
    }

    fn head_name(&self, items: &'a [Form]) -> Option<&'a str> {
        let sym = items.first()?.as_symbol()?;
        match sym.ns.as_deref() {
            None if !self.st.scope.is_bound(&sym.name) => Some(&sym.name),
            Some("clojure.core") => Some(&sym.name),
            _ => None,
        }
    }

    fn visit_all(&mut self, items: &'a [Form]) {
        for item in items {
            self.visit(item);
        }
    }

    fn descend_list(&mut self, items: &'a [Form]) {
        let Some(head) = self.head_name(items) else {
            self.visit_all(items);
            return;
        };
        let second_is_vector = items.get(1).is_some_and(|f| f.as_vector().is_some());
        match head {
            h if binding_head(h) && second_is_vector => {
                self.visit(&items[0]);
                self.st.scope.push();
                self.visit_bindings(&items[1], false);
                self.visit_all(&items[2..]);
                self.st.scope.pop();
            }
            "for" | "doseq" if second_is_vector => {
                self.visit(&items[0]);
                self.st.scope.push();
                self.visit_bindings(&items[1], true);
                self.visit_all(&items[2..]);
                self.st.scope.pop();
            }
            "fn" | "fn*" => {
                self.visit(&items[0]);
                self.st.scope.push();
                let mut rest = &items[1..];
                if let Some(name) = rest.first().filter(|f| f.unwrap_meta().simple_symbol().is_some()) {
                    self.visit(name);
                    if let Some(n) = name.unwrap_meta().simple_symbol() {
                        self.st.scope.bind(n);
                    }
                    rest = &rest[1..];
                }
                self.visit_arities(rest);
                self.st.scope.pop();
            }
            "defn" | "defn-" | "defmacro" => {
                self.visit(&items[0]);
                self.visit_arities(&items[1..]);
            }
            "letfn" if second_is_vector => {
                self.visit(&items[0]);
                self.st.scope.push();
                let specs = &items[1];
                for spec in Form::live(specs.as_vector().unwrap_or(&[])) {
                    if let Some(n) = spec.head().and_then(Form::simple_symbol) {
                        self.st.scope.bind(n);
                    }
                }
                (self.visitor)(specs, &self.st);
                self.st.ancestors.push(specs);
                for spec in specs.as_vector().unwrap_or(&[]) {
                    self.visit_method(spec);
                }
                self.st.ancestors.pop();
                self.visit_all(&items[2..]);
                self.st.scope.pop();
            }
            "catch" if items.len() >= 3 => {
                self.visit_all(&items[..2]);
                self.st.scope.push();
                self.visit_pattern(&items[2]);
                self.visit_all(&items[3..]);
                self.st.scope.pop();
            }
            "as->" if items.len() >= 3 => {
                self.visit_all(&items[..2]);
                self.st.scope.push();
                self.visit_pattern(&items[2]);
                self.visit_all(&items[3..]);
                self.st.scope.pop();
            }
            "defrecord" | "deftype" if items.len() >= 3 && items[2].as_vector().is_some() => {
                self.visit_all(&items[..2]);
                self.st.scope.push();
                self.visit_pattern(&items[2]);
                for item in &items[3..] {
                    self.visit_method(item);
                }
                self.st.scope.pop();
            }
            "reify" | "proxy" | "extend-protocol" | "extend-type" | "definterface" | "defprotocol" => {
                self.visit(&items[0]);
                for item in &items[1..] {
                    self.visit_method(item);
                }
            }
            "quote" => {
                self.visit(&items[0]);
                if self.opts.descend_quoted {
                    self.visit_all(&items[1..]);
                }
            }
            _ => self.visit_all(items),
        }
    }

    /// A method or `letfn` spec: `(name [params] body...)` or
    /// `(name ([params] body...) ...)`. Anything else is walked plainly.
    fn visit_method(&mut self, item: &'a Form) {
        let is_method = match item.as_list() {
            Some([name, second, ..]) => {
                name.simple_symbol().is_some()
                    && (second.as_vector().is_some()
                        || second.as_list().and_then(|l| l.first()).is_some_and(|p| p.as_vector().is_some()))
            }
            _ => false,
        };
        if !is_method {
            self.visit(item);
            return;
        }
        let items = item.as_list().unwrap_or(&[]);
        (self.visitor)(item, &self.st);
        self.st.ancestors.push(item);
        self.visit(&items[0]);
        self.visit_arities(&items[1..]);
        self.st.ancestors.pop();
    }

    /// Walks what follows a function name: either `[params] body...` or a
    /// sequence of `([params] body...)` arity lists.
    fn visit_arities(&mut self, items: &'a [Form]) {
        let first_list = items.iter().position(|f| f.as_list().is_some());
        let vector_at = items
            .iter()
            .position(|f| f.unwrap_meta().as_vector().is_some())
            .filter(|&v| first_list.is_none_or(|l| v < l));
        if let Some(v) = vector_at {
            self.visit_all(&items[..v]);
            self.st.scope.push();
            self.visit_pattern(&items[v]);
            self.visit_all(&items[v + 1..]);
            self.st.scope.pop();
            return;
        }
        for item in items {
            let arity = item.as_list().filter(|l| l.first().is_some_and(|p| p.unwrap_meta().as_vector().is_some()));
            match arity {
                Some(parts) => {
                    (self.visitor)(item, &self.st);
                    self.st.ancestors.push(item);
                    self.st.scope.push();
                    self.visit_pattern(&parts[0]);
                    self.visit_all(&parts[1..]);
                    self.st.scope.pop();
                    self.st.ancestors.pop();
                }
                None => self.visit(item),
            }
        }
    }

    /// Visits a binding pattern, then binds its names in the current frame.
    fn visit_pattern(&mut self, pattern: &'a Form) {
        self.st.pattern_depth += 1;
        self.visit(pattern);
        self.st.pattern_depth -= 1;
        for name in destructured_names(pattern) {
            self.st.scope.bind(name);
        }
    }

    /// Walks a binding vector. Each init sees the bindings before it.
    fn visit_bindings(&mut self, vector: &'a Form, comprehension: bool) {
        (self.visitor)(vector, &self.st);
        self.st.ancestors.push(vector);
        let live: Vec<&'a Form> = Form::live(vector.as_vector().unwrap_or(&[])).collect();
        let mut i = 0;
        while i < live.len() {
            let key = live[i];
            let value = live.get(i + 1).copied();
            i += 2;
            if comprehension {
                if let Some(kw) = key.as_keyword() {
                    self.visit(key);
                    if let Some(value) = value {
                        if kw.name == "let" && value.as_vector().is_some() {
                            self.visit_bindings(value, false);
                        } else {
                            self.visit(value);
                        }
                    }
                    continue;
                }
            }
            self.st.pattern_depth += 1;
            self.visit(key);
            self.st.pattern_depth -= 1;
            if let Some(value) = value {
                self.visit(value);
            }
            for name in destructured_names(key) {
                self.st.scope.bind(name);
            }
        }
        self.st.ancestors.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reader::{read_forms, read_one};
    use std::collections::BTreeSet;

    /// Names bound where the symbol `probe` is visited.
    fn bound_at_probe(src: &str) -> BTreeSet<String> {
        let forms = read_forms(src).forms;
        let ns = NsInfo::default();
        let mut found = None;
        walk_with_scope(&forms, &ns, &mut |form, st| {
            if form.is_simple_symbol("probe") {
                let names: BTreeSet<String> =
                    st.scope().frames().iter().flat_map(|f| f.names().map(str::to_string)).collect();
                found = Some(names);
            }
        });
        found.expect("probe visited")
    }

    fn set(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn destructuring_in_let() {
        assert_eq!(bound_at_probe("(let [{:keys [a b] :as m} x] probe)"), set(&["a", "b", "m"]));
    }

    #[test]
    fn fn_params() {
        assert_eq!(bound_at_probe("(fn [x] probe)"), set(&["x"]));
        assert_eq!(bound_at_probe("(fn self [x & [y :as ys]] probe)"), set(&["self", "x", "y", "ys"]));
    }

    #[test]
    fn let_is_sequential() {
        // the init of the second binding sees the first, not the second
        assert_eq!(bound_at_probe("(let [a 1 b (probe a)] b)"), set(&["a"]));
    }

    #[test]
    fn comprehension_bindings() {
        assert_eq!(
            bound_at_probe("(for [x xs :let [y (f x)] :when (p y) [k v] m] probe)"),
            set(&["x", "y", "k", "v"])
        );
    }

    #[test]
    fn letfn_catch_as_thread() {
        assert_eq!(bound_at_probe("(letfn [(f [n] probe)] (f 1))"), set(&["f", "n"]));
        assert_eq!(bound_at_probe("(try x (catch Exception e probe))"), set(&["e"]));
        assert_eq!(bound_at_probe("(as-> 1 v (inc v) probe)"), set(&["v"]));
        assert_eq!(bound_at_probe("(defrecord R [a b] P (m [this c] probe))"), set(&["a", "b", "this", "c"]));
        assert_eq!(bound_at_probe("(defn f ([a] a) ([a b] probe))"), set(&["a", "b"]));
        assert_eq!(bound_at_probe("(map #(probe %) xs)"), set(&["%", "%1"]));
    }

    #[test]
    fn map_destructuring_variants() {
        let p = read_one("{a :a [b c] :bc :strs [d] :my/keys [e] :or {a 1} :as all}").unwrap();
        let mut names = destructured_names(&p);
        names.sort_unstable();
        assert_eq!(names, ["a", "all", "b", "c", "d", "e"]);
    }

    #[test]
    fn discard_is_invisible() {
        let forms = read_forms("#_(let [y 1] y) (a #_b)").forms;
        let ns = NsInfo::default();
        let mut seen = Vec::new();
        walk_with_scope(&forms, &ns, &mut |form, _| seen.push(crate::reader::render(form)));
        assert_eq!(seen, ["(a #_b)", "a"]);
    }

    #[test]
    fn skips_syntax_quote_unless_asked() {
        let forms = read_forms("`(a ~b)").forms;
        let ns = NsInfo::default();
        let mut count = 0;
        walk_with_scope(&forms, &ns, &mut |_, _| count += 1);
        assert_eq!(count, 1);
        let mut count = 0;
        let opts = WalkOptions { descend_quoted: true, ..WalkOptions::default() };
        walk_with_options(&forms, &ns, &opts, &mut |_, _| count += 1);
        assert_eq!(count, 5);
    }

    #[test]
    fn selected_reader_branch_only() {
        let forms = read_forms("#?(:clj (a) :cljs (b))").forms;
        let ns = NsInfo::default();
        let mut heads = Vec::new();
        walk_with_scope(&forms, &ns, &mut |form, _| {
            if let Some(h) = form.head().and_then(Form::simple_symbol) {
                heads.push(h.to_string());
            }
        });
        assert_eq!(heads, ["a"]);
    }
}
