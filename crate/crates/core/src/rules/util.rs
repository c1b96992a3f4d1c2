//! Helpers shared by several detectors.

use std::collections::HashSet;

use crate::reader::{render, Form, FormKind, Span};
use crate::syntax::{Resolution, WalkState};

/// `#(...)`, `(fn ...)` or `(fn* ...)`.
pub fn is_fn_literal(form: &Form, st: &WalkState<'_>) -> bool {
    matches!(form.kind, FormKind::AnonFn { .. }) || matches!(st.head_core(form), Some("fn" | "fn*"))
}

/// `defn` or `defn-`.
pub fn is_defn(form: &Form, st: &WalkState<'_>) -> bool {
    matches!(st.head_core(form), Some("defn" | "defn-"))
}

/// Live arguments of a list form.
pub fn live_args(form: &Form) -> Vec<&Form> {
    Form::live(form.args()).collect()
}

/// Arguments of `form` if it calls the core function `name`.
pub fn core_call<'f>(form: &'f Form, st: &WalkState<'_>, name: &str) -> Option<Vec<&'f Form>> {
    st.is_core_call(form, name).then(|| live_args(form))
}

/// Renders a call with `head` and `args`, e.g. `(seq xs)`.
pub fn call(head: &str, args: &[&Form]) -> String {
    let mut out = format!("({head}");
    for arg in args {
        out.push(' ');
        out.push_str(&render(arg));
    }
    out.push(')');
    out
}

/// The source text of `form` with its head symbol replaced by `new_head`.
pub fn replace_head(form: &Form, source: &str, new_head: &str) -> String {
    let text = form.span.slice(source);
    match form.head() {
        Some(head) => {
            let start = head.span.start.offset - form.span.start.offset;
            let end = head.span.end.offset - form.span.start.offset;
            format!("{}{}{}", &text[..start], new_head, &text[end..])
        }
        None => text.to_string(),
    }
}

/// Spans already reported, so nested matches of the same shape are not
/// reported twice.
#[derive(Debug, Default)]
pub struct Seen(HashSet<(usize, usize)>);

impl Seen {
    /// Returns true the first time `span` is inserted.
    pub fn insert(&mut self, span: Span) -> bool {
        self.0.insert((span.start.offset, span.end.offset))
    }

    pub fn contains(&self, span: Span) -> bool {
        self.0.contains(&(span.start.offset, span.end.offset))
    }
}

/// Operations considered side-effecting: a configured name set plus any
/// name ending in `!`.
#[derive(Debug, Clone)]
pub struct Effects {
    names: HashSet<String>,
}

impl Effects {
    pub fn new(names: impl IntoIterator<Item = String>) -> Effects {
        Effects { names: names.into_iter().collect() }
    }

    pub fn without(mut self, name: &str) -> Effects {
        self.names.remove(name);
        self
    }

    /// Whether `sym` names an effectful operation at this point.
    pub fn is_effect(&self, sym: &Form, st: &WalkState<'_>) -> bool {
        let Some(s) = sym.as_symbol() else { return false };
        match st.resolve(sym) {
            Resolution::Local | Resolution::Interop => false,
            Resolution::Core(name) => self.names.contains(&name) || name.ends_with('!'),
            _ => self.names.contains(&s.to_string()) || s.name.ends_with('!'),
        }
    }

    /// Whether `form` invokes an effectful operation.
    pub fn is_effect_call(&self, form: &Form, st: &WalkState<'_>) -> bool {
        form.head().is_some_and(|h| self.is_effect(h, st))
    }
}
