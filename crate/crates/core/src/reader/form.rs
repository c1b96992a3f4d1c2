use super::pos::Span;
use std::fmt;

/// A symbol, optionally namespace-qualified (`ns/name`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub ns: Option<String>,
    pub name: String,
}

impl Symbol {
    pub fn simple(name: impl Into<String>) -> Symbol {
        Symbol { ns: None, name: name.into() }
    }

    pub fn is_simple(&self) -> bool {
        self.ns.is_none()
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.ns {
            Some(ns) => write!(f, "{}/{}", ns, self.name),
            None => f.write_str(&self.name),
        }
    }
}

/// A keyword. `auto_resolved` marks the `::k` / `::alias/k` spellings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Keyword {
    pub ns: Option<String>,
    pub name: String,
    pub auto_resolved: bool,
}

impl Keyword {
    /// True for keywords that carry (or resolve to) a namespace.
    pub fn is_qualified(&self) -> bool {
        self.ns.is_some() || self.auto_resolved
    }
}

impl fmt::Display for Keyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.auto_resolved { "::" } else { ":" })?;
        match &self.ns {
            Some(ns) => write!(f, "{}/{}", ns, self.name),
            None => f.write_str(&self.name),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumberKind {
    Integer,
    Float,
    Ratio,
    Hex,
    Octal,
    Radix,
    BigInt,
    BigDecimal,
    /// `##Inf`, `##-Inf`, `##NaN`
    Symbolic,
}

/// Numeric literal kept as written.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Number {
    pub text: String,
    pub kind: NumberKind,
}

/// Prefix of a namespaced map literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MapPrefix {
    /// `#:ns{...}`
    Named(String),
    /// `#::{...}`
    Current,
    /// `#::alias{...}`
    Alias(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum FormKind {
    List(Vec<Form>),
    Vector(Vec<Form>),
    Map(Vec<Form>),
    Set(Vec<Form>),
    Symbol(Symbol),
    Keyword(Keyword),
    Str(String),
    /// Pattern text between the quotes, escapes untouched.
    Regex(String),
    Char(char),
    Number(Number),
    Bool(bool),
    Nil,
    Quote(Box<Form>),
    SyntaxQuote(Box<Form>),
    Unquote(Box<Form>),
    UnquoteSplicing(Box<Form>),
    Deref(Box<Form>),
    VarQuote(Box<Form>),
    Meta { meta: Box<Form>, target: Box<Form> },
    /// `#(...)`; `body` is the list, `max_arg` the highest `%N` seen
    /// (`%` counts as 1) and `rest` whether `%&` occurs.
    AnonFn { body: Box<Form>, max_arg: u32, rest: bool },
    /// `#_form`. Kept for round-tripping, never analyzed.
    Discard(Box<Form>),
    Tagged { tag: Symbol, form: Box<Form> },
    ReaderCond { splicing: bool, branches: Vec<(Form, Form)> },
    NamespacedMap { prefix: MapPrefix, map: Box<Form> },
}

/// One read form. Equality compares structure only and ignores spans.
#[derive(Debug, Clone)]
pub struct Form {
    pub kind: FormKind,
    pub span: Span,
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Form {
    pub fn new(kind: FormKind, span: Span) -> Form {
        Form { kind, span }
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match &self.kind {
            FormKind::Symbol(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_keyword(&self) -> Option<&Keyword> {
        match &self.kind {
            FormKind::Keyword(k) => Some(k),
            _ => None,
        }
    }

    /// Unqualified symbol name, if this is an unqualified symbol.
    pub fn simple_symbol(&self) -> Option<&str> {
        match &self.kind {
            FormKind::Symbol(s) if s.ns.is_none() => Some(&s.name),
            _ => None,
        }
    }

    pub fn is_simple_symbol(&self, name: &str) -> bool {
        self.simple_symbol() == Some(name)
    }

    pub fn as_list(&self) -> Option<&[Form]> {
        match &self.kind {
            FormKind::List(items) => Some(items),
            _ => None,
        }
    }

    pub fn as_vector(&self) -> Option<&[Form]> {
        match &self.kind {
            FormKind::Vector(items) => Some(items),
            _ => None,
        }
    }

    pub fn as_map(&self) -> Option<&[Form]> {
        match &self.kind {
            FormKind::Map(items) => Some(items),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match &self.kind {
            FormKind::Str(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_discard(&self) -> bool {
        matches!(self.kind, FormKind::Discard(_))
    }

    pub fn is_number(&self, text: &str) -> bool {
        matches!(&self.kind, FormKind::Number(n) if n.text == text)
    }

    pub fn is_nil(&self) -> bool {
        matches!(self.kind, FormKind::Nil)
    }

    /// First element of a non-empty list.
    pub fn head(&self) -> Option<&Form> {
        self.as_list().and_then(|items| items.first())
    }

    /// Elements after the head of a list (empty for non-lists).
    pub fn args(&self) -> &[Form] {
        match self.as_list() {
            Some([_, rest @ ..]) => rest,
            _ => &[],
        }
    }

    /// Direct sub-forms in source order, for any kind of form.
    pub fn children(&self) -> Vec<&Form> {
        use FormKind::*;
        match &self.kind {
            List(v) | Vector(v) | Map(v) | Set(v) => v.iter().collect(),
            Quote(f) | SyntaxQuote(f) | Unquote(f) | UnquoteSplicing(f) | Deref(f) | VarQuote(f)
            | Discard(f) => vec![f.as_ref()],
            Meta { meta, target } => vec![meta.as_ref(), target.as_ref()],
            AnonFn { body, .. } => vec![body.as_ref()],
            Tagged { form, .. } => vec![form.as_ref()],
            ReaderCond { branches, .. } => branches.iter().flat_map(|(k, v)| [k, v]).collect(),
            NamespacedMap { map, .. } => vec![map.as_ref()],
            Symbol(_) | Keyword(_) | Str(_) | Regex(_) | Char(_) | Number(_) | Bool(_) | Nil => {
                Vec::new()
            }
        }
    }

    /// Total number of forms in this tree, including itself.
    pub fn node_count(&self) -> usize {
        1 + self.children().into_iter().map(Form::node_count).sum::<usize>()
    }

    /// Pre-order iterator over this form and all descendants.
    pub fn descendants(&self) -> impl Iterator<Item = &Form> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let next = stack.pop()?;
            let mut kids = next.children();
            kids.reverse();
            stack.extend(kids);
            Some(next)
        })
    }

    /// Strips any metadata wrappers.
    pub fn unwrap_meta(&self) -> &Form {
        match &self.kind {
            FormKind::Meta { target, .. } => target.unwrap_meta(),
            _ => self,
        }
    }

    /// Drops `Discard` entries from a child sequence.
    pub fn live(items: &[Form]) -> impl Iterator<Item = &Form> {
        items.iter().filter(|f| !f.is_discard())
    }
}
