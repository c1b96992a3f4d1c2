use super::form::{Form, FormKind, MapPrefix};
use std::fmt::Write;

/// Renders a form as canonical source text. Children are separated by a
/// single space; the result re-reads to a structurally equal form.
pub fn render(form: &Form) -> String {
    let mut out = String::new();
    write_form(&mut out, form);
    out
}

/// Renders a sequence of top-level forms, one per line.
pub fn render_all(forms: &[Form]) -> String {
    let mut out = String::new();
    for form in forms {
        write_form(&mut out, form);
        out.push('\n');
    }
    out
}

fn write_seq(out: &mut String, open: &str, items: &[Form], close: &str) {
    out.push_str(open);
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write_form(out, item);
    }
    out.push_str(close);
}

fn write_form(out: &mut String, form: &Form) {
    match &form.kind {
        FormKind::List(items) => write_seq(out, "(", items, ")"),
        FormKind::Vector(items) => write_seq(out, "[", items, "]"),
        FormKind::Map(items) => write_seq(out, "{", items, "}"),
        FormKind::Set(items) => write_seq(out, "#{", items, "}"),
        FormKind::Symbol(sym) => {
            let _ = write!(out, "{sym}");
        }
        FormKind::Keyword(kw) => {
            let _ = write!(out, "{kw}");
        }
        FormKind::Str(s) => write_string(out, s),
        FormKind::Regex(pattern) => {
            out.push_str("#\"");
            out.push_str(pattern);
            out.push('"');
        }
        FormKind::Char(c) => write_char(out, *c),
        FormKind::Number(n) => out.push_str(&n.text),
        FormKind::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        FormKind::Nil => out.push_str("nil"),
        FormKind::Quote(f) => prefixed(out, "'", f),
        FormKind::SyntaxQuote(f) => prefixed(out, "`", f),
        FormKind::Unquote(f) => prefixed(out, "~", f),
        FormKind::UnquoteSplicing(f) => prefixed(out, "~@", f),
        FormKind::Deref(f) => prefixed(out, "@", f),
        FormKind::VarQuote(f) => prefixed(out, "#'", f),
        FormKind::Discard(f) => prefixed(out, "#_", f),
        FormKind::Meta { meta, target } => {
            out.push('^');
            write_form(out, meta);
            out.push(' ');
            write_form(out, target);
        }
        FormKind::AnonFn { body, .. } => {
            out.push('#');
            write_form(out, body);
        }
        FormKind::Tagged { tag, form } => {
            let _ = write!(out, "#{tag} ");
            write_form(out, form);
        }
        FormKind::ReaderCond { splicing, branches } => {
            out.push_str(if *splicing { "#?@(" } else { "#?(" });
            for (i, (feature, form)) in branches.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                write_form(out, feature);
                out.push(' ');
                write_form(out, form);
            }
            out.push(')');
        }
        FormKind::NamespacedMap { prefix, map } => {
            match prefix {
                MapPrefix::Named(ns) => {
                    let _ = write!(out, "#:{ns}");
                }
                MapPrefix::Current => out.push_str("#::"),
                MapPrefix::Alias(alias) => {
                    let _ = write!(out, "#::{alias}");
                }
            }
            write_form(out, map);
        }
    }
}

fn prefixed(out: &mut String, prefix: &str, form: &Form) {
    out.push_str(prefix);
    write_form(out, form);
}

fn write_string(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            c if c.is_control() && (c as u32) < 0x10000 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

fn write_char(out: &mut String, c: char) {
    match c {
        '\n' => out.push_str("\\newline"),
        ' ' => out.push_str("\\space"),
        '\t' => out.push_str("\\tab"),
        '\u{8}' => out.push_str("\\backspace"),
        '\u{c}' => out.push_str("\\formfeed"),
        '\r' => out.push_str("\\return"),
        c if (c.is_control() || c.is_whitespace()) && (c as u32) < 0x10000 => {
            let _ = write!(out, "\\u{:04X}", c as u32);
        }
        c => {
            out.push('\\');
            out.push(c);
        }
    }
}
