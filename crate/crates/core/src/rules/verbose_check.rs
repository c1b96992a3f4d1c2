use super::context::Ctx;
use super::util::{call, core_call, live_args};
use crate::reader::{Form, FormKind, Span};
use crate::rules::Severity;
use crate::syntax::WalkState;

struct Finding {
    span: Span,
    predicate: &'static str,
    suggestion: String,
    numeric: bool,
}

fn is_count_call(form: &Form, st: &WalkState<'_>) -> bool {
    st.is_core_call(form, "count")
}

/// For `(op a b)` with one side matching `lit`, the other side.
fn other_side<'f>(a: &'f Form, b: &'f Form, lit: impl Fn(&Form) -> bool) -> Option<(&'f Form, bool)> {
    if lit(a) && !lit(b) {
        Some((b, true))
    } else if lit(b) && !lit(a) {
        Some((a, false))
    } else {
        None
    }
}

fn classify(form: &Form, st: &WalkState<'_>) -> Option<(&'static str, String, bool)> {
    let op = st.head_core(form)?;
    let args = live_args(form);
    match (op, args.as_slice()) {
        ("not", [inner]) => {
            let &[x] = core_call(inner, st, "nil?")?.as_slice() else { return None };
            Some(("some?", call("some?", &[x]), false))
        }
        ("if", [c, t, f]) if matches!(t.kind, FormKind::Bool(true)) && matches!(f.kind, FormKind::Bool(false)) => {
            Some(("boolean", call("boolean", &[c]), false))
        }
        ("=" | "not=", [a, b]) => {
            if let Some((x, _)) = other_side(a, b, Form::is_nil) {
                let pred = if op == "=" { "nil?" } else { "some?" };
                return Some((pred, call(pred, &[x]), false));
            }
            if op == "=" {
                if let Some((x, _)) = other_side(a, b, |f| matches!(f.kind, FormKind::Bool(true))) {
                    return Some(("true?", call("true?", &[x]), false));
                }
                if let Some((x, _)) = other_side(a, b, |f| matches!(f.kind, FormKind::Bool(false))) {
                    return Some(("false?", call("false?", &[x]), false));
                }
                if let Some((x, _)) = other_side(a, b, |f| f.is_number("0")) {
                    if !is_count_call(x, st) {
                        return Some(("zero?", call("zero?", &[x]), true));
                    }
                }
            }
            None
        }
        ("<" | ">", [a, b]) => {
            let (x, zero_first) = other_side(a, b, |f| f.is_number("0"))?;
            if is_count_call(x, st) {
                return None;
            }
            // (< 0 x) and (> x 0) test positivity
            let positive = (op == "<") == zero_first;
            let pred = if positive { "pos?" } else { "neg?" };
            Some((pred, call(pred, &[x]), true))
        }
        _ => None,
    }
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if let Some((predicate, suggestion, numeric)) = classify(form, st) {
            found.push(Finding { span: form.span, predicate, suggestion, numeric });
        }
    });
    for f in found {
        if f.numeric {
            cx.report_as(
                Severity::Info,
                f.span,
                format!("use {}; note that it throws on non-numbers", f.predicate),
                Some(f.suggestion),
            );
        } else {
            cx.report(f.span, format!("use the built-in predicate {}", f.predicate), Some(f.suggestion));
        }
    }
}
