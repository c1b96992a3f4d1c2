use std::collections::HashMap;

use super::context::Ctx;
use super::util::{is_fn_literal, Seen};
use crate::reader::{Form, FormKind, Span};
use crate::syntax::{classify_defn, tail_positions, WalkState};

fn returns_of<'f>(form: &'f Form, st: &WalkState<'_>) -> Option<Vec<&'f Form>> {
    if let FormKind::AnonFn { body, .. } = &form.kind {
        return Some(tail_positions(body, st));
    }
    if !is_fn_literal(form, st) && !matches!(st.head_core(form), Some("defn" | "defn-")) {
        return None;
    }
    let def = classify_defn(form)?;
    Some(def.arities.iter().filter_map(|a| a.body.last()).flat_map(|last| tail_positions(last, st)).collect())
}

/// How many function layers must be applied before a non-function value
/// comes out. Every function literal on the way is recorded in `layers`.
fn curry_depth<'f>(form: &'f Form, fns: &HashMap<Span, Vec<&'f Form>>, layers: &mut Vec<&'f Form>) -> usize {
    let Some(tails) = fns.get(&form.span) else { return 0 };
    layers.push(form);
    1 + tails.iter().map(|t| curry_depth(t, fns, layers)).max().unwrap_or(0)
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let max = cx.int("max-curry").max(1) as usize;
    // function forms and their return positions, each judged in its own scope
    let mut order = Vec::new();
    let mut fns = HashMap::new();
    cx.walk(forms, |form, st| {
        if let Some(tails) = returns_of(form, st) {
            order.push(form);
            fns.insert(form.span, tails);
        }
    });
    let mut seen = Seen::default();
    let mut found = Vec::new();
    for form in order {
        if seen.contains(form.span) {
            continue;
        }
        let mut layers = Vec::new();
        let depth = curry_depth(form, &fns, &mut layers);
        if depth >= max {
            for l in layers {
                seen.insert(l.span);
            }
            found.push((form.span, depth));
        }
    }
    for (span, depth) in found {
        cx.report(span, format!("returns functions {depth} levels deep; pass all arguments at once or use a map"), None);
    }
}
