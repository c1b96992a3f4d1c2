use super::context::Ctx;
use super::util::is_fn_literal;
use crate::reader::{Form, FormKind};
use crate::syntax::{classify_defn, is_syntax_head, select_branch, WalkState};

struct Depth<'f> {
    depth: usize,
    top: Option<&'f Form>,
}

fn deepest<'f>(forms: impl Iterator<Item = &'f Form>, st: &WalkState<'_>, features: &[String]) -> Depth<'f> {
    let mut best = Depth { depth: 0, top: None };
    for f in forms {
        let d = nesting(f, st, features);
        if d.depth > best.depth {
            best = d;
        }
    }
    best
}

/// Call-nesting depth of `form`. Special forms, macros and collection
/// literals are transparent; nested functions are measured on their own.
fn nesting<'f>(form: &'f Form, st: &WalkState<'_>, features: &[String]) -> Depth<'f> {
    match &form.kind {
        FormKind::List(items) => {
            if is_fn_literal(form, st) || classify_defn(form).is_some() {
                return Depth { depth: 0, top: None };
            }
            match st.head_core(form) {
                Some("quote") => Depth { depth: 0, top: None },
                Some(name) if is_syntax_head(name) => deepest(Form::live(&items[1..]), st, features),
                _ => {
                    let inner = deepest(Form::live(items), st, features);
                    Depth { depth: inner.depth + 1, top: Some(form) }
                }
            }
        }
        FormKind::AnonFn { .. } | FormKind::Quote(_) | FormKind::SyntaxQuote(_) | FormKind::Discard(_) => {
            Depth { depth: 0, top: None }
        }
        FormKind::Meta { target, .. } => nesting(target, st, features),
        FormKind::ReaderCond { branches, splicing } => match select_branch(branches, features) {
            Some(chosen) if *splicing => deepest(chosen.children().into_iter(), st, features),
            Some(chosen) => nesting(chosen, st, features),
            None => Depth { depth: 0, top: None },
        },
        _ => deepest(form.children().into_iter(), st, features),
    }
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let max_depth = cx.int("max-depth").max(1) as usize;
    let features = cx.file.features.clone();
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        let bodies: Vec<Vec<&Form>> = match &form.kind {
            FormKind::AnonFn { body, .. } => vec![vec![body.as_ref()]],
            FormKind::List(_) => match classify_defn(form) {
                Some(def) if st.head_core(form).is_some() => def.arities.into_iter().map(|a| a.body).collect(),
                _ => return,
            },
            _ => return,
        };
        for body in bodies {
            let d = deepest(body.into_iter(), st, &features);
            if d.depth >= max_depth {
                if let Some(top) = d.top {
                    found.push((top.span, d.depth));
                }
            }
        }
    });
    for (span, depth) in found {
        cx.report(span, format!("function calls nested {depth} deep; name intermediate results or thread them"), None);
    }
}
