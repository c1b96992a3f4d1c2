use super::context::Ctx;
use crate::reader::Form;
use crate::syntax::WalkState;

fn is_combinator(form: &Form, st: &WalkState<'_>) -> bool {
    matches!(st.head_core(form), Some("comp" | "partial"))
}

/// Nesting depth of comp/partial calls passed directly as arguments.
fn depth(form: &Form, st: &WalkState<'_>) -> usize {
    if !is_combinator(form, st) {
        return 0;
    }
    1 + Form::live(form.args()).map(|a| depth(a, st)).max().unwrap_or(0)
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let max_arity = cx.int("max-comp-arity").max(1) as usize;
    let max_nesting = cx.int("max-nesting").max(1) as usize;
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if !is_combinator(form, st) {
            return;
        }
        if st.parent().is_some_and(|p| is_combinator(p, st)) {
            return;
        }
        let arity = Form::live(form.args()).count();
        let nesting = depth(form, st);
        if st.is_core_call(form, "comp") && arity >= max_arity {
            found.push((form.span, format!("comp of {arity} functions; name the intermediate steps")));
        } else if nesting >= max_nesting {
            found.push((form.span, format!("comp/partial nested {nesting} deep; a named function or fn is clearer")));
        }
    });
    for (span, message) in found {
        cx.report(span, message, None);
    }
}
