use super::context::Ctx;
use crate::reader::{render, Form};
use crate::syntax::{destructured_names, WalkState};

const CONSTRUCTS: &[&str] = &["let", "doseq", "for"];

/// (bindings, body) of `(head [..] body..)`.
fn parts<'f>(form: &'f Form, head: &str, st: &WalkState<'_>) -> Option<(&'f Form, Vec<&'f Form>)> {
    if st.head_core(form) != Some(head) {
        return None;
    }
    let args: Vec<&Form> = Form::live(form.args()).collect();
    let (bindings, body) = args.split_first()?;
    bindings.as_vector()?;
    Some((bindings, body.to_vec()))
}

/// The directly nested construct of the same kind, if it is the only body form.
fn nested<'f>(form: &'f Form, head: &str, st: &WalkState<'_>) -> Option<&'f Form> {
    let (bindings, body) = parts(form, head, st)?;
    let rebinds_head = Form::live(bindings.as_vector().unwrap_or(&[]))
        .step_by(2)
        .any(|pattern| destructured_names(pattern).contains(&head));
    match body.as_slice() {
        [only] if !rebinds_head && parts(only, head, st).is_some() => Some(only),
        _ => None,
    }
}

fn merged(form: &Form, head: &str, st: &WalkState<'_>) -> String {
    let mut bindings = Vec::new();
    let mut current = form;
    while let Some((vector, body)) = parts(current, head, st) {
        bindings.extend(Form::live(vector.as_vector().unwrap_or(&[])).map(render));
        match nested(current, head, st) {
            Some(inner) => current = inner,
            None => {
                let body: Vec<String> = body.iter().map(|f| render(f)).collect();
                return format!("({head} [{}] {})", bindings.join(" "), body.join(" "));
            }
        }
    }
    render(form)
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        for &head in CONSTRUCTS {
            if nested(form, head, st).is_none() {
                continue;
            }
            let inside_same = st.parent().and_then(|p| nested(p, head, st)).is_some_and(|n| std::ptr::eq(n, form));
            if inside_same {
                continue;
            }
            let suggestion = (head != "for").then(|| merged(form, head, st));
            found.push((form.span, head, suggestion));
        }
    });
    for (span, head, suggestion) in found {
        let message = if head == "for" {
            "nested for with a single body; one for with combined bindings yields a flat sequence".to_string()
        } else {
            format!("nested {head} forms can share one binding vector")
        };
        cx.report(span, message, suggestion);
    }
}
