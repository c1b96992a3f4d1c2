use super::context::Ctx;
use super::util::is_defn;
use crate::reader::Form;
use crate::syntax::{classify_defn, tail_positions};

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if !is_defn(form, st) {
            return;
        }
        let Some(def) = classify_defn(form) else { return };
        for arity in &def.arities {
            let Some(last) = arity.body.last() else { continue };
            let tails = tail_positions(last, st);
            let positional = |t: &&Form| t.as_vector().is_some_and(|v| Form::live(v).count() >= 2);
            if !tails.is_empty() && tails.iter().all(positional) {
                found.push((arity.span, def.name_str().unwrap_or("function").to_string()));
            }
        }
    });
    for (span, name) in found {
        cx.report(
            span,
            format!("`{name}` returns several values by position; a map with named keys says what each one is"),
            None,
        );
    }
}
