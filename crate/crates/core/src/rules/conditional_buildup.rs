use super::context::Ctx;
use crate::reader::{render, Form, Span};
use crate::syntax::WalkState;

struct Step<'f> {
    test: &'f Form,
    negate: bool,
    update: &'f Form,
}

fn mentions(form: &Form, name: &str) -> bool {
    form.descendants().any(|f| f.is_simple_symbol(name))
}

/// `(if t (f sym ..) sym)` and its mirrored / `if-not` variants.
fn conditional_update<'f>(init: &'f Form, name: &str, st: &WalkState<'_>) -> Option<Step<'f>> {
    let negated_head = match st.head_core(init)? {
        "if" => false,
        "if-not" => true,
        _ => return None,
    };
    let args: Vec<&Form> = Form::live(init.args()).collect();
    let [test, then, otherwise] = args.as_slice() else { return None };
    if otherwise.is_simple_symbol(name) && !then.is_simple_symbol(name) && mentions(then, name) {
        return Some(Step { test, negate: negated_head, update: then });
    }
    if then.is_simple_symbol(name) && !otherwise.is_simple_symbol(name) && mentions(otherwise, name) {
        return Some(Step { test, negate: !negated_head, update: otherwise });
    }
    None
}

/// `(f sym a b)` becomes `(f a b)`; other shapes cannot be threaded.
fn threaded_step(update: &Form, name: &str) -> Option<String> {
    let items: Vec<&Form> = Form::live(update.as_list()?).collect();
    match items.as_slice() {
        [head, first, rest @ ..] if first.is_simple_symbol(name) && !mentions(head, name) => {
            if rest.iter().any(|f| mentions(f, name)) {
                return None;
            }
            let mut out = format!("({}", render(head));
            for r in rest {
                out.push(' ');
                out.push_str(&render(r));
            }
            out.push(')');
            Some(out)
        }
        _ => None,
    }
}

fn suggestion(seed: Option<&Form>, name: &str, steps: &[Step<'_>]) -> Option<String> {
    let mut out = format!("(cond-> {}", seed.map_or_else(|| name.to_string(), render));
    for step in steps {
        let test = if step.negate { format!("(not {})", render(step.test)) } else { render(step.test) };
        out.push_str(&format!(" {} {}", test, threaded_step(step.update, name)?));
    }
    out.push(')');
    Some(out)
}

struct Finding {
    span: Span,
    name: String,
    count: usize,
    suggestion: Option<String>,
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let min = cx.int("min-rebinds").max(1) as usize;
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if st.head_core(form) != Some("let") {
            return;
        }
        let Some(bindings) = form.args().first().and_then(Form::as_vector) else { return };
        let live: Vec<&Form> = Form::live(bindings).collect();
        let pairs: Vec<(&Form, &Form)> = live.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let mut i = 0;
        while i < pairs.len() {
            let Some(name) = pairs[i].0.simple_symbol() else {
                i += 1;
                continue;
            };
            let mut steps = Vec::new();
            let mut j = i;
            while j < pairs.len() && pairs[j].0.is_simple_symbol(name) {
                match conditional_update(pairs[j].1, name, st) {
                    Some(step) => steps.push(step),
                    None => break,
                }
                j += 1;
            }
            if steps.len() >= min {
                let seed = (i > 0 && pairs[i - 1].0.is_simple_symbol(name)).then(|| pairs[i - 1].1);
                found.push(Finding {
                    span: form.span,
                    name: name.to_string(),
                    count: steps.len(),
                    suggestion: suggestion(seed, name, &steps),
                });
            }
            i = j.max(i + 1);
        }
    });
    for f in found {
        cx.report(
            f.span,
            format!("`{}` is rebound by {} conditional updates; use cond->", f.name, f.count),
            f.suggestion.or_else(|| Some("thread the conditional updates with cond->".to_string())),
        );
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::test_support::{lint, suggestions};

    const ID: &str = "conditional-build-up";

    #[test]
    fn repeated_conditional_assoc() {
        assert_eq!(
            suggestions(ID, "(let [m {} m (if a (assoc m :a 1) m) m (if b (assoc m :b 2) m)] m)"),
            ["(cond-> {} a (assoc :a 1) b (assoc :b 2))"]
        );
    }

    #[test]
    fn mirrored_and_negated_branches() {
        assert_eq!(
            suggestions(ID, "(let [m (if a m (assoc m :a 1)) m (if-not b (assoc m :b 2) m)] m)"),
            ["(cond-> m (not a) (assoc :a 1) (not b) (assoc :b 2))"]
        );
    }

    #[test]
    fn single_update_or_cond_thread_is_fine() {
        assert!(lint(ID, "(let [m {} m (if a (assoc m :a 1) m)] m)").is_empty());
        assert!(lint(ID, "(cond-> {} a (assoc :a 1) b (assoc :b 2))").is_empty());
        assert!(lint(ID, "(let [m {} m (if a (assoc m :a 1) m) n (if b (assoc m :b 2) m)] n)").is_empty());
    }

    #[test]
    fn shadowed_if() {
        assert!(lint(ID, "(let [if f] (let [m {} m (if a (assoc m :a 1) m) m (if b (assoc m :b 2) m)] m))").is_empty());
    }
}
