use super::context::Ctx;
use super::util::{is_defn, live_args, Seen};
use crate::reader::{Form, FormKind, Span};
use crate::syntax::{classify_defn, WalkState};

/// `recur` calls that target the enclosing loop or function, i.e. not
/// inside a nested `loop`, `fn` or `#()`.
fn own_recurs<'f>(forms: &[&'f Form], out: &mut Vec<&'f Form>) {
    for &f in forms {
        match &f.kind {
            FormKind::AnonFn { .. } | FormKind::Quote(_) | FormKind::SyntaxQuote(_) | FormKind::Discard(_) => {}
            FormKind::List(_) => match f.head().and_then(Form::simple_symbol) {
                Some("recur") => out.push(f),
                Some("loop" | "fn" | "fn*" | "loop*" | "letfn") => {}
                _ => own_recurs(&f.children(), out),
            },
            _ => own_recurs(&f.children(), out),
        }
    }
}

fn calls_on(form: &Form, names: &[&str], binding: &str, st: &WalkState<'_>) -> bool {
    st.head_core(form).is_some_and(|h| names.contains(&h))
        && matches!(live_args(form).as_slice(), [x] if x.is_simple_symbol(binding))
}

/// A binding that is walked with `rest`/`next` in `recur` and tested with
/// `seq`/`empty?`.
fn walks_sequence(bindings: &[Option<&str>], body: &[&Form], st: &WalkState<'_>) -> Option<String> {
    let mut recurs = Vec::new();
    own_recurs(body, &mut recurs);
    for recur in recurs {
        for (i, arg) in live_args(recur).into_iter().enumerate() {
            let Some(Some(name)) = bindings.get(i) else { continue };
            if !calls_on(arg, &["rest", "next"], name, st) {
                continue;
            }
            let tested = body
                .iter()
                .flat_map(|b| b.descendants())
                .any(|f| calls_on(f, &["seq", "empty?", "next"], name, st) && !std::ptr::eq(f, arg));
            if tested {
                return Some(name.to_string());
            }
        }
    }
    None
}

/// Positional parameter count of the arity containing the current form,
/// and whether it takes rest arguments.
fn enclosing_arity(defn: &Form, st: &WalkState<'_>) -> Option<(usize, bool)> {
    let def = classify_defn(defn)?;
    if def.arities.len() == 1 {
        return None;
    }
    let ancestors = st.ancestors();
    let pos = ancestors.iter().position(|a| std::ptr::eq(*a, defn))?;
    let arity_list = ancestors.get(pos + 1)?;
    let arity = def.arities.iter().find(|a| a.span == arity_list.span)?;
    Some((arity.positional().count(), arity.rest().is_some()))
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let mut seen = Seen::default();
    let mut found: Vec<(Span, String)> = Vec::new();
    cx.walk(forms, |form, st| {
        // direct self-call inside a defn
        if let Some(head) = form.head().filter(|h| h.simple_symbol().is_some()) {
            let defn = st.ancestors().iter().rev().copied().find(|a| is_defn(a, st));
            let name = defn.and_then(classify_defn).and_then(|d| d.name_str());
            if let (Some(defn), Some(name)) = (defn, name) {
                let self_call = head.is_simple_symbol(name) && !st.is_bound(name);
                let argc = live_args(form).len();
                let same_arity =
                    enclosing_arity(defn, st).is_none_or(|(n, rest)| argc == n || (rest && argc > n));
                if self_call && same_arity && seen.insert(defn.span) {
                    found.push((defn.span, format!("`{name}` calls itself; consider reduce, map or filter")));
                }
            }
        }
        // loop/recur or fn-level recur over first/rest
        if st.head_core(form) == Some("loop") {
            let args = live_args(form);
            if let Some((bindings, body)) = args.split_first() {
                let names: Vec<Option<&str>> =
                    Form::live(bindings.as_vector().unwrap_or(&[])).step_by(2).map(Form::simple_symbol).collect();
                if let Some(b) = walks_sequence(&names, body, st) {
                    if seen.insert(form.span) {
                        found.push((form.span, format!("loop walks `{b}` element by element; consider reduce, map or filter")));
                    }
                }
            }
        } else if is_defn(form, st) {
            if let Some(def) = classify_defn(form) {
                for arity in &def.arities {
                    let names: Vec<Option<&str>> = arity.params.iter().map(|p| p.form().simple_symbol()).collect();
                    if let Some(b) = walks_sequence(&names, &arity.body, st) {
                        if seen.insert(form.span) {
                            found.push((form.span, format!("recur walks `{b}` element by element; consider reduce, map or filter")));
                        }
                    }
                }
            }
        }
    });
    found.sort_by_key(|(span, _)| span.start.offset);
    for (span, message) in found {
        cx.report(span, message, None);
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::test_support::lint;

    const ID: &str = "explicit-recursion";

    #[test]
    fn self_recursive_defn() {
        assert_eq!(lint(ID, "(defn sum [xs] (if (empty? xs) 0 (+ (first xs) (sum (rest xs)))))").len(), 1);
    }

    #[test]
    fn first_rest_loops() {
        assert_eq!(lint(ID, "(loop [xs xs acc 0] (if (seq xs) (recur (rest xs) (+ acc (first xs))) acc))").len(), 1);
        assert_eq!(lint(ID, "(defn total [xs acc] (if (empty? xs) acc (recur (next xs) (+ acc (first xs)))))").len(), 1);
    }

    #[test]
    fn library_functions_and_arity_overloads() {
        assert!(lint(ID, "(reduce + xs)").is_empty());
        assert!(lint(ID, "(defn f ([x] (f x 0)) ([x acc] (+ x acc)))").is_empty());
        assert!(lint(ID, "(loop [i 0] (when (< i 10) (recur (inc i))))").is_empty());
        assert!(lint(ID, "(defn f [f] (f 1))").is_empty());
        assert!(lint(ID, "(defn g [x] (let [g inc] (g x)))").is_empty());
    }
}
