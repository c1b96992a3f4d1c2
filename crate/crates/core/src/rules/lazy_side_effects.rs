use super::context::Ctx;
use super::util::{is_fn_literal, live_args, replace_head, Effects, Seen};
use crate::reader::{render, Form};
use crate::syntax::WalkState;

/// Lazy sequence functions whose first argument is called per element.
const FN_CONTEXTS: &[&str] = &[
    "map", "map-indexed", "mapcat", "filter", "remove", "keep", "keep-indexed", "take-while", "drop-while",
    "partition-by", "iterate",
];

/// Forms whose whole body is evaluated lazily.
const BODY_CONTEXTS: &[&str] = &["for", "lazy-seq", "lazy-cat", "concat"];

/// The per-element function of a lazy call, if `form` is one.
fn element_fn<'f>(form: &'f Form, parent: Option<&Form>, st: &WalkState<'_>) -> Option<&'f Form> {
    let head = st.head_core(form)?;
    let args = live_args(form);
    if FN_CONTEXTS.contains(&head) {
        let transducer_in_sequence = args.len() == 1 && parent.is_some_and(|p| st.is_core_call(p, "sequence"));
        if args.len() >= 2 || transducer_in_sequence {
            return args.first().copied();
        }
        return None;
    }
    if head == "repeatedly" {
        return args.last().copied().filter(|f| is_fn_literal(f, st));
    }
    None
}

/// The lazy context an effect call at the current position runs in.
fn lazy_context<'a>(effect: &'a Form, st: &WalkState<'a>) -> Option<&'a Form> {
    let mut child = effect;
    let mut crossed: Option<&Form> = None;
    let ancestors = st.ancestors();
    for (i, &a) in ancestors.iter().enumerate().rev() {
        let parent = i.checked_sub(1).map(|p| ancestors[p]);
        if let Some(f) = element_fn(a, parent, st) {
            if std::ptr::eq(child, f) {
                return crossed.filter(|lit| std::ptr::eq(*lit, f)).map(|_| a);
            }
        } else if st.head_core(a).is_some_and(|h| BODY_CONTEXTS.contains(&h)) {
            return crossed.is_none().then_some(a);
        }
        if is_fn_literal(a, st) {
            if crossed.is_some() {
                return None;
            }
            crossed = Some(a);
        } else if matches!(st.head_core(a), Some("defn" | "defn-" | "defmacro" | "letfn")) {
            return None;
        }
        child = a;
    }
    None
}

fn suggestion(context: &Form, st: &WalkState<'_>, source: &str) -> Option<String> {
    match st.head_core(context)? {
        "for" => Some(replace_head(context, source, "doseq")),
        "map" => match live_args(context).as_slice() {
            [f, coll] => Some(format!("(run! {} {})", render(f), render(coll))),
            _ => None,
        },
        _ => None,
    }
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let effects = Effects::new(cx.names("effect-symbols"));
    let source = cx.file.source.clone();
    let mut seen = Seen::default();
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        let context = if element_fn(form, st.parent(), st).is_some_and(|f| effects.is_effect(f, st)) {
            Some(form)
        } else if effects.is_effect_call(form, st) {
            lazy_context(form, st)
        } else {
            None
        };
        if let Some(ctx_form) = context {
            if seen.insert(ctx_form.span) {
                found.push((ctx_form.span, suggestion(ctx_form, st, &source)));
            }
        }
    });
    found.sort_by_key(|(span, _)| span.start.offset);
    for (span, suggestion) in found {
        cx.report(span, "side effect inside a lazy sequence runs late, partially or not at all; use run!, doseq or an eager variant", suggestion);
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::test_support::{lint, suggestions};

    const ID: &str = "lazy-side-effects";

    #[test]
    fn effects_in_lazy_functions() {
        assert_eq!(suggestions(ID, "(map #(println %) xs)"), ["(run! #(println %) xs)"]);
        assert_eq!(lint(ID, "(map #(swap! acc conj %) xs)").len(), 1);
        assert_eq!(lint(ID, "(map println xs)").len(), 1);
        assert_eq!(lint(ID, "(filter (fn [x] (log! x) (odd? x)) xs)").len(), 1);
        assert_eq!(lint(ID, "(repeatedly #(spit \"f\" 1))").len(), 1);
        assert_eq!(lint(ID, "(sequence (map println) xs)").len(), 1);
    }

    #[test]
    fn effects_in_lazy_bodies() {
        assert_eq!(suggestions(ID, "(for [x xs] (println x))"), ["(doseq [x xs] (println x))"]);
        assert_eq!(lint(ID, "(lazy-seq (cons (prn 1) nil))").len(), 1);
        assert_eq!(lint(ID, "(for [x xs] (for [y ys] (println x y)))").len(), 1);
    }

    #[test]
    fn eager_or_deferred_is_fine() {
        assert!(lint(ID, "(run! println xs)").is_empty());
        assert!(lint(ID, "(doseq [x xs] (println x))").is_empty());
        assert!(lint(ID, "(mapv println xs)").is_empty());
        assert!(lint(ID, "(map (fn [x] (fn [] (println x))) xs)").is_empty());
        assert!(lint(ID, "(into [] (map println) xs)").is_empty());
        assert!(lint(ID, "(map inc (do (println 1) xs))").is_empty());
        assert!(lint(ID, "(let [println identity] (map #(println %) xs))").is_empty());
    }
}
