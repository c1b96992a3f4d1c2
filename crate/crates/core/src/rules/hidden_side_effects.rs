use super::context::Ctx;
use super::util::{is_defn, is_fn_literal, Effects, Seen};
use crate::reader::{render, Form};
use crate::syntax::{classify_defn, WalkState};

/// The `defn` whose own body (not a nested function) contains `form`.
fn owning_defn<'a>(st: &WalkState<'a>) -> Option<&'a Form> {
    for &a in st.ancestors().iter().rev() {
        if is_defn(a, st) {
            return Some(a);
        }
        if is_fn_literal(a, st) || st.head_core(a) == Some("defmacro") {
            return None;
        }
    }
    None
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let effects = Effects::new(cx.names("effect-symbols")).without("slurp");
    let allow = cx.names("allowlist");
    let mut seen = Seen::default();
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if !effects.is_effect_call(form, st) {
            return;
        }
        let Some(defn) = owning_defn(st) else { return };
        let Some(name) = classify_defn(defn).and_then(|d| d.name_str()) else { return };
        if name.ends_with('!') || allow.iter().any(|a| a == name) {
            return;
        }
        if seen.insert(defn.span) {
            let effect = form.head().map(render).unwrap_or_default();
            found.push((defn.span, name.to_string(), effect));
        }
    });
    for (span, name, effect) in found {
        cx.report(
            span,
            format!("`{name}` performs a side effect ({effect}) that its name does not announce"),
            Some(format!("rename to {name}! or move the effect to the caller")),
        );
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::test_support::lint;

    const ID: &str = "hidden-side-effects";

    #[test]
    fn effect_in_plain_name() {
        assert_eq!(lint(ID, "(defn save-user [u] (spit \"f\" u))").len(), 1);
        assert_eq!(lint(ID, "(defn- bump [a] (when a (swap! a inc)))").len(), 1);
        assert_eq!(lint(ID, "(defn log-all [xs] (doseq [x xs] (println x)) (count xs))").len(), 1);
    }

    #[test]
    fn declared_or_pure_functions() {
        assert!(lint(ID, "(defn save-user! [u] (spit \"f\" u))").is_empty());
        assert!(lint(ID, "(defn fmt [u] (str u))").is_empty());
        assert!(lint(ID, "(defn load [f] (slurp f))").is_empty());
        assert!(lint(ID, "(defn -main [& args] (println args))").is_empty());
        assert!(lint(ID, "(defn make-printer [] (fn [x] (println x)))").is_empty());
        assert!(lint(ID, "(defn f [spit] (spit 1))").is_empty());
    }
}
