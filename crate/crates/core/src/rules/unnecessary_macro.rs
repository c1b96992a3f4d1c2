use super::context::Ctx;
use super::util::replace_head;
use crate::reader::{Form, FormKind};
use crate::syntax::{classify_defn, FnDef};

/// Code-building constructs: syntax-quote, unquote, quote, `&form`/`&env`.
fn builds_code(def: &FnDef<'_>) -> bool {
    def.arities.iter().flat_map(|a| a.body.iter()).flat_map(|f| f.descendants()).any(|f| match &f.kind {
        FormKind::SyntaxQuote(_) | FormKind::Unquote(_) | FormKind::UnquoteSplicing(_) | FormKind::Quote(_) => true,
        FormKind::Symbol(s) => s.ns.is_none() && matches!(s.name.as_str(), "&form" | "&env" | "quote"),
        _ => false,
    })
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if st.head_core(form) != Some("defmacro") {
            return;
        }
        if let Some(def) = classify_defn(form) {
            if !def.arities.is_empty() && !builds_code(&def) {
                found.push((form, def.name_str().unwrap_or("macro").to_string()));
            }
        }
    });
    for (form, name) in found {
        let suggestion = replace_head(form, &cx.file.source, "defn");
        cx.report(
            form.span,
            format!("macro `{name}` does not build code; a function would do"),
            Some(suggestion),
        );
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::test_support::{lint, suggestions};

    const ID: &str = "unnecessary-macro";

    #[test]
    fn plain_computation_fires() {
        assert_eq!(suggestions(ID, "(defmacro add2 [x] (+ x 2))"), ["(defn add2 [x] (+ x 2))"]);
    }

    #[test]
    fn code_building_macros_are_fine() {
        assert!(lint(ID, "(defmacro unless [t b] `(if ~t nil ~b))").is_empty());
        assert!(lint(ID, "(defmacro dbg [x] `(let [v# ~x] (println '~x v#) v#))").is_empty());
        assert!(lint(ID, "(defmacro m [x] (list 'if x nil))").is_empty());
        assert!(lint(ID, "(defmacro here [] (meta &form))").is_empty());
    }

    #[test]
    fn multi_arity_and_docstring() {
        assert_eq!(lint(ID, "(defmacro m \"doc\" ([x] x) ([x y] (+ x y)))").len(), 1);
    }
}
