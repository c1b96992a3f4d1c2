use super::context::Ctx;
use crate::reader::{Form, Span};
use crate::syntax::{import_entries, ns_imports, Resolution};

const RT: &str = "clojure.lang.RT";

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let mut found: Vec<(Span, &str)> = Vec::new();
    cx.walk(forms, |form, st| {
        let imports = match st.head_core(form) {
            Some("ns") => ns_imports(form),
            Some("import") => import_entries(form.args()),
            _ => Vec::new(),
        };
        for (class, spec) in imports {
            if class == RT {
                found.push((spec.span, "imports clojure.lang.RT, an internal runtime class"));
            }
        }
        if st.ancestors().iter().any(|a| matches!(st.head_core(a), Some("ns" | "import"))) {
            return;
        }
        let Some(sym) = form.as_symbol() else { return };
        let class = match &sym.ns {
            Some(q) => st.ns().imports_class(q).unwrap_or(q),
            None if sym.name == RT => RT,
            None if st.resolve(form) != Resolution::Local => st.ns().imports_class(&sym.name).unwrap_or(""),
            None => "",
        };
        if class == RT {
            found.push((form.span, "calls clojure.lang.RT directly instead of a public clojure.core function"));
        }
    });
    for (span, message) in found {
        cx.report(span, message, None);
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::test_support::lint;

    const ID: &str = "direct-rt-usage";

    #[test]
    fn qualified_calls_fire() {
        assert_eq!(lint(ID, "(clojure.lang.RT/iter xs)").len(), 1);
        assert_eq!(lint(ID, "(. clojure.lang.RT (count xs))").len(), 1);
    }

    #[test]
    fn imports_fire() {
        assert_eq!(lint(ID, "(ns a (:import (clojure.lang RT)))").len(), 1);
        assert_eq!(lint(ID, "(ns a (:import [clojure.lang RT Var]))").len(), 1);
        assert_eq!(lint(ID, "(ns a (:import clojure.lang.RT)) (RT/count xs)").len(), 2);
    }

    #[test]
    fn user_namespaces_are_fine() {
        assert!(lint(ID, "(ns a (:require [my.rt :as rt])) (rt/helper xs)").is_empty());
        assert!(lint(ID, "(ns a (:import (clojure.lang PersistentQueue))) PersistentQueue/EMPTY").is_empty());
        assert!(lint(ID, "(RT/count xs)").is_empty());
    }
}
