use super::context::Ctx;
use crate::reader::Form;
use crate::syntax::{classify_defn, Param};

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let max = cx.int("max-params").max(0) as usize;
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if !matches!(st.head_core(form), Some("defn" | "defn-" | "defmacro" | "fn")) {
            return;
        }
        let Some(def) = classify_defn(form) else { return };
        for arity in &def.arities {
            let positional: Vec<&Param<'_>> = arity.positional().collect();
            let mut count = positional.len();
            if let Some(Param::Destructure(last)) = positional.last() {
                if last.unwrap_meta().as_map().is_some() {
                    count -= 1;
                }
            }
            if count > max {
                found.push((arity.param_vector.span, count));
            }
        }
    });
    for (span, count) in found {
        cx.report(span, format!("{count} positional parameters (more than {max}); group related ones into a map"), None);
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::test_support::lint;

    const ID: &str = "long-parameter-list";

    #[test]
    fn too_many_positional() {
        assert_eq!(lint(ID, "(defn f [a b c d e] a)").len(), 1);
        assert_eq!(lint(ID, "(defn f ([a] a) ([a b c d e f] a))").len(), 1);
        assert_eq!(lint(ID, "(fn [a b c d e] a)").len(), 1);
    }

    #[test]
    fn rest_and_options_map_do_not_count() {
        assert!(lint(ID, "(defn f [a b c d] a)").is_empty());
        assert!(lint(ID, "(defn f [a b c d & {:keys [x y]}] a)").is_empty());
        assert!(lint(ID, "(defn f [a b c d {:keys [x y]}] a)").is_empty());
        assert!(lint(ID, "(defn f [a b c d & more] a)").is_empty());
    }
}
