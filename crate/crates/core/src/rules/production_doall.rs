use super::context::Ctx;
use crate::reader::Form;

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    if cx.file.is_test {
        return;
    }
    let include_dorun = cx.flag("include-dorun");
    let mut found = Vec::new();
    cx.walk(forms, |form, st| match st.head_core(form) {
        Some(name @ "doall") => found.push((form.span, name)),
        Some(name @ "dorun") if include_dorun => found.push((form.span, name)),
        _ => {}
    });
    for (span, name) in found {
        cx.report(span, format!("{name} in production code forces a whole lazy sequence into memory"), None);
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::test_support::{lint, lint_test_file};

    const ID: &str = "production-doall";

    #[test]
    fn fires_outside_tests() {
        assert_eq!(lint(ID, "(doall (map f xs))").len(), 1);
        assert!(lint_test_file(ID, "(doall (map f xs))").is_empty());
    }

    #[test]
    fn eager_alternatives_and_shadowing() {
        assert!(lint(ID, "(mapv f xs)").is_empty());
        assert!(lint(ID, "(dorun (map f xs))").is_empty());
        assert!(lint(ID, "(let [doall identity] (doall (map f xs)))").is_empty());
    }
}
