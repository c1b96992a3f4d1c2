use super::context::Ctx;
use super::util::core_call;
use crate::reader::{render, Form};

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if let Some(args) = core_call(form, st, "get") {
            if let [m, k] = args.as_slice() {
                found.push((form.span, format!("(get {} {} not-found)", render(m), render(k))));
            }
        }
    });
    for (span, suggestion) in found {
        cx.report(span, "get without a default cannot tell a missing key from a nil value", Some(suggestion));
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::test_support::{lint, lint_with_defaults};

    const ID: &str = "missing-map-default";

    #[test]
    fn two_argument_get_fires_when_enabled() {
        assert_eq!(lint(ID, "(get m :k)").len(), 1);
        assert!(lint(ID, "(get m :k :absent)").is_empty());
        assert!(lint(ID, "(let [get f] (get m :k))").is_empty());
    }

    #[test]
    fn disabled_by_default() {
        assert!(lint_with_defaults(ID, "(get m :k)").is_empty());
    }
}
