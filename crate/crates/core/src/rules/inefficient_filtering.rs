use super::context::Ctx;
use super::util::core_call;
use crate::reader::{Form, Span};
use crate::syntax::WalkState;

const GENERATORS: &str = "clojure.test.check.generators";

fn generate_then_filter(form: &Form, st: &WalkState<'_>) -> bool {
    let Some(args) = core_call(form, st, "first") else { return false };
    let [inner] = args.as_slice() else { return false };
    let Some(filter_args) = core_call(inner, st, "filter") else { return false };
    let [_, source] = filter_args.as_slice() else { return false };
    core_call(source, st, "repeatedly").is_some_and(|a| matches!(a.len(), 1 | 2))
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let mut found: Vec<(Span, &str)> = Vec::new();
    cx.walk(forms, |form, st| {
        if form.head().is_some_and(|h| st.resolve(h).is_var(GENERATORS, "such-that")) {
            found.push((form.span, "such-that discards generated values; build valid values directly with fmap or bind"));
        } else if generate_then_filter(form, st) {
            found.push((form.span, "generating values only to filter most of them away; construct a valid value directly"));
        }
    });
    for (span, message) in found {
        cx.report(span, message, None);
    }
}
