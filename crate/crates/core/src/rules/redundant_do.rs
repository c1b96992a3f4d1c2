use super::context::Ctx;
use super::util::{live_args, Seen};
use crate::reader::{render, Form, Span};
use crate::syntax::implicit_do_bodies;

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let mut seen = Seen::default();
    let mut found: Vec<(Span, &str, Option<String>)> = Vec::new();
    cx.walk(forms, |form, st| {
        for body in implicit_do_bodies(form, st) {
            for item in body {
                if st.is_core_call(item, "do") && seen.insert(item.span) {
                    let inner: Vec<String> = live_args(item).iter().map(|f| render(f)).collect();
                    found.push((item.span, "do inside a body that is already an implicit do", Some(inner.join(" "))));
                }
            }
        }
        if st.is_core_call(form, "do") {
            let args = live_args(form);
            if args.len() == 1 && seen.insert(form.span) {
                found.push((form.span, "do around a single expression", Some(render(args[0]))));
            }
        }
    });
    found.sort_by_key(|(span, ..)| span.start.offset);
    for (span, message, suggestion) in found {
        cx.report(span, message, suggestion);
    }
}
