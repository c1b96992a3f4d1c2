use super::context::Ctx;
use crate::reader::{render, Form, FormKind};
use crate::syntax::{is_syntax_head, Resolution, WalkState};

/// The callee of `(f a b ..)` when the arguments are exactly `params`.
fn forwarded<'f>(call: &'f Form, params: &[&str], st: &WalkState<'_>) -> Option<&'f Form> {
    let items: Vec<&Form> = Form::live(call.as_list()?).collect();
    let (head, args) = items.split_first()?;
    let sym = head.as_symbol()?;
    if sym.ns.is_none() && params.contains(&sym.name.as_str()) {
        return None;
    }
    match st.resolve(head) {
        Resolution::Interop => return None,
        Resolution::Core(name) if is_syntax_head(&name) => return None,
        _ => {}
    }
    let names: Vec<&str> = args.iter().map(|a| a.simple_symbol()).collect::<Option<_>>()?;
    (names == params).then_some(*head)
}

fn anon_fn_callee<'f>(form: &'f Form, st: &WalkState<'_>) -> Option<&'f Form> {
    let FormKind::AnonFn { body, max_arg, rest } = &form.kind else { return None };
    if *rest || *max_arg == 0 {
        return None;
    }
    let n = Form::live(body.args()).count();
    if n != *max_arg as usize {
        return None;
    }
    let expected: Vec<String> = (1..=*max_arg).map(|i| format!("%{i}")).collect();
    // `%` and `%1` name the same argument
    let normalized: Vec<String> = Form::live(body.args())
        .map(|a| match a.simple_symbol() {
            Some("%") => "%1".to_string(),
            Some(s) => s.to_string(),
            None => String::new(),
        })
        .collect();
    if normalized != expected {
        return None;
    }
    if body.head()?.simple_symbol().is_some_and(|h| h.starts_with('%')) {
        return None;
    }
    let args: Vec<&str> = Form::live(body.args()).filter_map(Form::simple_symbol).collect();
    forwarded(body, &args, st)
}

fn fn_callee<'f>(form: &'f Form, st: &WalkState<'_>) -> Option<&'f Form> {
    if !matches!(st.head_core(form), Some("fn" | "fn*")) {
        return None;
    }
    let items: Vec<&Form> = Form::live(form.args()).collect();
    let [params, body] = items.as_slice() else { return None };
    let params: Vec<&str> =
        Form::live(params.as_vector()?).map(|p| p.unwrap_meta().simple_symbol()).collect::<Option<_>>()?;
    if params.is_empty() || params.contains(&"&") {
        return None;
    }
    forwarded(body, &params, st)
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if let Some(callee) = anon_fn_callee(form, st).or_else(|| fn_callee(form, st)) {
            found.push((form.span, render(callee)));
        }
    });
    for (span, callee) in found {
        cx.report(span, format!("this function only forwards its arguments to {callee}; pass {callee} directly"), Some(callee));
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::test_support::{lint, suggestions};

    const ID: &str = "trivial-lambda";

    #[test]
    fn eta_reducible() {
        assert_eq!(suggestions(ID, "#(inc %)"), ["inc"]);
        assert_eq!(suggestions(ID, "#(f %1 %2)"), ["f"]);
        assert_eq!(suggestions(ID, "(fn [x] (f x))"), ["f"]);
        assert_eq!(suggestions(ID, "(fn [x y] (str/join x y))"), ["str/join"]);
    }

    #[test]
    fn not_reducible() {
        assert!(lint(ID, "(fn [x] (.trim x))").is_empty());
        assert!(lint(ID, "#(f % %)").is_empty());
        assert!(lint(ID, "#(f %2 %1)").is_empty());
        assert!(lint(ID, "(fn [x y] (f y x))").is_empty());
        assert!(lint(ID, "(fn [x] (f x) (g x))").is_empty());
        assert!(lint(ID, "#(when %)").is_empty());
        assert!(lint(ID, "(fn [f] (f f))").is_empty());
        assert!(lint(ID, "#(Math/abs %)").is_empty());
        assert!(lint(ID, "(fn [x] (f x 1))").is_empty());
        assert!(lint(ID, "(fn self [x] (f x))").is_empty());
    }
}
