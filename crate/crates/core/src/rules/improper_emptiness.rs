use super::context::Ctx;
use super::util::{call, core_call};
use crate::reader::Form;
use crate::syntax::WalkState;

/// `x` when `form` is `(count x)`.
fn counted<'f>(form: &'f Form, st: &WalkState<'_>) -> Option<&'f Form> {
    match core_call(form, st, "count")?.as_slice() {
        [x] => Some(x),
        _ => None,
    }
}

fn small_int(form: &Form) -> Option<u8> {
    ["0", "1"].iter().position(|t| form.is_number(t)).map(|p| p as u8)
}

enum Verdict {
    Empty,
    NotEmpty,
}

fn classify<'f>(form: &'f Form, st: &WalkState<'_>) -> Option<(Verdict, &'f Form)> {
    let op = st.head_core(form)?;
    let args: Vec<&Form> = Form::live(form.args()).collect();
    if op == "not" {
        let [inner] = args.as_slice() else { return None };
        let &[x] = core_call(inner, st, "empty?")?.as_slice() else { return None };
        return Some((Verdict::NotEmpty, x));
    }
    if matches!(op, "zero?" | "pos?") {
        let [inner] = args.as_slice() else { return None };
        let x = counted(inner, st)?;
        let verdict = if op == "zero?" { Verdict::Empty } else { Verdict::NotEmpty };
        return Some((verdict, x));
    }
    let [a, b] = args.as_slice() else { return None };
    // normalise to (op (count x) n)
    let (x, n, op) = match (counted(a, st), counted(b, st)) {
        (Some(x), None) => (x, small_int(b)?, op),
        (None, Some(x)) => {
            let flipped = match op {
                "<" => ">",
                ">" => "<",
                "<=" => ">=",
                ">=" => "<=",
                other => other,
            };
            (x, small_int(a)?, flipped)
        }
        _ => return None,
    };
    let verdict = match (op, n) {
        ("=" | "==" | "<=", 0) | ("<", 1) => Verdict::Empty,
        (">" | "not=", 0) | (">=", 1) => Verdict::NotEmpty,
        _ => return None,
    };
    Some((verdict, x))
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if let Some((verdict, x)) = classify(form, st) {
            found.push((form.span, verdict, x));
        }
    });
    for (span, verdict, x) in found {
        match verdict {
            Verdict::Empty => cx.report(span, "use empty? to test for emptiness", Some(call("empty?", &[x]))),
            Verdict::NotEmpty => {
                cx.report(span, "use seq (or not-empty) to test for non-emptiness", Some(call("seq", &[x])))
            }
        }
    }
}
