use super::context::Ctx;
use super::util::{call, core_call};
use crate::reader::{Form, FormKind};
use crate::syntax::WalkState;

fn suggestion(form: &Form, st: &WalkState<'_>) -> Option<String> {
    let args = core_call(form, st, "into")?;
    let [seed, coll] = args.as_slice() else { return None };
    match &seed.kind {
        FormKind::Vector(v) if Form::live(v).next().is_none() => {
            for (lazy, eager) in [("map", "mapv"), ("filter", "filterv")] {
                if let Some(inner) = core_call(coll, st, lazy) {
                    if inner.len() == 2 {
                        return Some(call(eager, &inner));
                    }
                }
            }
            Some(call("vec", &[coll]))
        }
        FormKind::List(v) if Form::live(v).next().is_none() => Some(format!("(reverse (seq {}))", crate::reader::render(coll))),
        FormKind::Set(v) if Form::live(v).next().is_none() => Some(call("set", &[coll])),
        _ => None,
    }
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if let Some(s) = suggestion(form, st) {
            found.push((form.span, s));
        }
    });
    for (span, s) in found {
        let message = if s.starts_with("(reverse") {
            "into an empty list reverses the collection; say so with reverse".to_string()
        } else {
            format!("into an empty collection; {} is more direct", s.trim_start_matches('(').split(' ').next().unwrap_or(""))
        };
        cx.report(span, message, Some(s));
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::test_support::{lint, suggestions};

    const ID: &str = "unnecessary-into";

    #[test]
    fn rewrite_table() {
        assert_eq!(suggestions(ID, "(into [] (map f xs))"), ["(mapv f xs)"]);
        assert_eq!(suggestions(ID, "(into [] (filter p xs))"), ["(filterv p xs)"]);
        assert_eq!(suggestions(ID, "(into [] xs)"), ["(vec xs)"]);
        assert_eq!(suggestions(ID, "(into #{} xs)"), ["(set xs)"]);
        assert_eq!(suggestions(ID, "(into () xs)"), ["(reverse (seq xs))"]);
    }

    #[test]
    fn non_empty_seed_or_transducer() {
        assert!(lint(ID, "(into [0] (map f xs))").is_empty());
        assert!(lint(ID, "(into [] (map f) xs)").is_empty());
        assert!(lint(ID, "(into {} pairs)").is_empty());
        assert!(lint(ID, "(let [into conj] (into [] xs))").is_empty());
    }

    #[test]
    fn shadowed_inner_map_falls_back_to_vec() {
        assert_eq!(suggestions(ID, "(let [map list] (into [] (map f xs)))"), ["(vec (map f xs))"]);
    }
}
