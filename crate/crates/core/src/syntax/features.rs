use crate::reader::{Form, FormKind};

/// Picks the branch of a reader conditional for the active feature set:
/// the first branch whose feature is active, or `:default`.
pub fn select_branch<'f, S: AsRef<str>>(branches: &'f [(Form, Form)], features: &[S]) -> Option<&'f Form> {
    branches.iter().find_map(|(feature, form)| {
        let kw = feature.as_keyword()?;
        let active = kw.ns.is_none() && (kw.name == "default" || features.iter().any(|f| f.as_ref() == kw.name));
        active.then_some(form)
    })
}

/// Produces the analyzable view of a file: discards removed and reader
/// conditionals replaced by their selected branch (spliced for `#?@`).
/// Spans are kept from the original forms.
pub fn select_features<S: AsRef<str>>(forms: &[Form], features: &[S]) -> Vec<Form> {
    let mut out = Vec::with_capacity(forms.len());
    select_into(forms, features, &mut out);
    out
}

fn select_into<S: AsRef<str>>(forms: &[Form], features: &[S], out: &mut Vec<Form>) {
    for form in forms {
        match &form.kind {
            FormKind::Discard(_) => {}
            FormKind::ReaderCond { splicing, branches } => {
                let Some(chosen) = select_branch(branches, features) else { continue };
                if *splicing {
                    if let FormKind::List(items) | FormKind::Vector(items) = &chosen.kind {
                        select_into(items, features, out);
                    }
                } else {
                    out.extend(select_one(chosen, features));
                }
            }
            _ => out.extend(select_one(form, features)),
        }
    }
}

fn select_one<S: AsRef<str>>(form: &Form, features: &[S]) -> Option<Form> {
    use FormKind::*;
    let boxed = |f: &Form| select_one(f, features).map(Box::new);
    let kind = match &form.kind {
        Discard(_) => return None,
        ReaderCond { .. } => {
            let mut v = select_features(std::slice::from_ref(form), features);
            return if v.len() == 1 { v.pop() } else { None };
        }
        List(items) => List(select_features(items, features)),
        Vector(items) => Vector(select_features(items, features)),
        Map(items) => Map(select_features(items, features)),
        Set(items) => Set(select_features(items, features)),
        Quote(f) => Quote(boxed(f)?),
        SyntaxQuote(f) => SyntaxQuote(boxed(f)?),
        Unquote(f) => Unquote(boxed(f)?),
        UnquoteSplicing(f) => UnquoteSplicing(boxed(f)?),
        Deref(f) => Deref(boxed(f)?),
        VarQuote(f) => VarQuote(boxed(f)?),
        Meta { meta, target } => Meta { meta: boxed(meta)?, target: boxed(target)? },
        AnonFn { body, max_arg, rest } => AnonFn { body: boxed(body)?, max_arg: *max_arg, rest: *rest },
        Tagged { tag, form } => Tagged { tag: tag.clone(), form: boxed(form)? },
        NamespacedMap { prefix, map } => NamespacedMap { prefix: prefix.clone(), map: boxed(map)? },
        other => other.clone(),
    };
    Some(Form::new(kind, form.span))
}
