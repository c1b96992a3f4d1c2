use super::context::Ctx;
use crate::reader::{Form, FormKind};

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let min_keys = cx.int("min-keys").max(1) as usize;
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        let Some(items) = form.as_map() else { return };
        if st.in_pattern() || st.parent().is_some_and(|p| matches!(p.kind, FormKind::NamespacedMap { .. })) {
            return;
        }
        let keys: Vec<&Form> = Form::live(items).step_by(2).collect();
        let mut plain = 0;
        for key in keys {
            match key.as_keyword() {
                Some(k) if k.is_qualified() => return,
                Some(_) => plain += 1,
                None => {}
            }
        }
        if plain >= min_keys {
            found.push((form.span, plain));
        }
    });
    for (span, n) in found {
        cx.report(span, format!("map literal with {n} unqualified keyword keys; consider namespaced keys"), None);
    }
}
