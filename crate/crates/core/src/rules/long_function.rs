use super::context::Ctx;
use crate::reader::Form;
use crate::syntax::classify_defn;

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let max_lines = cx.int("max-lines").max(1) as u32;
    let max_forms = cx.int("max-forms").max(1) as usize;
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if !matches!(st.head_core(form), Some("defn" | "defn-" | "defmacro" | "fn")) {
            return;
        }
        let Some(def) = classify_defn(form) else { return };
        for arity in &def.arities {
            let Some(body) = arity.body_span() else { continue };
            let lines = body.line_count();
            let nodes: usize = arity.body.iter().map(|f| f.node_count()).sum();
            if lines > max_lines || nodes > max_forms {
                found.push((arity.span, def.name_str().unwrap_or("fn").to_string(), lines, nodes));
            }
        }
    });
    for (span, name, lines, nodes) in found {
        cx.report(
            span,
            format!("`{name}` body spans {lines} lines and {nodes} forms (limits {max_lines} lines, {max_forms} forms); split it into smaller functions"),
            None,
        );
    }
}
