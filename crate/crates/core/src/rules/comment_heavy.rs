use std::collections::BTreeSet;

use super::context::Ctx;
use crate::reader::{Form, Span};
use crate::syntax::classify_defn;

/// Lines inside `span` holding code, i.e. not blank and not comment-only.
fn code_lines(source: &str, span: Span) -> usize {
    let text = span.slice(source);
    // the first line may start mid-line; it always holds the opening paren
    text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with(';')).count()
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let min_comments = cx.int("min-comments").max(0) as usize;
    let max_ratio = cx.ratio("max-ratio");
    let mut defns = Vec::new();
    cx.walk(forms, |form, st| {
        if !matches!(st.head_core(form), Some("defn" | "defn-" | "defmacro")) {
            return;
        }
        if st.ancestors().iter().any(|a| st.head_core(a) == Some("comment")) {
            return;
        }
        let name = classify_defn(form).and_then(|d| d.name_str()).unwrap_or("function");
        defns.push((form.span, name.to_string()));
    });
    let mut found = Vec::new();
    for (span, name) in defns {
        let comment_lines: BTreeSet<u32> =
            cx.file.comments.iter().filter(|c| span.contains(&c.span)).map(|c| c.span.start.line).collect();
        let comments = comment_lines.len();
        let code = code_lines(&cx.file.source, span).max(1);
        let ratio = comments as f64 / code as f64;
        if comments >= min_comments && ratio >= max_ratio {
            found.push((span, name, comments, code));
        }
    }
    for (span, name, comments, code) in found {
        cx.report(
            span,
            format!("`{name}` has {comments} comment lines for {code} lines of code; let names and structure carry the explanation"),
            None,
        );
    }
}

#[cfg(test)]
mod tests {
    use crate::rules::test_support::lint;

    const ID: &str = "comment-heavy";

    fn commented(comments: usize, code: usize) -> String {
        let mut lines = vec!["(defn f [x]".to_string()];
        for i in 0..comments {
            lines.push(format!("  ;; note {i}"));
        }
        for i in 1..code {
            lines.push(format!("  (g {i})"));
        }
        lines.push("  x)".to_string());
        lines.join("\n")
    }

    #[test]
    fn heavy_commentary() {
        assert_eq!(lint(ID, &commented(12, 10)).len(), 1);
    }

    #[test]
    fn docstrings_and_light_comments() {
        assert!(lint(ID, "(defn f \"Docs\n  over\n  lines.\" [x] x)").is_empty());
        assert!(lint(ID, &commented(7, 3)).is_empty());
        assert!(lint(ID, &commented(8, 20)).is_empty());
    }

    #[test]
    fn rich_comment_blocks_are_exempt() {
        let src = format!("(comment\n{})", commented(12, 2));
        assert!(lint(ID, &src).is_empty());
    }
}
