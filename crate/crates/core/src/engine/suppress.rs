use std::collections::BTreeSet;
use std::sync::LazyLock;

use regex::Regex;

use crate::reader::CommentRecord;
use crate::rules::Diagnostic;

static DIRECTIVE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[;\s]*clj-smell:(.*)$").expect("valid regex"));
static IGNORE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^\s*(ignore|ignore-file)\[([^\]\[]*)\]\s*$").expect("valid regex"));

/// Which rules a directive covers; `None` means every rule.
type RuleSet = Option<BTreeSet<String>>;

#[derive(Debug, Default)]
pub struct Suppressions {
    /// (line, rules) pairs for line-scoped directives.
    lines: Vec<(u32, RuleSet)>,
    file: Vec<RuleSet>,
    /// Malformed directives: (comment, problem).
    pub problems: Vec<(CommentRecord, String)>,
}

fn covers(set: &RuleSet, rule: &str) -> bool {
    set.as_ref().is_none_or(|s| s.contains(rule))
}

/// The line a standalone directive applies to: the next line holding code.
fn next_code_line(source: &str, after: u32) -> Option<u32> {
    source
        .lines()
        .enumerate()
        .skip(after as usize)
        .find(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with(';')
        })
        .map(|(i, _)| i as u32 + 1)
}

impl Suppressions {
    pub fn parse(source: &str, comments: &[CommentRecord]) -> Suppressions {
        let mut out = Suppressions::default();
        for c in comments {
            let Some(m) = DIRECTIVE.captures(&c.text) else { continue };
            let Some(d) = IGNORE.captures(&m[1]) else {
                out.problems.push((c.clone(), format!("malformed clj-smell directive `{}`", m[1].trim())));
                continue;
            };
            let names: BTreeSet<String> =
                d[2].split([',', ' ', '\t']).filter(|s| !s.is_empty()).map(str::to_string).collect();
            for unknown in names.iter().filter(|n| crate::rules::find_rule(n).is_none()) {
                out.problems.push((c.clone(), format!("unknown rule `{unknown}` in clj-smell directive")));
            }
            let set = if names.is_empty() { None } else { Some(names) };
            if &d[1] == "ignore-file" {
                out.file.push(set);
                continue;
            }
            let line = c.span.start.line;
            out.lines.push((line, set.clone()));
            let standalone = source.lines().nth(line as usize - 1).is_some_and(|l| l.trim_start().starts_with(';'));
            if standalone {
                if let Some(next) = next_code_line(source, line) {
                    out.lines.push((next, set));
                }
            }
        }
        out
    }

    pub fn suppresses(&self, d: &Diagnostic) -> bool {
        self.file.iter().any(|s| covers(s, &d.rule_id))
            || self.lines.iter().any(|(line, s)| *line == d.span.start.line && covers(s, &d.rule_id))
    }
}
