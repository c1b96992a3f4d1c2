//! Structural queries shared by several detectors: implicit-`do` bodies,
//! tail positions and nested invocation chains.

use super::core_names::is_syntax_head;
use super::walk::WalkState;
use crate::reader::Form;

fn live(items: &[Form]) -> Vec<&Form> {
    Form::live(items).collect()
}

/// The bodies of `form` that are evaluated as an implicit `do`.
///
/// Function arities, `let`-like forms, `when`-family forms, `try`/`catch`
/// and `finally` are recognised; other forms have no implicit bodies.
pub fn implicit_do_bodies<'f>(form: &'f Form, st: &WalkState<'_>) -> Vec<Vec<&'f Form>> {
    let Some(items) = form.as_list() else { return Vec::new() };
    let items = live(items);
    let Some(head) = st.head_core(form) else { return Vec::new() };
    let lead = match head {
        "do" | "future" | "delay" | "comment" | "finally" => 0,
        "when" | "when-not" | "when-let" | "when-first" | "when-some" | "let" | "letfn" | "loop" | "doseq"
        | "dotimes" | "binding" | "locking" | "with-open" | "with-redefs" => 1,
        "catch" => 2,
        "try" => {
            let mut out = Vec::new();
            let end = items
                .iter()
                .skip(1)
                .position(|f| st.head_core(f).is_some_and(|h| h == "catch" || h == "finally"))
                .map_or(items.len(), |p| p + 1);
            out.push(items[1..end].to_vec());
            for clause in &items[end..] {
                out.extend(implicit_do_bodies(clause, st));
            }
            return out;
        }
        "fn" | "defn" | "defn-" | "defmacro" => {
            return super::defn::classify_defn(form)
                .map(|def| def.arities.into_iter().map(|a| a.body).collect())
                .unwrap_or_default();
        }
        _ => return Vec::new(),
    };
    if items.len() <= lead + 1 {
        return vec![Vec::new()];
    }
    vec![items[lead + 1..].to_vec()]
}

/// Forms whose value becomes the value of `form`, following branches of
/// conditionals and the last form of `do`/`let`-like bodies.
pub fn tail_positions<'f>(form: &'f Form, st: &WalkState<'_>) -> Vec<&'f Form> {
    let mut out = Vec::new();
    collect_tails(form, st, &mut out);
    out
}

fn collect_tails<'f>(form: &'f Form, st: &WalkState<'_>, out: &mut Vec<&'f Form>) {
    let Some(items) = form.as_list() else {
        out.push(form);
        return;
    };
    let items = live(items);
    let head = st.head_core(form);
    match head {
        Some("if" | "if-not" | "if-let" | "if-some") => {
            for branch in items.iter().skip(2) {
                collect_tails(branch, st, out);
            }
        }
        Some("when" | "when-not" | "when-let" | "when-some" | "when-first" | "let" | "letfn" | "do" | "binding"
        | "locking")
            if items.len() > 1 =>
        {
            let lead = if head == Some("do") { 0 } else { 1 };
            if items.len() > lead + 1 {
                collect_tails(items[items.len() - 1], st, out);
            }
        }
        Some("cond") => {
            for pair in items[1..].chunks(2) {
                if let [_, result] = pair {
                    collect_tails(result, st, out);
                }
            }
        }
        Some("case") if items.len() > 2 => {
            let clauses = &items[2..];
            for pair in clauses.chunks(2) {
                match pair {
                    [_, result] => collect_tails(result, st, out),
                    [default] => collect_tails(default, st, out),
                    _ => {}
                }
            }
        }
        Some("or" | "and") if items.len() > 1 => collect_tails(items[items.len() - 1], st, out),
        Some("recur") => {}
        _ => out.push(form),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainDirection {
    /// Every nested call is the sole argument of its parent.
    FirstArg,
    /// At least one nested call is the last of several arguments.
    LastArg,
    /// No nesting to speak of.
    Mixed,
}

#[derive(Debug, Clone)]
pub struct ChainInfo<'f> {
    /// The calls from outermost to innermost.
    pub elements: Vec<&'f Form>,
    pub direction: ChainDirection,
}

impl ChainInfo<'_> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A call with a symbol or keyword head that is not a special form or
/// binding macro.
pub fn is_plain_call(form: &Form) -> bool {
    let Some(head) = form.head() else { return false };
    if head.as_keyword().is_some() {
        return true;
    }
    match head.as_symbol() {
        Some(sym) => !(sym.ns.is_none() && is_syntax_head(&sym.name)),
        None => false,
    }
}

/// The chain of nested calls starting at `form`, following a nested call
/// only when it is the sole argument or the last of several arguments.
pub fn invocation_chain(form: &Form) -> ChainInfo<'_> {
    if !is_plain_call(form) {
        return ChainInfo { elements: Vec::new(), direction: ChainDirection::Mixed };
    }
    let mut elements = vec![form];
    let mut saw_last = false;
    let mut current = form;
    loop {
        let args: Vec<&Form> = Form::live(current.args()).collect();
        let Some(&last) = args.last() else { break };
        if !is_plain_call(last) {
            break;
        }
        if args.len() > 1 {
            saw_last = true;
        }
        elements.push(last);
        current = last;
    }
    let direction = match (elements.len(), saw_last) {
        (1, _) => ChainDirection::Mixed,
        (_, true) => ChainDirection::LastArg,
        (_, false) => ChainDirection::FirstArg,
    };
    ChainInfo { elements, direction }
}
