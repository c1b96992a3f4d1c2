use super::context::Ctx;
use super::util::{live_args, Seen};
use crate::reader::{render, Form};
use crate::syntax::{invocation_chain, is_threading_macro, ChainDirection, ChainInfo};

fn step(head: &Form, args: &[&Form]) -> String {
    if args.is_empty() {
        return render(head);
    }
    let mut out = format!("({}", render(head));
    for a in args {
        out.push(' ');
        out.push_str(&render(a));
    }
    out.push(')');
    out
}

fn suggestion(chain: &ChainInfo<'_>) -> (String, &'static str) {
    let macro_name = match chain.direction {
        ChainDirection::LastArg => "->>",
        _ => "->",
    };
    let innermost = chain.elements[chain.elements.len() - 1];
    let inner_args = live_args(innermost);
    let mut steps = Vec::new();
    let seed = if inner_args.is_empty() {
        render(innermost)
    } else if macro_name == "->>" {
        let (last, rest) = inner_args.split_last().unwrap_or((&inner_args[0], &[]));
        steps.push(step(innermost.head().unwrap_or(innermost), rest));
        render(last)
    } else {
        steps.push(step(innermost.head().unwrap_or(innermost), &inner_args[1..]));
        render(inner_args[0])
    };
    for outer in chain.elements[..chain.elements.len() - 1].iter().rev() {
        let args = live_args(outer);
        let kept = &args[..args.len().saturating_sub(1)];
        steps.push(step(outer.head().unwrap_or(outer), kept));
    }
    (format!("({} {} {})", macro_name, seed, steps.join(" ")), macro_name)
}

pub(super) fn check(forms: &[Form], cx: &mut Ctx<'_>) {
    let min = cx.int("min-chain").max(2) as usize;
    let mut seen = Seen::default();
    let mut found = Vec::new();
    cx.walk(forms, |form, st| {
        if form.as_list().is_none() || seen.contains(form.span) {
            return;
        }
        if st.ancestors().iter().any(|a| st.head_core(a).is_some_and(is_threading_macro)) {
            return;
        }
        let chain = invocation_chain(form);
        if chain.len() < min {
            return;
        }
        for e in &chain.elements {
            seen.insert(e.span);
        }
        let (text, macro_name) = suggestion(&chain);
        found.push((form.span, chain.len(), macro_name, text));
    });
    for (span, len, macro_name, text) in found {
        cx.report(span, format!("{len} nested calls; a {macro_name} pipeline reads in data-flow order"), Some(text));
    }
}
