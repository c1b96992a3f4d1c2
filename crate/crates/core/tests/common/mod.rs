//! Generator of syntactically valid Clojure source text.
#![allow(dead_code)]

use proptest::prelude::*;

fn pick(items: &[&'static str]) -> BoxedStrategy<String> {
    prop::sample::select(items.to_vec()).prop_map(String::from).boxed()
}

pub fn atom() -> impl Strategy<Value = String> {
    prop_oneof![
        pick(&["x", "foo-bar", "a.b/c", "clojure.core//", "/", "*ns*", "->>", "ok?", "set!"]),
        pick(&[":k", ":a/b", "::local", "::str/up", ":ns.x/y-z"]),
        pick(&["0", "42", "-7", "3.14", "1e10", "1/2", "0xff", "017", "2r1010", "36rZZ", "7N", "1.0M", "##Inf", "##-Inf", "##NaN"]),
        pick(&["\\a", "\\newline", "\\space", "\\u0041", "\\o101", "\\\\", "\\("]),
        pick(&["nil", "true", "false"]),
        "[a-z ]{0,6}".prop_map(|s| format!("\"{s}\"")).boxed(),
        pick(&["\"esc\\\"aped\\n\"", "#\"a+\\d*\"", "#\"[x]\""]),
    ]
}

fn sep() -> impl Strategy<Value = &'static str> + Clone {
    prop::sample::select(vec![" ", "  ", ", ", "\n", "\n  ", " ; note\n"])
}

fn joined(items: Vec<(String, &'static str)>) -> String {
    items.into_iter().map(|(f, s)| format!("{f}{s}")).collect()
}

pub fn form() -> impl Strategy<Value = String> {
    atom().prop_recursive(4, 48, 5, |inner| {
        let items = prop::collection::vec((inner.clone(), sep()), 0..5);
        prop_oneof![
            items.clone().prop_map(|v| format!("({})", joined(v))),
            items.clone().prop_map(|v| format!("[{}]", joined(v))),
            prop::collection::vec(inner.clone(), 0..4).prop_map(|v| {
                let pairs: Vec<String> = v.iter().enumerate().map(|(i, x)| format!(":k{i} {x}")).collect();
                format!("{{{}}}", pairs.join(" "))
            }),
            (0usize..4).prop_map(|n| format!("#{{{}}}", (0..n).map(|i| format!(":e{i}")).collect::<Vec<_>>().join(" "))),
            (prop::sample::select(vec!["'", "`", "~", "~@", "@", "#'"]), inner.clone()).prop_map(|(p, f)| format!("{p}{f}")),
            (prop::sample::select(vec!["^:private ", "^{:doc \"d\"} ", "^String ", "^:a ^:b "]), inner.clone())
                .prop_map(|(m, f)| format!("{m}{f}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("[#_{a} {b}]")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("#?(:clj {a} :cljs {b})")),
            prop::collection::vec(inner.clone(), 0..3).prop_map(|v| format!("[#?@(:clj [{}])]", v.join(" "))),
            inner.clone().prop_map(|f| format!("#my/tag {f}")),
            prop::collection::vec(inner.clone(), 0..3).prop_map(|v| {
                let pairs: Vec<String> = v.iter().enumerate().map(|(i, x)| format!(":f{i} {x}")).collect();
                format!("#:user{{{}}}", pairs.join(" "))
            }),
        ]
    })
}

fn anon_fn() -> impl Strategy<Value = String> {
    (atom(), prop::sample::select(vec!["%", "%1", "%2", "%&"])).prop_map(|(a, arg)| format!("#(f {a} {arg})"))
}

pub fn program() -> impl Strategy<Value = String> {
    prop::collection::vec((prop_oneof![4 => form(), 1 => anon_fn()], sep()), 1..6).prop_map(joined)
}
