use std::collections::HashSet;
use std::sync::LazyLock;

/// Clojure release the bundled name list was taken from.
pub const CORE_NAMES_VERSION: &str = "1.12";

const CORE_NAMES_FILE: &str = include_str!("../../data/clojure-core-1.12.txt");

static CORE_NAMES: LazyLock<HashSet<&'static str>> = LazyLock::new(|| parse_name_list(CORE_NAMES_FILE));

/// Parses a name list: one symbol per line, blank lines and `#` lines ignored.
pub fn parse_name_list(text: &str) -> HashSet<&str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect()
}

/// Whether `name` is a public `clojure.core` var or a special form.
pub fn is_core_name(name: &str) -> bool {
    CORE_NAMES.contains(name)
}

pub fn core_name_count() -> usize {
    CORE_NAMES.len()
}

const SPECIAL_FORMS: &[&str] = &[
    "def", "if", "do", "let*", "quote", "var", "fn*", "loop*", "recur", "throw", "try", "catch", "finally",
    "monitor-enter", "monitor-exit", "new", "set!", "letfn*", "case*", "deftype*", "reify*", "import*", ".",
];

const CORE_MACROS: &[&str] = &[
    "->", "->>", "..", "amap", "and", "areduce", "as->", "assert", "binding", "bound-fn", "case", "comment",
    "cond", "cond->", "cond->>", "condp", "declare", "definline", "definterface", "defmacro", "defmethod",
    "defmulti", "defn", "defn-", "defonce", "defprotocol", "defrecord", "defstruct", "deftype", "delay",
    "doseq", "dosync", "dotimes", "doto", "extend-protocol", "extend-type", "fn", "for", "future",
    "gen-class", "gen-interface", "if-let", "if-not", "if-some", "import", "io!", "lazy-cat", "lazy-seq",
    "let", "letfn", "locking", "loop", "memfn", "ns", "or", "proxy", "proxy-super", "pvalues", "refer-clojure",
    "reify", "some->", "some->>", "sync", "time", "vswap!", "when", "when-first", "when-let", "when-not",
    "when-some", "while", "with-bindings", "with-in-str", "with-loading-context", "with-local-vars",
    "with-open", "with-out-str", "with-precision", "with-redefs",
];

pub fn is_special_form(name: &str) -> bool {
    SPECIAL_FORMS.contains(&name)
}

pub fn is_core_macro(name: &str) -> bool {
    CORE_MACROS.contains(&name)
}

/// Special forms and core macros: heads that are not first-class functions.
pub fn is_syntax_head(name: &str) -> bool {
    is_special_form(name) || is_core_macro(name)
}

/// Threading macros recognized as already-linear code.
pub const THREADING_MACROS: &[&str] = &["->", "->>", "some->", "some->>", "cond->", "cond->>", "doto", "as->"];

pub fn is_threading_macro(name: &str) -> bool {
    THREADING_MACROS.contains(&name)
}
