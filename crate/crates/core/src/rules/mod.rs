//! The smell detectors and their registry.
//!
//! Every detector is a pure function over the top-level forms of one file.
//! Detectors only see feature-selected, non-discarded code, and they resolve
//! core names through the current scope so shadowed names never fire.

mod context;
mod types;
mod util;

mod comment_heavy;
mod conditional_buildup;
mod deep_nesting;
mod direct_rt_usage;
mod explicit_recursion;
mod hidden_side_effects;
mod hof_overuse;
mod improper_emptiness;
mod inefficient_filtering;
mod lazy_side_effects;
mod long_function;
mod long_parameter_list;
mod missing_map_default;
mod nested_forms;
mod non_namespaced_keys;
mod overabstracted_composition;
mod positional_return;
mod production_doall;
mod redundant_do;
mod thread_ignorance;
mod trivial_lambda;
mod unnecessary_into;
mod unnecessary_macro;
mod verbose_check;

pub use context::{Ctx, FileContext, RuleSettings};
pub use types::{Category, Diagnostic, ParamDefault, ParamValue, RuleDescriptor, Severity, UnknownSeverity};

use crate::reader::Form;
use Category::{ClojureSpecific, Functional, Traditional};
use ParamDefault::{Flag, Int, Names, Ratio};
use Severity::{Info, Warning};

pub type CheckFn = fn(&[Form], &mut Ctx<'_>);

/// A detector: its metadata and its check function.
pub struct Rule {
    pub descriptor: RuleDescriptor,
    pub check: CheckFn,
}

impl std::fmt::Debug for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Rule").field("id", &self.descriptor.id).finish()
    }
}

impl Rule {
    /// Runs the detector with the given settings, ignoring `enabled`.
    pub fn run(&'static self, forms: &[Form], file: &FileContext, settings: &RuleSettings) -> Vec<Diagnostic> {
        let mut cx = Ctx::new(file, settings, &self.descriptor);
        (self.check)(forms, &mut cx);
        cx.into_diagnostics()
    }
}

const EFFECTS: &[&str] = &["println", "print", "prn", "printf", "spit", "slurp", "swap!", "reset!", "alter", "send", "send-off"];

macro_rules! rule {
    ($id:literal, $cat:expr, $sev:expr, $enabled:expr, [$($p:literal => $v:expr),*], $name:literal, [$($src:literal),*],
     $desc:literal, $example:literal, $rewrite:literal, $check:path) => {
        Rule {
            descriptor: RuleDescriptor {
                id: $id,
                category: $cat,
                default_severity: $sev,
                default_enabled: $enabled,
                params: &[$(($p, $v)),*],
                catalog_name: $name,
                sources: &[$($src),*],
                description: $desc,
                example: $example,
                rewrite: $rewrite,
            },
            check: $check,
        }
    };
}

static RULES: [Rule; 24] = [
    rule!("unnecessary-macro", ClojureSpecific, Warning, true, [], "Unnecessary Macros", ["G8"],
        "A macro that neither quotes nor builds code behaves like a function but cannot be passed around or composed.",
        "(defmacro add2 [x] (+ x 2))", "(defn add2 [x] (+ x 2))", unnecessary_macro::check),
    rule!("non-namespaced-keys", ClojureSpecific, Info, true, ["min-keys" => Int(3)], "Namespaced Keys Neglect", ["G1"],
        "Entity maps keyed only by unqualified keywords risk key collisions when data from different sources is merged.",
        "{:id 1 :name \"Ada\" :email \"ada@example.com\"}", "#:user{:id 1 :name \"Ada\" :email \"ada@example.com\"}",
        non_namespaced_keys::check),
    rule!("improper-emptiness-check", ClojureSpecific, Warning, true, [], "Improper Emptiness Check", ["G2"],
        "Emptiness is tested with seq and empty?, not by negating empty? or comparing counts.",
        "(when (not (empty? xs)) (first xs))", "(when (seq xs) (first xs))", improper_emptiness::check),
    rule!("missing-map-default", ClojureSpecific, Info, false, [], "Accessing non-existent Map Fields", ["G2"],
        "A two-argument get returns nil both for a missing key and for a key mapped to nil; a not-found value keeps them apart.",
        "(get config :port)", "(get config :port 8080)", missing_map_default::check),
    rule!("unnecessary-into", ClojureSpecific, Warning, true, [], "Unnecessary into", ["G2"],
        "Pouring a collection into an empty literal has a more direct function: vec, set, mapv or filterv.",
        "(into [] (map inc xs))", "(mapv inc xs)", unnecessary_into::check),
    rule!("conditional-build-up", ClojureSpecific, Warning, true, ["min-rebinds" => Int(2)], "Conditional Build-Up", ["G2"],
        "Rebinding the same local through a chain of (if test (update x) x) steps is imperative accumulation; cond-> states it directly.",
        "(let [m {} m (if a (assoc m :a 1) m) m (if b (assoc m :b 2) m)] m)",
        "(cond-> {} a (assoc :a 1) b (assoc :b 2))", conditional_buildup::check),
    rule!("verbose-check", ClojureSpecific, Warning, true, [], "Verbose Checks", ["G2"],
        "Comparisons against nil, true, false or zero have dedicated predicates.",
        "(not (nil? x))", "(some? x)", verbose_check::check),
    rule!("production-doall", ClojureSpecific, Warning, true, ["include-dorun" => Flag(false)], "Production doall", ["G2"],
        "doall realizes and retains a whole lazy sequence; outside tests an eager function or run! usually fits better.",
        "(doall (map process items))", "(mapv process items)", production_doall::check),
    rule!("redundant-do", ClojureSpecific, Warning, true, [], "Redundant do Block", ["G2"],
        "do is needed only where a single expression is expected; bodies of let, when, fn and friends already sequence their forms.",
        "(when ready? (do (log) (run)))", "(when ready? (log) (run))", redundant_do::check),
    rule!("thread-ignorance", ClojureSpecific, Warning, true, ["min-chain" => Int(4)], "Thread Ignorance", ["G2"],
        "Deeply nested calls read inside-out; a threading macro puts the steps in the order they happen.",
        "(d (c (b (a x))))", "(-> x a b c d)", thread_ignorance::check),
    rule!("nested-forms", ClojureSpecific, Warning, true, [], "Nested Forms", ["G2"],
        "A let or doseq whose only body form is another let or doseq can use one binding vector.",
        "(let [a 1] (let [b 2] (+ a b)))", "(let [a 1 b 2] (+ a b))", nested_forms::check),
    rule!("direct-rt-usage", ClojureSpecific, Warning, true, [], "Direct Usage of clojure.lang.RT", ["G5"],
        "clojure.lang.RT is an implementation detail; public clojure.core functions are stable and portable.",
        "(clojure.lang.RT/count xs)", "(count xs)", direct_rt_usage::check),
    rule!("trivial-lambda", Functional, Warning, true, [], "Trivial Lambda", ["G1", "G2"],
        "A function literal that only forwards its arguments to another function can be replaced by that function.",
        "(map #(inc %) xs)", "(map inc xs)", trivial_lambda::check),
    rule!("inefficient-filtering", Functional, Info, true, [], "Inefficient Filtering", ["G10"],
        "Generating values and discarding most of them wastes work and can fail to terminate; build valid values directly.",
        "(gen/such-that even? gen/nat)", "(gen/fmap #(* 2 %) gen/nat)", inefficient_filtering::check),
    rule!("overabstracted-composition", Functional, Info, true, ["max-comp-arity" => Int(4), "max-nesting" => Int(2)],
        "Overabstracted Composition", ["G1"],
        "Long comp chains and comp/partial nested in each other hide the data flow.",
        "(comp (partial map inc) (partial filter odd?) first)", "(fn [xs] (map inc (filter odd? (first xs))))",
        overabstracted_composition::check),
    rule!("deep-nesting", Functional, Info, true, ["max-depth" => Int(5)], "Deeply-nested Call Stacks", ["G1"],
        "Function bodies with deeply nested calls are hard to follow and debug.",
        "(defn f [x] (a (b 1 (c (d (e x) 2)))))", "(defn f [x] (let [y (d (e x) 2)] (a (b 1 (c y)))))",
        deep_nesting::check),
    rule!("hof-overuse", Functional, Info, true, ["max-curry" => Int(3)], "Overuse of Higher-Order Functions", ["G1"],
        "Functions that return functions that return functions make call sites cryptic.",
        "(fn [a] (fn [b] (fn [c] (+ a b c))))", "(fn [a b c] (+ a b c))", hof_overuse::check),
    rule!("lazy-side-effects", Functional, Warning, true, ["effect-symbols" => Names(EFFECTS)], "Lazy Side Effects", ["G12"],
        "Side effects inside lazy sequences run late, partially or never, depending on consumption.",
        "(map #(println %) xs)", "(run! println xs)", lazy_side_effects::check),
    rule!("hidden-side-effects", Functional, Warning, true,
        ["effect-symbols" => Names(EFFECTS), "allowlist" => Names(&["-main"])], "Hidden Side Effects", ["G1"],
        "Functions that write files, print or mutate state should say so with a trailing ! in their name.",
        "(defn save-user [u] (spit \"users.edn\" u))", "(defn save-user! [u] (spit \"users.edn\" u))",
        hidden_side_effects::check),
    rule!("explicit-recursion", Functional, Warning, true, [], "Explicit Recursion", ["G1"],
        "Hand-written recursion over a sequence is usually reduce, map or filter.",
        "(defn sum [xs] (if (empty? xs) 0 (+ (first xs) (sum (rest xs)))))", "(defn sum [xs] (reduce + xs))",
        explicit_recursion::check),
    rule!("positional-return", Functional, Info, true, [], "Positional Return Values", ["G2"],
        "Returning several values in a vector makes callers depend on positions; a map names them.",
        "(defn min-max [xs] [(apply min xs) (apply max xs)])",
        "(defn min-max [xs] {:min (apply min xs) :max (apply max xs)})", positional_return::check),
    rule!("long-parameter-list", Traditional, Info, true, ["max-params" => Int(4)], "Long Parameter List", ["G1", "G2"],
        "Functions taking many positional arguments are hard to call correctly; group related arguments in a map.",
        "(defn connect [host port user password timeout] ...)", "(defn connect [{:keys [host port user password timeout]}] ...)",
        long_parameter_list::check),
    rule!("long-function", Traditional, Info, true, ["max-lines" => Int(25), "max-forms" => Int(100)], "Long Method", ["G1"],
        "Long function bodies mix several concerns; small named functions compose better.",
        "(defn process [x] ... 40 lines ...)", "(defn process [x] (-> x parse validate store))", long_function::check),
    rule!("comment-heavy", Traditional, Info, true, ["min-comments" => Int(8), "max-ratio" => Ratio(0.5)], "Comments", ["G9"],
        "A function that needs as many comment lines as code lines probably wants better names or smaller pieces.",
        "(defn f [x]\n  ;; step one ...\n  ;; (many more comment lines)\n  (g x))", "(defn f [x] (-> x step-one step-two))",
        comment_heavy::check),
];

/// All detectors, in catalog order.
pub fn registry() -> &'static [Rule] {
    &RULES
}

pub fn find_rule(id: &str) -> Option<&'static Rule> {
    RULES.iter().find(|r| r.descriptor.id == id)
}

pub fn descriptor(id: &str) -> Option<&'static RuleDescriptor> {
    find_rule(id).map(|r| &r.descriptor)
}

pub fn rule_ids() -> impl Iterator<Item = &'static str> {
    RULES.iter().map(|r| r.descriptor.id)
}
