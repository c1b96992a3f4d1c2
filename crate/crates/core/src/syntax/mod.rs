//! Syntactic analysis on top of the reader: namespace declarations,
//! function definitions, scopes and common structural queries.

mod core_names;
mod defn;
mod features;
mod ns;
mod scope;
mod shapes;
mod walk;

pub use core_names::{
    core_name_count, is_core_macro, is_core_name, is_special_form, is_syntax_head, is_threading_macro,
    CORE_NAMES_VERSION, THREADING_MACROS,
};
pub use defn::{classify_defn, Arity, DefKind, FnDef, Param};
pub use features::{select_branch, select_features};
pub use ns::{import_entries, ns_imports, parse_ns, NsInfo};
pub use scope::{resolve_symbol, Resolution, Scope, ScopeFrame};
pub use shapes::{implicit_do_bodies, invocation_chain, is_plain_call, tail_positions, ChainDirection, ChainInfo};
pub use walk::{destructured_names, walk_with_options, walk_with_scope, WalkOptions, WalkState, Visitor};
