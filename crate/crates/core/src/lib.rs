//! Code smell detection for Clojure sources.
//!
//! The crate is layered bottom-up: [`reader`] turns text into [`Form`]
//! trees, [`syntax`] recognizes definitions, bindings and namespaces,
//! [`rules`] holds the detectors, [`engine`] runs them over files and
//! [`fixtures`] checks them against an annotated corpus.

pub mod engine;
pub mod fixtures;
pub mod reader;
pub mod rules;
pub mod syntax;

pub use engine::{Config, FileResult, Stats};
pub use reader::{read_forms, render, Form, FormKind, Span};
pub use rules::{Category, Diagnostic, RuleDescriptor, Severity};
