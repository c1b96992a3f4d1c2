//! Running the detectors over files: configuration, discovery, linting,
//! suppression and aggregation.

mod config;
mod discover;
mod lint;
mod suppress;

pub use config::{find_config, load_config, Config, ConfigError, OutputFormat, CONFIG_FILE};
pub use discover::{discover_files, DiscoveryError, SourceFile, TestPaths};
pub use lint::{lint_file, lint_paths, lint_source, FileResult, LintRun, CONFIG_WARNING, IO_ERROR, PARSE_ERROR};
pub use suppress::Suppressions;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::rules::{registry, Category};

/// Number of smells in the catalog the rules are drawn from.
pub const CATALOG_SMELLS: usize = 26;

/// Catalog smells that need change history or cross-project coupling and
/// are therefore not detectable in a single pass.
pub const OUT_OF_SCOPE: [&str; 2] = ["Shotgun Surgery", "Inappropriate Intimacy"];

/// Aggregate counts over a lint run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub per_rule: BTreeMap<String, usize>,
    pub per_category: BTreeMap<String, usize>,
    pub files: usize,
    pub diagnostics: usize,
    pub suppressed: usize,
    pub implemented_smells: usize,
    pub catalog_smells: usize,
    pub out_of_scope: Vec<String>,
}

impl Stats {
    pub fn coverage_line(&self) -> String {
        format!(
            "implemented {}/{} catalog smells (out of scope: {})",
            self.implemented_smells,
            self.catalog_smells,
            self.out_of_scope.join(", ")
        )
    }
}

/// Computes statistics and the process exit code: 2 on hard failures
/// (`hard_failure` or an unreadable file), 1 when any diagnostic reaches
/// the fail level, 0 otherwise.
pub fn aggregate(results: &[FileResult], config: &Config, hard_failure: bool) -> (Stats, i32) {
    let mut per_rule: BTreeMap<String, usize> =
        registry().iter().map(|r| (r.descriptor.id.to_string(), 0)).collect();
    let mut per_category: BTreeMap<String, usize> = [Category::ClojureSpecific, Category::Functional, Category::Traditional]
        .iter()
        .map(|c| (c.as_str().to_string(), 0))
        .collect();
    let mut io_failure = false;
    let mut failing = false;
    for d in results.iter().flat_map(|r| &r.diagnostics) {
        *per_rule.entry(d.rule_id.clone()).or_default() += 1;
        *per_category.entry(d.category.as_str().to_string()).or_default() += 1;
        io_failure |= d.rule_id == IO_ERROR;
        failing |= d.severity >= config.fail_level;
    }
    let stats = Stats {
        per_rule,
        per_category,
        files: results.len(),
        diagnostics: results.iter().map(|r| r.diagnostics.len()).sum(),
        suppressed: results.iter().map(|r| r.suppressed_count).sum(),
        implemented_smells: registry().len(),
        catalog_smells: CATALOG_SMELLS,
        out_of_scope: OUT_OF_SCOPE.iter().map(|s| s.to_string()).collect(),
    };
    let code = if hard_failure || io_failure {
        2
    } else if failing {
        1
    } else {
        0
    };
    (stats, code)
}
