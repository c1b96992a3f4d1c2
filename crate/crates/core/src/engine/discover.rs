use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use globset::{GlobBuilder, GlobSet, GlobSetBuilder};
use walkdir::WalkDir;

use super::config::Config;

/// A file selected for linting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub path: PathBuf,
    /// Path as shown in diagnostics (`/`-separated).
    pub display: String,
    pub is_test: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct DiscoveryError {
    pub path: String,
    pub message: String,
}

/// Compiled test-path globs. `*` does not cross `/`; a glob matches when
/// it matches any trailing run of path segments.
#[derive(Debug, Clone)]
pub struct TestPaths(GlobSet);

impl TestPaths {
    pub fn new(patterns: &[String]) -> Result<TestPaths, globset::Error> {
        let mut builder = GlobSetBuilder::new();
        for p in patterns {
            builder.add(GlobBuilder::new(p).literal_separator(true).build()?);
        }
        Ok(TestPaths(builder.build()?))
    }

    pub fn is_test(&self, path: &str) -> bool {
        let segments: Vec<&str> = path.split('/').filter(|s| !s.is_empty() && *s != ".").collect();
        (0..segments.len()).any(|i| self.0.is_match(segments[i..].join("/")))
    }
}

fn display(path: &Path) -> String {
    let cwd = std::env::current_dir().ok();
    let path = cwd.as_deref().and_then(|c| path.strip_prefix(c).ok()).filter(|p| !p.as_os_str().is_empty()).unwrap_or(path);
    let text = path.to_string_lossy().replace('\\', "/");
    text.strip_prefix("./").map(str::to_string).unwrap_or(text)
}

fn has_extension(path: &Path, extensions: &[String]) -> bool {
    path.extension().and_then(|e| e.to_str()).is_some_and(|e| extensions.iter().any(|x| x == e))
}

/// Recursively collects source files under the configured roots, sorted by
/// display path and de-duplicated by canonical path.
pub fn discover_files(config: &Config) -> (Vec<SourceFile>, Vec<DiscoveryError>) {
    let mut errors = Vec::new();
    let tests = match TestPaths::new(&config.test_paths) {
        Ok(t) => t,
        Err(e) => {
            errors.push(DiscoveryError { path: "test-paths".into(), message: e.to_string() });
            TestPaths::new(&[]).expect("empty glob set")
        }
    };
    let roots: Vec<PathBuf> = if config.paths.is_empty() { vec![PathBuf::from(".")] } else { config.paths.clone() };
    let mut by_canonical: BTreeMap<PathBuf, SourceFile> = BTreeMap::new();
    for root in &roots {
        if !root.exists() {
            errors.push(DiscoveryError { path: display(root), message: "no such file or directory".into() });
            continue;
        }
        for entry in WalkDir::new(root).sort_by_file_name() {
            let entry = match entry {
                Ok(e) => e,
                Err(e) => {
                    let path = e.path().map(display).unwrap_or_else(|| display(root));
                    errors.push(DiscoveryError { path, message: e.to_string() });
                    continue;
                }
            };
            if !entry.file_type().is_file() || !has_extension(entry.path(), &config.extensions) {
                continue;
            }
            let path = entry.path().to_path_buf();
            let canonical = path.canonicalize().unwrap_or_else(|_| path.clone());
            let shown = display(&path);
            let is_test = tests.is_test(&shown);
            by_canonical.entry(canonical).or_insert(SourceFile { path, display: shown, is_test });
        }
    }
    let mut files: Vec<SourceFile> = by_canonical.into_values().collect();
    files.sort_by(|a, b| a.display.cmp(&b.display));
    (files, errors)
}
