use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::reader::{read_forms, Form, FormKind, NumberKind};
use crate::rules::{registry, Category, ParamDefault, ParamValue, RuleSettings, Severity};

pub const CONFIG_FILE: &str = ".clj-smell.edn";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("config {path} is not valid EDN: {message}")]
    Syntax { path: PathBuf, message: String },
    #[error("config {path} must contain a single map")]
    NotMap { path: PathBuf },
}

/// Effective tool configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub paths: Vec<PathBuf>,
    /// Globs classifying files as tests (`*` stays within one path segment).
    pub test_paths: Vec<String>,
    pub extensions: Vec<String>,
    pub features: Vec<String>,
    pub rules: BTreeMap<String, RuleSettings>,
    pub traditional_enabled: bool,
    pub output: OutputFormat,
    pub fail_level: Severity,
    /// Lint files on several threads.
    pub parallel: bool,
    /// Non-fatal problems found while loading the configuration.
    pub warnings: Vec<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            paths: Vec::new(),
            test_paths: vec!["test/**".into(), "*_test.clj*".into()],
            extensions: vec!["clj".into(), "cljs".into(), "cljc".into()],
            features: vec!["clj".into()],
            rules: registry()
                .iter()
                .map(|r| (r.descriptor.id.to_string(), RuleSettings::defaults(&r.descriptor)))
                .collect(),
            traditional_enabled: true,
            output: OutputFormat::Text,
            fail_level: Severity::Warning,
            parallel: true,
            warnings: Vec::new(),
        }
    }
}

impl Config {
    pub fn settings(&self, id: &str) -> Option<&RuleSettings> {
        self.rules.get(id)
    }

    /// Whether the rule runs, taking the traditional group switch into account.
    pub fn is_enabled(&self, id: &str) -> bool {
        let Some(rule) = crate::rules::find_rule(id) else { return false };
        let group_on = rule.descriptor.category != Category::Traditional || self.traditional_enabled;
        group_on && self.settings(id).is_some_and(|s| s.enabled)
    }

    pub fn set_enabled(&mut self, id: &str, enabled: bool) -> bool {
        match self.rules.get_mut(id) {
            Some(s) => {
                s.enabled = enabled;
                true
            }
            None => false,
        }
    }

    /// Overlays the settings of an EDN config map. `base` resolves relative
    /// `:paths`.
    pub fn apply_edn(&mut self, source: &str, origin: &Path) -> Result<(), ConfigError> {
        let read = read_forms(source);
        if let Some(err) = read.errors.first() {
            return Err(ConfigError::Syntax { path: origin.to_path_buf(), message: err.to_string() });
        }
        let [form] = read.forms.as_slice() else {
            return Err(ConfigError::NotMap { path: origin.to_path_buf() });
        };
        let Some(items) = form.as_map() else {
            return Err(ConfigError::NotMap { path: origin.to_path_buf() });
        };
        let base = origin.parent().unwrap_or(Path::new("."));
        for pair in Form::live(items).collect::<Vec<_>>().chunks(2) {
            let [key, value] = pair else { continue };
            let Some(k) = key.as_keyword() else {
                self.warn(origin, format!("ignoring non-keyword key {}", crate::reader::render(key)));
                continue;
            };
            self.apply_entry(&k.name, value, base, origin);
        }
        Ok(())
    }

    fn warn(&mut self, origin: &Path, message: String) {
        self.warnings.push(format!("{}: {message}", origin.display()));
    }

    fn apply_entry(&mut self, key: &str, value: &Form, base: &Path, origin: &Path) {
        match key {
            "paths" => match names(value) {
                Some(v) => self.paths = v.into_iter().map(|p| base.join(p)).collect(),
                None => self.warn(origin, ":paths must be a vector of strings".into()),
            },
            "test-paths" => match names(value) {
                Some(v) => self.test_paths = v,
                None => self.warn(origin, ":test-paths must be a vector of globs".into()),
            },
            "extensions" => match names(value) {
                Some(v) => self.extensions = v.into_iter().map(|e| e.trim_start_matches('.').to_string()).collect(),
                None => self.warn(origin, ":extensions must be a vector of strings".into()),
            },
            "features" => match names(value) {
                Some(v) => self.features = v,
                None => self.warn(origin, ":features must be a set of keywords".into()),
            },
            "output" => match word(value).as_deref() {
                Some("text") => self.output = OutputFormat::Text,
                Some("json") => self.output = OutputFormat::Json,
                _ => self.warn(origin, ":output must be :text or :json".into()),
            },
            "fail-level" => match word(value).and_then(|w| w.parse().ok()) {
                Some(level) => self.fail_level = level,
                None => self.warn(origin, ":fail-level must be :info, :warning or :error".into()),
            },
            "traditional" => match value.kind {
                FormKind::Bool(b) => self.traditional_enabled = b,
                _ => self.warn(origin, ":traditional must be true or false".into()),
            },
            "parallel" => match value.kind {
                FormKind::Bool(b) => self.parallel = b,
                _ => self.warn(origin, ":parallel must be true or false".into()),
            },
            "rules" => match value.as_map() {
                Some(items) => {
                    for pair in Form::live(items).collect::<Vec<_>>().chunks(2) {
                        if let [id, settings] = pair {
                            self.apply_rule(id, settings, origin);
                        }
                    }
                }
                None => self.warn(origin, ":rules must be a map".into()),
            },
            other => self.warn(origin, format!("unknown config key :{other}")),
        }
    }

    fn apply_rule(&mut self, id: &Form, value: &Form, origin: &Path) {
        let Some(id) = word(id) else {
            self.warn(origin, "rule ids must be keywords".into());
            return;
        };
        let Some(rule) = crate::rules::find_rule(&id) else {
            self.warn(origin, format!("unknown rule :{id}"));
            return;
        };
        let desc = &rule.descriptor;
        if let FormKind::Bool(b) = value.kind {
            self.set_enabled(&id, b);
            return;
        }
        let Some(items) = value.as_map() else {
            self.warn(origin, format!("settings for :{id} must be a map or a boolean"));
            return;
        };
        let mut warnings = Vec::new();
        let settings = self.rules.entry(id.clone()).or_insert_with(|| RuleSettings::defaults(desc));
        for pair in Form::live(items).collect::<Vec<_>>().chunks(2) {
            let [key, v] = pair else { continue };
            let Some(key) = key.as_keyword().map(|k| k.name.as_str()) else {
                warnings.push(format!(":{id} has a non-keyword setting"));
                continue;
            };
            match key {
                "enabled" => match v.kind {
                    FormKind::Bool(b) => settings.enabled = b,
                    _ => warnings.push(format!(":{id} :enabled must be true or false")),
                },
                "severity" => match word(v).and_then(|w| w.parse().ok()) {
                    Some(s) => settings.severity = Some(s),
                    None => warnings.push(format!(":{id} :severity must be :info, :warning or :error")),
                },
                param => match desc.param_default(param) {
                    Some(default) => match param_value(default, v) {
                        Some(pv) => {
                            settings.params.insert(param.to_string(), pv);
                        }
                        None => warnings.push(format!(":{id} :{param} has the wrong type")),
                    },
                    None => warnings.push(format!(":{id} has no parameter :{param}")),
                },
            }
        }
        for w in warnings {
            self.warn(origin, w);
        }
    }
}

/// Text of a keyword, symbol or string.
fn word(form: &Form) -> Option<String> {
    match &form.kind {
        FormKind::Keyword(k) => Some(k.to_string().trim_start_matches(':').to_string()),
        FormKind::Symbol(s) => Some(s.to_string()),
        FormKind::Str(s) => Some(s.clone()),
        _ => None,
    }
}

/// Words of a vector, list or set.
fn names(form: &Form) -> Option<Vec<String>> {
    match &form.kind {
        FormKind::Vector(items) | FormKind::List(items) | FormKind::Set(items) => {
            Form::live(items).map(word).collect()
        }
        _ => None,
    }
}

fn param_value(default: ParamDefault, form: &Form) -> Option<ParamValue> {
    match (default, &form.kind) {
        (ParamDefault::Int(_), FormKind::Number(n)) if n.kind == NumberKind::Integer => {
            n.text.parse().ok().map(ParamValue::Int)
        }
        (ParamDefault::Ratio(_), FormKind::Number(n)) if matches!(n.kind, NumberKind::Integer | NumberKind::Float) => {
            n.text.parse().ok().map(ParamValue::Ratio)
        }
        (ParamDefault::Flag(_), FormKind::Bool(b)) => Some(ParamValue::Flag(*b)),
        (ParamDefault::Names(_), _) => names(form).map(ParamValue::Names),
        _ => None,
    }
}

/// The nearest config file at or above `start`.
pub fn find_config(start: &Path) -> Option<PathBuf> {
    let start = start.canonicalize().unwrap_or_else(|_| start.to_path_buf());
    start.ancestors().map(|dir| dir.join(CONFIG_FILE)).find(|p| p.is_file())
}

/// Defaults overlaid with `explicit` or, failing that, the nearest config
/// file above `start_dir`.
pub fn load_config(start_dir: &Path, explicit: Option<&Path>) -> Result<Config, ConfigError> {
    let mut config = Config::default();
    let path = match explicit {
        Some(p) => Some(p.to_path_buf()),
        None => find_config(start_dir),
    };
    if let Some(path) = path {
        let text = std::fs::read_to_string(&path).map_err(|source| ConfigError::Io { path: path.clone(), source })?;
        config.apply_edn(&text, &path)?;
    }
    Ok(config)
}
