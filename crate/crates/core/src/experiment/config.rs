use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::interpretation::{RootPolicy, Sentence};
use crate::sampler::{AlphaPair, ModelSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("format must be `csv` or `json`, got `{other}`")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    pub n_grid: Vec<usize>,
    pub trials: usize,
    pub master_seed: u64,
    pub sentence: Option<Sentence>,
    pub slack_c: f64,
    pub root_policy: RootPolicy,
    pub lazy: bool,
    pub output: Option<OutputSpec>,
}

pub const DEFAULT_SLACK: f64 = 4.0;

impl ExperimentConfig {
    /// Config with documented defaults for everything but the essentials.
    pub fn new(model: ModelSpec, n_grid: Vec<usize>, trials: usize, master_seed: u64) -> Self {
        Self {
            model,
            n_grid,
            trials,
            master_seed,
            sentence: None,
            slack_c: DEFAULT_SLACK,
            root_policy: RootPolicy::default(),
            lazy: false,
            output: None,
        }
    }

    pub fn with_sentence(mut self, sentence: Sentence) -> Self {
        self.sentence = Some(sentence);
        self
    }

    pub fn with_roots(mut self, roots: RootPolicy) -> Self {
        self.root_policy = roots;
        self
    }

    pub fn with_slack(mut self, slack: f64) -> Self {
        self.slack_c = slack;
        self
    }

    pub fn with_lazy(mut self, lazy: bool) -> Self {
        self.lazy = lazy;
        self
    }

    /// Every invariant violation, each prefixed with its field path.
    pub fn violations(&self) -> Vec<String> {
        let mut errs = Vec::new();
        if let Err(e) = self.model.validate() {
            errs.push(format!("model: {e}"));
        }
        errs.extend(field_violations(Some(&self.n_grid), Some(self.trials as u64), self.slack_c));
        errs
    }

    pub fn validate(&self) -> Result<()> {
        let errs = self.violations();
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(errs))
        }
    }

    pub fn require_sentence(&self) -> Result<Sentence> {
        self.sentence
            .ok_or_else(|| Error::InvalidConfig(vec!["sentence: required for probability estimates".into()]))
    }

    /// Parses the JSON config schema, reporting every problem found.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(vec![format!("<root>: {e}")]))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self> {
        let mut errs = Vec::new();
        let Some(obj) = value.as_object() else {
            return Err(Error::InvalidConfig(vec!["<root>: expected an object".into()]));
        };
        const KNOWN: [&str; 9] = [
            "model",
            "n_grid",
            "trials",
            "master_seed",
            "sentence",
            "slack_c",
            "root_policy",
            "lazy",
            "output",
        ];
        for key in obj.keys().filter(|k| !KNOWN.contains(&k.as_str())) {
            errs.push(format!("{key}: unknown field"));
        }

        let model = match obj.get("model") {
            None => {
                errs.push("model: missing".into());
                None
            }
            Some(v) => parse_model(v, &mut errs),
        };
        let n_grid = match obj.get("n_grid") {
            None => {
                errs.push("n_grid: missing".into());
                None
            }
            Some(v) => match v.as_array() {
                None => {
                    errs.push("n_grid: expected an array of node counts".into());
                    None
                }
                Some(items) => {
                    let mut grid = Vec::new();
                    for (i, item) in items.iter().enumerate() {
                        match item.as_u64() {
                            Some(n) => grid.push(n as usize),
                            None => errs.push(format!("n_grid[{i}]: expected a nonnegative integer")),
                        }
                    }
                    Some(grid)
                }
            },
        };
        let trials = required_u64(obj.get("trials"), "trials", &mut errs);
        let master_seed = required_u64(obj.get("master_seed"), "master_seed", &mut errs);

        let sentence = match obj.get("sentence") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => match s.parse::<Sentence>() {
                Ok(s) => Some(s),
                Err(e) => {
                    errs.push(format!("sentence: {e}"));
                    None
                }
            },
            Some(_) => {
                errs.push("sentence: expected a sentence string".into());
                None
            }
        };
        let slack_c = match obj.get("slack_c") {
            None => DEFAULT_SLACK,
            Some(v) => v.as_f64().unwrap_or_else(|| {
                errs.push("slack_c: expected a number".into());
                DEFAULT_SLACK
            }),
        };
        let root_policy = match obj.get("root_policy") {
            None => RootPolicy::default(),
            Some(Value::String(s)) => s.parse().unwrap_or_else(|e| {
                errs.push(format!("root_policy: {e}"));
                RootPolicy::default()
            }),
            Some(_) => {
                errs.push("root_policy: expected `all` or `sample:<r>`".into());
                RootPolicy::default()
            }
        };
        let lazy = match obj.get("lazy") {
            None => false,
            Some(v) => v.as_bool().unwrap_or_else(|| {
                errs.push("lazy: expected a boolean".into());
                false
            }),
        };
        let output = match obj.get("output") {
            None | Some(Value::Null) => None,
            Some(v) => match serde_json::from_value::<OutputSpec>(v.clone()) {
                Ok(o) => Some(o),
                Err(e) => {
                    errs.push(format!("output: {e}"));
                    None
                }
            },
        };

        errs.extend(field_violations(n_grid.as_deref(), trials, slack_c));
        let cfg = match (model, n_grid, trials, master_seed) {
            (Some(model), Some(n_grid), Some(trials), Some(master_seed)) => Some(ExperimentConfig {
                model,
                n_grid,
                trials: trials as usize,
                master_seed,
                sentence,
                slack_c,
                root_policy,
                lazy,
                output,
            }),
            _ => None,
        };
        match cfg {
            Some(cfg) if errs.is_empty() => Ok(cfg),
            _ => Err(Error::InvalidConfig(errs)),
        }
    }
}

fn field_violations(n_grid: Option<&[usize]>, trials: Option<u64>, slack_c: f64) -> Vec<String> {
    let mut errs = Vec::new();
    if let Some(grid) = n_grid {
        if grid.is_empty() {
            errs.push("n_grid: must be nonempty".into());
        }
        if let Some(i) = grid.iter().position(|&n| n == 0) {
            errs.push(format!("n_grid[{i}]: node counts must be at least 1"));
        }
        if let Some(i) = (1..grid.len()).find(|&i| grid[i] <= grid[i - 1]) {
            errs.push(format!("n_grid[{i}]: grid must be strictly increasing"));
        }
    }
    if trials == Some(0) {
        errs.push("trials: must be at least 1".into());
    }
    if slack_c.is_nan() || slack_c < 1.0 {
        errs.push(format!("slack_c: must be >= 1, got {slack_c}"));
    }
    errs
}

fn required_u64(v: Option<&Value>, field: &str, errs: &mut Vec<String>) -> Option<u64> {
    match v {
        None => {
            errs.push(format!("{field}: missing"));
            None
        }
        Some(v) => v.as_u64().or_else(|| {
            errs.push(format!("{field}: expected a nonnegative integer"));
            None
        }),
    }
}

fn parse_model(v: &Value, errs: &mut Vec<String>) -> Option<ModelSpec> {
    let number = |field: &str, errs: &mut Vec<String>| -> Option<f64> {
        match v.get(field).map(Value::as_f64) {
            Some(Some(x)) => Some(x),
            Some(None) => {
                errs.push(format!("model.{field}: expected a number"));
                None
            }
            None => {
                errs.push(format!("model.{field}: missing"));
                None
            }
        }
    };
    let model = match v.get("kind").and_then(Value::as_str) {
        Some("gnp") => ModelSpec::ConstantP { p: number("p", errs)? },
        Some("power-law") => ModelSpec::PowerLaw {
            alpha: number("alpha", errs)?,
        },
        Some("double-alpha") => {
            let (a1, a2) = (number("alpha1", errs), number("alpha2", errs));
            match AlphaPair::new(a1?, a2?) {
                Ok(pair) => ModelSpec::DoubleAlpha { pair },
                Err(e) => {
                    errs.push(format!("model: {e}"));
                    return None;
                }
            }
        }
        Some(other) => {
            errs.push(format!("model.kind: unknown model `{other}` (expected gnp, power-law or double-alpha)"));
            return None;
        }
        None => {
            errs.push("model.kind: missing".into());
            return None;
        }
    };
    if let Err(e) = model.validate() {
        errs.push(format!("model: {e}"));
        return None;
    }
    Some(model)
}

/// Reads and validates a JSON experiment config.
pub fn load_config(path: &Path) -> std::io::Result<Result<ExperimentConfig>> {
    let text = std::fs::read_to_string(path)?;
    Ok(ExperimentConfig::from_json_str(&text))
}
