//! The run configuration: one versioned JSON document describing inputs,
//! conditioning, features, scenarios, methods and training settings.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::conditioning::{PhysicalRanges, ScenarioKind, DEFAULT_FRACTIONS, DEFAULT_MAX_GAP, DEPTH_FEATURE};
use crate::evaluation::{AnnConfig, EvalConfig, Method};
use crate::petro::Castagna;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Las,
    Csv,
}

impl InputFormat {
    /// Guesses from the file extension; anything other than `.csv` is LAS.
    pub fn from_path(path: &Path) -> InputFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => InputFormat::Csv,
            _ => InputFormat::Las,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub path: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<InputFormat>,
    /// Depth column header for CSV input.
    #[serde(default = "default_depth_column")]
    pub depth_column: String,
}

fn default_depth_column() -> String {
    DEPTH_FEATURE.to_string()
}

impl InputSpec {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        InputSpec {
            path: path.into(),
            format: None,
            depth_column: default_depth_column(),
        }
    }

    pub fn format(&self) -> InputFormat {
        self.format.unwrap_or_else(|| InputFormat::from_path(&self.path))
    }
}

/// Well A supplies the known and unknown-interval scenarios and the
/// training data for the different-well scenario; well B is its test well.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    pub well_a: InputSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub well_b: Option<InputSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConditioningConfig {
    pub max_gap: usize,
    pub physical_ranges: PhysicalRanges,
    /// Train, validation and test shares.
    pub fractions: [f64; 3],
}

impl Default for ConditioningConfig {
    fn default() -> Self {
        ConditioningConfig {
            max_gap: DEFAULT_MAX_GAP,
            physical_ranges: PhysicalRanges::default(),
            fractions: DEFAULT_FRACTIONS,
        }
    }
}

pub fn default_features() -> Vec<String> {
    ["DEPTH", "GR", "NPHI", "RHOB"].map(String::from).to_vec()
}

pub fn default_screening() -> Vec<String> {
    ["GR", "NPHI", "RHOB", "RES"].map(String::from).to_vec()
}

fn default_scenarios() -> Vec<ScenarioKind> {
    ScenarioKind::ALL.to_vec()
}

fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub seed: u64,
    pub inputs: Inputs,
    /// Canonical mnemonic → mnemonic used in the input files.
    #[serde(default)]
    pub curve_map: BTreeMap<String, String>,
    #[serde(default)]
    pub conditioning: ConditioningConfig,
    #[serde(default = "default_features")]
    pub features: Vec<String>,
    #[serde(default = "default_screening")]
    pub screening_candidates: Vec<String>,
    #[serde(default = "default_scenarios")]
    pub scenarios: Vec<ScenarioKind>,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    /// Log for the single-variable methods; absent means pick by screening.
    #[serde(default)]
    pub single_feature: Option<String>,
    #[serde(default = "AnnConfig::single")]
    pub ann_single: AnnConfig,
    #[serde(default)]
    pub ann_multi: AnnConfig,
    #[serde(default)]
    pub castagna: Castagna,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

impl RunConfig {
    /// A config with every optional block at its default.
    pub fn new(seed: u64, inputs: Inputs) -> Self {
        RunConfig {
            schema_version: SCHEMA_VERSION,
            seed,
            inputs,
            curve_map: BTreeMap::new(),
            conditioning: ConditioningConfig::default(),
            features: default_features(),
            screening_candidates: default_screening(),
            scenarios: default_scenarios(),
            methods: default_methods(),
            single_feature: None,
            ann_single: AnnConfig::single(),
            ann_multi: AnnConfig::default(),
            castagna: Castagna::default(),
            output_dir: default_output_dir(),
        }
    }

    /// Reads and validates a config file. Relative paths inside it are
    /// resolved against the file's directory.
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        cfg.resolve_paths(base);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.inputs.well_a.path);
        if let Some(b) = self.inputs.well_b.as_mut() {
            fix(&mut b.path);
        }
        fix(&mut self.output_dir);
    }

    /// Structural checks that do not touch the filesystem.
    pub fn validate_settings(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if self.features.is_empty() {
            return bad("feature list is empty".into());
        }
        if self.scenarios.is_empty() || self.methods.is_empty() {
            return bad("at least one scenario and one method must be selected".into());
        }
        if self.scenarios.contains(&ScenarioKind::DifferentWell) && self.inputs.well_b.is_none() {
            return bad("the different_well scenario needs inputs.well_b".into());
        }
        let f = self.conditioning.fractions;
        if f.iter().any(|v| !(*v >= 0.0)) || (f.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return bad(format!("split fractions {f:?} must be non-negative and sum to 1"));
        }
        if !(self.castagna.slope > 0.0) {
            return bad("castagna slope must be positive".into());
        }
        self.ann_single.train.validate().map_err(|e| Error::Config(format!("ann_single: {e}")))?;
        self.ann_multi.train.validate().map_err(|e| Error::Config(format!("ann_multi: {e}")))?;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_settings()?;
        let mut specs = vec![&self.inputs.well_a];
        specs.extend(self.inputs.well_b.as_ref());
        for spec in specs {
            if !spec.path.is_file() {
                return Err(Error::Config(format!("input file {} does not exist", spec.path.display())));
            }
        }
        Ok(())
    }

    pub fn eval_config(&self) -> EvalConfig {
        EvalConfig {
            seed: self.seed,
            single_feature: self.single_feature.clone(),
            ann_single: self.ann_single.clone(),
            ann_multi: self.ann_multi.clone(),
        }
    }
}
