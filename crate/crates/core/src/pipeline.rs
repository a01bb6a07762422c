//! End-to-end study: ingest → condition → derive Vs → split → fit → evaluate
//! → emit artifacts. Also the model file format and the predict path.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use log::{info, warn};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::conditioning::{
    build_feature_table, condition_log, feature_samples, split_scenario, FeatureTable, MinMaxScaler, PhysicalRanges,
    ScenarioKind,
};
use crate::config::{InputFormat, InputSpec, RunConfig, SCHEMA_VERSION};
use crate::evaluation::{
    compare_methods, multi_log_r_squared, run_scenario, screen_single_logs, ComparisonTable, EvalReport, FittedModel,
    Method, ScenarioRun,
};
use crate::las::{mnemonic_matches, parse_csv, parse_las, Curve, WellLog};
use crate::linalg::Matrix;
use crate::nn::{EpochRecord, NeuralModel, Network, StopReason, TrainHistory};
use crate::petro::{vp_from_dt, Castagna};
use crate::regression::LinearModel;
use crate::seed::derive_seed;
use crate::units::normalize_units;
use crate::{Error, Result};

/// Mnemonic of the derived shear velocity curve (km/s).
pub const TARGET: &str = "VS";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A parsed input well with the hash of the bytes it came from.
#[derive(Debug, Clone)]
pub struct InputWell {
    pub label: String,
    pub log: WellLog,
    pub sha256: String,
}

pub fn parse_well_bytes(bytes: &[u8], format: InputFormat, depth_column: &str) -> Result<WellLog> {
    Ok(match format {
        InputFormat::Las => parse_las(bytes)?,
        InputFormat::Csv => parse_csv(bytes, depth_column)?,
    })
}

pub fn read_input(label: &str, spec: &InputSpec) -> Result<InputWell> {
    let bytes = std::fs::read(&spec.path).map_err(|e| Error::io(&spec.path, e))?;
    let log = parse_well_bytes(&bytes, spec.format(), &spec.depth_column)
        .map_err(|e| Error::Pipeline(format!("{}: {e}", spec.path.display())))?;
    Ok(InputWell {
        label: label.to_string(),
        log,
        sha256: sha256_hex(&bytes),
    })
}

pub fn read_inputs(cfg: &RunConfig) -> Result<Vec<InputWell>> {
    let mut wells = vec![read_input("well_a", &cfg.inputs.well_a)?];
    if let Some(b) = &cfg.inputs.well_b {
        wells.push(read_input("well_b", b)?);
    }
    Ok(wells)
}

/// Wraps in-memory wells as inputs, hashing their LAS serialization.
pub fn las_inputs(wells: [(&str, &WellLog); 2]) -> Vec<InputWell> {
    wells
        .into_iter()
        .map(|(label, log)| InputWell {
            label: label.to_string(),
            log: log.clone(),
            sha256: sha256_hex(&crate::las::write_las(log)),
        })
        .collect()
}

/// Renames file mnemonics to canonical ones per `map` (canonical → file).
pub fn apply_curve_map(log: &mut WellLog, map: &BTreeMap<String, String>) {
    for curve in log.curves_mut() {
        if let Some((canonical, _)) = map.iter().find(|(_, file)| file.eq_ignore_ascii_case(&curve.mnemonic)) {
            curve.mnemonic = canonical.clone();
        }
    }
}

/// Renaming, unit normalization and range screening: everything applied to
/// raw samples before any gap filling. Shared by the study and predict.
pub fn ingest(log: &mut WellLog, curve_map: &BTreeMap<String, String>, ranges: &PhysicalRanges) -> Result<usize> {
    apply_curve_map(log, curve_map);
    normalize_units(log).map_err(|m| Error::Pipeline(format!("well {}: {m}", log.well_name)))?;
    Ok(ranges.apply(log))
}

/// Adds the VS curve from DT; returns how many samples came out
/// non-physical (Vs ≤ 0) and were set missing.
pub fn derive_vs(log: &mut WellLog, castagna: &Castagna) -> Result<usize> {
    let dt = log
        .curve("DT")
        .ok_or_else(|| Error::Pipeline(format!("well {} has no DT curve to derive Vs from", log.well_name)))?;
    let mut dropped = 0;
    let vs: Vec<f64> = dt
        .samples
        .iter()
        .map(|&t| match vp_from_dt(t) {
            Ok(vp) if castagna.is_physical(castagna.vs(vp)) => castagna.vs(vp),
            Ok(_) => {
                dropped += 1;
                f64::NAN
            }
            Err(_) => f64::NAN,
        })
        .collect();
    if dropped > 0 {
        warn!("well {}: {dropped} samples gave non-positive Vs and were dropped", log.well_name);
    }
    log.remove_curve(TARGET);
    log.add_curve(Curve::new(TARGET, "KM/S", vs).with_description("Castagna shear velocity"))?;
    Ok(dropped)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WellSummary {
    pub label: String,
    pub well_name: String,
    pub rows: usize,
    pub out_of_range: usize,
    pub nonphysical_vs: usize,
    pub usable_rows: usize,
}

/// A well after ingestion, conditioning and target derivation.
#[derive(Debug, Clone)]
pub struct PreparedWell {
    pub label: String,
    pub sha256: String,
    pub log: WellLog,
    pub summary: WellSummary,
}

pub fn prepare_well(input: InputWell, cfg: &RunConfig) -> Result<PreparedWell> {
    let InputWell { label, mut log, sha256 } = input;
    let out_of_range = ingest(&mut log, &cfg.curve_map, &cfg.conditioning.physical_ranges)?;
    condition_log(&mut log, cfg.conditioning.max_gap);
    let nonphysical_vs = derive_vs(&mut log, &cfg.castagna)?;
    let usable_rows = build_feature_table(&log, &cfg.features, TARGET).map(|t| t.len()).unwrap_or(0);
    let summary = WellSummary {
        label: label.clone(),
        well_name: log.well_name.clone(),
        rows: log.len(),
        out_of_range,
        nonphysical_vs,
        usable_rows,
    };
    Ok(PreparedWell { label, sha256, log, summary })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreenEntry {
    pub log: String,
    pub r_squared: f64,
}

/// Train-R² screening on well A: each candidate alone, then the full
/// feature set together.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Screening {
    pub well: String,
    pub n_samples: usize,
    pub single_log: Vec<ScreenEntry>,
    pub features: Vec<String>,
    pub multi_log_r_squared: f64,
}

pub fn screen(log: &WellLog, features: &[String], candidates: &[String]) -> Result<Screening> {
    let mut cols: Vec<String> = features.to_vec();
    for c in candidates {
        if !cols.iter().any(|f| mnemonic_matches(f, c)) {
            cols.push(c.clone());
        }
    }
    let present: Vec<String> = cols.into_iter().filter(|c| feature_samples(log, c).is_some()).collect();
    let table = build_feature_table(log, &present, TARGET)?;
    let single_log = screen_single_logs(&table, candidates)
        .into_iter()
        .map(|(log, r_squared)| ScreenEntry { log, r_squared })
        .collect();
    let multi = table.select_features(features)?;
    Ok(Screening {
        well: log.well_name.clone(),
        n_samples: table.len(),
        single_log,
        features: features.to_vec(),
        multi_log_r_squared: multi_log_r_squared(&multi)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub scenario: ScenarioKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    pub error: String,
}

/// Everything a study produced, before it is written out.
#[derive(Debug)]
pub struct Study {
    pub seed: u64,
    pub input_hashes: BTreeMap<String, String>,
    pub wells: Vec<WellSummary>,
    pub screening: Option<Screening>,
    pub runs: Vec<ScenarioRun>,
    pub failures: Vec<Failure>,
    pub comparison: ComparisonTable,
}

impl Study {
    pub fn reports(&self) -> Vec<&EvalReport> {
        self.runs.iter().flat_map(|r| r.reports()).collect()
    }

    pub fn report(&self, scenario: ScenarioKind, method: Method) -> Option<&EvalReport> {
        self.reports().into_iter().find(|r| r.scenario == scenario && r.method == method)
    }

    pub fn model(&self, scenario: ScenarioKind, method: Method) -> Option<&FittedModel> {
        self.runs
            .iter()
            .filter(|r| r.kind == scenario)
            .flat_map(|r| r.runs.iter())
            .filter(|m| m.method == method)
            .find_map(|m| m.outcome.as_ref().ok().map(|(_, model)| model))
    }

    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the study on already-read inputs. Scenario and method failures are
/// collected in [`Study::failures`]; only problems that stop every scenario
/// (e.g. an unreadable well A) come back as `Err`.
pub fn run_study(cfg: &RunConfig, inputs: Vec<InputWell>) -> Result<Study> {
    cfg.validate_settings()?;
    let input_hashes = inputs.iter().map(|w| (w.label.clone(), w.sha256.clone())).collect();
    let prepared = inputs
        .into_iter()
        .map(|w| prepare_well(w, cfg))
        .collect::<Result<Vec<_>>>()?;
    let well_a = prepared
        .iter()
        .find(|w| w.label == "well_a")
        .ok_or_else(|| Error::Pipeline("no well_a input".into()))?;
    let well_b = prepared.iter().find(|w| w.label == "well_b");
    for w in &prepared {
        info!(
            "{} ({}): {} rows, {} usable, {} out of range",
            w.label, w.summary.well_name, w.summary.rows, w.summary.usable_rows, w.summary.out_of_range
        );
    }

    let mut failures = Vec::new();
    let screening = match screen(&well_a.log, &cfg.features, &cfg.screening_candidates) {
        Ok(s) => Some(s),
        Err(e) => {
            warn!("screening skipped: {e}");
            None
        }
    };

    let table_a = build_feature_table(&well_a.log, &cfg.features, TARGET)
        .map_err(|e| Error::Pipeline(format!("well_a: {e}")))?;
    let table_b = well_b.map(|w| build_feature_table(&w.log, &cfg.features, TARGET));

    let eval_cfg = cfg.eval_config();
    let mut scenarios = cfg.scenarios.clone();
    scenarios.sort();
    scenarios.dedup();
    let mut runs = Vec::new();
    for kind in scenarios {
        let tables: std::result::Result<Vec<&FeatureTable>, String> = match kind {
            ScenarioKind::DifferentWell => match &table_b {
                Some(Ok(b)) => Ok(vec![&table_a, b]),
                Some(Err(e)) => Err(format!("well_b: {e}")),
                None => Err("no well_b input".into()),
            },
            _ => Ok(vec![&table_a]),
        };
        let seed = derive_seed(cfg.seed, &format!("split/{kind}"));
        let outcome = tables.and_then(|t| {
            let split = split_scenario(&t, kind, cfg.conditioning.fractions, seed).map_err(|e| e.to_string())?;
            run_scenario(&split, &cfg.methods, &eval_cfg).map_err(|e| e.to_string())
        });
        match outcome {
            Ok(run) => {
                for (method, error) in run.failures() {
                    warn!("{kind}/{method}: {error}");
                    failures.push(Failure {
                        scenario: kind,
                        method: Some(method),
                        error,
                    });
                }
                for r in run.reports() {
                    info!(
                        "{kind}/{}: R2 = {:.4}, AAPRE = {:.3}%",
                        r.method, r.r_squared, r.aapre_percent
                    );
                }
                runs.push(run);
            }
            Err(error) => {
                warn!("{kind}: {error}");
                failures.push(Failure {
                    scenario: kind,
                    method: None,
                    error,
                });
            }
        }
    }

    let all: Vec<EvalReport> = runs.iter().flat_map(|r| r.reports()).cloned().collect();
    Ok(Study {
        seed: cfg.seed,
        input_hashes,
        wells: prepared.into_iter().map(|w| w.summary).collect(),
        screening,
        comparison: compare_methods(&all),
        runs,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub scenario: ScenarioKind,
    pub method: Method,
    pub r_squared: f64,
    pub aapre_percent: f64,
    pub n_samples: usize,
    pub aapre_excluded: usize,
    pub feature_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub seed: u64,
    pub input_hashes: BTreeMap<String, String>,
    pub complete: bool,
    pub reports: Vec<ReportEntry>,
    pub comparison: ComparisonTable,
    pub single_feature: BTreeMap<String, String>,
    pub screening: Option<Screening>,
    pub wells: Vec<WellSummary>,
    pub failures: Vec<Failure>,
}

impl Study {
    pub fn document(&self) -> ReportDocument {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            seed: self.seed,
            input_hashes: self.input_hashes.clone(),
            complete: self.is_complete(),
            reports: self
                .reports()
                .into_iter()
                .map(|r| ReportEntry {
                    scenario: r.scenario,
                    method: r.method,
                    r_squared: r.r_squared,
                    aapre_percent: r.aapre_percent,
                    n_samples: r.n_samples,
                    aapre_excluded: r.aapre_excluded,
                    feature_names: r.feature_names.clone(),
                })
                .collect(),
            comparison: self.comparison.clone(),
            single_feature: self
                .runs
                .iter()
                .map(|r| (r.kind.to_string(), r.single_feature.clone()))
                .collect(),
            screening: self.screening.clone(),
            wells: self.wells.clone(),
            failures: self.failures.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// Model files

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    pub intercept: f64,
    pub slopes: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scalers {
    pub input: MinMaxScaler,
    pub target: MinMaxScaler,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingMeta {
    pub scenario: ScenarioKind,
    pub train_rows: usize,
    pub validation_rows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epochs_run: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_epoch: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_validation_sse: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop_reason: Option<StopReason>,
}

/// On-disk form of a fitted model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub schema_version: u32,
    pub method: Method,
    pub feature_names: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Coefficients>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Network>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalers: Option<Scalers>,
    pub training_meta: TrainingMeta,
    pub seed: u64,
    pub input_hashes: BTreeMap<String, String>,
}

impl ModelFile {
    pub fn from_fitted(
        method: Method,
        model: &FittedModel,
        run: &ScenarioRun,
        split_rows: (usize, usize),
        seed: u64,
        input_hashes: &BTreeMap<String, String>,
    ) -> ModelFile {
        let mut meta = TrainingMeta {
            scenario: run.kind,
            train_rows: split_rows.0,
            validation_rows: split_rows.1,
            init_seed: None,
            epochs_run: None,
            best_epoch: None,
            best_validation_sse: None,
            stop_reason: None,
        };
        let (coefficients, weights, scalers) = match model {
            FittedModel::Linear(m) => (
                Some(Coefficients {
                    intercept: m.intercept,
                    slopes: m.slopes.clone(),
                }),
                None,
                None,
            ),
            FittedModel::Neural { model, history, seed } => {
                meta.init_seed = Some(*seed);
                meta.epochs_run = Some(history.epochs_run());
                meta.best_epoch = Some(history.best_epoch);
                meta.best_validation_sse = Some(history.best().validation_sse);
                meta.stop_reason = Some(history.stop_reason);
                (
                    None,
                    Some(model.network.clone()),
                    Some(Scalers {
                        input: model.input_scaler.clone(),
                        target: model.target_scaler.clone(),
                    }),
                )
            }
        };
        ModelFile {
            schema_version: SCHEMA_VERSION,
            method,
            feature_names: model.feature_names().to_vec(),
            coefficients,
            weights,
            scalers,
            training_meta: meta,
            seed,
            input_hashes: input_hashes.clone(),
        }
    }

    /// Rebuilds the predictor. Training history is not restored.
    pub fn to_fitted(&self) -> Result<FittedModel> {
        let bad = |m: &str| Error::Config(format!("model file: {m}"));
        if self.schema_version != SCHEMA_VERSION {
            return Err(bad(&format!("schema_version {} is not supported", self.schema_version)));
        }
        match (&self.coefficients, &self.weights, &self.scalers) {
            (Some(c), None, _) => Ok(FittedModel::Linear(
                LinearModel::new(c.intercept, c.slopes.clone(), self.feature_names.clone())
                    .map_err(|e| bad(&e.to_string()))?,
            )),
            (None, Some(net), Some(s)) => {
                let model = NeuralModel {
                    feature_names: self.feature_names.clone(),
                    network: net.clone(),
                    input_scaler: s.input.clone(),
                    target_scaler: s.target.clone(),
                };
                model.validate().map_err(|e| bad(&e.to_string()))?;
                Ok(FittedModel::Neural {
                    model,
                    history: self.summary_history(),
                    seed: self.training_meta.init_seed.unwrap_or(0),
                })
            }
            _ => Err(bad("needs either coefficients, or weights with scalers")),
        }
    }

    /// One-entry history carrying what the file recorded about training.
    fn summary_history(&self) -> TrainHistory {
        let m = &self.training_meta;
        TrainHistory {
            epochs: vec![EpochRecord {
                epoch: m.best_epoch.unwrap_or(0),
                train_sse: f64::NAN,
                validation_sse: m.best_validation_sse.unwrap_or(f64::NAN),
                lambda: None,
            }],
            best_epoch: 0,
            stop_reason: m.stop_reason.unwrap_or(StopReason::MaxEpochs),
        }
    }

    pub fn from_json(text: &str) -> Result<ModelFile> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("model file: {e}")))
    }

    pub fn load(path: &Path) -> Result<ModelFile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

// ---------------------------------------------------------------------------
// Prediction on new wells

/// Predicts Vs for every row of `log`; `None` where any input is missing.
/// Fails listing every feature the log lacks.
pub fn predict_log(model: &FittedModel, log: &WellLog) -> Result<Vec<Option<f64>>> {
    let names = model.feature_names();
    let missing: Vec<&str> = names
        .iter()
        .filter(|n| feature_samples(log, n).is_none())
        .map(String::as_str)
        .collect();
    if !missing.is_empty() {
        return Err(Error::Pipeline(format!(
            "input well {} lacks curve(s) required by the model: {}",
            log.well_name,
            missing.join(", ")
        )));
    }
    let cols: Vec<&[f64]> = names.iter().map(|n| feature_samples(log, n).expect("checked")).collect();
    let rows: Vec<usize> = (0..log.len()).filter(|&i| cols.iter().all(|c| !c[i].is_nan())).collect();
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for &i in &rows {
        data.extend(cols.iter().map(|c| c[i]));
    }
    let predicted = model.predict(&Matrix::from_row_major(rows.len(), cols.len(), data))?;
    let mut out = vec![None; log.len()];
    for (&i, p) in rows.iter().zip(predicted) {
        out[i] = Some(p);
    }
    Ok(out)
}

fn provenance_lines(seed: u64, hashes: &BTreeMap<String, String>) -> String {
    let mut s = format!("# seed={seed}\n");
    for (label, h) in hashes {
        s.push_str(&format!("# sha256 {label}={h}\n"));
    }
    s
}

/// Prediction CSV for `shearwave predict`: provenance comments, then
/// `depth_m,vs_pred_kms` with an empty cell where inputs were missing.
pub fn prediction_csv(depth: &[f64], predicted: &[Option<f64>], seed: u64, hashes: &BTreeMap<String, String>) -> Vec<u8> {
    let mut s = provenance_lines(seed, hashes);
    s.push_str("depth_m,vs_pred_kms\n");
    for (d, p) in depth.iter().zip(predicted) {
        match p {
            Some(v) => s.push_str(&format!("{d},{v}\n")),
            None => s.push_str(&format!("{d},\n")),
        }
    }
    s.into_bytes()
}

// ---------------------------------------------------------------------------
// Artifacts

/// Writes to a sibling temp file and renames over the target.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

fn to_json(value: &impl Serialize) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(value)?;
    v.push(b'\n');
    Ok(v)
}

fn evaluation_csv(report: &EvalReport, seed: u64, hashes: &BTreeMap<String, String>) -> Vec<u8> {
    let mut s = provenance_lines(seed, hashes);
    s.push_str("depth_m,vs_actual_kms,vs_pred_kms,residual_kms\n");
    for p in &report.pairs {
        s.push_str(&format!("{},{},{},{}\n", p.depth, p.actual, p.predicted, p.actual - p.predicted));
    }
    s.into_bytes()
}

fn comparison_csv(table: &ComparisonTable, seed: u64, hashes: &BTreeMap<String, String>) -> Vec<u8> {
    let mut s = provenance_lines(seed, hashes);
    s.push_str("scenario,method,rank,r_squared,aapre_percent,best_r_squared,lowest_aapre\n");
    for r in &table.rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.scenario, r.method, r.rank, r.r_squared, r.aapre_percent, r.best_r_squared, r.lowest_aapre
        ));
    }
    s.into_bytes()
}

/// Paths of the files `write_study` produces, relative to the output dir.
pub const REPORT_FILE: &str = "report.json";
pub const COMPARISON_FILE: &str = "comparison.csv";

pub fn artifact_stem(scenario: ScenarioKind, method: Method) -> String {
    format!("{scenario}__{method}")
}

/// Writes the report, comparison table, per-method prediction CSVs and
/// model files under `dir`. The report goes last so its presence marks a
/// finished write.
pub fn write_study(study: &Study, split_rows: &BTreeMap<ScenarioKind, (usize, usize)>, dir: &Path) -> Result<()> {
    let hashes = &study.input_hashes;
    for run in &study.runs {
        for m in &run.runs {
            let Ok((report, model)) = &m.outcome else { continue };
            let stem = artifact_stem(run.kind, m.method);
            write_atomic(
                &dir.join("predictions").join(format!("{stem}.csv")),
                &evaluation_csv(report, study.seed, hashes),
            )?;
            let rows = split_rows.get(&run.kind).copied().unwrap_or_default();
            let file = ModelFile::from_fitted(m.method, model, run, rows, study.seed, hashes);
            write_atomic(&dir.join("models").join(format!("{stem}.json")), &to_json(&file)?)?;
        }
    }
    write_atomic(&dir.join(COMPARISON_FILE), &comparison_csv(&study.comparison, study.seed, hashes))?;
    write_atomic(&dir.join(REPORT_FILE), &to_json(&study.document())?)
}

/// Train and validation row counts per scenario, as recorded in model
/// files. Recomputed from the inputs so [`Study`] stays light.
pub fn split_sizes(cfg: &RunConfig, study: &Study) -> BTreeMap<ScenarioKind, (usize, usize)> {
    let usable = |label: &str| study.wells.iter().find(|w| w.label == label).map(|w| w.usable_rows);
    let [ft, fv, _] = cfg.conditioning.fractions;
    let count = |n: usize, f: f64| (f * n as f64 + 1e-9).floor() as usize;
    study
        .runs
        .iter()
        .filter_map(|r| {
            let n = usable("well_a")?;
            let sizes = match r.kind {
                ScenarioKind::DifferentWell => {
                    let v = count(n, fv);
                    (n - v, v)
                }
                _ => (count(n, ft), count(n, fv)),
            };
            Some((r.kind, sizes))
        })
        .collect()
}

/// Reads inputs, runs the study and writes every artifact to
/// `cfg.output_dir`.
pub fn run(cfg: &RunConfig) -> Result<Study> {
    let inputs = read_inputs(cfg)?;
    let study = run_study(cfg, inputs)?;
    write_study(&study, &split_sizes(cfg, &study), &cfg.output_dir)?;
    info!("wrote artifacts to {}", cfg.output_dir.display());
    Ok(study)
}
