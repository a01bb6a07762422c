//! Accuracy metrics and the method × scenario comparison harness.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::conditioning::{is_depth_name, FeatureTable, ScenarioKind, ScenarioSplit};
use crate::error::{Error, MetricError};
use crate::linalg::Matrix;
use crate::nn::{self, NeuralModel, TrainConfig, TrainHistory};
use crate::regression::{fit_ols, predict_linear, LinearModel};
use crate::seed::derive_seed;

/// Actual values at or below this are left out of the AAPRE average.
pub const AAPRE_FLOOR: f64 = 1e-6;

fn check_pair(actual: &[f64], predicted: &[f64]) -> Result<(), MetricError> {
    if actual.len() != predicted.len() {
        return Err(MetricError::LengthMismatch(actual.len(), predicted.len()));
    }
    if actual.is_empty() {
        return Err(MetricError::Empty);
    }
    Ok(())
}

/// Coefficient of determination, `1 - SS_res / SS_tot`.
pub fn r_squared(actual: &[f64], predicted: &[f64]) -> Result<f64, MetricError> {
    check_pair(actual, predicted)?;
    let mean = actual.iter().sum::<f64>() / actual.len() as f64;
    let ss_tot: f64 = actual.iter().map(|a| (a - mean).powi(2)).sum();
    if ss_tot == 0.0 {
        return Err(MetricError::ConstantActual);
    }
    let ss_res: f64 = actual.iter().zip(predicted).map(|(a, p)| (a - p).powi(2)).sum();
    Ok(1.0 - ss_res / ss_tot)
}

/// Average absolute percent relative error.
pub fn aapre(actual: &[f64], predicted: &[f64]) -> Result<f64, MetricError> {
    check_pair(actual, predicted)?;
    if let Some(i) = actual.iter().position(|a| *a == 0.0) {
        return Err(MetricError::ZeroActual(i));
    }
    let sum: f64 = actual.iter().zip(predicted).map(|(a, p)| ((a - p) / a).abs()).sum();
    Ok(100.0 * sum / actual.len() as f64)
}

/// AAPRE over the samples whose actual value exceeds [`AAPRE_FLOOR`];
/// returns the metric and how many samples were excluded.
pub fn aapre_guarded(actual: &[f64], predicted: &[f64]) -> Result<(f64, usize), MetricError> {
    check_pair(actual, predicted)?;
    let (a, p): (Vec<f64>, Vec<f64>) = actual
        .iter()
        .zip(predicted)
        .filter(|(a, _)| **a > AAPRE_FLOOR)
        .map(|(a, p)| (*a, *p))
        .unzip();
    let excluded = actual.len() - a.len();
    if a.is_empty() {
        return Err(MetricError::Empty);
    }
    Ok((aapre(&a, &p)?, excluded))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    LrSingle,
    Mlr,
    AnnSingle,
    AnnMulti,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::LrSingle, Method::Mlr, Method::AnnSingle, Method::AnnMulti];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::LrSingle => "lr_single",
            Method::Mlr => "mlr",
            Method::AnnSingle => "ann_single",
            Method::AnnMulti => "ann_multi",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.as_str() == s)
    }

    pub fn is_single(self) -> bool {
        matches!(self, Method::LrSingle | Method::AnnSingle)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One (depth, actual, predicted) triple for cross-plots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplePair {
    pub depth: f64,
    pub actual: f64,
    pub predicted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub scenario: ScenarioKind,
    pub method: Method,
    pub r_squared: f64,
    pub aapre_percent: f64,
    pub n_samples: usize,
    pub aapre_excluded: usize,
    pub feature_names: Vec<String>,
    #[serde(skip)]
    pub pairs: Vec<SamplePair>,
}

impl EvalReport {
    pub fn from_predictions(
        scenario: ScenarioKind,
        method: Method,
        feature_names: Vec<String>,
        depth: &[f64],
        actual: &[f64],
        predicted: &[f64],
    ) -> Result<Self, MetricError> {
        let r2 = r_squared(actual, predicted)?;
        let (ap, excluded) = aapre_guarded(actual, predicted)?;
        Ok(EvalReport {
            scenario,
            method,
            r_squared: r2,
            aapre_percent: ap,
            n_samples: actual.len(),
            aapre_excluded: excluded,
            feature_names,
            pairs: depth
                .iter()
                .zip(actual)
                .zip(predicted)
                .map(|((d, a), p)| SamplePair {
                    depth: *d,
                    actual: *a,
                    predicted: *p,
                })
                .collect(),
        })
    }
}

/// Network settings for one ANN method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnnConfig {
    pub hidden: usize,
    /// Independent initializations; the one with the lowest validation SSE
    /// is kept.
    pub restarts: usize,
    pub train: TrainConfig,
}

impl AnnConfig {
    pub fn single() -> Self {
        AnnConfig {
            hidden: 1,
            ..AnnConfig::default()
        }
    }
}

impl Default for AnnConfig {
    fn default() -> Self {
        AnnConfig {
            hidden: 3,
            restarts: 5,
            train: TrainConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvalConfig {
    pub seed: u64,
    /// Input log for the single-variable methods; `None` picks the log with
    /// the highest single-log train R² (depth excluded).
    pub single_feature: Option<String>,
    pub ann_single: AnnConfig,
    pub ann_multi: AnnConfig,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            seed: 0,
            single_feature: None,
            ann_single: AnnConfig::single(),
            ann_multi: AnnConfig::default(),
        }
    }
}

/// Log used when screening cannot pick one.
pub const FALLBACK_SINGLE_FEATURE: &str = "NPHI";

#[derive(Debug, Clone, PartialEq)]
pub enum FittedModel {
    Linear(LinearModel),
    Neural {
        model: NeuralModel,
        history: TrainHistory,
        seed: u64,
    },
}

impl FittedModel {
    pub fn feature_names(&self) -> &[String] {
        match self {
            FittedModel::Linear(m) => &m.feature_names,
            FittedModel::Neural { model, .. } => &model.feature_names,
        }
    }

    pub fn predict(&self, x: &Matrix) -> Result<Vec<f64>, Error> {
        match self {
            FittedModel::Linear(m) => Ok(predict_linear(m, x)?),
            FittedModel::Neural { model, .. } => Ok(nn::predict_nn(model, x)?),
        }
    }
}

/// Single-log linear fits of the target; returns `(log, train R²)` sorted
/// by R² descending, then name.
pub fn screen_single_logs(table: &FeatureTable, candidates: &[String]) -> Vec<(String, f64)> {
    let mut out: Vec<(String, f64)> = candidates
        .iter()
        .filter_map(|name| {
            let sub = table.select_features(std::slice::from_ref(name)).ok()?;
            let model = fit_ols(&sub).ok()?;
            let pred = predict_linear(&model, &sub.x).ok()?;
            let r2 = r_squared(&sub.y, &pred).ok()?;
            Some((sub.feature_names[0].clone(), r2))
        })
        .collect();
    out.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Train R² of a multi-log linear fit.
pub fn multi_log_r_squared(table: &FeatureTable) -> Result<f64, Error> {
    let model = fit_ols(table)?;
    let pred = predict_linear(&model, &table.x)?;
    Ok(r_squared(&table.y, &pred)?)
}

fn choose_single_feature(split: &ScenarioSplit, cfg: &EvalConfig) -> String {
    if let Some(name) = &cfg.single_feature {
        return name.clone();
    }
    let candidates: Vec<String> = split
        .train
        .feature_names
        .iter()
        .filter(|n| !is_depth_name(n))
        .cloned()
        .collect();
    screen_single_logs(&split.train, &candidates)
        .into_iter()
        .next()
        .map(|(name, _)| name)
        .unwrap_or_else(|| FALLBACK_SINGLE_FEATURE.to_string())
}

fn fit_ann(
    split: &ScenarioSplit,
    train: &FeatureTable,
    validation: &FeatureTable,
    ann: &AnnConfig,
    seed_label: &str,
    root_seed: u64,
) -> Result<FittedModel, Error> {
    let mut best: Option<(f64, FittedModel)> = None;
    for r in 0..ann.restarts.max(1) {
        let seed = derive_seed(root_seed, &format!("init/{}/{seed_label}/{r}", split.kind));
        let mut cfg = ann.train.clone();
        cfg.seed = seed;
        let model = NeuralModel::for_table(train, ann.hidden, seed, cfg.init_range)?;
        let outcome = nn::train(model, train, validation, &cfg)?;
        let val = outcome.history.best().validation_sse;
        if best.as_ref().is_none_or(|(b, _)| val < *b) {
            best = Some((
                val,
                FittedModel::Neural {
                    model: outcome.model,
                    history: outcome.history,
                    seed,
                },
            ));
        }
    }
    Ok(best.expect("at least one restart").1)
}

/// Fits one method on the split's training part.
pub fn fit_method(split: &ScenarioSplit, method: Method, single: &str, cfg: &EvalConfig) -> Result<FittedModel, Error> {
    let single = vec![single.to_string()];
    let (train, validation) = if method.is_single() {
        (split.train.select_features(&single)?, split.validation.select_features(&single)?)
    } else {
        (split.train.clone(), split.validation.clone())
    };
    match method {
        Method::LrSingle | Method::Mlr => Ok(FittedModel::Linear(fit_ols(&train)?)),
        Method::AnnSingle => fit_ann(split, &train, &validation, &cfg.ann_single, method.as_str(), cfg.seed),
        Method::AnnMulti => fit_ann(split, &train, &validation, &cfg.ann_multi, method.as_str(), cfg.seed),
    }
}

fn evaluate(split: &ScenarioSplit, method: Method, model: &FittedModel) -> Result<EvalReport, Error> {
    let test = split.test.select_features(model.feature_names())?;
    let predicted = model.predict(&test.x)?;
    Ok(EvalReport::from_predictions(
        split.kind,
        method,
        test.feature_names.clone(),
        &test.depth,
        &test.y,
        &predicted,
    )?)
}

/// Result of one method on one scenario.
#[derive(Debug)]
pub struct MethodRun {
    pub method: Method,
    pub outcome: Result<(EvalReport, FittedModel), Error>,
}

#[derive(Debug)]
pub struct ScenarioRun {
    pub kind: ScenarioKind,
    pub single_feature: String,
    pub runs: Vec<MethodRun>,
}

impl ScenarioRun {
    pub fn reports(&self) -> Vec<&EvalReport> {
        self.runs.iter().filter_map(|r| r.outcome.as_ref().ok().map(|(rep, _)| rep)).collect()
    }

    pub fn failures(&self) -> Vec<(Method, String)> {
        self.runs
            .iter()
            .filter_map(|r| r.outcome.as_ref().err().map(|e| (r.method, e.to_string())))
            .collect()
    }
}

/// Fits every requested method on `split.train` (ANNs stop on
/// `split.validation`) and scores it on `split.test`. Methods run
/// concurrently; results come back ordered by method. A failing method is
/// recorded without stopping the others.
pub fn run_scenario(split: &ScenarioSplit, methods: &[Method], cfg: &EvalConfig) -> Result<ScenarioRun, Error> {
    if !split.is_disjoint() {
        return Err(Error::Pipeline(format!(
            "scenario {}: train, validation and test parts overlap",
            split.kind
        )));
    }
    let mut methods = methods.to_vec();
    methods.sort();
    methods.dedup();
    let single = choose_single_feature(split, cfg);

    let runs = std::thread::scope(|scope| {
        let handles: Vec<_> = methods
            .iter()
            .map(|&method| {
                let single = single.as_str();
                scope.spawn(move || {
                    let outcome = fit_method(split, method, single, cfg)
                        .and_then(|model| evaluate(split, method, &model).map(|rep| (rep, model)));
                    MethodRun { method, outcome }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("method worker panicked"))
            .collect()
    });
    Ok(ScenarioRun {
        kind: split.kind,
        single_feature: single,
        runs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub scenario: ScenarioKind,
    pub method: Method,
    pub rank: usize,
    pub r_squared: f64,
    pub aapre_percent: f64,
    pub best_r_squared: bool,
    pub lowest_aapre: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonTable {
    pub fn best(&self, scenario: ScenarioKind) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.scenario == scenario && r.rank == 1)
    }
}

fn rank_order(a: &EvalReport, b: &EvalReport) -> Ordering {
    b.r_squared
        .partial_cmp(&a.r_squared)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.aapre_percent.partial_cmp(&b.aapre_percent).unwrap_or(Ordering::Equal))
        .then_with(|| a.method.as_str().cmp(b.method.as_str()))
}

/// Groups reports by scenario and ranks methods by R² (descending), then
/// AAPRE (ascending), then method name.
pub fn compare_methods(reports: &[EvalReport]) -> ComparisonTable {
    let mut rows = Vec::new();
    for kind in ScenarioKind::ALL {
        let mut group: Vec<&EvalReport> = reports.iter().filter(|r| r.scenario == kind).collect();
        if group.is_empty() {
            continue;
        }
        group.sort_by(|a, b| rank_order(a, b));
        let min_aapre = group.iter().map(|r| r.aapre_percent).fold(f64::INFINITY, f64::min);
        let lowest = group
            .iter()
            .filter(|r| r.aapre_percent == min_aapre)
            .map(|r| r.method)
            .min_by_key(|m| m.as_str());
        for (i, r) in group.iter().enumerate() {
            rows.push(ComparisonRow {
                scenario: kind,
                method: r.method,
                rank: i + 1,
                r_squared: r.r_squared,
                aapre_percent: r.aapre_percent,
                best_r_squared: i == 0,
                lowest_aapre: Some(r.method) == lowest,
            });
        }
    }
    ComparisonTable { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditioning::{split_scenario, DEFAULT_FRACTIONS};
    use proptest::prelude::*;

    #[test]
    fn r_squared_examples() {
        assert_eq!(r_squared(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(), 1.0);
        assert_eq!(r_squared(&[1.0, 2.0, 3.0], &[2.0, 2.0, 2.0]).unwrap(), 0.0);
        assert_eq!(r_squared(&[1.0, 2.0, 3.0], &[1.0, 2.0, 4.0]).unwrap(), 0.5);
        assert_eq!(r_squared(&[2.0, 2.0], &[1.0, 2.0]), Err(MetricError::ConstantActual));
        assert_eq!(r_squared(&[], &[]), Err(MetricError::Empty));
        assert_eq!(r_squared(&[1.0], &[1.0, 2.0]), Err(MetricError::LengthMismatch(1, 2)));
    }

    #[test]
    fn aapre_examples() {
        assert_eq!(aapre(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(aapre(&[2.0], &[1.0]).unwrap(), 50.0);
        assert_eq!(aapre(&[1.0, 2.0], &[2.0, 1.0]).unwrap(), 75.0);
        assert_eq!(aapre(&[1.0, 0.0], &[1.0, 1.0]), Err(MetricError::ZeroActual(1)));
        assert_eq!(aapre_guarded(&[2.0, 1e-9], &[1.0, 5.0]).unwrap(), (50.0, 1));
    }

    fn report(kind: ScenarioKind, method: Method, r2: f64, ap: f64) -> EvalReport {
        EvalReport {
            scenario: kind,
            method,
            r_squared: r2,
            aapre_percent: ap,
            n_samples: 10,
            aapre_excluded: 0,
            feature_names: vec![],
            pairs: vec![],
        }
    }

    #[test]
    fn comparison_ranking() {
        let k = ScenarioKind::KnownInterval;
        let t = compare_methods(&[report(k, Method::Mlr, 0.8, 3.0)]);
        assert_eq!(t.rows.len(), 1);
        assert!(t.rows[0].best_r_squared && t.rows[0].lowest_aapre && t.rows[0].rank == 1);

        let t = compare_methods(&[report(k, Method::Mlr, 0.8, 3.0), report(k, Method::AnnMulti, 0.9, 4.0)]);
        assert_eq!(t.best(k).unwrap().method, Method::AnnMulti);
        assert!(t.rows[1].lowest_aapre);

        let t = compare_methods(&[
            report(k, Method::Mlr, 0.9, 3.0),
            report(k, Method::LrSingle, 0.9, 2.0),
            report(k, Method::AnnSingle, 0.9, 2.0),
            report(ScenarioKind::DifferentWell, Method::Mlr, 0.1, 9.0),
        ]);
        let order: Vec<Method> = t.rows.iter().filter(|r| r.scenario == k).map(|r| r.method).collect();
        assert_eq!(order, vec![Method::AnnSingle, Method::LrSingle, Method::Mlr]);
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.best(ScenarioKind::DifferentWell).unwrap().rank, 1);
    }

    fn linear_table(n: usize) -> FeatureTable {
        let depth: Vec<f64> = (0..n).map(|i| 1000.0 + i as f64).collect();
        let rows: Vec<[f64; 2]> = (0..n)
            .map(|i| {
                let t = i as f64 / n as f64;
                [(7.0 * t).sin() * 0.1 + 0.2, 50.0 + 30.0 * (3.0 * t).cos()]
            })
            .collect();
        let y = rows.iter().map(|r| 3.0 - 4.0 * r[0]).collect();
        FeatureTable::new(
            "A",
            depth,
            vec!["NPHI".into(), "GR".into()],
            Matrix::from_rows(&rows),
            y,
        )
        .unwrap()
    }

    #[test]
    fn linear_method_on_exact_data() {
        let t = linear_table(100);
        let split = split_scenario(&[&t], ScenarioKind::KnownInterval, DEFAULT_FRACTIONS, 3).unwrap();
        let run = run_scenario(&split, &[Method::LrSingle], &EvalConfig::default()).unwrap();
        assert_eq!(run.single_feature, "NPHI");
        let reports = run.reports();
        assert_eq!(reports.len(), 1);
        assert!(reports[0].r_squared >= 0.999);
        assert_eq!(reports[0].n_samples, 15);
        assert!(run_scenario(&split, &[], &EvalConfig::default()).unwrap().reports().is_empty());
    }

    #[test]
    fn failures_do_not_abort_other_methods() {
        let t = linear_table(100);
        let split = split_scenario(&[&t], ScenarioKind::KnownInterval, DEFAULT_FRACTIONS, 3).unwrap();
        let cfg = EvalConfig {
            single_feature: Some("RHOB".into()),
            ..EvalConfig::default()
        };
        let run = run_scenario(&split, &[Method::LrSingle, Method::Mlr], &cfg).unwrap();
        assert_eq!(run.reports().len(), 1);
        assert_eq!(run.failures()[0].0, Method::LrSingle);
    }

    proptest! {
        #[test]
        fn r_squared_shift_invariant(
            pairs in proptest::collection::vec((0.5f64..5.0, 0.5f64..5.0), 3..40),
            shift in -100.0f64..100.0,
        ) {
            let (a, p): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            prop_assume!(a.iter().any(|v| (v - a[0]).abs() > 1e-3));
            let r1 = r_squared(&a, &p).unwrap();
            let a2: Vec<f64> = a.iter().map(|v| v + shift).collect();
            let p2: Vec<f64> = p.iter().map(|v| v + shift).collect();
            let r2 = r_squared(&a2, &p2).unwrap();
            prop_assert!((r1 - r2).abs() <= 1e-9 * r1.abs().max(1.0));
            prop_assert!(r1 <= 1.0);
        }

        #[test]
        fn aapre_scale_invariant(
            pairs in proptest::collection::vec((0.5f64..5.0, 0.0f64..5.0), 1..40),
            scale in 0.01f64..100.0,
        ) {
            let (a, p): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            prop_assert_eq!(aapre(&a, &a).unwrap(), 0.0);
            let base = aapre(&a, &p).unwrap();
            prop_assert!(base >= 0.0);
            let a2: Vec<f64> = a.iter().map(|v| v * scale).collect();
            let p2: Vec<f64> = p.iter().map(|v| v * scale).collect();
            prop_assert!((aapre(&a2, &p2).unwrap() - base).abs() <= 1e-9 * base.max(1.0));
        }
    }
}
