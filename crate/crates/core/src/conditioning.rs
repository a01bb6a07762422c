//! Data conditioning: physical-range screening, gap interpolation, feature
//! table assembly, scenario splits and min–max scaling.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ConditionError;
use crate::las::{mnemonic_matches, WellLog};
use crate::linalg::Matrix;

pub const DEFAULT_MAX_GAP: usize = 10;
pub const DEFAULT_FRACTIONS: [f64; 3] = [0.70, 0.15, 0.15];

/// Name under which the depth index can be requested as a feature.
pub const DEPTH_FEATURE: &str = "DEPTH";

pub fn is_depth_name(name: &str) -> bool {
    name.eq_ignore_ascii_case("DEPTH") || name.eq_ignore_ascii_case("DEPT")
}

/// Inclusive plausible value range per mnemonic; values outside become
/// missing before interpolation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhysicalRanges(pub BTreeMap<String, [f64; 2]>);

impl Default for PhysicalRanges {
    fn default() -> Self {
        let mut m = BTreeMap::new();
        m.insert("RHOB".into(), [1.0, 3.5]);
        m.insert("NPHI".into(), [-0.05, 1.0]);
        m.insert("GR".into(), [0.0, 400.0]);
        m.insert("DT".into(), [40.0, 300.0]);
        PhysicalRanges(m)
    }
}

impl PhysicalRanges {
    pub fn range_for(&self, mnemonic: &str) -> Option<[f64; 2]> {
        self.0
            .iter()
            .find(|(k, _)| mnemonic_matches(k, mnemonic))
            .map(|(_, r)| *r)
    }

    /// Marks out-of-range samples missing; returns how many were removed.
    pub fn apply(&self, log: &mut WellLog) -> usize {
        let mut removed = 0;
        for curve in log.curves_mut() {
            if let Some([lo, hi]) = self.range_for(&curve.mnemonic) {
                for v in curve.samples.iter_mut() {
                    if !v.is_nan() && (*v < lo || *v > hi) {
                        *v = f64::NAN;
                        removed += 1;
                    }
                }
            }
        }
        removed
    }
}

/// Fills interior runs of at most `max_gap` missing samples by linear
/// interpolation in depth. Longer runs and runs touching either end stay
/// missing.
pub fn condition_curve(samples: &[f64], depth: &[f64], max_gap: usize) -> Result<Vec<f64>, ConditionError> {
    if samples.len() != depth.len() {
        return Err(ConditionError::LengthMismatch {
            depth: depth.len(),
            samples: samples.len(),
        });
    }
    if samples.iter().all(|v| v.is_nan()) {
        return Err(ConditionError::AllMissing);
    }
    let mut out = samples.to_vec();
    let mut i = 0;
    while i < out.len() {
        if !out[i].is_nan() {
            i += 1;
            continue;
        }
        let start = i;
        while i < out.len() && out[i].is_nan() {
            i += 1;
        }
        let len = i - start;
        if start == 0 || i == out.len() || len > max_gap {
            continue;
        }
        let (d0, v0) = (depth[start - 1], out[start - 1]);
        let (d1, v1) = (depth[i], out[i]);
        for k in start..i {
            let t = (depth[k] - d0) / (d1 - d0);
            out[k] = v0 + t * (v1 - v0);
        }
    }
    Ok(out)
}

/// Applies [`condition_curve`] to every curve; curves that are entirely
/// missing are left untouched.
pub fn condition_log(log: &mut WellLog, max_gap: usize) {
    let depth = log.depth().to_vec();
    for curve in log.curves_mut() {
        if let Ok(filled) = condition_curve(&curve.samples, &depth, max_gap) {
            curve.samples = filled;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub well_name: String,
    pub depth_min: f64,
    pub depth_max: f64,
}

/// Aligned, gap-free inputs and target for one well (or one part of it).
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    pub depth: Vec<f64>,
    pub feature_names: Vec<String>,
    pub x: Matrix,
    pub y: Vec<f64>,
    pub provenance: Provenance,
}

impl FeatureTable {
    pub fn new(
        well_name: impl Into<String>,
        depth: Vec<f64>,
        feature_names: Vec<String>,
        x: Matrix,
        y: Vec<f64>,
    ) -> Result<Self, ConditionError> {
        if x.rows() != depth.len() || y.len() != depth.len() {
            return Err(ConditionError::LengthMismatch {
                depth: depth.len(),
                samples: x.rows().min(y.len()),
            });
        }
        if x.cols() != feature_names.len() {
            return Err(ConditionError::FeatureMismatch);
        }
        if x.as_slice().iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(ConditionError::AllMissing);
        }
        let provenance = Provenance {
            well_name: well_name.into(),
            depth_min: depth.iter().copied().fold(f64::INFINITY, f64::min),
            depth_max: depth.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        };
        Ok(FeatureTable {
            depth,
            feature_names,
            x,
            y,
            provenance,
        })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn well_name(&self) -> &str {
        &self.provenance.well_name
    }

    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.feature_names.iter().position(|f| mnemonic_matches(f, name))
    }

    /// Rows at `idx`, in that order.
    pub fn select_rows(&self, idx: &[usize]) -> FeatureTable {
        let depth: Vec<f64> = idx.iter().map(|&i| self.depth[i]).collect();
        let y = idx.iter().map(|&i| self.y[i]).collect();
        let x = self.x.select_rows(idx);
        FeatureTable {
            provenance: Provenance {
                well_name: self.provenance.well_name.clone(),
                depth_min: depth.iter().copied().fold(f64::INFINITY, f64::min),
                depth_max: depth.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            },
            depth,
            feature_names: self.feature_names.clone(),
            x,
            y,
        }
    }

    /// Column subset, in the order requested.
    pub fn select_features(&self, names: &[String]) -> Result<FeatureTable, ConditionError> {
        let cols = names
            .iter()
            .map(|n| self.feature_index(n).ok_or_else(|| ConditionError::CurveNotFound(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut data = Vec::with_capacity(self.len() * cols.len());
        for row in self.x.iter_rows() {
            data.extend(cols.iter().map(|&c| row[c]));
        }
        Ok(FeatureTable {
            depth: self.depth.clone(),
            feature_names: cols.iter().map(|&c| self.feature_names[c].clone()).collect(),
            x: Matrix::from_row_major(self.len(), cols.len(), data),
            y: self.y.clone(),
            provenance: self.provenance.clone(),
        })
    }

    /// `(well, depth)` keys used to audit split disjointness.
    pub fn keys(&self) -> impl Iterator<Item = (String, u64)> + '_ {
        self.depth.iter().map(|d| (self.provenance.well_name.clone(), d.to_bits()))
    }
}

/// Resolves a feature name to its samples: a curve if one exists,
/// otherwise the depth index for `DEPTH`/`DEPT`.
pub fn feature_samples<'a>(log: &'a WellLog, name: &str) -> Option<&'a [f64]> {
    match log.curve(name) {
        Some(c) => Some(&c.samples),
        None if is_depth_name(name) => Some(log.depth()),
        None => None,
    }
}

/// Assembles the rows where every selected feature and the target are
/// present, in depth order.
pub fn build_feature_table(
    log: &WellLog,
    feature_names: &[String],
    target_name: &str,
) -> Result<FeatureTable, ConditionError> {
    let columns = feature_names
        .iter()
        .map(|n| feature_samples(log, n).ok_or_else(|| ConditionError::CurveNotFound(n.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let target = feature_samples(log, target_name)
        .ok_or_else(|| ConditionError::CurveNotFound(target_name.to_string()))?;

    let mut depth = Vec::new();
    let mut data = Vec::new();
    let mut y = Vec::new();
    for i in 0..log.len() {
        if target[i].is_nan() || columns.iter().any(|c| c[i].is_nan()) {
            continue;
        }
        depth.push(log.depth()[i]);
        data.extend(columns.iter().map(|c| c[i]));
        y.push(target[i]);
    }
    if y.is_empty() {
        return Err(ConditionError::NoRows);
    }
    let rows = y.len();
    FeatureTable::new(
        log.well_name.clone(),
        depth,
        feature_names.to_vec(),
        Matrix::from_row_major(rows, feature_names.len(), data),
        y,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    KnownInterval,
    UnknownIntervalSameWell,
    DifferentWell,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 3] = [
        ScenarioKind::KnownInterval,
        ScenarioKind::UnknownIntervalSameWell,
        ScenarioKind::DifferentWell,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::KnownInterval => "known_interval",
            ScenarioKind::UnknownIntervalSameWell => "unknown_interval_same_well",
            ScenarioKind::DifferentWell => "different_well",
        }
    }

    fn tables_needed(self) -> usize {
        match self {
            ScenarioKind::DifferentWell => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSplit {
    pub kind: ScenarioKind,
    pub train: FeatureTable,
    pub validation: FeatureTable,
    pub test: FeatureTable,
}

impl ScenarioSplit {
    /// True when no `(well, depth)` key appears in more than one part.
    pub fn is_disjoint(&self) -> bool {
        let mut seen = HashSet::new();
        [&self.train, &self.validation, &self.test]
            .iter()
            .flat_map(|t| t.keys())
            .all(|k| seen.insert(k))
    }
}

fn part_size(fraction: f64, n: usize) -> usize {
    // Small epsilon so e.g. 0.7 * 100 lands on 70, not 69.
    (fraction * n as f64 + 1e-9).floor() as usize
}

fn sorted(mut idx: Vec<usize>) -> Vec<usize> {
    idx.sort_unstable();
    idx
}

/// Splits one or two tables into train/validation/test parts.
///
/// * `KnownInterval`: seeded random row split by `fractions`.
/// * `UnknownIntervalSameWell`: contiguous depth blocks, shallowest first.
/// * `DifferentWell`: the first table is split randomly into train and
///   validation (validation share `fractions[1]`); the second table is the
///   test set in full.
///
/// Train and validation sizes are floored; test takes the remainder.
pub fn split_scenario(
    tables: &[&FeatureTable],
    kind: ScenarioKind,
    fractions: [f64; 3],
    seed: u64,
) -> Result<ScenarioSplit, ConditionError> {
    if tables.len() != kind.tables_needed() {
        return Err(ConditionError::TableCount {
            kind: kind.to_string(),
            expected: kind.tables_needed(),
            found: tables.len(),
        });
    }
    if fractions.iter().any(|f| !(0.0..=1.0).contains(f)) || (fractions.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(ConditionError::BadFractions(fractions));
    }
    let base = tables[0];
    let n = base.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let (train_idx, val_idx, test) = match kind {
        ScenarioKind::KnownInterval => {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(&mut rng);
            let n_train = part_size(fractions[0], n);
            let n_val = part_size(fractions[1], n);
            let test_idx = sorted(idx[n_train + n_val..].to_vec());
            (
                sorted(idx[..n_train].to_vec()),
                sorted(idx[n_train..n_train + n_val].to_vec()),
                base.select_rows(&test_idx),
            )
        }
        ScenarioKind::UnknownIntervalSameWell => {
            let n_train = part_size(fractions[0], n);
            let n_val = part_size(fractions[1], n);
            let test_idx: Vec<usize> = (n_train + n_val..n).collect();
            (
                (0..n_train).collect(),
                (n_train..n_train + n_val).collect(),
                base.select_rows(&test_idx),
            )
        }
        ScenarioKind::DifferentWell => {
            let other = tables[1];
            if other.feature_names.len() != base.feature_names.len()
                || other
                    .feature_names
                    .iter()
                    .zip(&base.feature_names)
                    .any(|(a, b)| !mnemonic_matches(a, b))
            {
                return Err(ConditionError::FeatureMismatch);
            }
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(&mut rng);
            let n_val = part_size(fractions[1], n);
            let n_train = n - n_val;
            (
                sorted(idx[..n_train].to_vec()),
                sorted(idx[n_train..].to_vec()),
                other.clone(),
            )
        }
    };

    let split = ScenarioSplit {
        kind,
        train: base.select_rows(&train_idx),
        validation: base.select_rows(&val_idx),
        test,
    };
    for (name, part) in [
        ("train", &split.train),
        ("validation", &split.validation),
        ("test", &split.test),
    ] {
        if part.is_empty() {
            return Err(ConditionError::EmptyPart(name));
        }
    }
    Ok(split)
}

/// Per-column affine map of `[min, max]` onto `[-1, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinMaxScaler {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl MinMaxScaler {
    pub fn fit(x: &Matrix, names: &[String]) -> Result<Self, ConditionError> {
        if x.rows() < 2 {
            return Err(ConditionError::TooFewRows(x.rows()));
        }
        let mut min = vec![f64::INFINITY; x.cols()];
        let mut max = vec![f64::NEG_INFINITY; x.cols()];
        for row in x.iter_rows() {
            for (j, v) in row.iter().enumerate() {
                min[j] = min[j].min(*v);
                max[j] = max[j].max(*v);
            }
        }
        for j in 0..x.cols() {
            if max[j] <= min[j] {
                let name = names.get(j).cloned().unwrap_or_else(|| format!("column {j}"));
                return Err(ConditionError::ConstantColumn(name));
            }
        }
        Ok(MinMaxScaler { min, max })
    }

    pub fn fit_table(table: &FeatureTable) -> Result<Self, ConditionError> {
        Self::fit(&table.x, &table.feature_names)
    }

    pub fn fit_vector(values: &[f64], name: &str) -> Result<Self, ConditionError> {
        let x = Matrix::from_row_major(values.len(), 1, values.to_vec());
        Self::fit(&x, &[name.to_string()])
    }

    pub fn width(&self) -> usize {
        self.min.len()
    }

    pub fn apply_value(&self, j: usize, v: f64) -> f64 {
        2.0 * (v - self.min[j]) / (self.max[j] - self.min[j]) - 1.0
    }

    pub fn invert_value(&self, j: usize, s: f64) -> f64 {
        (s + 1.0) * 0.5 * (self.max[j] - self.min[j]) + self.min[j]
    }

    pub fn apply_row(&self, row: &[f64]) -> Result<Vec<f64>, ConditionError> {
        self.check(row.len())?;
        Ok(row.iter().enumerate().map(|(j, v)| self.apply_value(j, *v)).collect())
    }

    pub fn invert_row(&self, row: &[f64]) -> Result<Vec<f64>, ConditionError> {
        self.check(row.len())?;
        Ok(row.iter().enumerate().map(|(j, v)| self.invert_value(j, *v)).collect())
    }

    pub fn apply(&self, x: &Matrix) -> Result<Matrix, ConditionError> {
        self.check(x.cols())?;
        let mut out = x.clone();
        for i in 0..out.rows() {
            for (j, v) in out.row_mut(i).iter_mut().enumerate() {
                *v = self.apply_value(j, *v);
            }
        }
        Ok(out)
    }

    pub fn invert(&self, x: &Matrix) -> Result<Matrix, ConditionError> {
        self.check(x.cols())?;
        let mut out = x.clone();
        for i in 0..out.rows() {
            for (j, v) in out.row_mut(i).iter_mut().enumerate() {
                *v = self.invert_value(j, *v);
            }
        }
        Ok(out)
    }

    fn check(&self, width: usize) -> Result<(), ConditionError> {
        if width == self.width() {
            Ok(())
        } else {
            Err(ConditionError::ScalerShape {
                expected: self.width(),
                found: width,
            })
        }
    }
}
