//! Single-hidden-layer feed-forward network: tanh hidden units, identity
//! output, trained on scaled data either by the online generalized delta
//! rule or by Levenberg–Marquardt.
//!
//! Parameters are flattened as `[W1 (row-major, hidden × inputs), b1, W2, b2]`
//! wherever a vector view is needed (gradients, Jacobians, LM steps).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::conditioning::{FeatureTable, MinMaxScaler};
use crate::error::NnError;
use crate::linalg::{cholesky_solve, dot, Matrix};

pub const DEFAULT_INIT_RANGE: f64 = 0.5;
/// Damping above which LM gives up.
pub const LAMBDA_MAX: f64 = 1e12;
const LAMBDA_MIN: f64 = 1e-20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Network {
    pub n_inputs: usize,
    pub n_hidden: usize,
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

impl Network {
    /// Uniform weights in `[-init_range, init_range]` from a seeded stream.
    pub fn init(n_inputs: usize, n_hidden: usize, seed: u64, init_range: f64) -> Result<Self, NnError> {
        if n_inputs == 0 || n_hidden == 0 {
            return Err(NnError::BadConfig("network needs at least one input and one hidden unit".into()));
        }
        if !(init_range >= 0.0) || !init_range.is_finite() {
            return Err(NnError::BadConfig(format!("init_range must be finite and >= 0, got {init_range}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |k: usize| -> Vec<f64> {
            (0..k)
                .map(|_| {
                    if init_range == 0.0 {
                        0.0
                    } else {
                        rng.random_range(-init_range..=init_range)
                    }
                })
                .collect()
        };
        let w1 = draw(n_hidden * n_inputs);
        let b1 = draw(n_hidden);
        let w2 = draw(n_hidden);
        let b2 = draw(1)[0];
        Ok(Network {
            n_inputs,
            n_hidden,
            w1,
            b1,
            w2,
            b2,
        })
    }

    pub fn param_count(&self) -> usize {
        self.n_hidden * self.n_inputs + 2 * self.n_hidden + 1
    }

    pub fn params(&self) -> Vec<f64> {
        let mut p = Vec::with_capacity(self.param_count());
        p.extend_from_slice(&self.w1);
        p.extend_from_slice(&self.b1);
        p.extend_from_slice(&self.w2);
        p.push(self.b2);
        p
    }

    /// Panics if `p` has the wrong length.
    pub fn set_params(&mut self, p: &[f64]) {
        assert_eq!(p.len(), self.param_count());
        let (w1, rest) = p.split_at(self.w1.len());
        let (b1, rest) = rest.split_at(self.n_hidden);
        let (w2, rest) = rest.split_at(self.n_hidden);
        self.w1.copy_from_slice(w1);
        self.b1.copy_from_slice(b1);
        self.w2.copy_from_slice(w2);
        self.b2 = rest[0];
    }

    /// Checks shapes and finiteness, e.g. after deserializing.
    pub fn validate(&self) -> Result<(), NnError> {
        let ok = self.n_inputs > 0
            && self.n_hidden > 0
            && self.w1.len() == self.n_inputs * self.n_hidden
            && self.b1.len() == self.n_hidden
            && self.w2.len() == self.n_hidden;
        if !ok {
            return Err(NnError::BadConfig("inconsistent network shapes".into()));
        }
        if self.params().iter().any(|v| !v.is_finite()) {
            return Err(NnError::BadConfig("non-finite network weight".into()));
        }
        Ok(())
    }

    fn hidden(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n_hidden)
            .map(|k| {
                let w = &self.w1[k * self.n_inputs..(k + 1) * self.n_inputs];
                (dot(w, x) + self.b1[k]).tanh()
            })
            .collect()
    }

    /// `W2 · tanh(W1 x + b1) + b2` on a scaled input vector.
    pub fn forward(&self, x: &[f64]) -> Result<f64, NnError> {
        self.check(x.len())?;
        Ok(self.forward_unchecked(x))
    }

    fn forward_unchecked(&self, x: &[f64]) -> f64 {
        dot(&self.w2, &self.hidden(x)) + self.b2
    }

    /// Output and its partial derivatives with respect to every parameter.
    pub fn output_jacobian(&self, x: &[f64]) -> Result<(f64, Vec<f64>), NnError> {
        self.check(x.len())?;
        let h = self.hidden(x);
        let out = dot(&self.w2, &h) + self.b2;
        let (ni, nh) = (self.n_inputs, self.n_hidden);
        let mut d = vec![0.0; self.param_count()];
        for k in 0..nh {
            let back = self.w2[k] * (1.0 - h[k] * h[k]);
            for j in 0..ni {
                d[k * ni + j] = back * x[j];
            }
            d[nh * ni + k] = back;
            d[nh * ni + nh + k] = h[k];
        }
        d[nh * ni + 2 * nh] = 1.0;
        Ok((out, d))
    }

    fn check(&self, len: usize) -> Result<(), NnError> {
        if len == self.n_inputs {
            Ok(())
        } else {
            Err(NnError::ShapeMismatch {
                expected: self.n_inputs,
                found: len,
            })
        }
    }
}

/// Sum of squared errors of the network over scaled data.
pub fn sse(net: &Network, x: &Matrix, y: &[f64]) -> Result<f64, NnError> {
    net.check(x.cols())?;
    Ok(x.iter_rows()
        .zip(y)
        .map(|(row, t)| {
            let e = t - net.forward_unchecked(row);
            e * e
        })
        .sum())
}

/// Analytic gradient of `Σ (y - ŷ)²` with respect to the flattened
/// parameters.
pub fn gradient(net: &Network, x: &Matrix, y: &[f64]) -> Result<Vec<f64>, NnError> {
    net.check(x.cols())?;
    let mut g = vec![0.0; net.param_count()];
    for (row, t) in x.iter_rows().zip(y) {
        let (out, d) = net.output_jacobian(row)?;
        let factor = -2.0 * (t - out);
        for (gi, di) in g.iter_mut().zip(&d) {
            *gi += factor * di;
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimizer {
    DeltaRule,
    LevenbergMarquardt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub optimizer: Optimizer,
    pub learning_rate: f64,
    pub max_epochs: usize,
    pub lm_lambda0: f64,
    pub lm_lambda_up: f64,
    pub lm_lambda_down: f64,
    pub patience: usize,
    pub seed: u64,
    pub init_range: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            optimizer: Optimizer::LevenbergMarquardt,
            learning_rate: 0.01,
            max_epochs: 1000,
            lm_lambda0: 1e-3,
            lm_lambda_up: 10.0,
            lm_lambda_down: 0.1,
            patience: 50,
            seed: 0,
            init_range: DEFAULT_INIT_RANGE,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), NnError> {
        // A zero learning rate is allowed: it freezes the weights.
        if !(self.learning_rate >= 0.0) || !self.learning_rate.is_finite() {
            return Err(NnError::BadConfig(format!("learning_rate must be >= 0, got {}", self.learning_rate)));
        }
        if !(self.lm_lambda0 > 0.0) {
            return Err(NnError::BadConfig("lm_lambda0 must be > 0".into()));
        }
        if !(self.lm_lambda_up > 1.0 && self.lm_lambda_down > 0.0 && self.lm_lambda_down < 1.0) {
            return Err(NnError::BadConfig("need lm_lambda_up > 1 > lm_lambda_down > 0".into()));
        }
        if !(self.init_range >= 0.0) {
            return Err(NnError::BadConfig("init_range must be >= 0".into()));
        }
        Ok(())
    }
}

/// A network together with the scalers that map physical units in and out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeuralModel {
    pub feature_names: Vec<String>,
    pub network: Network,
    pub input_scaler: MinMaxScaler,
    pub target_scaler: MinMaxScaler,
}

impl NeuralModel {
    /// Fits both scalers on `train` and draws fresh weights.
    pub fn for_table(train: &FeatureTable, n_hidden: usize, seed: u64, init_range: f64) -> Result<Self, NnError> {
        let input_scaler = MinMaxScaler::fit_table(train)?;
        let target_scaler = MinMaxScaler::fit_vector(&train.y, "target")?;
        Ok(NeuralModel {
            feature_names: train.feature_names.clone(),
            network: Network::init(train.feature_names.len(), n_hidden, seed, init_range)?,
            input_scaler,
            target_scaler,
        })
    }

    pub fn validate(&self) -> Result<(), NnError> {
        self.network.validate()?;
        if self.input_scaler.width() != self.network.n_inputs
            || self.target_scaler.width() != 1
            || self.feature_names.len() != self.network.n_inputs
        {
            return Err(NnError::BadConfig("scaler shapes do not match the network".into()));
        }
        Ok(())
    }

    /// Scaled copies of a table's inputs and target.
    pub fn scale(&self, table: &FeatureTable) -> Result<(Matrix, Vec<f64>), NnError> {
        let x = self.input_scaler.apply(&table.x)?;
        let y = table.y.iter().map(|v| self.target_scaler.apply_value(0, *v)).collect();
        Ok((x, y))
    }
}

/// Predictions in physical units from a raw (unscaled) input matrix.
pub fn predict_nn(model: &NeuralModel, x: &Matrix) -> Result<Vec<f64>, NnError> {
    if x.cols() != model.network.n_inputs {
        return Err(NnError::ShapeMismatch {
            expected: model.network.n_inputs,
            found: x.cols(),
        });
    }
    x.iter_rows()
        .map(|row| {
            let scaled = model.input_scaler.apply_row(row)?;
            let out = model.network.forward(&scaled)?;
            Ok(model.target_scaler.invert_value(0, out))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    MaxEpochs,
    EarlyStopping,
    ZeroResidual,
    /// LM damping exceeded [`LAMBDA_MAX`] without finding a better step.
    LambdaOverflow,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: usize,
    pub train_sse: f64,
    pub validation_sse: f64,
    /// LM damping after the epoch; `None` for the delta rule.
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainHistory {
    /// Entry 0 is the untrained state.
    pub epochs: Vec<EpochRecord>,
    pub best_epoch: usize,
    pub stop_reason: StopReason,
}

impl TrainHistory {
    pub fn epochs_run(&self) -> usize {
        self.epochs.last().map_or(0, |e| e.epoch)
    }

    pub fn best(&self) -> &EpochRecord {
        &self.epochs[self.best_epoch]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub model: NeuralModel,
    pub history: TrainHistory,
}

/// Tracks the best validation snapshot and the patience counter.
struct EarlyStop {
    best_sse: f64,
    best_epoch: usize,
    best_params: Vec<f64>,
    patience: usize,
}

impl EarlyStop {
    fn new(val_sse: f64, params: Vec<f64>, patience: usize) -> Self {
        EarlyStop {
            best_sse: val_sse,
            best_epoch: 0,
            best_params: params,
            patience,
        }
    }

    /// Returns true when training should stop.
    fn observe(&mut self, epoch: usize, val_sse: f64, params: &[f64]) -> bool {
        if val_sse < self.best_sse {
            self.best_sse = val_sse;
            self.best_epoch = epoch;
            self.best_params = params.to_vec();
        }
        epoch - self.best_epoch >= self.patience
    }
}

fn prepare(
    model: &NeuralModel,
    train: &FeatureTable,
    validation: &FeatureTable,
    cfg: &TrainConfig,
) -> Result<(Matrix, Vec<f64>, Matrix, Vec<f64>), NnError> {
    cfg.validate()?;
    model.validate()?;
    if train.is_empty() {
        return Err(NnError::EmptyData);
    }
    for t in [train, validation] {
        if t.x.cols() != model.network.n_inputs {
            return Err(NnError::ShapeMismatch {
                expected: model.network.n_inputs,
                found: t.x.cols(),
            });
        }
    }
    let (xt, yt) = model.scale(train)?;
    let (xv, yv) = model.scale(validation)?;
    Ok((xt, yt, xv, yv))
}

fn finish(mut model: NeuralModel, stop: EarlyStop, epochs: Vec<EpochRecord>, reason: StopReason) -> TrainOutcome {
    model.network.set_params(&stop.best_params);
    TrainOutcome {
        model,
        history: TrainHistory {
            epochs,
            best_epoch: stop.best_epoch,
            stop_reason: reason,
        },
    }
}

/// Online training with the generalized delta rule.
///
/// For every sample the output error `e = y - ŷ` gives the output local
/// gradient `δ = e` (identity activation); hidden units receive
/// `δ_k = (1 - h_k²) · W2_k · δ` and every weight moves by
/// `α · δ · input`. Samples are visited in a seeded random order each epoch.
pub fn train_delta_rule(
    model: NeuralModel,
    train: &FeatureTable,
    validation: &FeatureTable,
    cfg: &TrainConfig,
) -> Result<TrainOutcome, NnError> {
    let (xt, yt, xv, yv) = prepare(&model, train, validation, cfg)?;
    let mut model = model;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let alpha = cfg.learning_rate;
    let (ni, nh) = (model.network.n_inputs, model.network.n_hidden);

    let train_sse = sse(&model.network, &xt, &yt)?;
    let val_sse = sse(&model.network, &xv, &yv)?;
    let mut epochs = vec![EpochRecord {
        epoch: 0,
        train_sse,
        validation_sse: val_sse,
        lambda: None,
    }];
    let mut stop = EarlyStop::new(val_sse, model.network.params(), cfg.patience);
    if train_sse == 0.0 {
        return Ok(finish(model, stop, epochs, StopReason::ZeroResidual));
    }

    let mut order: Vec<usize> = (0..xt.rows()).collect();
    let mut hidden_delta = vec![0.0; nh];
    for epoch in 1..=cfg.max_epochs {
        order.shuffle(&mut rng);
        let net = &mut model.network;
        for &i in &order {
            let x = xt.row(i);
            let h = net.hidden(x);
            let out = dot(&net.w2, &h) + net.b2;
            let delta_out = yt[i] - out;
            for k in 0..nh {
                hidden_delta[k] = (1.0 - h[k] * h[k]) * net.w2[k] * delta_out;
            }
            for k in 0..nh {
                net.w2[k] += alpha * delta_out * h[k];
            }
            net.b2 += alpha * delta_out;
            for k in 0..nh {
                let step = alpha * hidden_delta[k];
                for j in 0..ni {
                    net.w1[k * ni + j] += step * x[j];
                }
                net.b1[k] += step;
            }
        }
        let train_sse = sse(&model.network, &xt, &yt)?;
        let val_sse = sse(&model.network, &xv, &yv)?;
        if !train_sse.is_finite() || !val_sse.is_finite() {
            return Err(NnError::Diverged { epoch });
        }
        epochs.push(EpochRecord {
            epoch,
            train_sse,
            validation_sse: val_sse,
            lambda: None,
        });
        if stop.observe(epoch, val_sse, &model.network.params()) {
            return Ok(finish(model, stop, epochs, StopReason::EarlyStopping));
        }
        if train_sse == 0.0 {
            return Ok(finish(model, stop, epochs, StopReason::ZeroResidual));
        }
    }
    Ok(finish(model, stop, epochs, StopReason::MaxEpochs))
}

/// Jacobian of the network outputs (rows: samples, columns: parameters)
/// and the residuals `y - ŷ`.
pub fn jacobian(net: &Network, x: &Matrix, y: &[f64]) -> Result<(Matrix, Vec<f64>), NnError> {
    net.check(x.cols())?;
    let p = net.param_count();
    let mut jac = Matrix::zeros(x.rows(), p);
    let mut resid = Vec::with_capacity(x.rows());
    for (i, (row, t)) in x.iter_rows().zip(y).enumerate() {
        let (out, d) = net.output_jacobian(row)?;
        jac.row_mut(i).copy_from_slice(&d);
        resid.push(t - out);
    }
    Ok((jac, resid))
}

/// `JᵀJ` and `Jᵀr`.
fn normal_equations(jac: &Matrix, resid: &[f64]) -> (Matrix, Vec<f64>) {
    let p = jac.cols();
    let mut jtj = Matrix::zeros(p, p);
    let mut jtr = vec![0.0; p];
    for (row, r) in jac.iter_rows().zip(resid) {
        for a in 0..p {
            jtr[a] += row[a] * r;
            for b in 0..=a {
                jtj[(a, b)] += row[a] * row[b];
            }
        }
    }
    for a in 0..p {
        for b in 0..a {
            jtj[(b, a)] = jtj[(a, b)];
        }
    }
    (jtj, jtr)
}

fn damped_solve(jtj: &Matrix, jtr: &[f64], lambda: f64) -> Option<Vec<f64>> {
    let mut a = jtj.clone();
    for i in 0..a.rows() {
        a[(i, i)] += lambda;
    }
    cholesky_solve(&a, jtr)
}

/// The LM parameter step `Δ` solving `(JᵀJ + λI) Δ = Jᵀr` at the current
/// weights, for scaled data.
pub fn lm_step(net: &Network, x: &Matrix, y: &[f64], lambda: f64) -> Result<Vec<f64>, NnError> {
    let (jac, resid) = jacobian(net, x, y)?;
    let (jtj, jtr) = normal_equations(&jac, &resid);
    damped_solve(&jtj, &jtr, lambda).ok_or(NnError::SingularSystem { epoch: 0 })
}

/// Full-batch Levenberg–Marquardt on the scaled SSE.
///
/// Each epoch retries with growing damping until the SSE decreases; an
/// accepted step shrinks the damping. Training stops at `max_epochs`, on
/// validation patience, at zero residual, or when damping exceeds
/// [`LAMBDA_MAX`].
pub fn train_lm(
    model: NeuralModel,
    train: &FeatureTable,
    validation: &FeatureTable,
    cfg: &TrainConfig,
) -> Result<TrainOutcome, NnError> {
    let (xt, yt, xv, yv) = prepare(&model, train, validation, cfg)?;
    let mut model = model;
    let mut lambda = cfg.lm_lambda0;

    let mut current = sse(&model.network, &xt, &yt)?;
    let val_sse = sse(&model.network, &xv, &yv)?;
    if !current.is_finite() {
        return Err(NnError::Diverged { epoch: 0 });
    }
    let mut epochs = vec![EpochRecord {
        epoch: 0,
        train_sse: current,
        validation_sse: val_sse,
        lambda: Some(lambda),
    }];
    let mut stop = EarlyStop::new(val_sse, model.network.params(), cfg.patience);

    for epoch in 1..=cfg.max_epochs {
        if current == 0.0 {
            return Ok(finish(model, stop, epochs, StopReason::ZeroResidual));
        }
        let (jac, resid) = jacobian(&model.network, &xt, &yt)?;
        let (jtj, jtr) = normal_equations(&jac, &resid);
        if jtr.iter().all(|g| *g == 0.0) {
            return Ok(finish(model, stop, epochs, StopReason::ZeroResidual));
        }
        let params = model.network.params();
        let mut trial = model.network.clone();
        // A system too ill-conditioned to factor counts as a rejected step:
        // more damping makes it better conditioned.
        let mut solved = false;
        let accepted = loop {
            if let Some(delta) = damped_solve(&jtj, &jtr, lambda) {
                solved = true;
                let candidate: Vec<f64> = params.iter().zip(&delta).map(|(p, d)| p + d).collect();
                trial.set_params(&candidate);
                let trial_sse = sse(&trial, &xt, &yt)?;
                if trial_sse < current {
                    lambda = (lambda * cfg.lm_lambda_down).max(LAMBDA_MIN);
                    break Some(trial_sse);
                }
            }
            lambda *= cfg.lm_lambda_up;
            if lambda > LAMBDA_MAX {
                if !solved {
                    return Err(NnError::SingularSystem { epoch });
                }
                break None;
            }
        };
        let Some(new_sse) = accepted else {
            return Ok(finish(model, stop, epochs, StopReason::LambdaOverflow));
        };
        model.network = trial;
        current = new_sse;
        let val_sse = sse(&model.network, &xv, &yv)?;
        if !val_sse.is_finite() {
            return Err(NnError::Diverged { epoch });
        }
        epochs.push(EpochRecord {
            epoch,
            train_sse: current,
            validation_sse: val_sse,
            lambda: Some(lambda),
        });
        if stop.observe(epoch, val_sse, &model.network.params()) {
            return Ok(finish(model, stop, epochs, StopReason::EarlyStopping));
        }
    }
    Ok(finish(model, stop, epochs, StopReason::MaxEpochs))
}

/// Dispatches on `cfg.optimizer`.
pub fn train(
    model: NeuralModel,
    train: &FeatureTable,
    validation: &FeatureTable,
    cfg: &TrainConfig,
) -> Result<TrainOutcome, NnError> {
    match cfg.optimizer {
        Optimizer::DeltaRule => train_delta_rule(model, train, validation, cfg),
        Optimizer::LevenbergMarquardt => train_lm(model, train, validation, cfg),
    }
}
