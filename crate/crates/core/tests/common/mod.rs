//! Checks shared by the focused integration tests and the acceptance runner.
//! Each returns a one-line summary on success and a reason on failure.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shearwave::conditioning::{split_scenario, FeatureTable, ScenarioKind, DEFAULT_FRACTIONS};
use shearwave::config::RunConfig;
use shearwave::evaluation::{
    aapre, compare_methods, r_squared, run_scenario, EvalConfig, EvalReport, FittedModel, Method,
};
use shearwave::las::{parse_las, write_las, WellLog};
use shearwave::linalg::Matrix;
use shearwave::nn::{self, NeuralModel, Network, Optimizer, TrainConfig, TrainHistory};
use shearwave::petro::{self, Castagna, GrComponent, NeutronInputs, PeComponent};
use shearwave::pipeline::{self, Study};
use shearwave::regression::fit_ols;
use shearwave::synth::{generate_field, SynthConfig};

pub type Check = Result<String, String>;

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

pub fn default_config_path() -> PathBuf {
    repo_root().join("configs/default_run.json")
}

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shearwave"))
}

fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

/// Collects formula mismatches so one run reports all of them.
struct Suite {
    count: usize,
    failures: Vec<String>,
}

impl Suite {
    fn new() -> Self {
        Suite { count: 0, failures: Vec::new() }
    }

    fn close(&mut self, name: &str, got: f64, want: f64, tol: f64) {
        self.count += 1;
        let e = rel_err(got, want);
        if !(e <= tol) {
            self.failures.push(format!("{name}: got {got}, want {want} (rel {e:.2e})"));
        }
    }

    fn truth(&mut self, name: &str, ok: bool) {
        self.count += 1;
        if !ok {
            self.failures.push(name.to_string());
        }
    }

    fn finish(self) -> Check {
        if self.failures.is_empty() {
            Ok(format!("{} examples", self.count))
        } else {
            Err(self.failures.join("; "))
        }
    }
}

fn linear_table(n: usize, f: impl Fn(f64) -> f64) -> FeatureTable {
    let depth: Vec<f64> = (0..n).map(|i| 1000.0 + i as f64).collect();
    let x: Vec<f64> = (0..n).map(|i| 0.05 + 0.3 * i as f64 / n as f64).collect();
    let y = x.iter().map(|v| f(*v)).collect();
    FeatureTable::new("T", depth, vec!["NPHI".into()], Matrix::from_row_major(n, 1, x), y).unwrap()
}

fn report(method: Method, r2: f64, ap: f64) -> EvalReport {
    EvalReport {
        scenario: ScenarioKind::KnownInterval,
        method,
        r_squared: r2,
        aapre_percent: ap,
        n_samples: 10,
        aapre_excluded: 0,
        feature_names: vec![],
        pairs: vec![],
    }
}

/// Worked examples for the petrophysics and evaluation modules.
pub fn formula_suite() -> Check {
    const T: f64 = 1e-9;
    const EXACT: f64 = 1e-12;
    let mut s = Suite::new();

    for (dt, vp) in [(304.8, 1.0), (100.0, 3.048), (50.0, 6.096)] {
        s.close(&format!("vp_from_dt({dt})"), petro::vp_from_dt(dt).unwrap(), vp, T);
    }
    s.truth("vp_from_dt(0) rejected", petro::vp_from_dt(0.0).is_err());

    let c = Castagna::default();
    s.close("castagna(3.048)", petro::castagna_vs(3.048), 0.80416 * 3.048 - 0.85588, T);
    s.close("castagna(3.048) hand value", petro::castagna_vs(3.048), 1.59519968, T);
    s.truth("castagna root", petro::castagna_vs(0.85588 / 0.80416).abs() <= 1e-15);
    s.close("castagna(0)", petro::castagna_vs(0.0), -0.85588, T);
    s.truth("castagna(0) non-physical", !c.is_physical(c.vs(0.0)));

    let m = petro::moduli_from_velocities(2.0, 1.0, 1.0).unwrap();
    s.close("poisson(2,1,1)", m.poisson, 1.0 / 3.0, T);
    s.close("youngs(2,1,1)", m.youngs, 1.34e10 * 8.0 / 3.0, T);
    s.close("shear(vs=1,rho=1)", m.shear, 1.34e10, T);
    s.close("C*K", m.compressibility * m.bulk, 1.0, EXACT);
    s.close("M = K + 4G/3", m.constrained, m.bulk + 4.0 * m.shear / 3.0, EXACT);

    let mut fluid = m;
    fluid.shear = 0.0;
    let (_, vs) = petro::velocities_from_moduli(&fluid, 1.0).unwrap();
    s.truth("G = 0 gives vs = 0", vs == 0.0);
    let mut unit = m;
    unit.constrained = 2.5;
    let (vp, _) = petro::velocities_from_moduli(&unit, 2.5).unwrap();
    s.close("M = rho gives vp = 1", vp, 1.0, EXACT);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..20 {
        let vp = rng.random_range(0.15..0.25);
        let vs = vp * rng.random_range(0.3..0.7);
        let rho = rng.random_range(1.9..2.8);
        let back = petro::velocities_from_field_moduli(&petro::moduli_from_velocities(vp, vs, rho).unwrap(), rho).unwrap();
        s.close(&format!("moduli round trip vp #{i}"), back.vp, vp, T);
        s.close(&format!("moduli round trip vs #{i}"), back.vs, vs, T);
    }

    s.close("vp/vs(nu=0)", petro::vp_vs_ratio_from_poisson(0.0).unwrap(), 2f64.sqrt(), T);
    s.close("vp/vs(nu=1/3)", petro::vp_vs_ratio_from_poisson(1.0 / 3.0).unwrap(), 2.0, T);
    s.truth("vp/vs(nu=0.5) rejected", petro::vp_vs_ratio_from_poisson(0.5).is_err());

    s.close("igr at min", petro::gamma_ray_index(20.0, 20.0, 120.0).unwrap(), 0.0, T);
    s.close("igr at max", petro::gamma_ray_index(120.0, 20.0, 120.0).unwrap(), 1.0, T);
    s.close("igr midpoint", petro::gamma_ray_index(70.0, 20.0, 120.0).unwrap(), 0.5, T);

    s.close("wyllie matrix", petro::wyllie_porosity(55.5, 55.5, 189.0).unwrap(), 0.0, T);
    s.close("wyllie fluid", petro::wyllie_porosity(189.0, 55.5, 189.0).unwrap(), 1.0, T);
    s.close("wyllie midpoint", petro::wyllie_porosity(122.25, 55.5, 189.0).unwrap(), 0.5, T);

    s.close("density matrix", petro::density_porosity(2.65, 2.65, 1.0).unwrap(), 0.0, T);
    s.close("density fluid", petro::density_porosity(1.0, 2.65, 1.0).unwrap(), 1.0, T);
    s.close("density midpoint", petro::density_porosity(1.825, 2.65, 1.0).unwrap(), 0.5, T);

    let base = NeutronInputs {
        phi: 0.25,
        sxo: 1.0,
        vsh: 0.0,
        phi_mud_filtrate: 1.0,
        phi_hydrocarbon: 0.3,
        phi_shale: 0.4,
        phi_matrix: 0.0,
    };
    s.close("neutron collapses to phi", petro::neutron_response(&base).unwrap(), 0.25, T);
    let matrix_only = NeutronInputs { phi: 0.0, phi_matrix: 0.02, ..base };
    s.close("neutron matrix only", petro::neutron_response(&matrix_only).unwrap(), 0.02, T);
    let mixed = NeutronInputs {
        phi: 0.2,
        sxo: 0.5,
        vsh: 0.1,
        phi_mud_filtrate: 1.0,
        phi_hydrocarbon: 0.6,
        phi_shale: 0.4,
        phi_matrix: 0.0,
    };
    s.close("neutron term sum", petro::neutron_response(&mixed).unwrap(), 0.20, T);

    let gr = |d, v, a| GrComponent { density: d, volume: v, activity: a };
    s.close("gr single", petro::gr_response(&[gr(2.4, 1.0, 75.0)], 2.4).unwrap(), 75.0, T);
    s.close("gr empty", petro::gr_response(&[], 2.4).unwrap(), 0.0, T);
    s.close(
        "gr two components",
        petro::gr_response(&[gr(2.0, 0.5, 10.0), gr(3.0, 0.5, 20.0)], 2.5).unwrap(),
        16.0,
        T,
    );

    let pe = |f, z, w| PeComponent { fraction: f, atomic_number: z, weight: w };
    s.close("pe single", petro::pe_index(&[pe(0.7, 14.0, 28.1)]).unwrap(), 14f64.powi(4), T);
    s.close("pe identical", petro::pe_index(&[pe(0.5, 8.0, 16.0), pe(0.5, 8.0, 16.0)]).unwrap(), 4096.0, T);
    s.close("pe hand", petro::pe_index(&[pe(1.0, 1.0, 1.0), pe(1.0, 2.0, 1.0)]).unwrap(), 8.5, T);

    let a = [1.0, 2.0, 3.0];
    s.close("r2 exact", r_squared(&a, &a).unwrap(), 1.0, EXACT);
    s.close("r2 mean", r_squared(&a, &[2.0, 2.0, 2.0]).unwrap(), 0.0, EXACT);
    s.close("r2 hand", r_squared(&a, &[1.0, 2.0, 4.0]).unwrap(), 0.5, T);
    s.close("aapre exact", aapre(&a, &a).unwrap(), 0.0, EXACT);
    s.close("aapre [2]/[1]", aapre(&[2.0], &[1.0]).unwrap(), 50.0, T);
    s.close("aapre hand", aapre(&[1.0, 2.0], &[2.0, 1.0]).unwrap(), 75.0, T);

    let table = linear_table(100, |x| 1.0 + 2.0 * x);
    let split = split_scenario(&[&table], ScenarioKind::KnownInterval, DEFAULT_FRACTIONS, 3).unwrap();
    let cfg = EvalConfig { single_feature: Some("NPHI".into()), ..EvalConfig::default() };
    let run = run_scenario(&split, &[Method::LrSingle], &cfg).unwrap();
    match run.reports().first() {
        Some(r) => s.truth("lr_single on exact-linear data", r.r_squared >= 0.999),
        None => s.truth("lr_single on exact-linear data", false),
    }
    let empty = run_scenario(&split, &[], &cfg).unwrap();
    s.truth("empty method list", empty.reports().is_empty());

    let one = compare_methods(&[report(Method::Mlr, 0.8, 5.0)]);
    s.truth("single report best", one.rows.len() == 1 && one.rows[0].rank == 1 && one.rows[0].best_r_squared);
    let two = compare_methods(&[report(Method::Mlr, 0.8, 5.0), report(Method::AnnMulti, 0.9, 6.0)]);
    s.truth("higher R2 ranked first", two.rows[0].method == Method::AnnMulti);
    let tie = compare_methods(&[
        report(Method::Mlr, 0.9, 5.0),
        report(Method::AnnMulti, 0.9, 6.0),
        report(Method::AnnSingle, 0.9, 5.0),
    ]);
    let order: Vec<Method> = tie.rows.iter().map(|r| r.method).collect();
    s.truth("ties by AAPRE then name", order == [Method::AnnSingle, Method::Mlr, Method::AnnMulti]);

    s.finish()
}

fn random_xy(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> (Matrix, Vec<f64>) {
    let data: Vec<f64> = (0..rows * cols).map(|_| rng.random_range(-1.0..1.0)).collect();
    let y = (0..rows).map(|_| rng.random_range(-1.0..1.0)).collect();
    (Matrix::from_row_major(rows, cols, data), y)
}

/// Central differences of the network SSE against the analytic gradient.
pub fn gradient_check(configs: usize) -> Check {
    const EPS: f64 = 1e-6;
    // Components below this magnitude are compared on an absolute scale,
    // where finite-difference roundoff dominates any relative measure.
    const FLOOR: f64 = 1e-8;
    let mut worst: f64 = 0.0;
    for k in 0..configs {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + k as u64);
        let ni = rng.random_range(1..=5);
        let nh = rng.random_range(1..=6);
        let rows = rng.random_range(3..=30);
        let net = Network::init(ni, nh, rng.random(), 1.0).unwrap();
        let (x, y) = random_xy(&mut rng, rows, ni);
        let g = nn::gradient(&net, &x, &y).unwrap();
        let p = net.params();
        let mut probe = net.clone();
        for (j, gj) in g.iter().enumerate() {
            let mut q = p.clone();
            q[j] = p[j] + EPS;
            probe.set_params(&q);
            let up = nn::sse(&probe, &x, &y).unwrap();
            q[j] = p[j] - EPS;
            probe.set_params(&q);
            let down = nn::sse(&probe, &x, &y).unwrap();
            let fd = (up - down) / (2.0 * EPS);
            let e = (gj - fd).abs() / gj.abs().max(fd.abs()).max(FLOOR);
            worst = worst.max(e);
            if e > 1e-5 {
                return Err(format!("config {k} ({ni}-{nh}, {rows} rows) param {j}: analytic {gj}, fd {fd}, rel {e:.2e}"));
            }
        }
    }
    Ok(format!("{configs} configs, worst rel {worst:.1e}"))
}

/// `fit_ols` against `pinv([1 X]) y`.
pub fn ols_oracle(instances: usize) -> Check {
    let mut worst: f64 = 0.0;
    for k in 0..instances {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + k as u64);
        let cols = rng.random_range(1..=5);
        let rows = rng.random_range(cols + 2..=50);
        let (x, y) = random_xy(&mut rng, rows, cols);
        let names = (0..cols).map(|j| format!("F{j}")).collect();
        let depth = (0..rows).map(|i| i as f64).collect();
        let table = FeatureTable::new("R", depth, names, x.clone(), y.clone()).unwrap();
        let model = fit_ols(&table).map_err(|e| format!("instance {k}: {e}"))?;

        let design = DMatrix::from_fn(rows, cols + 1, |i, j| if j == 0 { 1.0 } else { x.row(i)[j - 1] });
        let oracle = design.pseudo_inverse(1e-12).unwrap() * DVector::from_vec(y);
        let ours: Vec<f64> = std::iter::once(model.intercept).chain(model.slopes.iter().copied()).collect();
        for (j, (a, b)) in ours.iter().zip(oracle.iter()).enumerate() {
            let e = (a - b).abs();
            worst = worst.max(e);
            if e > 1e-8 {
                return Err(format!("instance {k} ({rows}x{cols}) coef {j}: {a} vs oracle {b}"));
            }
        }
    }
    Ok(format!("{instances} instances, worst abs {worst:.1e}"))
}

pub fn grid_table(n: usize, f: impl Fn(f64) -> f64) -> FeatureTable {
    let x: Vec<f64> = (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect();
    let y = x.iter().map(|v| f(*v)).collect();
    let depth = (0..n).map(|i| i as f64).collect();
    FeatureTable::new("G", depth, vec!["X".into()], Matrix::from_row_major(n, 1, x), y).unwrap()
}

pub fn train_r2(model: &NeuralModel, table: &FeatureTable) -> f64 {
    r_squared(&table.y, &nn::predict_nn(model, &table.x).unwrap()).unwrap()
}

/// Accepted-step SSE never increases.
pub fn monotone(history: &TrainHistory) -> bool {
    history.epochs.windows(2).all(|w| w[1].train_sse <= w[0].train_sse)
}

pub fn lm_config(max_epochs: usize, seed: u64) -> TrainConfig {
    TrainConfig {
        optimizer: Optimizer::LevenbergMarquardt,
        max_epochs,
        patience: max_epochs + 1,
        seed,
        ..TrainConfig::default()
    }
}

/// The tanh(2x) smoke fit plus monotone SSE over a batch of seeded runs.
pub fn lm_behaviour(study: Option<&Study>) -> Check {
    let smoke = grid_table(41, |x| (2.0 * x).tanh());
    let model = NeuralModel::for_table(&smoke, 3, 7, 0.5).unwrap();
    let out = nn::train_lm(model, &smoke, &smoke, &lm_config(200, 7)).map_err(|e| e.to_string())?;
    let r2 = train_r2(&out.model, &smoke);
    if r2 < 0.999 {
        return Err(format!("tanh(2x) train R2 {r2:.6} after {} epochs", out.history.epochs_run()));
    }
    if !monotone(&out.history) {
        return Err("tanh(2x) run: SSE increased".into());
    }
    let mut runs = 1;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ni = rng.random_range(1..=4);
        let rows = rng.random_range(10..=40);
        let (x, y) = random_xy(&mut rng, rows, ni);
        let y: Vec<f64> = x.iter_rows().zip(&y).map(|(r, e)| r.iter().sum::<f64>().sin() + 0.1 * e).collect();
        let names = (0..ni).map(|j| format!("F{j}")).collect();
        let table = FeatureTable::new("L", (0..rows).map(|i| i as f64).collect(), names, x, y).unwrap();
        let model = NeuralModel::for_table(&table, rng.random_range(1..=4), seed, 0.5).unwrap();
        let out = nn::train_lm(model, &table, &table, &lm_config(100, seed)).map_err(|e| e.to_string())?;
        if !monotone(&out.history) {
            return Err(format!("random run {seed}: SSE increased"));
        }
        runs += 1;
    }
    if let Some(study) = study {
        for run in &study.runs {
            for m in &run.runs {
                if let Ok((_, FittedModel::Neural { history, .. })) = &m.outcome {
                    if !monotone(history) {
                        return Err(format!("{} / {}: SSE increased", run.kind, m.method));
                    }
                    runs += 1;
                }
            }
        }
    }
    Ok(format!("tanh(2x) R2 {r2:.5} in {} epochs; {runs} runs monotone", out.history.epochs_run()))
}

/// The study behind criteria 5 to 7: the bundled config on the bundled wells.
pub fn default_study() -> Study {
    let cfg = RunConfig::load(&default_config_path()).unwrap();
    let inputs = pipeline::read_inputs(&cfg).unwrap();
    pipeline::run_study(&cfg, inputs).unwrap()
}

fn r2(study: &Study, k: ScenarioKind, m: Method) -> Result<f64, String> {
    study
        .report(k, m)
        .map(|r| r.r_squared)
        .ok_or_else(|| format!("no report for {k} / {m}"))
}

pub fn method_ordering(study: &Study) -> Check {
    if !study.is_complete() {
        return Err(format!("study incomplete: {:?}", study.failures));
    }
    for k in [ScenarioKind::UnknownIntervalSameWell, ScenarioKind::DifferentWell] {
        let (a, m, l) = (r2(study, k, Method::AnnMulti)?, r2(study, k, Method::Mlr)?, r2(study, k, Method::LrSingle)?);
        if !(a >= m && m >= l) {
            return Err(format!("{k}: ann_multi {a:.4}, mlr {m:.4}, lr_single {l:.4}"));
        }
    }
    for k in ScenarioKind::ALL {
        let reports: Vec<&EvalReport> = study.reports().into_iter().filter(|r| r.scenario == k).collect();
        let best = reports.iter().max_by(|a, b| a.r_squared.total_cmp(&b.r_squared)).unwrap();
        let least = reports.iter().min_by(|a, b| a.aapre_percent.total_cmp(&b.aapre_percent)).unwrap();
        if best.method != Method::AnnMulti || least.method != Method::AnnMulti {
            return Err(format!("{k}: best R2 {}, lowest AAPRE {}", best.method, least.method));
        }
    }
    let d = |k| r2(study, k, Method::AnnMulti).unwrap();
    Ok(format!(
        "ann_multi R2 {:.3} / {:.3} / {:.3}",
        d(ScenarioKind::KnownInterval),
        d(ScenarioKind::UnknownIntervalSameWell),
        d(ScenarioKind::DifferentWell)
    ))
}

pub fn interval_degradation(study: &Study) -> Check {
    for m in Method::ALL {
        let k = r2(study, ScenarioKind::KnownInterval, m)?;
        let u = r2(study, ScenarioKind::UnknownIntervalSameWell, m)?;
        let d = r2(study, ScenarioKind::DifferentWell, m)?;
        if !(k >= u && u >= d) {
            return Err(format!("{m}: known {k:.4}, unknown {u:.4}, different {d:.4}"));
        }
    }
    let drop = r2(study, ScenarioKind::KnownInterval, Method::AnnMulti)?
        - r2(study, ScenarioKind::DifferentWell, Method::AnnMulti)?;
    if drop < 0.02 {
        return Err(format!("ann_multi drop {drop:.4} < 0.02"));
    }
    Ok(format!("all methods ordered; ann_multi drop {drop:.3}"))
}

pub fn screening(study: &Study) -> Check {
    let s = study.screening.as_ref().ok_or("no screening result")?;
    let last = s.single_log.iter().min_by(|a, b| a.r_squared.total_cmp(&b.r_squared)).ok_or("empty screening")?;
    if last.log != "RES" {
        return Err(format!("lowest single-log R2 is {} ({:.3})", last.log, last.r_squared));
    }
    let top = s.single_log.iter().map(|e| e.r_squared).fold(f64::NEG_INFINITY, f64::max);
    if !(s.multi_log_r_squared > top) {
        return Err(format!("multi-log R2 {:.4} does not beat best single {top:.4}", s.multi_log_r_squared));
    }
    Ok(format!("RES last ({:.3}); multi-log {:.3} > {top:.3}", last.r_squared, s.multi_log_r_squared))
}

/// Runs the CLI study twice into fresh directories and compares report bytes.
pub fn determinism() -> Check {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut reports = Vec::new();
    for d in &dirs {
        let status = bin()
            .args(["--quiet", "run", "--config"])
            .arg(default_config_path())
            .arg("--output-dir")
            .arg(d.path())
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("run exited with {status}"));
        }
        reports.push(std::fs::read(d.path().join(pipeline::REPORT_FILE)).map_err(|e| e.to_string())?);
    }
    if reports[0] != reports[1] {
        return Err("report.json differs between runs".into());
    }
    Ok(format!("report.json identical ({} bytes)", reports[0].len()))
}

fn same_log(a: &WellLog, b: &WellLog) -> Result<(), String> {
    if a.len() != b.len() || a.curves().len() != b.curves().len() {
        return Err("shape changed".into());
    }
    let close = |x: f64, y: f64| rel_err(x, y) <= 1e-6;
    if !a.depth().iter().zip(b.depth()).all(|(x, y)| close(*x, *y)) {
        return Err("depth changed".into());
    }
    for (ca, cb) in a.curves().iter().zip(b.curves()) {
        if ca.mnemonic != cb.mnemonic || ca.unit != cb.unit {
            return Err(format!("curve {} header changed", ca.mnemonic));
        }
        for (x, y) in ca.samples.iter().zip(&cb.samples) {
            if x.is_nan() != y.is_nan() {
                return Err(format!("{}: missing mask changed", ca.mnemonic));
            }
            if !x.is_nan() && !close(*x, *y) {
                return Err(format!("{}: {x} became {y}", ca.mnemonic));
            }
        }
    }
    Ok(())
}

/// parse → write → parse over seeded synthetic wells.
pub fn las_round_trip(wells: u64) -> Check {
    let mut checked = 0;
    for seed in 1..=wells {
        let cfg = SynthConfig {
            seed,
            n_samples: 200 + 10 * seed as usize,
            missing_fraction: 0.05,
            ..SynthConfig::default()
        };
        let field = generate_field(&cfg).map_err(|e| e.to_string())?;
        let original = &field.well_a;
        let first = parse_las(&write_las(original)).map_err(|e| format!("seed {seed}: {e}"))?;
        let second = parse_las(&write_las(&first)).map_err(|e| format!("seed {seed}: {e}"))?;
        same_log(original, &first).map_err(|e| format!("seed {seed}: {e}"))?;
        same_log(&first, &second).map_err(|e| format!("seed {seed} second pass: {e}"))?;
        checked += 1;
    }
    Ok(format!("{checked} wells"))
}
