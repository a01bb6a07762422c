//! Seeded two-well synthetic field: layered sand/shale columns with
//! consistent GR, NPHI, RHOB, DT and resistivity curves.
//!
//! Sonic transit time is a nonlinear function of porosity and shale volume
//! (with a porosity × shale interaction term), so linear predictors of the
//! derived shear velocity underfit. Resistivity is drawn per layer
//! independently of the rock frame. The second well uses drifted log
//! responses.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::las::{Curve, WellLog};
use crate::seed::derive_seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LithologyParams {
    /// Range of per-layer shale volume.
    pub vsh: [f64; 2],
    /// Range of the per-layer clean/shale gamma-ray end member (API).
    pub gr: [f64; 2],
    /// Matrix density (g/cm³).
    pub rho_matrix: f64,
    /// Neutron excess per unit shale volume (v/v).
    pub nphi_excess: f64,
    /// Range of per-layer resistivity (ohm·m), sampled log-uniformly.
    pub resistivity: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NoiseConfig {
    pub gr: f64,
    pub nphi: f64,
    pub rhob: f64,
    pub dt: f64,
    /// Standard deviation of log10(resistivity).
    pub res_log10: f64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig {
            gr: 4.0,
            nphi: 0.012,
            rhob: 0.02,
            dt: 1.5,
            res_log10: 0.1,
        }
    }
}

/// Sonic response
/// `dt = matrix + shale·vsh + phi·(porosity + interaction·vsh) - cementation·u²`,
/// with `u` the fractional depth within the configured range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SonicModel {
    pub dt_matrix: f64,
    pub dt_shale: f64,
    pub dt_porosity: f64,
    pub dt_interaction: f64,
    pub dt_cementation: f64,
}

impl Default for SonicModel {
    fn default() -> Self {
        SonicModel {
            dt_matrix: 55.0,
            dt_shale: 35.0,
            dt_porosity: 140.0,
            dt_interaction: 260.0,
            dt_cementation: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub seed: u64,
    pub n_samples: usize,
    /// Top and bottom of well A (m).
    pub depth_range: [f64; 2],
    /// Depth offset of well B relative to well A (m).
    pub well_b_offset: f64,
    pub layer_thickness: [f64; 2],
    /// Probability that a layer is shale.
    pub shale_probability: f64,
    pub sand: LithologyParams,
    pub shale: LithologyParams,
    /// Porosity of clean rock at the top of the section.
    pub porosity_top: f64,
    /// Half-width of the per-layer porosity perturbation that is unrelated
    /// to shale content.
    pub porosity_jitter: f64,
    /// e-folding length of porosity with depth (m).
    pub compaction_length: f64,
    /// Porosity reduction per unit shale volume (fractional).
    pub shale_porosity_loss: f64,
    pub fluid_density: f64,
    pub sonic: SonicModel,
    pub noise: NoiseConfig,
    pub missing_fraction: f64,
    /// Relative shift applied to well B's shale-volume ranges and porosity.
    pub drift: f64,
    /// Extra sonic noise (µs/ft) in well B, for formation heterogeneity the
    /// other logs do not resolve.
    pub well_b_dt_noise: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            seed: 20_240_601,
            n_samples: 1000,
            depth_range: [1500.0, 2500.0],
            well_b_offset: 150.0,
            layer_thickness: [2.0, 10.0],
            shale_probability: 0.5,
            sand: LithologyParams {
                vsh: [0.0, 0.35],
                gr: [25.0, 40.0],
                rho_matrix: 2.65,
                nphi_excess: 0.28,
                resistivity: [2.0, 200.0],
            },
            shale: LithologyParams {
                vsh: [0.55, 1.0],
                gr: [110.0, 140.0],
                rho_matrix: 2.72,
                nphi_excess: 0.28,
                resistivity: [2.0, 200.0],
            },
            porosity_top: 0.32,
            porosity_jitter: 0.02,
            compaction_length: 2000.0,
            shale_porosity_loss: 0.55,
            fluid_density: 1.05,
            sonic: SonicModel::default(),
            noise: NoiseConfig::default(),
            missing_fraction: 0.02,
            drift: 0.10,
            well_b_dt_noise: 10.0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: &str| Err(Error::Config(format!("synth: {m}")));
        if self.n_samples < 10 {
            return bad("n_samples must be at least 10");
        }
        if !(self.depth_range[1] > self.depth_range[0]) {
            return bad("depth range must be increasing");
        }
        for (name, f) in [
            ("missing_fraction", self.missing_fraction),
            ("shale_probability", self.shale_probability),
            ("porosity_top", self.porosity_top),
            ("porosity_jitter", self.porosity_jitter),
            ("shale_porosity_loss", self.shale_porosity_loss),
            ("drift", self.drift),
        ] {
            if !(0.0..=1.0).contains(&f) {
                return bad(&format!("{name} must lie in [0, 1]"));
            }
        }
        for lith in [&self.sand, &self.shale] {
            if !(0.0..=1.0).contains(&lith.vsh[0]) || !(0.0..=1.0).contains(&lith.vsh[1]) {
                return bad("vsh ranges must lie in [0, 1]");
            }
            if lith.vsh[0] > lith.vsh[1] || lith.gr[0] > lith.gr[1] || lith.resistivity[0] > lith.resistivity[1] {
                return bad("parameter ranges must be ordered [low, high]");
            }
            if lith.resistivity[0] <= 0.0 {
                return bad("resistivity must be positive");
            }
        }
        if !(self.layer_thickness[0] > 0.0 && self.layer_thickness[1] >= self.layer_thickness[0]) {
            return bad("layer thickness range must be positive and ordered");
        }
        if !(self.compaction_length > 0.0) {
            return bad("compaction_length must be positive");
        }
        let noise = &self.noise;
        if [noise.gr, noise.nphi, noise.rhob, noise.dt, noise.res_log10, self.well_b_dt_noise]
            .iter()
            .any(|s| !(*s >= 0.0))
        {
            return bad("noise standard deviations must be >= 0");
        }
        Ok(())
    }

    fn drifted(&self) -> SynthConfig {
        let k = 1.0 + self.drift;
        let mut cfg = self.clone();
        for lith in [&mut cfg.sand, &mut cfg.shale] {
            lith.vsh = lith.vsh.map(|v| (v * k).min(1.0));
        }
        cfg.porosity_top = (cfg.porosity_top * k).min(1.0);
        cfg.noise.dt = self.noise.dt.hypot(self.well_b_dt_noise);
        cfg
    }
}

pub const CURVES: [(&str, &str, &str); 5] = [
    ("GR", "GAPI", "GAMMA RAY"),
    ("NPHI", "V/V", "NEUTRON POROSITY"),
    ("RHOB", "G/C3", "BULK DENSITY"),
    ("DT", "US/F", "COMPRESSIONAL SONIC"),
    ("RES", "OHMM", "DEEP RESISTIVITY"),
];

/// Generated wells plus how many nulls were injected per curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthField {
    pub well_a: WellLog,
    pub well_b: WellLog,
    pub injected_nulls_a: BTreeMap<String, usize>,
    pub injected_nulls_b: BTreeMap<String, usize>,
}

struct Layer {
    top: f64,
    vsh: f64,
    gr_clean: f64,
    gr_shale: f64,
    phi_jitter: f64,
    log10_res: f64,
}

fn uniform(rng: &mut ChaCha8Rng, r: [f64; 2]) -> f64 {
    if r[1] > r[0] {
        rng.random_range(r[0]..r[1])
    } else {
        r[0]
    }
}

fn layers(cfg: &SynthConfig, top: f64, bottom: f64, rng: &mut ChaCha8Rng) -> Vec<Layer> {
    let mut out = Vec::new();
    let mut z = top;
    while z <= bottom {
        let lith = if rng.random_bool(cfg.shale_probability) {
            &cfg.shale
        } else {
            &cfg.sand
        };
        let res = [lith.resistivity[0].log10(), lith.resistivity[1].log10()];
        out.push(Layer {
            top: z,
            vsh: uniform(rng, lith.vsh),
            gr_clean: uniform(rng, cfg.sand.gr),
            gr_shale: uniform(rng, cfg.shale.gr),
            phi_jitter: uniform(rng, [-cfg.porosity_jitter, cfg.porosity_jitter]),
            log10_res: uniform(rng, res),
        });
        z += uniform(rng, cfg.layer_thickness);
    }
    out
}

fn gauss(rng: &mut ChaCha8Rng, sd: f64) -> f64 {
    if sd == 0.0 {
        0.0
    } else {
        Normal::new(0.0, sd).expect("sd >= 0").sample(rng)
    }
}

fn generate_well(cfg: &SynthConfig, name: &str, offset: f64, seed: u64) -> Result<(WellLog, BTreeMap<String, usize>), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (top, bottom) = (cfg.depth_range[0] + offset, cfg.depth_range[1] + offset);
    let n = cfg.n_samples;
    let step = (bottom - top) / (n - 1) as f64;
    let depth: Vec<f64> = (0..n).map(|i| top + step * i as f64).collect();
    let column = layers(cfg, top, bottom, &mut rng);

    let mut curves: Vec<Vec<f64>> = vec![Vec::with_capacity(n); CURVES.len()];
    let mut layer = 0;
    for &z in &depth {
        while layer + 1 < column.len() && column[layer + 1].top <= z {
            layer += 1;
        }
        let l = &column[layer];
        // Gentle within-layer variation keeps layers from being flat blocks.
        let vsh = (l.vsh + 0.04 * ((z - l.top) * 0.7).sin()).clamp(0.0, 1.0);
        let rho_ma = cfg.sand.rho_matrix + (cfg.shale.rho_matrix - cfg.sand.rho_matrix) * vsh;
        let nphi_excess = cfg.sand.nphi_excess + (cfg.shale.nphi_excess - cfg.sand.nphi_excess) * vsh;
        let compaction = (-(z - cfg.depth_range[0]) / cfg.compaction_length).exp();
        let phi = (cfg.porosity_top * compaction * (1.0 - cfg.shale_porosity_loss * vsh) + l.phi_jitter).clamp(0.01, 0.45);

        let s = &cfg.sonic;
        let u = (z - cfg.depth_range[0]) / (cfg.depth_range[1] - cfg.depth_range[0]);
        let dt = s.dt_matrix + s.dt_shale * vsh + phi * (s.dt_porosity + s.dt_interaction * vsh) - s.dt_cementation * u * u
            + gauss(&mut rng, cfg.noise.dt);
        let gr = l.gr_clean + (l.gr_shale - l.gr_clean) * vsh + gauss(&mut rng, cfg.noise.gr);
        let nphi = phi + nphi_excess * vsh + gauss(&mut rng, cfg.noise.nphi);
        let rhob = (1.0 - phi) * rho_ma + phi * cfg.fluid_density + gauss(&mut rng, cfg.noise.rhob);
        let res = 10f64.powf(l.log10_res + gauss(&mut rng, cfg.noise.res_log10));

        curves[0].push(gr.clamp(0.0, 400.0));
        curves[1].push(nphi.clamp(-0.05, 1.0));
        curves[2].push(rhob.clamp(1.0, 3.5));
        curves[3].push(dt.clamp(40.0, 280.0));
        curves[4].push(res);
    }

    let mut nulls = BTreeMap::new();
    let target = (cfg.missing_fraction * n as f64).round() as usize;
    for (samples, (mnemonic, _, _)) in curves.iter_mut().zip(CURVES) {
        let mut count = 0;
        let mut guard = 0;
        while count < target && guard < 100 * n {
            guard += 1;
            let run = rng.random_range(1..=3usize).min(target - count);
            let start = rng.random_range(1..n - run);
            if samples[start - 1].is_nan() || samples[start..start + run + 1].iter().any(|v| v.is_nan()) {
                continue;
            }
            for v in &mut samples[start..start + run] {
                *v = f64::NAN;
            }
            count += run;
        }
        nulls.insert(mnemonic.to_string(), count);
    }

    let mut log = WellLog::new(name, depth)?;
    for (samples, (mnemonic, unit, desc)) in curves.into_iter().zip(CURVES) {
        log.add_curve(Curve::new(mnemonic, unit, samples).with_description(desc))?;
    }
    Ok((log, nulls))
}

/// Generates wells A and B. Each well draws from its own sub-seed of
/// `cfg.seed`.
pub fn generate_field(cfg: &SynthConfig) -> Result<SynthField, Error> {
    cfg.validate()?;
    let (well_a, injected_nulls_a) = generate_well(cfg, "SYNTH-A", 0.0, derive_seed(cfg.seed, "synth/A"))?;
    let (well_b, injected_nulls_b) =
        generate_well(&cfg.drifted(), "SYNTH-B", cfg.well_b_offset, derive_seed(cfg.seed, "synth/B"))?;
    Ok(SynthField {
        well_a,
        well_b,
        injected_nulls_a,
        injected_nulls_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SynthConfig {
        SynthConfig {
            n_samples: 200,
            ..SynthConfig::default()
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let a = generate_field(&small()).unwrap();
        let b = generate_field(&small()).unwrap();
        assert_eq!(format!("{:?}", a.well_a), format!("{:?}", b.well_a));
        assert_eq!(format!("{:?}", a.well_b), format!("{:?}", b.well_b));
        let c = generate_field(&SynthConfig { seed: 7, ..small() }).unwrap();
        assert_ne!(format!("{:?}", a.well_a), format!("{:?}", c.well_a));
    }

    #[test]
    fn null_bookkeeping_matches_curves() {
        let f = generate_field(&small()).unwrap();
        for c in f.well_a.curves() {
            assert_eq!(c.missing_count(), f.injected_nulls_a[&c.mnemonic]);
            assert_eq!(c.missing_count(), 4);
        }
        let clean = generate_field(&SynthConfig {
            missing_fraction: 0.0,
            ..small()
        })
        .unwrap();
        assert!(clean.well_a.curves().iter().all(|c| c.missing_count() == 0));
        assert!(clean.well_b.curves().iter().all(|c| c.missing_count() == 0));
    }

    #[test]
    fn sonic_stays_in_physical_range() {
        let f = generate_field(&SynthConfig::default()).unwrap();
        for well in [&f.well_a, &f.well_b] {
            let vp_floor = crate::petro::Castagna::default().vp_floor();
            for dt in well.curve("DT").unwrap().samples.iter().filter(|v| !v.is_nan()) {
                assert!((40.0..=300.0).contains(dt));
                assert!(crate::petro::vp_from_dt(*dt).unwrap() > vp_floor);
            }
        }
    }

    #[test]
    fn rejects_bad_config() {
        assert!(generate_field(&SynthConfig {
            n_samples: 5,
            ..SynthConfig::default()
        })
        .is_err());
        assert!(generate_field(&SynthConfig {
            missing_fraction: 1.5,
            ..SynthConfig::default()
        })
        .is_err());
    }
}
