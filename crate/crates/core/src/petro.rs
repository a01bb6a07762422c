//! Closed-form petrophysical and elastic relations.
//!
//! Elastic moduli follow the field convention: velocities in ft/µs, bulk
//! density in g/cm³ and moduli in psi, linked by the 1.34e10 unit factor.
//! The rest of the pipeline works in km/s; see [`ft_per_us_to_km_per_s`].

use serde::{Deserialize, Serialize};

use crate::error::PetroError;

/// psi per (g/cm³ · (ft/µs)²).
pub const MODULUS_FACTOR: f64 = 1.34e10;

/// µs/ft → km/s numerator: one foot per 304.8 µs is 1 km/s.
pub const SONIC_FACTOR: f64 = 304.8;

pub fn ft_per_us_to_km_per_s(v: f64) -> f64 {
    v * SONIC_FACTOR
}

pub fn km_per_s_to_ft_per_us(v: f64) -> f64 {
    v / SONIC_FACTOR
}

/// Compressional velocity (km/s) from sonic transit time (µs/ft).
pub fn vp_from_dt(dt: f64) -> Result<f64, PetroError> {
    if dt > 0.0 {
        Ok(SONIC_FACTOR / dt)
    } else {
        Err(PetroError::NonPositiveTransitTime(dt))
    }
}

/// Linear Vp–Vs mudrock relation, `vs = slope * vp - intercept` in km/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Castagna {
    pub slope: f64,
    pub intercept: f64,
}

impl Default for Castagna {
    fn default() -> Self {
        Castagna {
            slope: 0.80416,
            intercept: 0.85588,
        }
    }
}

impl Castagna {
    /// May return a non-positive velocity for slow rocks; callers decide
    /// what to do with those (see [`Castagna::is_physical`]).
    pub fn vs(&self, vp: f64) -> f64 {
        self.slope * vp - self.intercept
    }

    pub fn is_physical(&self, vs: f64) -> bool {
        vs > 0.0
    }

    /// Compressional velocity below which the predicted shear velocity is
    /// not positive.
    pub fn vp_floor(&self) -> f64 {
        self.intercept / self.slope
    }
}

/// Shear velocity (km/s) from compressional velocity (km/s) with the
/// default coefficients.
pub fn castagna_vs(vp: f64) -> f64 {
    Castagna::default().vs(vp)
}

/// Dynamic elastic moduli in psi (compressibility in 1/psi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElasticModuli {
    pub youngs: f64,
    pub bulk: f64,
    pub shear: f64,
    pub compressibility: f64,
    pub poisson: f64,
    pub constrained: f64,
    pub lame_lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VelocityUnit {
    FtPerUs,
    KmPerS,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VelocityPair {
    pub vp: f64,
    pub vs: f64,
    pub unit: VelocityUnit,
    pub rho: f64,
}

impl VelocityPair {
    pub fn to_km_per_s(self) -> VelocityPair {
        match self.unit {
            VelocityUnit::KmPerS => self,
            VelocityUnit::FtPerUs => VelocityPair {
                vp: ft_per_us_to_km_per_s(self.vp),
                vs: ft_per_us_to_km_per_s(self.vs),
                unit: VelocityUnit::KmPerS,
                rho: self.rho,
            },
        }
    }
}

/// Moduli from velocities in ft/µs and density in g/cm³.
pub fn moduli_from_velocities(vp: f64, vs: f64, rho: f64) -> Result<ElasticModuli, PetroError> {
    if rho <= 0.0 {
        return Err(PetroError::NonPositiveDensity(rho));
    }
    if vp <= 0.0 {
        return Err(PetroError::NonPositiveVelocity(vp));
    }
    if vs < 0.0 {
        return Err(PetroError::NonPositiveVelocity(vs));
    }
    if vp == vs {
        return Err(PetroError::EqualVelocities(vp));
    }
    let vp2 = vp * vp;
    let vs2 = vs * vs;
    let bulk = MODULUS_FACTOR * rho * (3.0 * vp2 - 4.0 * vs2) / 3.0;
    if bulk <= 0.0 {
        return Err(PetroError::NonPositiveBulkModulus(bulk));
    }
    let shear = MODULUS_FACTOR * rho * vs2;
    let youngs = MODULUS_FACTOR * rho * vs2 * (3.0 * vp2 - 4.0 * vs2) / (vp2 - vs2);
    let poisson = (vp2 - 2.0 * vs2) / (2.0 * vp2 - 2.0 * vs2);
    Ok(ElasticModuli {
        youngs,
        bulk,
        shear,
        compressibility: 1.0 / bulk,
        poisson,
        constrained: bulk + 4.0 * shear / 3.0,
        lame_lambda: bulk - 2.0 * shear / 3.0,
    })
}

/// `vp = sqrt(M / rho)`, `vs = sqrt(G / rho)` in consistent units.
pub fn velocities_from_moduli(moduli: &ElasticModuli, rho: f64) -> Result<(f64, f64), PetroError> {
    if rho <= 0.0 {
        return Err(PetroError::NonPositiveDensity(rho));
    }
    if moduli.shear < 0.0 {
        return Err(PetroError::NegativeModulus {
            name: "shear",
            value: moduli.shear,
        });
    }
    if moduli.constrained <= 0.0 {
        return Err(PetroError::NegativeModulus {
            name: "constrained",
            value: moduli.constrained,
        });
    }
    Ok(((moduli.constrained / rho).sqrt(), (moduli.shear / rho).sqrt()))
}

/// Inverse of [`moduli_from_velocities`]: psi moduli and g/cm³ back to
/// velocities in ft/µs.
pub fn velocities_from_field_moduli(
    moduli: &ElasticModuli,
    rho: f64,
) -> Result<VelocityPair, PetroError> {
    let (vp, vs) = velocities_from_moduli(moduli, rho * MODULUS_FACTOR)?;
    Ok(VelocityPair {
        vp,
        vs,
        unit: VelocityUnit::FtPerUs,
        rho,
    })
}

/// Vp/Vs ratio implied by a Poisson's ratio.
pub fn vp_vs_ratio_from_poisson(nu: f64) -> Result<f64, PetroError> {
    if !(0.0..0.5).contains(&nu) {
        return Err(PetroError::PoissonOutOfRange(nu));
    }
    Ok(((1.0 - nu) / (0.5 - nu)).sqrt())
}

/// Gamma-ray index, clamped to [0, 1].
pub fn gamma_ray_index(gr_log: f64, gr_min: f64, gr_max: f64) -> Result<f64, PetroError> {
    if gr_max <= gr_min {
        return Err(PetroError::DegenerateEndMembers("gr_max must exceed gr_min"));
    }
    Ok(((gr_log - gr_min) / (gr_max - gr_min)).clamp(0.0, 1.0))
}

/// Linear shale-volume model: Vsh equals the gamma-ray index.
pub fn vsh_linear(igr: f64) -> f64 {
    igr
}

/// Time-average sonic porosity. `dt_fluid` is the pore-fluid transit time.
pub fn wyllie_porosity(dt: f64, dt_matrix: f64, dt_fluid: f64) -> Result<f64, PetroError> {
    if dt_fluid <= dt_matrix {
        return Err(PetroError::DegenerateEndMembers("dt_fluid must exceed dt_matrix"));
    }
    Ok((dt - dt_matrix) / (dt_fluid - dt_matrix))
}

pub fn density_porosity(rho_b: f64, rho_matrix: f64, rho_fluid: f64) -> Result<f64, PetroError> {
    if rho_matrix <= rho_fluid {
        return Err(PetroError::DegenerateEndMembers("rho_matrix must exceed rho_fluid"));
    }
    Ok((rho_matrix - rho_b) / (rho_matrix - rho_fluid))
}

/// Neutron tool response terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeutronInputs {
    pub phi: f64,
    pub sxo: f64,
    pub vsh: f64,
    pub phi_mud_filtrate: f64,
    pub phi_hydrocarbon: f64,
    pub phi_shale: f64,
    pub phi_matrix: f64,
}

pub fn neutron_response(n: &NeutronInputs) -> Result<f64, PetroError> {
    let fractions = [
        ("phi", n.phi),
        ("sxo", n.sxo),
        ("vsh", n.vsh),
        ("phi_mud_filtrate", n.phi_mud_filtrate),
        ("phi_hydrocarbon", n.phi_hydrocarbon),
        ("phi_shale", n.phi_shale),
        ("phi_matrix", n.phi_matrix),
    ];
    for (name, value) in fractions {
        if !(0.0..=1.0).contains(&value) {
            return Err(PetroError::FractionOutOfRange { name, value });
        }
    }
    if n.phi + n.vsh > 1.0 {
        return Err(PetroError::FractionOutOfRange {
            name: "phi + vsh",
            value: n.phi + n.vsh,
        });
    }
    Ok(n.phi * n.sxo * n.phi_mud_filtrate
        + n.phi * (1.0 - n.sxo) * n.phi_hydrocarbon
        + n.vsh * n.phi_shale
        + (1.0 - n.phi - n.vsh) * n.phi_matrix)
}

/// A radioactive mineral: density, bulk volume fraction, activity factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrComponent {
    pub density: f64,
    pub volume: f64,
    pub activity: f64,
}

pub fn gr_response(components: &[GrComponent], rho_b: f64) -> Result<f64, PetroError> {
    if rho_b <= 0.0 {
        return Err(PetroError::NonPositiveDensity(rho_b));
    }
    if let Some(c) = components.iter().find(|c| c.volume < 0.0) {
        return Err(PetroError::FractionOutOfRange {
            name: "volume",
            value: c.volume,
        });
    }
    let sum: f64 = components.iter().map(|c| c.density * c.volume * c.activity).sum();
    Ok(sum / rho_b)
}

/// An element's contribution to the photoelectric index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeComponent {
    pub fraction: f64,
    pub atomic_number: f64,
    pub weight: f64,
}

pub fn pe_index(components: &[PeComponent]) -> Result<f64, PetroError> {
    if components.is_empty() {
        return Err(PetroError::Empty);
    }
    let num: f64 = components
        .iter()
        .map(|c| c.fraction * c.atomic_number.powi(4) * c.weight)
        .sum();
    let den: f64 = components.iter().map(|c| c.fraction * c.weight).sum();
    if den <= 0.0 {
        return Err(PetroError::ZeroPeDenominator);
    }
    Ok(num / den)
}
