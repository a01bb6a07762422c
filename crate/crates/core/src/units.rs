//! Ingestion-time unit normalization. Depth goes to metres, DT to µs/ft,
//! RHOB to g/cm³ and NPHI to v/v. Unknown unit strings are rejected.

use crate::las::{mnemonic_matches, WellLog};

struct Rule {
    mnemonic: &'static str,
    canonical: &'static [&'static str],
    /// (accepted unit, multiplier to canonical)
    convert: &'static [(&'static str, f64)],
}

const RULES: &[Rule] = &[
    Rule {
        mnemonic: "DT",
        canonical: &["US/F", "US/FT", "USEC/FT", "µS/FT"],
        convert: &[("US/M", 0.3048), ("USEC/M", 0.3048)],
    },
    Rule {
        mnemonic: "RHOB",
        canonical: &["G/C3", "G/CC", "G/CM3", "GM/CC"],
        convert: &[("KG/M3", 1e-3)],
    },
    Rule {
        mnemonic: "NPHI",
        canonical: &["V/V", "FRAC", "DEC", "M3/M3"],
        convert: &[("%", 0.01), ("PU", 0.01)],
    },
    Rule {
        mnemonic: "GR",
        canonical: &["API", "GAPI"],
        convert: &[],
    },
    Rule {
        mnemonic: "RES",
        canonical: &["OHMM", "OHM.M", "OHM-M", "OHM M"],
        convert: &[],
    },
];

const DEPTH_CANONICAL: &[&str] = &["M", "METER", "METERS", "METRE", "METRES"];
const DEPTH_FEET: &[&str] = &["F", "FT", "FEET"];

fn unit_in(unit: &str, list: &[&str]) -> bool {
    list.iter().any(|u| u.eq_ignore_ascii_case(unit))
}

/// Converts known curves and the depth index to canonical units in place.
/// An empty unit string is taken to already be canonical.
pub fn normalize_units(log: &mut WellLog) -> Result<(), String> {
    let du = log.depth_unit.trim().to_string();
    if unit_in(&du, DEPTH_FEET) {
        let depth = log.depth().iter().map(|d| d * 0.3048).collect();
        log.set_depth(depth).map_err(|e| e.to_string())?;
        log.depth_unit = "M".into();
    } else if !du.is_empty() && !unit_in(&du, DEPTH_CANONICAL) {
        return Err(format!("depth unit '{du}' is not supported (expected M or FT)"));
    }

    for curve in log.curves_mut() {
        let Some(rule) = RULES.iter().find(|r| mnemonic_matches(r.mnemonic, &curve.mnemonic)) else {
            continue;
        };
        let unit = curve.unit.trim();
        if unit.is_empty() || unit_in(unit, rule.canonical) {
            continue;
        }
        match rule.convert.iter().find(|(u, _)| u.eq_ignore_ascii_case(unit)) {
            Some((_, factor)) => {
                for v in curve.samples.iter_mut() {
                    *v *= factor;
                }
                curve.unit = rule.canonical[0].to_string();
            }
            None => {
                return Err(format!(
                    "curve {} has unit '{}', expected {}",
                    curve.mnemonic, unit, rule.canonical[0]
                ))
            }
        }
    }
    Ok(())
}
