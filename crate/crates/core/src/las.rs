//! LAS 2.0 and CSV well-log I/O.
//!
//! Missing samples are held internally as `NaN`. Both the well's declared
//! null sentinel and `NaN` literals in input map to that marker; output
//! always writes the declared sentinel.

use std::fmt::Write as _;

use crate::error::LasError;

pub const DEFAULT_NULL: f64 = -999.25;

/// Mnemonics treated as the same curve during lookup.
const ALIASES: &[&[&str]] = &[&["NPHI", "NPFI"]];

/// One named log curve aligned to the owning well's depth index.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub mnemonic: String,
    pub unit: String,
    pub description: String,
    pub samples: Vec<f64>,
}

impl Curve {
    pub fn new(mnemonic: impl Into<String>, unit: impl Into<String>, samples: Vec<f64>) -> Self {
        Curve {
            mnemonic: mnemonic.into(),
            unit: unit.into(),
            description: String::new(),
            samples,
        }
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn missing_count(&self) -> usize {
        self.samples.iter().filter(|v| v.is_nan()).count()
    }
}

/// A depth-indexed collection of curves.
///
/// Depth is strictly increasing and every curve has one sample per depth.
#[derive(Debug, Clone, PartialEq)]
pub struct WellLog {
    pub well_name: String,
    pub null_value: f64,
    pub depth_unit: String,
    depth: Vec<f64>,
    curves: Vec<Curve>,
}

/// Case-insensitive mnemonic comparison that honours the alias table.
pub fn mnemonic_matches(a: &str, b: &str) -> bool {
    if a.eq_ignore_ascii_case(b) {
        return true;
    }
    ALIASES.iter().any(|group| {
        group.iter().any(|m| m.eq_ignore_ascii_case(a)) && group.iter().any(|m| m.eq_ignore_ascii_case(b))
    })
}

impl WellLog {
    pub fn new(well_name: impl Into<String>, depth: Vec<f64>) -> Result<Self, LasError> {
        check_depth(&depth)?;
        Ok(WellLog {
            well_name: well_name.into(),
            null_value: DEFAULT_NULL,
            depth_unit: "M".to_string(),
            depth,
            curves: Vec::new(),
        })
    }

    pub fn add_curve(&mut self, curve: Curve) -> Result<(), LasError> {
        if curve.mnemonic.trim().is_empty() {
            return Err(LasError::EmptyMnemonic);
        }
        if curve.samples.len() != self.depth.len() {
            return Err(LasError::CurveLength {
                mnemonic: curve.mnemonic,
                expected: self.depth.len(),
                found: curve.samples.len(),
            });
        }
        if self.curves.iter().any(|c| c.mnemonic.eq_ignore_ascii_case(&curve.mnemonic)) {
            return Err(LasError::DuplicateCurve(curve.mnemonic));
        }
        self.curves.push(curve);
        Ok(())
    }

    pub fn depth(&self) -> &[f64] {
        &self.depth
    }

    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth.is_empty()
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn curves_mut(&mut self) -> &mut [Curve] {
        &mut self.curves
    }

    /// Looks a curve up by mnemonic, case-insensitively and through aliases.
    /// An exact (case-insensitive) match wins over an alias match.
    pub fn curve(&self, mnemonic: &str) -> Option<&Curve> {
        self.curve_index(mnemonic).map(|i| &self.curves[i])
    }

    pub fn curve_mut(&mut self, mnemonic: &str) -> Option<&mut Curve> {
        self.curve_index(mnemonic).map(move |i| &mut self.curves[i])
    }

    fn curve_index(&self, mnemonic: &str) -> Option<usize> {
        self.curves
            .iter()
            .position(|c| c.mnemonic.eq_ignore_ascii_case(mnemonic))
            .or_else(|| self.curves.iter().position(|c| mnemonic_matches(&c.mnemonic, mnemonic)))
    }

    /// Replaces the depth index, e.g. after a unit conversion. The new index
    /// must keep the same length and remain strictly increasing.
    pub fn set_depth(&mut self, depth: Vec<f64>) -> Result<(), LasError> {
        check_depth(&depth)?;
        if depth.len() != self.depth.len() {
            return Err(LasError::CurveLength {
                mnemonic: "DEPTH".into(),
                expected: self.depth.len(),
                found: depth.len(),
            });
        }
        self.depth = depth;
        Ok(())
    }

    pub fn remove_curve(&mut self, mnemonic: &str) -> Option<Curve> {
        self.curve_index(mnemonic).map(|i| self.curves.remove(i))
    }
}

fn check_depth(depth: &[f64]) -> Result<(), LasError> {
    for (i, d) in depth.iter().enumerate() {
        if !d.is_finite() {
            return Err(LasError::MissingDepth { line: i + 1 });
        }
        if i > 0 && *d <= depth[i - 1] {
            return Err(LasError::NonMonotonicDepth { line: i + 1, depth: *d });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Version,
    Well,
    Curve,
    Other,
    Ascii,
}

struct HeaderLine {
    mnemonic: String,
    unit: String,
    value: String,
    description: String,
}

fn parse_header_line(line: &str, lineno: usize) -> Result<HeaderLine, LasError> {
    let malformed = || LasError::MalformedHeader {
        line: lineno,
        text: line.to_string(),
    };
    let dot = line.find('.').ok_or_else(malformed)?;
    let mnemonic = line[..dot].trim().to_string();
    if mnemonic.is_empty() {
        return Err(malformed());
    }
    let rest = &line[dot + 1..];
    // Unit runs from the dot to the first whitespace.
    let unit_end = rest.find(char::is_whitespace).unwrap_or(rest.len());
    let (unit, rest) = rest.split_at(unit_end);
    let (value, description) = match rest.rfind(':') {
        Some(colon) => (&rest[..colon], &rest[colon + 1..]),
        None => (rest, ""),
    };
    Ok(HeaderLine {
        mnemonic,
        unit: unit.trim_end_matches(':').to_string(),
        value: value.trim().to_string(),
        description: description.trim().to_string(),
    })
}

fn parse_number(token: &str, lineno: usize) -> Result<f64, LasError> {
    token.parse::<f64>().map_err(|_| LasError::BadFloat {
        line: lineno,
        token: token.to_string(),
    })
}

fn is_null(v: f64, null_value: f64) -> bool {
    v.is_nan() || v == null_value
}

/// Parses unwrapped LAS 2.0 text. The first ~C entry is the depth index.
pub fn parse_las(bytes: &[u8]) -> Result<WellLog, LasError> {
    let text = String::from_utf8_lossy(bytes);
    let mut section = Section::None;
    let mut null_value = DEFAULT_NULL;
    let mut well_name = String::new();
    let mut curve_defs: Vec<HeaderLine> = Vec::new();
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    let mut saw_ascii = false;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(tag) = line.strip_prefix('~') {
            section = match tag.chars().next().map(|c| c.to_ascii_uppercase()) {
                Some('V') => Section::Version,
                Some('W') => Section::Well,
                Some('C') => Section::Curve,
                Some('A') => {
                    if curve_defs.is_empty() {
                        return Err(LasError::MissingCurves);
                    }
                    saw_ascii = true;
                    Section::Ascii
                }
                _ => Section::Other,
            };
            continue;
        }
        match section {
            Section::Version => {
                let h = parse_header_line(line, lineno)?;
                if h.mnemonic.eq_ignore_ascii_case("WRAP") && h.value.eq_ignore_ascii_case("YES") {
                    return Err(LasError::Wrapped { line: lineno });
                }
                if h.mnemonic.eq_ignore_ascii_case("VERS") {
                    let major = h.value.split('.').next().unwrap_or("");
                    if major.trim() != "2" {
                        return Err(LasError::UnsupportedVersion {
                            line: lineno,
                            version: h.value,
                        });
                    }
                }
            }
            Section::Well => {
                let h = parse_header_line(line, lineno)?;
                if h.mnemonic.eq_ignore_ascii_case("NULL") {
                    null_value = parse_number(&h.value, lineno)?;
                } else if h.mnemonic.eq_ignore_ascii_case("WELL") {
                    well_name = h.value;
                }
            }
            Section::Curve => curve_defs.push(parse_header_line(line, lineno)?),
            Section::Ascii => {
                let values = line
                    .split_whitespace()
                    .map(|tok| parse_number(tok, lineno))
                    .collect::<Result<Vec<_>, _>>()?;
                if values.len() != curve_defs.len() {
                    return Err(LasError::ColumnCount {
                        line: lineno,
                        expected: curve_defs.len(),
                        found: values.len(),
                    });
                }
                rows.push((lineno, values));
            }
            Section::None | Section::Other => {}
        }
    }

    if !saw_ascii {
        if curve_defs.is_empty() {
            return Err(LasError::MissingCurves);
        }
        return Err(LasError::MissingData { line: last_line });
    }

    if rows.len() >= 2 && rows[0].1[0] > rows[rows.len() - 1].1[0] {
        rows.reverse();
    }
    let mut depth = Vec::with_capacity(rows.len());
    for (i, (lineno, values)) in rows.iter().enumerate() {
        let d = values[0];
        if is_null(d, null_value) {
            return Err(LasError::MissingDepth { line: *lineno });
        }
        if i > 0 && d <= depth[i - 1] {
            return Err(LasError::NonMonotonicDepth { line: *lineno, depth: d });
        }
        depth.push(d);
    }

    let depth_unit = curve_defs[0].unit.clone();
    let mut log = WellLog::new(well_name, depth)?;
    log.null_value = null_value;
    log.depth_unit = depth_unit;
    for (col, def) in curve_defs.iter().enumerate().skip(1) {
        let samples = rows
            .iter()
            .map(|(_, values)| {
                let v = values[col];
                if is_null(v, null_value) {
                    f64::NAN
                } else {
                    v
                }
            })
            .collect();
        log.add_curve(Curve {
            mnemonic: def.mnemonic.clone(),
            unit: def.unit.clone(),
            description: def.description.clone(),
            samples,
        })?;
    }
    Ok(log)
}

/// Formats a sample for output. `Display` for `f64` is the shortest string
/// that parses back to the same value, so round trips are exact.
fn fmt_value(v: f64, null_value: f64) -> String {
    if v.is_nan() {
        format!("{}", null_value)
    } else {
        format!("{}", v)
    }
}

fn uniform_step(depth: &[f64]) -> f64 {
    if depth.len() < 2 {
        return 0.0;
    }
    let step = depth[1] - depth[0];
    let tol = 1e-9 * step.abs().max(1.0);
    if depth.windows(2).all(|w| ((w[1] - w[0]) - step).abs() <= tol) {
        step
    } else {
        0.0
    }
}

/// Emits unwrapped LAS 2.0 text.
pub fn write_las(log: &WellLog) -> Vec<u8> {
    let mut out = String::new();
    let du = &log.depth_unit;
    let (start, stop) = match (log.depth.first(), log.depth.last()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => (log.null_value, log.null_value),
    };
    out.push_str("~Version information\n");
    out.push_str(" VERS.                2.0 : CWLS LOG ASCII STANDARD - VERSION 2.0\n");
    out.push_str(" WRAP.                 NO : ONE LINE PER DEPTH STEP\n");
    out.push_str("~Well information\n");
    let _ = writeln!(out, " STRT.{du:<4} {start:>14} : START DEPTH");
    let _ = writeln!(out, " STOP.{du:<4} {stop:>14} : STOP DEPTH");
    let _ = writeln!(out, " STEP.{du:<4} {:>14} : STEP", uniform_step(&log.depth));
    let _ = writeln!(out, " NULL.     {:>14} : NULL VALUE", log.null_value);
    let _ = writeln!(out, " WELL.     {:>14} : WELL", log.well_name);
    out.push_str("~Curve information\n");
    let _ = writeln!(out, " DEPT.{du:<8} : DEPTH");
    for c in &log.curves {
        let _ = writeln!(out, " {}.{:<8} : {}", c.mnemonic, c.unit, c.description);
    }
    out.push_str("~ASCII\n");
    for (i, d) in log.depth.iter().enumerate() {
        out.push_str(&format!("{}", d));
        for c in &log.curves {
            out.push(' ');
            out.push_str(&fmt_value(c.samples[i], log.null_value));
        }
        out.push('\n');
    }
    out.into_bytes()
}

fn is_missing_token(tok: &str) -> bool {
    let t = tok.trim();
    t.is_empty() || t.eq_ignore_ascii_case("nan") || t.eq_ignore_ascii_case("na")
}

/// Parses a comma-delimited table with a header row. Every column other
/// than `depth_column` becomes a curve.
pub fn parse_csv(bytes: &[u8], depth_column: &str) -> Result<WellLog, LasError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| LasError::Csv {
            line: 1,
            message: e.to_string(),
        })?
        .iter()
        .map(str::to_string)
        .collect();
    let depth_idx = headers
        .iter()
        .position(|h| h.eq_ignore_ascii_case(depth_column))
        .ok_or_else(|| LasError::NoDepthColumn(depth_column.to_string()))?;

    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| LasError::Csv {
            line: e.position().map(|p| p.line() as usize).unwrap_or(0),
            message: e.to_string(),
        })?;
        let lineno = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        if record.len() != headers.len() {
            return Err(LasError::ColumnCount {
                line: lineno,
                expected: headers.len(),
                found: record.len(),
            });
        }
        let values = record
            .iter()
            .map(|tok| {
                if is_missing_token(tok) {
                    Ok(f64::NAN)
                } else {
                    parse_number(tok, lineno).map(|v| if v == DEFAULT_NULL { f64::NAN } else { v })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((lineno, values));
    }

    if rows.len() >= 2 && rows[0].1[depth_idx] > rows[rows.len() - 1].1[depth_idx] {
        rows.reverse();
    }
    let mut depth = Vec::with_capacity(rows.len());
    for (i, (lineno, values)) in rows.iter().enumerate() {
        let d = values[depth_idx];
        if d.is_nan() {
            return Err(LasError::MissingDepth { line: *lineno });
        }
        if i > 0 && d <= depth[i - 1] {
            return Err(LasError::NonMonotonicDepth { line: *lineno, depth: d });
        }
        depth.push(d);
    }
    let mut log = WellLog::new("", depth)?;
    for (col, name) in headers.iter().enumerate() {
        if col == depth_idx {
            continue;
        }
        let samples = rows.iter().map(|(_, v)| v[col]).collect();
        log.add_curve(Curve::new(name.clone(), "", samples))?;
    }
    Ok(log)
}

/// Writes the log as CSV with the depth column first; missing samples are
/// left empty.
pub fn write_csv(log: &WellLog, depth_column: &str) -> Vec<u8> {
    let mut out = String::from(depth_column);
    for c in &log.curves {
        out.push(',');
        out.push_str(&c.mnemonic);
    }
    out.push('\n');
    for (i, d) in log.depth.iter().enumerate() {
        out.push_str(&format!("{}", d));
        for c in &log.curves {
            out.push(',');
            let v = c.samples[i];
            if !v.is_nan() {
                out.push_str(&format!("{}", v));
            }
        }
        out.push('\n');
    }
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = "\
~Version information
 VERS.   2.0 : CWLS LOG ASCII STANDARD - VERSION 2.0
 WRAP.   NO  : ONE LINE PER DEPTH STEP
~Well information
 STRT.M   1000.0 : START
 STOP.M   1001.0 : STOP
 STEP.M   0.5    : STEP
 NULL.    -999.25 : NULL VALUE
 WELL.    TEST-1 : WELL NAME
~Curve information
 DEPT.M     : DEPTH
 GR.API     : GAMMA RAY
 RHOB.G/C3  : BULK DENSITY
~ASCII
1000.0  45.0  2.30
1000.5  -999.25  2.35
1001.0  80.0  2.50
";

    #[test]
    fn parses_minimal_fixture() {
        let log = parse_las(FIXTURE.as_bytes()).unwrap();
        assert_eq!(log.well_name, "TEST-1");
        assert_eq!(log.depth(), &[1000.0, 1000.5, 1001.0]);
        assert_eq!(log.curves().len(), 2);
        let gr = log.curve("gr").unwrap();
        assert_eq!(gr.unit, "API");
        assert_eq!(gr.description, "GAMMA RAY");
        assert_eq!(gr.samples[0], 45.0);
        assert!(gr.samples[1].is_nan());
        assert_eq!(log.curve("RHOB").unwrap().samples, vec![2.30, 2.35, 2.50]);
    }

    #[test]
    fn descending_file_is_reversed() {
        let desc = FIXTURE.replace(
            "1000.0  45.0  2.30\n1000.5  -999.25  2.35\n1001.0  80.0  2.50\n",
            "1001.0  80.0  2.50\n1000.5  -999.25  2.35\n1000.0  45.0  2.30\n",
        );
        let a = parse_las(FIXTURE.as_bytes()).unwrap();
        let b = parse_las(desc.as_bytes()).unwrap();
        assert_eq!(a.depth(), b.depth());
        assert_eq!(a.curve("RHOB"), b.curve("RHOB"));
        assert!(b.curve("GR").unwrap().samples[1].is_nan());
    }

    #[test]
    fn missing_ascii_section_is_an_error() {
        let text = FIXTURE.split("~ASCII").next().unwrap();
        assert!(matches!(parse_las(text.as_bytes()), Err(LasError::MissingData { .. })));
    }

    #[test]
    fn column_mismatch_reports_line() {
        let bad = FIXTURE.replace("1000.5  -999.25  2.35", "1000.5  2.35");
        assert_eq!(
            parse_las(bad.as_bytes()),
            Err(LasError::ColumnCount {
                line: 16,
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn bad_float_reports_line() {
        let bad = FIXTURE.replace("80.0", "8O.0");
        assert_eq!(
            parse_las(bad.as_bytes()),
            Err(LasError::BadFloat {
                line: 17,
                token: "8O.0".into()
            })
        );
    }

    #[test]
    fn non_monotonic_depth_rejected() {
        let bad = FIXTURE.replace("1000.5  -999.25", "1002.0  -999.25");
        assert!(matches!(
            parse_las(bad.as_bytes()),
            Err(LasError::NonMonotonicDepth { line: 17, .. })
        ));
    }

    #[test]
    fn wrapped_mode_rejected() {
        let bad = FIXTURE.replace("WRAP.   NO ", "WRAP.   YES");
        assert!(matches!(parse_las(bad.as_bytes()), Err(LasError::Wrapped { line: 3 })));
    }

    #[test]
    fn custom_null_value_honoured() {
        let text = FIXTURE.replace("-999.25", "-9999");
        let log = parse_las(text.as_bytes()).unwrap();
        assert_eq!(log.null_value, -9999.0);
        assert!(log.curve("GR").unwrap().samples[1].is_nan());
    }

    #[test]
    fn write_emits_null_literal_and_round_trips() {
        let log = parse_las(FIXTURE.as_bytes()).unwrap();
        let text = String::from_utf8(write_las(&log)).unwrap();
        assert!(text.contains("1000.5 -999.25 2.35"));
        let back = parse_las(text.as_bytes()).unwrap();
        assert_eq!(back.depth(), log.depth());
        assert_eq!(back.well_name, log.well_name);
        for (a, b) in log.curves().iter().zip(back.curves()) {
            assert_eq!(a.mnemonic, b.mnemonic);
            assert_eq!(a.unit, b.unit);
            for (x, y) in a.samples.iter().zip(&b.samples) {
                assert!(x == y || (x.is_nan() && y.is_nan()));
            }
        }
    }

    #[test]
    fn empty_curve_set_writes_depth_only() {
        let log = WellLog::new("EMPTY", vec![1.0, 2.0]).unwrap();
        let text = String::from_utf8(write_las(&log)).unwrap();
        let data: Vec<&str> = text.split("~ASCII\n").nth(1).unwrap().lines().collect();
        assert_eq!(data, vec!["1", "2"]);
        let back = parse_las(text.as_bytes()).unwrap();
        assert!(back.curves().is_empty());
        assert_eq!(back.depth(), &[1.0, 2.0]);
    }

    #[test]
    fn npfi_and_nphi_are_aliases() {
        let mut log = WellLog::new("W", vec![1.0]).unwrap();
        log.add_curve(Curve::new("NPFI", "V/V", vec![0.2])).unwrap();
        assert_eq!(log.curve("nphi").unwrap().samples, vec![0.2]);
        assert!(log.curve("RHOB").is_none());
    }

    #[test]
    fn duplicate_mnemonic_rejected() {
        let mut log = WellLog::new("W", vec![1.0]).unwrap();
        log.add_curve(Curve::new("GR", "API", vec![1.0])).unwrap();
        assert_eq!(
            log.add_curve(Curve::new("gr", "API", vec![1.0])),
            Err(LasError::DuplicateCurve("gr".into()))
        );
    }

    #[test]
    fn csv_maps_columns() {
        let text = "DEPTH,GR,RHOB\n1,40,2.3\n2,,2.4\n3,NaN,2.5\n";
        let log = parse_csv(text.as_bytes(), "depth").unwrap();
        assert_eq!(log.depth(), &[1.0, 2.0, 3.0]);
        assert_eq!(log.curves().len(), 2);
        let gr = &log.curve("GR").unwrap().samples;
        assert_eq!(gr[0], 40.0);
        assert!(gr[1].is_nan() && gr[2].is_nan());
    }

    #[test]
    fn csv_errors() {
        assert_eq!(
            parse_csv(b"A,B\n1,2\n", "DEPTH"),
            Err(LasError::NoDepthColumn("DEPTH".into()))
        );
        assert!(matches!(
            parse_csv(b"DEPTH,GR\n1,2\n1,3\n", "DEPTH"),
            Err(LasError::NonMonotonicDepth { .. })
        ));
        assert!(matches!(
            parse_csv(b"DEPTH,GR\n1,2\n2\n", "DEPTH"),
            Err(LasError::ColumnCount { found: 1, .. })
        ));
    }

    #[test]
    fn csv_round_trip() {
        let log = parse_las(FIXTURE.as_bytes()).unwrap();
        let back = parse_csv(&write_csv(&log, "DEPTH"), "DEPTH").unwrap();
        assert_eq!(back.depth(), log.depth());
        assert_eq!(back.curve("RHOB").unwrap().samples, log.curve("RHOB").unwrap().samples);
        assert!(back.curve("GR").unwrap().samples[1].is_nan());
    }
}
