//! C ABI for the shearwave library.
//!
//! Every fallible function returns an [`SwStatus`]; on failure a message is
//! available from [`sw_last_error`] on the same thread until the next call.
//! Handles are opaque and must be released with their `_free` function.
//!
//! Array outputs follow one pattern: the function always stores the
//! required element count in `*len_out`; pass a null buffer to query it.
//! A non-null buffer shorter than that yields
//! `SW_STATUS_BUFFER_TOO_SMALL` and nothing is written.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use shearwave::conditioning::PhysicalRanges;
use shearwave::config::InputFormat;
use shearwave::evaluation::{aapre, r_squared, FittedModel};
use shearwave::las::{parse_las, WellLog};
use shearwave::linalg::Matrix;
use shearwave::petro::{self, Castagna};
use shearwave::pipeline::{self, ModelFile};
use shearwave::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Io = 4,
    Config = 5,
    Domain = 6,
    Model = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// A parsed well log.
pub struct SwWellLog(WellLog);

/// A fitted predictor loaded from a model file.
pub struct SwModel(FittedModel);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SwElasticModuli {
    pub youngs: f64,
    pub bulk: f64,
    pub shear: f64,
    pub compressibility: f64,
    pub poisson: f64,
    pub constrained: f64,
    pub lame_lambda: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Failure = (SwStatus, String);

fn status_of(e: &Error) -> SwStatus {
    match e {
        Error::Las(_) => SwStatus::Parse,
        Error::Io { .. } => SwStatus::Io,
        Error::Config(_) | Error::Json(_) => SwStatus::Config,
        Error::Petro(_) | Error::Metric(_) => SwStatus::Domain,
        Error::Condition(_) | Error::Regression(_) | Error::Nn(_) | Error::Pipeline(_) => SwStatus::Model,
    }
}

fn fail(e: impl Into<Error>) -> Failure {
    let e = e.into();
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> Failure {
    (SwStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status plus last-error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SwStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SwStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            SwStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (SwStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn slice_arg<'a>(p: *const f64, n: usize, what: &str) -> Result<&'a [f64], Failure> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Copies `values` into a caller buffer following the module's array
/// convention.
unsafe fn write_array(values: &[f64], out: *mut f64, cap: usize, len_out: *mut usize) -> Result<(), Failure> {
    *out_arg(len_out, "len_out")? = values.len();
    if out.is_null() {
        return Ok(());
    }
    if cap < values.len() {
        return Err((
            SwStatus::BufferTooSmall,
            format!("buffer holds {cap} values, {} needed", values.len()),
        ));
    }
    std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn sw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// ---------------------------------------------------------------------------
// Well logs

/// Parses LAS 2.0 text from memory.
///
/// # Safety
/// `data` must point to `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_well_log_parse_las(data: *const u8, len: usize, out: *mut *mut SwWellLog) -> SwStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        if data.is_null() {
            return Err(null("data"));
        }
        let log = parse_las(std::slice::from_raw_parts(data, len)).map_err(fail)?;
        *out = Box::into_raw(Box::new(SwWellLog(log)));
        Ok(())
    })
}

/// Reads a LAS or CSV file (by extension). CSV depth comes from the
/// `DEPTH` column.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_well_log_read(path: *const c_char, out: *mut *mut SwWellLog) -> SwStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let path = Path::new(str_arg(path, "path")?);
        let bytes = std::fs::read(path).map_err(|e| fail(Error::io(path, e)))?;
        let log = pipeline::parse_well_bytes(&bytes, InputFormat::from_path(path), "DEPTH").map_err(fail)?;
        *out = Box::into_raw(Box::new(SwWellLog(log)));
        Ok(())
    })
}

/// # Safety
/// `log` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn sw_well_log_free(log: *mut SwWellLog) {
    if !log.is_null() {
        drop(Box::from_raw(log));
    }
}

/// # Safety
/// `log` must be a live handle; `rows` and `curves` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_well_log_shape(log: *const SwWellLog, rows: *mut usize, curves: *mut usize) -> SwStatus {
    guard(|| {
        let log = &log.as_ref().ok_or_else(|| null("log"))?.0;
        *out_arg(rows, "rows")? = log.len();
        *out_arg(curves, "curves")? = log.curves().len();
        Ok(())
    })
}

/// Copies the depth index.
///
/// # Safety
/// `log` must be a live handle; `out` null or writable for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn sw_well_log_depth(
    log: *const SwWellLog,
    out: *mut f64,
    cap: usize,
    len_out: *mut usize,
) -> SwStatus {
    guard(|| {
        let log = &log.as_ref().ok_or_else(|| null("log"))?.0;
        write_array(log.depth(), out, cap, len_out)
    })
}

/// Copies one curve's samples (NaN where missing). Mnemonic lookup is
/// case-insensitive and knows NPHI/NPFI as aliases.
///
/// # Safety
/// `log` must be a live handle; `mnemonic` NUL-terminated; `out` null or
/// writable for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn sw_well_log_curve(
    log: *const SwWellLog,
    mnemonic: *const c_char,
    out: *mut f64,
    cap: usize,
    len_out: *mut usize,
) -> SwStatus {
    guard(|| {
        let log = &log.as_ref().ok_or_else(|| null("log"))?.0;
        let name = str_arg(mnemonic, "mnemonic")?;
        let curve = log
            .curve(name)
            .ok_or_else(|| (SwStatus::Model, format!("no curve named {name}")))?;
        write_array(&curve.samples, out, cap, len_out)
    })
}

/// Writes the mnemonic of curve `index` as a NUL-terminated string.
/// `*len_out` receives the byte count including the terminator.
///
/// # Safety
/// `log` must be a live handle; `buf` null or writable for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn sw_well_log_curve_name(
    log: *const SwWellLog,
    index: usize,
    buf: *mut c_char,
    cap: usize,
    len_out: *mut usize,
) -> SwStatus {
    guard(|| {
        let log = &log.as_ref().ok_or_else(|| null("log"))?.0;
        let curve = log
            .curves()
            .get(index)
            .ok_or_else(|| (SwStatus::Model, format!("curve index {index} out of range")))?;
        let bytes = curve.mnemonic.as_bytes();
        *out_arg(len_out, "len_out")? = bytes.len() + 1;
        if buf.is_null() {
            return Ok(());
        }
        if cap < bytes.len() + 1 {
            return Err((SwStatus::BufferTooSmall, format!("name needs {} bytes", bytes.len() + 1)));
        }
        std::ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, bytes.len());
        *buf.add(bytes.len()) = 0;
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Models

fn model_from_json(text: &str) -> Result<SwModel, Failure> {
    let file = ModelFile::from_json(text).map_err(fail)?;
    Ok(SwModel(file.to_fitted().map_err(fail)?))
}

/// Loads a model file written by `shearwave run`.
///
/// # Safety
/// `path` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_model_load(path: *const c_char, out: *mut *mut SwModel) -> SwStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let path = Path::new(str_arg(path, "path")?);
        let text = std::fs::read_to_string(path).map_err(|e| fail(Error::io(path, e)))?;
        *out = Box::into_raw(Box::new(model_from_json(&text)?));
        Ok(())
    })
}

/// Same as [`sw_model_load`] from JSON text in memory.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_model_from_json(json: *const c_char, out: *mut *mut SwModel) -> SwStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = Box::into_raw(Box::new(model_from_json(str_arg(json, "json")?)?));
        Ok(())
    })
}

/// # Safety
/// `model` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn sw_model_free(model: *mut SwModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// `model` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_model_feature_count(model: *const SwModel, out: *mut usize) -> SwStatus {
    guard(|| {
        let model = &model.as_ref().ok_or_else(|| null("model"))?.0;
        *out_arg(out, "out")? = model.feature_names().len();
        Ok(())
    })
}

/// Predicts Vs (km/s) for `n_rows` rows of raw inputs, row-major, with
/// `n_cols` equal to the model's feature count in file order.
///
/// # Safety
/// `x` readable for `n_rows * n_cols` values; `out` writable for `n_rows`.
#[no_mangle]
pub unsafe extern "C" fn sw_model_predict_rows(
    model: *const SwModel,
    x: *const f64,
    n_rows: usize,
    n_cols: usize,
    out: *mut f64,
) -> SwStatus {
    guard(|| {
        let model = &model.as_ref().ok_or_else(|| null("model"))?.0;
        let want = model.feature_names().len();
        if n_cols != want {
            return Err((SwStatus::Model, format!("model takes {want} features, got {n_cols}")));
        }
        let total = n_rows.checked_mul(n_cols).ok_or_else(|| (SwStatus::Model, "size overflow".to_string()))?;
        let data = slice_arg(x, total, "x")?.to_vec();
        let pred = model.predict(&Matrix::from_row_major(n_rows, n_cols, data)).map_err(fail)?;
        if n_rows > 0 && out.is_null() {
            return Err(null("out"));
        }
        std::ptr::copy_nonoverlapping(pred.as_ptr(), out, pred.len());
        Ok(())
    })
}

/// Predicts Vs for every row of a well after unit normalization and the
/// default range screens, as `shearwave predict` does. Rows with a missing
/// input get NaN.
///
/// # Safety
/// Handles must be live; `out` null or writable for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn sw_model_predict_log(
    model: *const SwModel,
    log: *const SwWellLog,
    out: *mut f64,
    cap: usize,
    len_out: *mut usize,
) -> SwStatus {
    guard(|| {
        let model = &model.as_ref().ok_or_else(|| null("model"))?.0;
        let mut log = log.as_ref().ok_or_else(|| null("log"))?.0.clone();
        pipeline::ingest(&mut log, &BTreeMap::new(), &PhysicalRanges::default()).map_err(fail)?;
        let pred = pipeline::predict_log(model, &log).map_err(fail)?;
        let values: Vec<f64> = pred.into_iter().map(|p| p.unwrap_or(f64::NAN)).collect();
        write_array(&values, out, cap, len_out)
    })
}

// ---------------------------------------------------------------------------
// Petrophysics and metrics

/// Compressional velocity (km/s) from sonic transit time (µs/ft).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_vp_from_dt(dt: f64, out: *mut f64) -> SwStatus {
    guard(|| {
        *out_arg(out, "out")? = petro::vp_from_dt(dt).map_err(fail)?;
        Ok(())
    })
}

/// Castagna shear velocity (km/s) with the default coefficients. May be
/// non-positive for slow rocks.
#[no_mangle]
pub extern "C" fn sw_castagna_vs(vp: f64) -> f64 {
    Castagna::default().vs(vp)
}

/// Dynamic moduli (psi) from vp, vs (ft/µs) and bulk density (g/cc).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_elastic_moduli(vp: f64, vs: f64, rho: f64, out: *mut SwElasticModuli) -> SwStatus {
    guard(|| {
        let m = petro::moduli_from_velocities(vp, vs, rho).map_err(fail)?;
        *out_arg(out, "out")? = SwElasticModuli {
            youngs: m.youngs,
            bulk: m.bulk,
            shear: m.shear,
            compressibility: m.compressibility,
            poisson: m.poisson,
            constrained: m.constrained,
            lame_lambda: m.lame_lambda,
        };
        Ok(())
    })
}

/// # Safety
/// `actual` and `predicted` readable for `n` values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_r_squared(actual: *const f64, predicted: *const f64, n: usize, out: *mut f64) -> SwStatus {
    guard(|| {
        let a = slice_arg(actual, n, "actual")?;
        let p = slice_arg(predicted, n, "predicted")?;
        *out_arg(out, "out")? = r_squared(a, p).map_err(fail)?;
        Ok(())
    })
}

/// Average absolute percent relative error.
///
/// # Safety
/// `actual` and `predicted` readable for `n` values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_aapre(actual: *const f64, predicted: *const f64, n: usize, out: *mut f64) -> SwStatus {
    guard(|| {
        let a = slice_arg(actual, n, "actual")?;
        let p = slice_arg(predicted, n, "predicted")?;
        *out_arg(out, "out")? = aapre(a, p).map_err(fail)?;
        Ok(())
    })
}
