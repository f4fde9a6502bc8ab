//! C ABI for the `expbij` analyzer.
//!
//! Every entry point returns an [`ExpbijStatus`]; results go through out
//! pointers. On failure the message is available from [`expbij_last_error`]
//! until the next call on the same thread. Handles are opaque and must be
//! released with their `_free` function; strings returned by the library are
//! released with [`expbij_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use expbij::analyzer::RobustSelection;
use expbij::crn::{analyze_network, GeneralizedNetwork};
use expbij::json::parse_matrix;
use expbij::{linalg, Caps, Classification, Error, ExponentialMapSpec, Rational, RationalMatrix, Report};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpbijStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    RankDeficient = 3,
    DimensionMismatch = 4,
    CapExceeded = 5,
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpbijClassification {
    BijectiveForAllC = 0,
    InjectiveNotBijective = 1,
    NotInjective = 2,
    Inconclusive = 3,
}

impl From<Classification> for ExpbijClassification {
    fn from(c: Classification) -> Self {
        match c {
            Classification::BijectiveForAllC => Self::BijectiveForAllC,
            Classification::InjectiveNotBijective => Self::InjectiveNotBijective,
            Classification::NotInjective => Self::NotInjective,
            Classification::Inconclusive => Self::Inconclusive,
        }
    }
}

/// An exact rational matrix.
pub struct ExpbijMatrix(RationalMatrix);

/// A coefficient/exponent matrix pair.
pub struct ExpbijSpec(ExponentialMapSpec);

/// An analysis report.
pub struct ExpbijReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(ExpbijStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::RankDeficient { .. } | Error::DependentBasis => ExpbijStatus::RankDeficient,
            Error::Dimension(_) | Error::LengthMismatch { .. } | Error::UnequalRowCounts { .. } => {
                ExpbijStatus::DimensionMismatch
            }
            Error::CapExceeded { .. } => ExpbijStatus::CapExceeded,
            Error::Internal(_) => ExpbijStatus::Internal,
            _ => ExpbijStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ExpbijStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ExpbijStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ExpbijStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            ExpbijStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(ExpbijStatus::InvalidInput, format!("{what} is not valid UTF-8")))
}

unsafe fn read_caps(p: *const c_char) -> Result<Caps, Failure> {
    if p.is_null() {
        return Ok(Caps::default());
    }
    Ok(Caps::from_json(read_str(p, "caps")?)?)
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(ExpbijStatus::Internal, "string contains a nul byte".into()))?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    write_out(out, Box::into_raw(Box::new(value)))
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn expbij_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn expbij_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a matrix from JSON (`{"rows", "cols", "entries"}` with integer or
/// `"p/q"` entries).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expbij_matrix_from_json(json: *const c_char, out: *mut *mut ExpbijMatrix) -> ExpbijStatus {
    guard(|| {
        let m = parse_matrix(read_str(json, "json")?)?;
        write_handle(out, ExpbijMatrix(m))
    })
}

/// Builds a matrix from `rows * cols` row-major numerators over `denominator`.
///
/// # Safety
/// `entries` must point to `rows * cols` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expbij_matrix_new(
    rows: usize,
    cols: usize,
    entries: *const i64,
    denominator: i64,
    out: *mut *mut ExpbijMatrix,
) -> ExpbijStatus {
    guard(|| {
        let len = rows.checked_mul(cols).ok_or_else(|| Error::Dimension("matrix too large".into()))?;
        if entries.is_null() && len > 0 {
            return Err(null("entries"));
        }
        if denominator == 0 {
            return Err(Error::Dimension("denominator is zero".into()).into());
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(entries, len) };
        let values = slice.iter().map(|&v| Rational::new(v.into(), denominator.into())).collect();
        write_handle(out, ExpbijMatrix(RationalMatrix::new(rows, cols, values)?))
    })
}

/// # Safety
/// `m` must be a live matrix handle; `rows` and `cols` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expbij_matrix_shape(m: *const ExpbijMatrix, rows: *mut usize, cols: *mut usize) -> ExpbijStatus {
    guard(|| {
        let m = &deref(m, "matrix")?.0;
        write_out(rows, m.rows())?;
        write_out(cols, m.cols())
    })
}

/// # Safety
/// `m` must be a live matrix handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expbij_matrix_rank(m: *const ExpbijMatrix, out: *mut usize) -> ExpbijStatus {
    guard(|| write_out(out, linalg::rank(&deref(m, "matrix")?.0)))
}

/// # Safety
/// `m` must be null or a matrix handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn expbij_matrix_free(m: *mut ExpbijMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Pairs a coefficient and an exponent matrix. Both must have full row rank
/// and the same number of columns. The matrices are copied.
///
/// # Safety
/// `coefficients` and `exponents` must be live matrix handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expbij_spec_new(
    coefficients: *const ExpbijMatrix,
    exponents: *const ExpbijMatrix,
    out: *mut *mut ExpbijSpec,
) -> ExpbijStatus {
    guard(|| {
        let w = deref(coefficients, "coefficients")?.0.clone();
        let wt = deref(exponents, "exponents")?.0.clone();
        write_handle(out, ExpbijSpec(ExponentialMapSpec::new(w, wt)?))
    })
}

/// # Safety
/// `s` must be null or a spec handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn expbij_spec_free(s: *mut ExpbijSpec) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Runs the full analysis. `caps_json` may be null for the default caps;
/// `robust` is one of `exponents`, `coefficients`, `both`, `all`, or null for `all`.
///
/// # Safety
/// `spec` must be a live spec handle; string arguments must be null or
/// nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expbij_analyze(
    spec: *const ExpbijSpec,
    caps_json: *const c_char,
    robust: *const c_char,
    out: *mut *mut ExpbijReport,
) -> ExpbijStatus {
    guard(|| {
        let spec = &deref(spec, "spec")?.0;
        let caps = read_caps(caps_json)?;
        let robust = if robust.is_null() { RobustSelection::default() } else { RobustSelection::parse(read_str(robust, "robust")?)? };
        let analysis = expbij::analyze(spec, caps, robust)?;
        write_handle(out, ExpbijReport(Report::new(spec, &analysis)))
    })
}

/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expbij_report_from_json(json: *const c_char, out: *mut *mut ExpbijReport) -> ExpbijStatus {
    guard(|| write_handle(out, ExpbijReport(Report::from_json(read_str(json, "json")?)?)))
}

/// Canonical JSON of the report; free the result with [`expbij_string_free`].
///
/// # Safety
/// `report` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expbij_report_to_json(report: *const ExpbijReport, out: *mut *mut c_char) -> ExpbijStatus {
    guard(|| write_string(out, deref(report, "report")?.0.to_canonical_json()))
}

/// # Safety
/// `report` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expbij_report_classification(
    report: *const ExpbijReport,
    out: *mut ExpbijClassification,
) -> ExpbijStatus {
    guard(|| write_out(out, deref(report, "report")?.0.classification.verdict.into()))
}

/// Re-checks every certificate in the report against its embedded input.
///
/// # Safety
/// `report` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expbij_report_verify(report: *const ExpbijReport, out: *mut bool) -> ExpbijStatus {
    guard(|| write_out(out, expbij::verify_certificate(&deref(report, "report")?.0)))
}

/// # Safety
/// `r` must be null or a report handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn expbij_report_free(r: *mut ExpbijReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Applies the deficiency-zero criteria to a network given as JSON and
/// returns the network report as JSON.
///
/// # Safety
/// `network_json` must be nul-terminated; `caps_json` null or nul-terminated;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expbij_crn_analyze(
    network_json: *const c_char,
    caps_json: *const c_char,
    out: *mut *mut c_char,
) -> ExpbijStatus {
    guard(|| {
        let net = GeneralizedNetwork::parse(read_str(network_json, "network")?)?;
        let report = analyze_network(&net, read_caps(caps_json)?)?;
        write_string(out, report.to_canonical_json())
    })
}
