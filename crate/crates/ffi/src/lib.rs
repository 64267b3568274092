//! C ABI for the `qshare` verifier.
//!
//! Schemes and reports are opaque handles owned by the caller and released
//! with their `_free` functions. Every entry point returns a [`QsStatus`];
//! the message of the last failure on the calling thread is available from
//! [`qs_last_error_message`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};
use qshare::cli::parse_structure;
use qshare::{
    cgl23_scheme, load_scheme_str, synthesize_recovery, threshold_scheme, verify_scheme, von_neumann_entropy,
    Complex64, ComplexMatrix, DensityMatrix, QssError, SchemeSpec, VerificationReport, VerifyOptions,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QsStatus {
    Ok = 0,
    /// The computation finished but a check failed (or recovery is impossible).
    VerdictFailed = 1,
    InputError = 2,
    NumericError = 3,
    NullPointer = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QsAccessFlags {
    pub monotone_antichain: bool,
    pub quantum_admissible: bool,
    pub complement_closed: bool,
}

/// Opaque scheme handle.
pub struct QsScheme(SchemeSpec);

/// Opaque verification report handle.
pub struct QsReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg.into()));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &QssError) -> QsStatus {
    match err.exit_code() {
        1 => QsStatus::VerdictFailed,
        3 => QsStatus::NumericError,
        _ => QsStatus::InputError,
    }
}

fn fail(err: QssError) -> QsStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn guard(f: impl FnOnce() -> QsStatus) -> QsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            QsStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, QsStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(QsStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        QsStatus::InputError
    })
}

fn null(what: &str) -> QsStatus {
    set_error(format!("{what} is null"));
    QsStatus::NullPointer
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn emit_scheme(result: qshare::Result<SchemeSpec>, out: *mut *mut QsScheme) -> QsStatus {
    match result {
        Ok(s) => {
            *out = Box::into_raw(Box::new(QsScheme(s)));
            QsStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Message of the last failed call on this thread, or NULL. Free with
/// [`qs_string_free`].
#[no_mangle]
pub extern "C" fn qs_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone()).map_or(ptr::null_mut(), into_c_string)
}

/// Built-in scheme by name (`"cgl23"`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_scheme_builtin(name: *const c_char, out: *mut *mut QsScheme) -> QsStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let name = match str_arg(name, "name") {
            Ok(n) => n,
            Err(s) => return s,
        };
        let result = match name {
            "cgl23" => Ok(cgl23_scheme()),
            other => Err(QssError::Input(format!("unknown builtin scheme '{other}'"))),
        };
        emit_scheme(result, out)
    })
}

/// Polynomial `(t, n)` threshold scheme over `Z_q` with `n = 2t - 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_scheme_threshold(t: u32, n: u32, q: u32, out: *mut *mut QsScheme) -> QsStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        emit_scheme(threshold_scheme(t as usize, n as usize, q as usize), out)
    })
}

/// Scheme from a JSON scheme document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_scheme_from_json(json: *const c_char, out: *mut *mut QsScheme) -> QsStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match str_arg(json, "json") {
            Ok(text) => emit_scheme(load_scheme_str(text), out),
            Err(s) => s,
        }
    })
}

/// # Safety
/// `scheme` must be NULL or a handle from a `qs_scheme_*` constructor that
/// has not been freed.
#[no_mangle]
pub unsafe extern "C" fn qs_scheme_free(scheme: *mut QsScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// Number of players, or 0 for NULL.
///
/// # Safety
/// `scheme` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_scheme_player_count(scheme: *const QsScheme) -> size_t {
    scheme.as_ref().map_or(0, |s| s.0.players().len())
}

/// # Safety
/// `scheme` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_scheme_secret_dim(scheme: *const QsScheme) -> size_t {
    scheme.as_ref().map_or(0, |s| s.0.secret_dim())
}

/// Runs every check against the scheme's default ensemble. The report is
/// written to `out` whenever the computation finishes; the status is
/// `VERDICT_FAILED` when some check did not pass.
///
/// # Safety
/// `scheme` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_verify(
    scheme: *const QsScheme,
    tolerance: f64,
    fast: bool,
    out: *mut *mut QsReport,
) -> QsStatus {
    guard(|| {
        let Some(scheme) = scheme.as_ref() else { return null("scheme") };
        if out.is_null() {
            return null("out");
        }
        if !(tolerance.is_finite() && tolerance >= 0.0) {
            return fail(QssError::Input(format!("tolerance must be nonnegative, got {tolerance}")));
        }
        let opts = VerifyOptions { tolerance, fast };
        match verify_scheme(&scheme.0, scheme.0.default_ensemble(), &opts) {
            Ok(report) => {
                let pass = report.overall;
                *out = Box::into_raw(Box::new(QsReport(report)));
                if pass {
                    QsStatus::Ok
                } else {
                    set_error("verification failed");
                    QsStatus::VerdictFailed
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_report_overall(report: *const QsReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.overall)
}

/// `S(S)` in bits; NaN for NULL.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_report_secret_entropy(report: *const QsReport) -> f64 {
    report.as_ref().map_or(f64::NAN, |r| r.0.secret_entropy)
}

/// `I(R:S)` in bits; NaN for NULL.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_report_reference_mutual_information(report: *const QsReport) -> f64 {
    report.as_ref().map_or(f64::NAN, |r| r.0.reference_mutual_information)
}

/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_report_subset_count(report: *const QsReport) -> size_t {
    report.as_ref().map_or(0, |r| r.0.subsets.len())
}

/// `I(R:A)` and verdict of the `index`-th checked coalition.
///
/// # Safety
/// `report` must be a live handle; `mutual_information` and `verdict` must
/// be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_report_subset(
    report: *const QsReport,
    index: size_t,
    mutual_information: *mut f64,
    verdict: *mut bool,
) -> QsStatus {
    guard(|| {
        let Some(report) = report.as_ref() else { return null("report") };
        if mutual_information.is_null() || verdict.is_null() {
            return null("output pointer");
        }
        let Some(rec) = report.0.subsets.get(index) else {
            return fail(QssError::Input(format!("subset index {index} out of range")));
        };
        *mutual_information = rec.mutual_information;
        *verdict = rec.verdict;
        QsStatus::Ok
    })
}

/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_report_coexistence_violation_count(report: *const QsReport) -> size_t {
    report.as_ref().map_or(0, |r| r.0.coexistence_violations.len())
}

/// Pretty JSON of the report; free with [`qs_string_free`]. NULL for NULL.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_report_to_json(report: *const QsReport) -> *mut c_char {
    report.as_ref().map_or(ptr::null_mut(), |r| into_c_string(r.0.to_json()))
}

/// # Safety
/// `report` must be NULL or a handle from [`qs_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qs_report_free(report: *mut QsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Information rate `S(S)/max S(X)` and average rate. Undefined rates (all
/// shares pure) are reported as NaN.
///
/// # Safety
/// `scheme` must be a live handle; `rate` and `average_rate` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_rates(scheme: *const QsScheme, rate: *mut f64, average_rate: *mut f64) -> QsStatus {
    guard(|| {
        let Some(scheme) = scheme.as_ref() else { return null("scheme") };
        if rate.is_null() || average_rate.is_null() {
            return null("output pointer");
        }
        match qshare::rates(&scheme.0, scheme.0.default_ensemble()) {
            Ok(r) => {
                *rate = r.rate.unwrap_or(f64::NAN);
                *average_rate = r.average_rate.unwrap_or(f64::NAN);
                QsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Synthesizes a decoder for the comma-separated coalition and reports its
/// certified fidelity. `VERDICT_FAILED` means recovery is impossible.
///
/// # Safety
/// `scheme` must be a live handle, `subset` a NUL-terminated string and
/// `fidelity` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_recovery_fidelity(
    scheme: *const QsScheme,
    subset: *const c_char,
    tolerance: f64,
    fidelity: *mut f64,
) -> QsStatus {
    guard(|| {
        let Some(scheme) = scheme.as_ref() else { return null("scheme") };
        if fidelity.is_null() {
            return null("fidelity");
        }
        let subset = match str_arg(subset, "subset") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let labels: Vec<&str> = subset.split(',').map(str::trim).collect();
        match synthesize_recovery(&scheme.0, scheme.0.default_ensemble(), &labels, tolerance) {
            Ok(map) => {
                *fidelity = map.fidelity;
                QsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Von Neumann entropy (bits) of a `dim × dim` density matrix given as
/// `2·dim²` doubles, row-major, real and imaginary parts interleaved.
///
/// # Safety
/// `data` must point to `2·dim·dim` readable doubles and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn qs_von_neumann_entropy(data: *const f64, dim: size_t, out: *mut f64) -> QsStatus {
    guard(|| {
        if data.is_null() {
            return null("data");
        }
        if out.is_null() {
            return null("out");
        }
        let Some(len) = dim.checked_mul(dim).and_then(|x| x.checked_mul(2)) else {
            return fail(QssError::Size(format!("dimension {dim} overflows")));
        };
        let raw = std::slice::from_raw_parts(data, len);
        let entries = raw.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect();
        let result = ComplexMatrix::new(dim, dim, entries)
            .and_then(|m| DensityMatrix::single(m, "X"))
            .and_then(|rho| von_neumann_entropy(&rho));
        match result {
            Ok(s) => {
                *out = s;
                QsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Classifies `threshold:t,n`, `vernam` or `sets:A,M|B,M`.
///
/// # Safety
/// `structure` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_classify(structure: *const c_char, out: *mut QsAccessFlags) -> QsStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let spec = match str_arg(structure, "structure") {
            Ok(s) => s,
            Err(s) => return s,
        };
        match parse_structure(spec) {
            Ok(gamma) => {
                let f = gamma.classify();
                *out = QsAccessFlags {
                    monotone_antichain: f.monotone_antichain,
                    quantum_admissible: f.quantum_admissible,
                    complement_closed: f.complement_closed,
                };
                QsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
