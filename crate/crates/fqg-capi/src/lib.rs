//! C ABI for the fqg library.
//!
//! Documents are opaque handles parsed from JSON; analysis calls return
//! JSON report strings allocated by Rust (free with [`fqg_string_free`]).
//! Status codes mirror the CLI exit codes: 0 ok, 1 theorem-verification
//! failure, 2 input/axiom failure, 3 I/O. On failure,
//! [`fqg_last_error`] returns a thread-local description.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::ptr;

use fqg::cli::{self, CliError, ReduceMode, RunOptions, SpecDocument};
use fqg::numkit::ToleranceConfig;

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FqgStatus {
    /// Success; all verified properties hold.
    Ok = 0,
    /// The computation ran but a theorem-level check failed.
    TheoremFailure = 1,
    /// Invalid input: schema, shape, or axiom failure.
    InputError = 2,
    /// Filesystem or encoding problem.
    IoError = 3,
}

/// Opaque parsed input document.
pub struct FqgDocument {
    doc: SpecDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let cstring = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(e: &CliError) -> FqgStatus {
    match e.exit_code() {
        3 => FqgStatus::IoError,
        _ => FqgStatus::InputError,
    }
}

fn options(seed: u64, tol: f64) -> Result<RunOptions, CliError> {
    let tol = if tol > 0.0 {
        ToleranceConfig::uniform(tol).map_err(|e| CliError::Input(e.to_string()))?
    } else {
        ToleranceConfig::default()
    };
    Ok(RunOptions { seed, tol, cache_dir: None })
}

/// Last error message for this thread, or NULL when the previous call
/// succeeded. The pointer is valid until the next fqg call on this thread.
#[no_mangle]
pub extern "C" fn fqg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr())
    })
}

/// # Safety
/// `json` must be a valid NUL-terminated UTF-8 string; `out` must be a
/// valid location to store the handle.
#[no_mangle]
pub unsafe extern "C" fn fqg_document_parse(
    json: *const c_char,
    out: *mut *mut FqgDocument,
) -> FqgStatus {
    clear_last_error();
    if json.is_null() || out.is_null() {
        set_last_error("null pointer argument".into());
        return FqgStatus::InputError;
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_last_error("document is not valid UTF-8".into());
            return FqgStatus::InputError;
        }
    };
    let value: serde_json::Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => {
            set_last_error(format!("invalid JSON: {e}"));
            return FqgStatus::InputError;
        }
    };
    match cli::parse_spec_value(&value) {
        Ok(doc) => {
            *out = Box::into_raw(Box::new(FqgDocument { doc }));
            FqgStatus::Ok
        }
        Err(e) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
    }
}

/// # Safety
/// `path` must be a valid NUL-terminated string naming a readable file;
/// `out` must be a valid location to store the handle.
#[no_mangle]
pub unsafe extern "C" fn fqg_document_load(
    path: *const c_char,
    out: *mut *mut FqgDocument,
) -> FqgStatus {
    clear_last_error();
    if path.is_null() || out.is_null() {
        set_last_error("null pointer argument".into());
        return FqgStatus::InputError;
    }
    let path = match CStr::from_ptr(path).to_str() {
        Ok(p) => p,
        Err(_) => {
            set_last_error("path is not valid UTF-8".into());
            return FqgStatus::InputError;
        }
    };
    match cli::parse_spec(Path::new(path)) {
        Ok(doc) => {
            *out = Box::into_raw(Box::new(FqgDocument { doc }));
            FqgStatus::Ok
        }
        Err(e) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
    }
}

/// # Safety
/// `doc` must be a handle from `fqg_document_parse`/`fqg_document_load`
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn fqg_document_free(doc: *mut FqgDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

unsafe fn emit(
    result: Result<(serde_json::Value, i32), CliError>,
    report_out: *mut *mut c_char,
) -> FqgStatus {
    match result {
        Ok((report, code)) => {
            let rendered = report.to_string();
            let cstring = CString::new(rendered).unwrap_or_default();
            *report_out = cstring.into_raw();
            match code {
                0 => FqgStatus::Ok,
                1 => FqgStatus::TheoremFailure,
                3 => FqgStatus::IoError,
                _ => FqgStatus::InputError,
            }
        }
        Err(e) => {
            set_last_error(e.to_string());
            *report_out = ptr::null_mut();
            status_of(&e)
        }
    }
}

/// Axiom checks only. `tol <= 0` selects the default tolerances.
///
/// # Safety
/// `doc` must be a live document handle and `report_out` a valid location;
/// the returned string must be freed with [`fqg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fqg_verify(
    doc: *const FqgDocument,
    tol: f64,
    report_out: *mut *mut c_char,
) -> FqgStatus {
    clear_last_error();
    if doc.is_null() || report_out.is_null() {
        set_last_error("null pointer argument".into());
        return FqgStatus::InputError;
    }
    let opts = match options(0, tol) {
        Ok(o) => o,
        Err(e) => {
            set_last_error(e.to_string());
            return FqgStatus::InputError;
        }
    };
    emit(cli::cmd_verify(&(*doc).doc, &opts), report_out)
}

/// Hopf axioms, Haar state, and block profile of a quantum group document.
///
/// # Safety
/// As for [`fqg_verify`].
#[no_mangle]
pub unsafe extern "C" fn fqg_analyze_group(
    doc: *const FqgDocument,
    seed: u64,
    tol: f64,
    report_out: *mut *mut c_char,
) -> FqgStatus {
    clear_last_error();
    if doc.is_null() || report_out.is_null() {
        set_last_error("null pointer argument".into());
        return FqgStatus::InputError;
    }
    let opts = match options(seed, tol) {
        Ok(o) => o,
        Err(e) => {
            set_last_error(e.to_string());
            return FqgStatus::InputError;
        }
    };
    emit(cli::cmd_analyze_group(&(*doc).doc, &opts), report_out)
}

/// Coaction flags, isotypical dimensions, and core/kernel decomposition.
///
/// # Safety
/// As for [`fqg_verify`].
#[no_mangle]
pub unsafe extern "C" fn fqg_analyze_action(
    doc: *const FqgDocument,
    seed: u64,
    tol: f64,
    report_out: *mut *mut c_char,
) -> FqgStatus {
    clear_last_error();
    if doc.is_null() || report_out.is_null() {
        set_last_error("null pointer argument".into());
        return FqgStatus::InputError;
    }
    let opts = match options(seed, tol) {
        Ok(o) => o,
        Err(e) => {
            set_last_error(e.to_string());
            return FqgStatus::InputError;
        }
    };
    emit(cli::cmd_analyze_action(&(*doc).doc, &opts), report_out)
}

/// Runs a reduction procedure; `mode` is "minimal", "reduced", or
/// "universal".
///
/// # Safety
/// As for [`fqg_verify`]; `mode` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn fqg_reduce(
    doc: *const FqgDocument,
    mode: *const c_char,
    seed: u64,
    tol: f64,
    report_out: *mut *mut c_char,
) -> FqgStatus {
    clear_last_error();
    if doc.is_null() || mode.is_null() || report_out.is_null() {
        set_last_error("null pointer argument".into());
        return FqgStatus::InputError;
    }
    let mode = match CStr::from_ptr(mode).to_str().map_err(|_| ()).and_then(|m| {
        ReduceMode::parse(m).map_err(|_| ())
    }) {
        Ok(m) => m,
        Err(()) => {
            set_last_error("mode must be minimal, reduced, or universal".into());
            return FqgStatus::InputError;
        }
    };
    let opts = match options(seed, tol) {
        Ok(o) => o,
        Err(e) => {
            set_last_error(e.to_string());
            return FqgStatus::InputError;
        }
    };
    emit(cli::cmd_reduce(&(*doc).doc, mode, &opts), report_out)
}

/// Frees a report string returned by the analysis calls.
///
/// # Safety
/// `s` must have been returned by an fqg call and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fqg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
