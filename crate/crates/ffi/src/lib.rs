//! C ABI for the hypertoric orbifold cohomology pipeline.
//!
//! The surface is deliberately thin: JSON documents go in, an opaque result
//! handle comes out, and scalar accessors read the headline numbers without
//! re-parsing. Status codes mirror the CLI's exit codes. Strings returned by
//! this library are owned by the caller and must be released with
//! [`hypertoric_string_free`]; results with [`hypertoric_result_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use hypertoric::cli::{self, OutputDocument, PipelineOptions};
use hypertoric::Error;

/// Outcome of a compute call. Mirrors the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypertoricStatus {
    Ok = 0,
    InternalError = 1,
    NullArgument = 2,
    InvalidUtf8 = 3,
    ParseError = 64,
    ValidationError = 65,
    NotSimple = 66,
    OracleMismatch = 70,
    NotFinite = 71,
}

/// Opaque handle to a completed computation.
pub struct HypertoricResult {
    document: OutputDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error message unavailable").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> HypertoricStatus {
    match cli::exit_code(err) {
        64 => HypertoricStatus::ParseError,
        65 => HypertoricStatus::ValidationError,
        66 => HypertoricStatus::NotSimple,
        70 => HypertoricStatus::OracleMismatch,
        71 => HypertoricStatus::NotFinite,
        _ => HypertoricStatus::InternalError,
    }
}

fn leak_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Run the full pipeline on an input JSON document.
///
/// `input_json` is a NUL-terminated UTF-8 document with the same schema the
/// CLI accepts. When `affinize` is true, non-simple offsets are replaced by
/// a seeded random simple affinization (absent offsets are always
/// affinized). When `check_oracle` is true the Poincaré polynomial is
/// cross-checked degree by degree.
///
/// On success writes a fresh handle to `out_result` and returns `Ok`. On
/// failure leaves `out_result` untouched, returns the error status, and
/// stores a message retrievable via [`hypertoric_last_error_message`].
///
/// # Safety
/// `input_json` must point to a valid NUL-terminated string and
/// `out_result` to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn hypertoric_compute_json(
    input_json: *const c_char,
    affinize: bool,
    check_oracle: bool,
    out_result: *mut *mut HypertoricResult,
) -> HypertoricStatus {
    if input_json.is_null() || out_result.is_null() {
        set_last_error("null argument".into());
        return HypertoricStatus::NullArgument;
    }
    let text = match CStr::from_ptr(input_json).to_str() {
        Ok(text) => text,
        Err(_) => {
            set_last_error("input is not valid UTF-8".into());
            return HypertoricStatus::InvalidUtf8;
        }
    };
    let opts = PipelineOptions {
        affinize,
        check_oracle,
        ..Default::default()
    };
    match cli::run_on_json(text, &opts) {
        Ok(outcome) => {
            clear_last_error();
            let handle = Box::new(HypertoricResult {
                document: outcome.document,
            });
            *out_result = Box::into_raw(handle);
            HypertoricStatus::Ok
        }
        Err(err) => {
            let status = status_of(&err);
            set_last_error(err.to_string());
            status
        }
    }
}

/// Serialized output document. Caller frees with [`hypertoric_string_free`];
/// returns NULL on a NULL handle.
///
/// # Safety
/// `result` must be NULL or a handle from [`hypertoric_compute_json`].
#[no_mangle]
pub unsafe extern "C" fn hypertoric_result_json(
    result: *const HypertoricResult,
) -> *mut c_char {
    if result.is_null() {
        return ptr::null_mut();
    }
    leak_string((*result).document.to_json())
}

/// Human-readable report with the same numbers as the JSON. Caller frees
/// with [`hypertoric_string_free`]; returns NULL on a NULL handle.
///
/// # Safety
/// `result` must be NULL or a handle from [`hypertoric_compute_json`].
#[no_mangle]
pub unsafe extern "C" fn hypertoric_result_report(
    result: *const HypertoricResult,
) -> *mut c_char {
    if result.is_null() {
        return ptr::null_mut();
    }
    leak_string((*result).document.render_report())
}

/// Orbifold Euler characteristic, or -1 on a NULL handle.
///
/// # Safety
/// `result` must be NULL or a handle from [`hypertoric_compute_json`].
#[no_mangle]
pub unsafe extern "C" fn hypertoric_result_euler_characteristic(
    result: *const HypertoricResult,
) -> i64 {
    if result.is_null() {
        return -1;
    }
    (*result).document.euler_characteristic() as i64
}

/// Coefficient of the Poincaré polynomial at the given degree (0 where the
/// polynomial is unsupported), or -1 on a NULL handle.
///
/// # Safety
/// `result` must be NULL or a handle from [`hypertoric_compute_json`].
#[no_mangle]
pub unsafe extern "C" fn hypertoric_result_poincare_coefficient(
    result: *const HypertoricResult,
    degree: u64,
) -> i64 {
    if result.is_null() {
        return -1;
    }
    (*result).document.poincare_coefficient(degree) as i64
}

/// Order of the finite stabilizer group, or -1 on a NULL handle.
///
/// # Safety
/// `result` must be NULL or a handle from [`hypertoric_compute_json`].
#[no_mangle]
pub unsafe extern "C" fn hypertoric_result_group_order(
    result: *const HypertoricResult,
) -> i64 {
    if result.is_null() {
        return -1;
    }
    (*result).document.group_order() as i64
}

/// Message of the last error on this thread, or NULL when the last call
/// succeeded. Caller frees with [`hypertoric_string_free`].
#[no_mangle]
pub extern "C" fn hypertoric_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|c| c.clone().into_raw())
            .unwrap_or(ptr::null_mut())
    })
}

/// Library version string; static storage, do not free.
#[no_mangle]
pub extern "C" fn hypertoric_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Release a result handle. NULL is a no-op.
///
/// # Safety
/// `result` must be NULL or an unfreed handle from
/// [`hypertoric_compute_json`].
#[no_mangle]
pub unsafe extern "C" fn hypertoric_result_free(result: *mut HypertoricResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Release a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or an unfreed string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hypertoric_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
