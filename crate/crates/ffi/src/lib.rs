//! C ABI over the `cellular` crate.
//!
//! Schemes live behind the opaque [`CellularScheme`] handle. Every fallible
//! call returns a [`CellularStatus`] and writes its result through an out
//! pointer; on failure [`cellular_last_error`] describes what went wrong on
//! the calling thread. Strings handed out must be released with
//! [`cellular_string_free`], handles with [`cellular_scheme_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cellular::harness::{verify_scheme, VerifyOptions};
use cellular::radical::{radical_chain, ModularAlgebra, RadicalError};
use cellular::wedderburn::DEFAULT_TOLERANCE;
use cellular::{decompose, frame_number, Configuration, SchemeSpec};

/// Opaque handle to a validated coherent configuration.
pub struct CellularScheme {
    config: Configuration,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellularStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidScheme = 2,
    NotPrime = 3,
    Numeric = 4,
    InvalidArgument = 5,
    Internal = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(CellularStatus, String);

impl Failure {
    fn null(what: &str) -> Self {
        Failure(CellularStatus::NullPointer, format!("{what} is null"))
    }
}

/// Runs `body`, recording any failure or panic for [`cellular_last_error`].
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CellularStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CellularStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CellularStatus::Internal
        }
    }
}

unsafe fn scheme_ref<'a>(scheme: *const CellularScheme) -> Result<&'a Configuration, Failure> {
    scheme.as_ref().map(|s| &s.config).ok_or_else(|| Failure::null("scheme"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    out.write(value);
    Ok(())
}

fn radical_failure(e: RadicalError) -> Failure {
    match e {
        RadicalError::NotPrime(_) => Failure(CellularStatus::NotPrime, e.to_string()),
        _ => Failure(CellularStatus::Internal, e.to_string()),
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Builds a scheme from a row-major `n × n` color matrix.
///
/// # Safety
/// `colors` must point to `n * n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cellular_scheme_from_matrix(
    n: usize,
    colors: *const usize,
    out: *mut *mut CellularScheme,
) -> CellularStatus {
    guard(|| {
        if colors.is_null() {
            return Err(Failure::null("colors"));
        }
        let len = n.checked_mul(n).ok_or_else(|| Failure(CellularStatus::InvalidArgument, "n overflows".into()))?;
        let flat = std::slice::from_raw_parts(colors, len);
        let rows: Vec<&[usize]> = if n == 0 { Vec::new() } else { flat.chunks(n).collect() };
        let config =
            Configuration::from_color_matrix(&rows).map_err(|e| Failure(CellularStatus::InvalidScheme, e.to_string()))?;
        write(out, Box::into_raw(Box::new(CellularScheme { config })))
    })
}

/// Builds a scheme from an id such as `rank2(3)` or `thin-group(Q8)`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cellular_scheme_generate(spec: *const c_char, out: *mut *mut CellularScheme) -> CellularStatus {
    guard(|| {
        if spec.is_null() {
            return Err(Failure::null("spec"));
        }
        let text = CStr::from_ptr(spec)
            .to_str()
            .map_err(|_| Failure(CellularStatus::InvalidArgument, "spec is not UTF-8".into()))?;
        let spec: SchemeSpec = text.parse().map_err(|e| Failure(CellularStatus::InvalidArgument, format!("{e}")))?;
        let config = spec.configuration().map_err(|e| Failure(CellularStatus::InvalidScheme, e.to_string()))?;
        write(out, Box::into_raw(Box::new(CellularScheme { config })))
    })
}

/// # Safety
/// `scheme` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cellular_scheme_free(scheme: *mut CellularScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cellular_scheme_size(scheme: *const CellularScheme, out: *mut usize) -> CellularStatus {
    guard(|| write(out, scheme_ref(scheme)?.size()))
}

/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cellular_scheme_rank(scheme: *const CellularScheme, out: *mut usize) -> CellularStatus {
    guard(|| write(out, scheme_ref(scheme)?.rank()))
}

/// Frame number as a decimal string; free it with [`cellular_string_free`].
///
/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cellular_frame_number(
    scheme: *const CellularScheme,
    seed: u64,
    out: *mut *mut c_char,
) -> CellularStatus {
    guard(|| {
        let config = scheme_ref(scheme)?;
        let wd = decompose(config, seed, DEFAULT_TOLERANCE).map_err(|e| Failure(CellularStatus::Numeric, e.to_string()))?;
        let fr = frame_number(config, &wd).map_err(|e| Failure(CellularStatus::Numeric, e.to_string()))?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        write(out, into_c_string(fr.frame.to_string()))
    })
}

/// Dimension of the radical of the adjacency algebra over `F_p`.
///
/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cellular_radical_dim(scheme: *const CellularScheme, p: u64, out: *mut usize) -> CellularStatus {
    guard(|| {
        let config = scheme_ref(scheme)?;
        let alg = ModularAlgebra::new(config, p).map_err(radical_failure)?;
        write(out, radical_chain(&alg).map_err(radical_failure)?.dim)
    })
}

/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cellular_is_semisimple(scheme: *const CellularScheme, p: u64, out: *mut bool) -> CellularStatus {
    let mut dim = 0usize;
    let status = cellular_radical_dim(scheme, p, &mut dim);
    if status != CellularStatus::Ok {
        return status;
    }
    guard(|| write(out, dim == 0))
}

/// Full verification report as one JSON line. `id` may be null.
///
/// # Safety
/// `scheme` must be a live handle, `id` null or nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cellular_verify_json(
    scheme: *const CellularScheme,
    id: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> CellularStatus {
    guard(|| {
        let config = scheme_ref(scheme)?;
        let id = if id.is_null() {
            "scheme".to_string()
        } else {
            CStr::from_ptr(id).to_string_lossy().into_owned()
        };
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let report = verify_scheme(&id, config, &VerifyOptions { seed, jobs: Some(1), ..VerifyOptions::default() });
        write(out, into_c_string(report.to_json_line()))
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cellular_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn cellular_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
