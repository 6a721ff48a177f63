//! C ABI for kanforge.
//!
//! Algebras cross the boundary as opaque `KfAlgebra` handles. Every call
//! returns a `KfStatus`; on failure a message is available from
//! `kf_last_error_message` on the same thread. Strings handed out by the
//! library are owned by the caller and released with `kf_string_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString, c_char};
use std::panic::{AssertUnwindSafe, catch_unwind};
use std::ptr;

use kanforge::constructions::{Construction, ConstructionError};
use kanforge::morphisms::{Signature, find_isomorphism};
use kanforge::varieties::{Variety, check_variety};
use kanforge::verify::verify;
use kanforge::{Algebra, AlgebraError, io};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KfStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The algebra text did not parse.
    ParseError = 3,
    /// Unknown variety or construction name.
    UnknownName = 4,
    /// The algebra lacks an operation the call needs.
    MissingOperation = 5,
    /// A construction's precondition does not hold.
    ConstructionFailed = 6,
    /// An output buffer is too short.
    BufferTooSmall = 7,
    /// Any other error.
    Internal = 8,
    /// The library panicked. The handles passed in should not be reused.
    Panic = 9,
}

/// Opaque algebra handle.
pub struct KfAlgebra {
    inner: Algebra,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let mut bytes = msg.into().into_bytes();
    bytes.retain(|&b| b != 0);
    let s = CString::new(bytes).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

struct Failure(KfStatus, String);

impl Failure {
    fn new(status: KfStatus, msg: impl std::fmt::Display) -> Self {
        Failure(status, msg.to_string())
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        let status = match e {
            AlgebraError::MissingOperation(_) | AlgebraError::MissingCenter => KfStatus::MissingOperation,
            _ => KfStatus::Internal,
        };
        Failure::new(status, e)
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        let status = match e {
            ConstructionError::Algebra(AlgebraError::MissingOperation(_)) => KfStatus::MissingOperation,
            _ => KfStatus::ConstructionFailed,
        };
        Failure::new(status, e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            KfStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("panic: {msg}"));
            KfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(KfStatus::NullPointer, format!("{what} is null")));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|e| Failure::new(KfStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn algebra_arg<'a>(p: *const KfAlgebra, what: &str) -> Result<&'a Algebra, Failure> {
    unsafe { p.as_ref() }
        .map(|h| &h.inner)
        .ok_or_else(|| Failure::new(KfStatus::NullPointer, format!("{what} is null")))
}

fn null_out(what: &str) -> Failure {
    Failure::new(KfStatus::NullPointer, format!("{what} is null"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) {
    if !out.is_null() {
        unsafe { *out = into_c_string(s) };
    }
}

unsafe fn write_algebra(out: *mut *mut KfAlgebra, a: Algebra) {
    unsafe { *out = Box::into_raw(Box::new(KfAlgebra { inner: a })) };
}

/// Parses an algebra from its text form.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn kf_algebra_parse(text: *const c_char, out: *mut *mut KfAlgebra) -> KfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        let text = unsafe { str_arg(text, "text") }?;
        let a = io::parse(text).map_err(|e| Failure::new(KfStatus::ParseError, e))?;
        unsafe { write_algebra(out, a) };
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `a` must come from this library and not be freed twice.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn kf_algebra_free(a: *mut KfAlgebra) {
    if !a.is_null() {
        drop(unsafe { Box::from_raw(a) });
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn kf_algebra_size(a: *const KfAlgebra) -> usize {
    unsafe { a.as_ref() }.map_or(0, |h| h.inner.len())
}

/// Renders the algebra in the text format accepted by `kf_algebra_parse`.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn kf_algebra_print(a: *const KfAlgebra, out: *mut *mut c_char) -> KfStatus {
    guard(|| {
        let a = unsafe { algebra_arg(a, "algebra") }?;
        if out.is_null() {
            return Err(null_out("out"));
        }
        unsafe { write_string(out, io::print(a)) };
        Ok(())
    })
}

/// Checks `a` against the named variety. `verdict` receives the result;
/// `json_out`, when not null, receives the full report as JSON.
///
/// # Safety
/// Pointers must be valid; `json_out` may be null.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn kf_check_variety(
    a: *const KfAlgebra,
    variety: *const c_char,
    verdict: *mut bool,
    json_out: *mut *mut c_char,
) -> KfStatus {
    guard(|| {
        let a = unsafe { algebra_arg(a, "algebra") }?;
        let name = unsafe { str_arg(variety, "variety") }?;
        if verdict.is_null() {
            return Err(null_out("verdict"));
        }
        let v: Variety = name.parse().map_err(|e| Failure::new(KfStatus::UnknownName, e))?;
        let report = check_variety(a, v)?;
        unsafe {
            *verdict = report.verdict;
            write_string(json_out, report.to_json());
        }
        Ok(())
    })
}

/// Builds a derived algebra: `kalman`, `monteiro`, `center-slice`,
/// `diamond`, `box` or `theta`.
///
/// # Safety
/// Pointers must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn kf_apply(
    a: *const KfAlgebra,
    construction: *const c_char,
    out: *mut *mut KfAlgebra,
) -> KfStatus {
    guard(|| {
        let a = unsafe { algebra_arg(a, "algebra") }?;
        let name = unsafe { str_arg(construction, "construction") }?;
        if out.is_null() {
            return Err(null_out("out"));
        }
        let c: Construction = name.parse().map_err(|e| Failure::new(KfStatus::UnknownName, e))?;
        let built = c.apply(a)?;
        unsafe { write_algebra(out, built.algebra) };
        Ok(())
    })
}

/// Searches for an isomorphism over every symbol both algebras carry.
/// On success `found` tells whether one exists; if so, `mapping[i]` is the
/// index of the image of element `i`. `mapping` may be null to only test,
/// otherwise it must hold at least `kf_algebra_size(a)` entries.
///
/// # Safety
/// Pointers must be valid and `mapping` must hold `mapping_len` entries.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn kf_find_isomorphism(
    a: *const KfAlgebra,
    b: *const KfAlgebra,
    found: *mut bool,
    mapping: *mut usize,
    mapping_len: usize,
) -> KfStatus {
    guard(|| {
        let a = unsafe { algebra_arg(a, "first algebra") }?;
        let b = unsafe { algebra_arg(b, "second algebra") }?;
        if found.is_null() {
            return Err(null_out("found"));
        }
        if !mapping.is_null() && mapping_len < a.len() {
            return Err(Failure::new(
                KfStatus::BufferTooSmall,
                format!("mapping holds {mapping_len} entries, need {}", a.len()),
            ));
        }
        let m = find_isomorphism(a, b, Signature::common(a, b)).map_err(|e| Failure::new(KfStatus::Internal, e))?;
        unsafe { *found = m.is_some() };
        if let (Some(m), false) = (m, mapping.is_null()) {
            let dst = unsafe { std::slice::from_raw_parts_mut(mapping, a.len()) };
            dst.copy_from_slice(m.mapping());
        }
        Ok(())
    })
}

/// Renders the Hasse diagram in DOT.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn kf_export_dot(a: *const KfAlgebra, out: *mut *mut c_char) -> KfStatus {
    guard(|| {
        let a = unsafe { algebra_arg(a, "algebra") }?;
        if out.is_null() {
            return Err(null_out("out"));
        }
        unsafe { write_string(out, io::export_dot(a)) };
        Ok(())
    })
}

/// Runs the theorem battery. `passed` receives the overall result;
/// `report_out`, when not null, receives the text report.
///
/// # Safety
/// Pointers must be valid; `report_out` may be null.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn kf_verify(a: *const KfAlgebra, passed: *mut bool, report_out: *mut *mut c_char) -> KfStatus {
    guard(|| {
        let a = unsafe { algebra_arg(a, "algebra") }?;
        if passed.is_null() {
            return Err(null_out("passed"));
        }
        let r = verify(a);
        unsafe {
            *passed = r.passed();
            write_string(report_out, r.to_string());
        }
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn kf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message for the last failed call on this thread, empty after a
/// successful one. The pointer stays valid until the next call.
#[unsafe(no_mangle)]
pub extern "C" fn kf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
