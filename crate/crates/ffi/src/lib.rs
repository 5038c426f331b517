//! C ABI over the `seshadri` crate.
//!
//! Conventions:
//! - Every fallible function returns a [`SeshadriStatus`] and writes its
//!   result through an out-pointer. On failure the out-pointer is untouched
//!   and [`seshadri_last_error_message`] describes the error.
//! - Strings returned to the caller are owned by the caller and must be
//!   released with [`seshadri_string_free`].
//! - Radicals are opaque handles released with [`seshadri_radical_free`].
//! - Panics never cross the boundary; they surface as `SESHADRI_STATUS_PANIC`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};

use seshadri::cli::{
    cmd_abelian, cmd_reproduce_paper, cmd_scan_floor, cmd_scan_violation, cmd_surface,
    verify_document, AbelianKind, CertificateDocument, CliError,
};
use seshadri::{canonicalize, isqrt, rad_cmp, rad_pow, Radical, Rational};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeshadriStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A number or JSON document could not be parsed.
    Parse = 3,
    /// Inputs outside the supported domain, including exceeded scan caps.
    Domain = 4,
    /// A certificate or document failed verification.
    VerificationFailed = 5,
    Panic = 6,
}

/// Opaque handle to an exact radical `radicand^(1/index)`.
pub struct SeshadriRadical(Radical);

struct Failure(SeshadriStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e {
            CliError::VerificationFailed(_) => SeshadriStatus::VerificationFailed,
            CliError::Json(_) => SeshadriStatus::Parse,
            _ => SeshadriStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', "?")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SeshadriStatus {
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(Failure(SeshadriStatus::Panic, msg))
    });
    match outcome {
        Ok(()) => {
            set_last_error("");
            SeshadriStatus::Ok
        }
        Err(Failure(status, msg)) => {
            set_last_error(&msg);
            status
        }
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(
            SeshadriStatus::NullArgument,
            format!("{what} is null"),
        ))
    } else {
        Ok(())
    }
}

/// # Safety
/// `p` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    non_null(p, what)?;
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SeshadriStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `out` must be valid for writes.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s)
        .map_err(|_| Failure(SeshadriStatus::Panic, "output contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// # Safety
/// `out` must be valid for writes.
unsafe fn write_document(
    out: *mut *mut c_char,
    doc: Result<CertificateDocument, CliError>,
) -> Result<(), Failure> {
    non_null(out, "out")?;
    let text = doc?.require_verified()?.to_json_string()?;
    write_string(out, text)
}

fn domain(msg: impl ToString) -> Failure {
    Failure(SeshadriStatus::Domain, msg.to_string())
}

/// Error message from the most recent call on this thread, or `""` if it
/// succeeded.
///
/// The pointer stays valid until the next call into this library on the
/// same thread. Do not free it.
#[no_mangle]
pub extern "C" fn seshadri_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn seshadri_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the canonical radical `radicand^(1/index)`. `radicand` is a
/// decimal rational such as `"6/7"` or `"12"`.
///
/// # Safety
/// `radicand` must be a valid nul-terminated string and `out` valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn seshadri_radical_new(
    radicand: *const c_char,
    index: u32,
    out: *mut *mut SeshadriRadical,
) -> SeshadriStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = read_str(radicand, "radicand")?;
        let r: Rational = text.parse().map_err(|e: seshadri::arith::ArithError| {
            Failure(SeshadriStatus::Parse, e.to_string())
        })?;
        let rad = canonicalize(r, index).map_err(domain)?;
        *out = Box::into_raw(Box::new(SeshadriRadical(rad)));
        Ok(())
    })
}

/// Releases a radical. Null is a no-op.
///
/// # Safety
/// `r` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn seshadri_radical_free(r: *mut SeshadriRadical) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Index of the canonical form, or 0 if `r` is null.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn seshadri_radical_index(r: *const SeshadriRadical) -> u32 {
    r.as_ref().map_or(0, |r| r.0.index())
}

/// Writes -1, 0 or 1 as `a` is less than, equal to or greater than `b`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn seshadri_radical_cmp(
    a: *const SeshadriRadical,
    b: *const SeshadriRadical,
    out: *mut i32,
) -> SeshadriStatus {
    guard(|| {
        non_null(a, "a")?;
        non_null(b, "b")?;
        non_null(out, "out")?;
        *out = match rad_cmp(&(*a).0, &(*b).0) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        Ok(())
    })
}

/// `r^k` as a new handle.
///
/// # Safety
/// `r` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn seshadri_radical_pow(
    r: *const SeshadriRadical,
    k: u32,
    out: *mut *mut SeshadriRadical,
) -> SeshadriStatus {
    guard(|| {
        non_null(r, "r")?;
        non_null(out, "out")?;
        *out = Box::into_raw(Box::new(SeshadriRadical(rad_pow(&(*r).0, k))));
        Ok(())
    })
}

/// Exact text form, e.g. `"sqrt(6/7)"`. Free with [`seshadri_string_free`].
///
/// # Safety
/// `r` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn seshadri_radical_to_string(
    r: *const SeshadriRadical,
    out: *mut *mut c_char,
) -> SeshadriStatus {
    guard(|| {
        non_null(r, "r")?;
        non_null(out, "out")?;
        write_string(out, (*r).0.to_string())
    })
}

/// Floating-point approximation, for display only.
///
/// # Safety
/// `r` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn seshadri_radical_approx(
    r: *const SeshadriRadical,
    out: *mut f64,
) -> SeshadriStatus {
    guard(|| {
        non_null(r, "r")?;
        non_null(out, "out")?;
        *out = (*r).0.approx();
        Ok(())
    })
}

/// `floor(sqrt(n))` for a nonnegative decimal integer of any size.
///
/// # Safety
/// `n` must be a valid nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn seshadri_isqrt(n: *const c_char, out: *mut *mut c_char) -> SeshadriStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = read_str(n, "n")?;
        let n = text.trim().parse().map_err(|_| {
            Failure(
                SeshadriStatus::Parse,
                format!("not a nonnegative integer: {text:?}"),
            )
        })?;
        write_string(out, isqrt(&n).to_string())
    })
}

/// Certificate document for a Picard-rank-one surface with `L^2 = l2`.
/// `alpha = 0` selects the default `floor(sqrt(l2))`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn seshadri_surface_json(
    l2: u64,
    alpha: u64,
    out: *mut *mut c_char,
) -> SeshadriStatus {
    guard(|| write_document(out, cmd_surface(l2, (alpha != 0).then_some(alpha))))
}

/// Abelian bound document. `kind` is `"hyperelliptic"`, `"general"` or
/// `"ppas-exact"`.
///
/// # Safety
/// `kind` must be a valid nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn seshadri_abelian_json(
    g: u32,
    kind: *const c_char,
    out: *mut *mut c_char,
) -> SeshadriStatus {
    guard(|| {
        let text = read_str(kind, "kind")?;
        let kind =
            AbelianKind::parse(text).ok_or_else(|| domain(format!("unknown kind {text:?}")))?;
        write_document(out, cmd_abelian(g, kind))
    })
}

/// Floor-bound scan document for `nu` in `[from, to]`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn seshadri_scan_floor_json(
    from: u64,
    to: u64,
    cap: u64,
    out: *mut *mut c_char,
) -> SeshadriStatus {
    guard(|| write_document(out, cmd_scan_floor(from, to, u128::from(cap))))
}

/// Violation scan document over `1..=dmax` by `1..=mmax`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn seshadri_scan_violation_json(
    l2: u64,
    alpha: u64,
    dmax: u64,
    mmax: u64,
    cap: u64,
    out: *mut *mut c_char,
) -> SeshadriStatus {
    guard(|| {
        write_document(
            out,
            cmd_scan_violation(l2, alpha, dmax, mmax, u128::from(cap)),
        )
    })
}

/// The full table of headline values.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn seshadri_reproduce_json(out: *mut *mut c_char) -> SeshadriStatus {
    guard(|| write_document(out, cmd_reproduce_paper()))
}

/// Re-verifies a certificate document produced by any `*_json` function or
/// the command-line tool.
///
/// # Safety
/// `document` must be a valid nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn seshadri_verify_json(document: *const c_char) -> SeshadriStatus {
    guard(|| {
        let text = read_str(document, "document")?;
        let doc: CertificateDocument = serde_json::from_str(text).map_err(CliError::from)?;
        verify_document(&doc)?;
        Ok(())
    })
}
