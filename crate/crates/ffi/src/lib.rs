//! C ABI for khopf.
//!
//! Objects are opaque handles owned by the caller and released with the
//! matching `*_free` function. Every fallible call returns a [`KhopfStatus`];
//! on failure [`khopf_last_error`] describes the problem. Strings returned
//! through out-pointers are NUL-terminated UTF-8 and must be released with
//! [`khopf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use khopf::cli::{factor_poly, run_suite, Factor, Family, Skew, Suite};
use khopf::exactpoly::{TruncPoly, TruncationContext};
use khopf::peakalg::{antipode, convert, coproduct, PeakBasis, PeakElement};
use khopf::qsymbases::expand_in;
use khopf::shapes::PeakComposition;
use khopf::shiftedsym::expand_in_family;
use khopf::KhopfError;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KhopfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidIndex = 4,
    InvalidContext = 5,
    Inadequate = 6,
    ExpansionFailed = 7,
    IdentityViolation = 8,
    Other = 9,
    Panic = 10,
}

/// Output format for string conversions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KhopfFormat {
    Text = 0,
    Json = 1,
}

/// A truncated polynomial in `x_1..x_N` and `beta`.
pub struct KhopfPoly(TruncPoly);

/// A combination of multipeak basis elements.
pub struct KhopfPeak(PeakElement);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &KhopfError) -> KhopfStatus {
    match e {
        KhopfError::Parse(_) => KhopfStatus::Parse,
        KhopfError::InvalidIndex(_) | KhopfError::NotInvariant { .. } => KhopfStatus::InvalidIndex,
        KhopfError::InvalidContext(_) | KhopfError::ContextMismatch(..) => KhopfStatus::InvalidContext,
        KhopfError::Inadequate(_) => KhopfStatus::Inadequate,
        KhopfError::ExpansionFailed { .. } => KhopfStatus::ExpansionFailed,
        KhopfError::IdentityViolation(_) => KhopfStatus::IdentityViolation,
        _ => KhopfStatus::Other,
    }
}

struct Fail(KhopfStatus, String);

impl From<KhopfError> for Fail {
    fn from(e: KhopfError) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Run `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> KhopfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            KhopfStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            KhopfStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(KhopfStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(KhopfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(KhopfStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(KhopfStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(KhopfStatus::NullPointer, "output pointer is null".into()));
    }
    *out = CString::new(s).map_err(|_| Fail(KhopfStatus::Other, "string contains NUL".into()))?.into_raw();
    Ok(())
}

fn index(s: &str) -> Result<Vec<u32>, Fail> {
    Ok(khopf::cli::parse_index(s)?)
}

fn peak_basis(s: &str) -> Result<PeakBasis, Fail> {
    match Family::parse(s)? {
        Family::Peak(b) => Ok(b),
        _ => Err(Fail(KhopfStatus::Parse, format!("{s:?} is not tpeak or opeak"))),
    }
}

/// Message for the most recent failure on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn khopf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn khopf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The library version.
#[no_mangle]
pub extern "C" fn khopf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// A basis element `family[index]` (optionally skew `family[index]/[skew]`)
/// as a polynomial in `n` variables truncated at degree `d`.
///
/// `family` names a symmetric or quasisymmetric family; `index` is written
/// `3,1`, and `""` is the empty index. `skew` may be null.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_poly_basis(
    family: *const c_char,
    idx: *const c_char,
    skew: *const c_char,
    n: usize,
    d: usize,
    out: *mut *mut KhopfPoly,
) -> KhopfStatus {
    guard(|| {
        let family = Family::parse(text(family, "family")?)?;
        let skew = if skew.is_null() { None } else { Some((Skew::Single, index(text(skew, "skew")?)?)) };
        let ctx = TruncationContext::new(n, d)?;
        let f = factor_poly(&Factor { family, index: index(text(idx, "index")?)?, skew }, ctx)?;
        put(out, KhopfPoly(f))
    })
}

/// `a * b`. Both operands must share a truncation context.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_poly_mul(a: *const KhopfPoly, b: *const KhopfPoly, out: *mut *mut KhopfPoly) -> KhopfStatus {
    guard(|| {
        let r = handle(a, "a")?.0.try_mul(&handle(b, "b")?.0)?;
        put(out, KhopfPoly(r))
    })
}

/// `a + b`. Both operands must share a truncation context.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_poly_add(a: *const KhopfPoly, b: *const KhopfPoly, out: *mut *mut KhopfPoly) -> KhopfStatus {
    guard(|| {
        let r = handle(a, "a")?.0.try_add(&handle(b, "b")?.0)?;
        put(out, KhopfPoly(r))
    })
}

/// Whether `p` is zero, written to `out`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_poly_is_zero(p: *const KhopfPoly, out: *mut bool) -> KhopfStatus {
    guard(|| {
        let z = handle(p, "p")?.0.is_zero();
        if out.is_null() {
            return Err(Fail(KhopfStatus::NullPointer, "output pointer is null".into()));
        }
        *out = z;
        Ok(())
    })
}

/// Render `p` as text or JSON.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_poly_to_string(p: *const KhopfPoly, format: KhopfFormat, out: *mut *mut c_char) -> KhopfStatus {
    guard(|| {
        let p = &handle(p, "p")?.0;
        put_string(out, if format == KhopfFormat::Json { p.to_json() } else { p.to_text() })
    })
}

/// Expand `p` in a symmetric or quasisymmetric family, e.g. `"GP"` or `"K"`.
///
/// # Safety
/// `p` must be a live handle; `family` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_poly_expand(
    p: *const KhopfPoly,
    family: *const c_char,
    format: KhopfFormat,
    out: *mut *mut c_char,
) -> KhopfStatus {
    guard(|| {
        let p = &handle(p, "p")?.0;
        let s = match Family::parse(text(family, "family")?)? {
            Family::Sym(t) => {
                let e = expand_in_family(p, t)?;
                if format == KhopfFormat::Json { e.to_json() } else { e.to_text() }
            }
            Family::Qsym(t) => {
                let e = expand_in(p, t)?;
                if format == KhopfFormat::Json { e.to_json() } else { e.to_text() }
            }
            Family::Peak(b) => {
                return Err(Fail(KhopfStatus::InvalidIndex, format!("{} is not a polynomial family", b.name())))
            }
        };
        put_string(out, s)
    })
}

/// Release a polynomial. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn khopf_poly_free(p: *mut KhopfPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// The multipeak basis element `basis[index]`, `basis` being `"tpeak"` or `"opeak"`.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_peak_basis(basis: *const c_char, idx: *const c_char, out: *mut *mut KhopfPeak) -> KhopfStatus {
    guard(|| {
        let b = peak_basis(text(basis, "basis")?)?;
        let alpha = PeakComposition::new(index(text(idx, "index")?)?)?;
        put(out, KhopfPeak(PeakElement::basis_element(b, alpha)))
    })
}

/// `a * b`, computed in the basis of `a`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_peak_mul(a: *const KhopfPeak, b: *const KhopfPeak, out: *mut *mut KhopfPeak) -> KhopfStatus {
    guard(|| {
        let a = &handle(a, "a")?.0;
        let b = convert(&handle(b, "b")?.0, a.basis());
        put(out, KhopfPeak(a.try_mul(&b)?))
    })
}

/// `x` rewritten in `basis`.
///
/// # Safety
/// `x` must be a live handle; `basis` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_peak_convert(x: *const KhopfPeak, basis: *const c_char, out: *mut *mut KhopfPeak) -> KhopfStatus {
    guard(|| {
        let b = peak_basis(text(basis, "basis")?)?;
        put(out, KhopfPeak(convert(&handle(x, "x")?.0, b)))
    })
}

/// The antipode of `x`, in the `tpeak` basis.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_peak_antipode(x: *const KhopfPeak, out: *mut *mut KhopfPeak) -> KhopfStatus {
    guard(|| put(out, KhopfPeak(antipode(&handle(x, "x")?.0)?)))
}

/// The coproduct of `x` in `tpeak ⊗ tpeak`, as text.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_peak_coproduct(x: *const KhopfPeak, out: *mut *mut c_char) -> KhopfStatus {
    guard(|| put_string(out, coproduct(&handle(x, "x")?.0)?.to_text()))
}

/// Render `x` as text, e.g. `2b*P[2,1] + 4*P[3,1]`.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_peak_to_string(x: *const KhopfPeak, out: *mut *mut c_char) -> KhopfStatus {
    guard(|| put_string(out, handle(x, "x")?.0.to_text()))
}

/// Release a multipeak element. Null is ignored.
///
/// # Safety
/// `x` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn khopf_peak_free(x: *mut KhopfPeak) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Run a named identity suite (`"duality"`, `"peak-products"`, ...) at
/// `bound` with `N = D = bound`. Writes the JSON reports to `out` and
/// returns `IdentityViolation` when any instance fails.
///
/// # Safety
/// `suite` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn khopf_verify(suite: *const c_char, bound: u32, seed: u64, out: *mut *mut c_char) -> KhopfStatus {
    guard(|| {
        let name = text(suite, "suite")?;
        let suite: Suite = name.parse()?;
        let b = (bound as usize).max(1);
        let reports = run_suite(suite, bound, TruncationContext::new(b, b)?, seed)?;
        let json = serde_json::to_string(&reports).map_err(KhopfError::from)?;
        let failures: Vec<String> = reports.iter().flat_map(|r| r.failures.iter().cloned()).collect();
        put_string(out, json)?;
        if failures.is_empty() {
            Ok(())
        } else {
            Err(Fail(KhopfStatus::IdentityViolation, failures.join("; ")))
        }
    })
}
