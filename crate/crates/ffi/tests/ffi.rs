use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use khopf_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    khopf_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(khopf_last_error()).to_str().unwrap().to_owned() }
}

unsafe fn poly(family: &str, idx: &str, n: usize, d: usize) -> *mut KhopfPoly {
    let mut p = ptr::null_mut();
    let s = khopf_poly_basis(c(family).as_ptr(), c(idx).as_ptr(), ptr::null(), n, d, &mut p);
    assert_eq!(s, KhopfStatus::Ok, "{}", last_error());
    p
}

unsafe fn peak(basis: &str, idx: &str) -> *mut KhopfPeak {
    let mut p = ptr::null_mut();
    let s = khopf_peak_basis(c(basis).as_ptr(), c(idx).as_ptr(), &mut p);
    assert_eq!(s, KhopfStatus::Ok, "{}", last_error());
    p
}

#[test]
fn gq32_expands_in_gp() {
    unsafe {
        let gq = poly("GQ", "3,2", 7, 7);
        let mut out = ptr::null_mut();
        assert_eq!(khopf_poly_expand(gq, c("GP").as_ptr(), KhopfFormat::Text, &mut out), KhopfStatus::Ok);
        assert_eq!(take(out), "4*GP[3,2] + 2b*GP[4,2] - b^2*GP[4,3]");
        khopf_poly_free(gq);
    }
}

#[test]
fn arithmetic_on_handles() {
    unsafe {
        let a = poly("GP", "1", 3, 3);
        let mut sq = ptr::null_mut();
        assert_eq!(khopf_poly_mul(a, a, &mut sq), KhopfStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(khopf_poly_expand(sq, c("GP").as_ptr(), KhopfFormat::Text, &mut text), KhopfStatus::Ok);
        let s = take(text);
        assert!(s.contains("GP[2]"), "{s}");

        let mut sum = ptr::null_mut();
        assert_eq!(khopf_poly_add(a, sq, &mut sum), KhopfStatus::Ok);
        let mut zero = true;
        assert_eq!(khopf_poly_is_zero(sum, &mut zero), KhopfStatus::Ok);
        assert!(!zero);

        let mut json = ptr::null_mut();
        assert_eq!(khopf_poly_to_string(a, KhopfFormat::Json, &mut json), KhopfStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert!(v.is_object() || v.is_array());

        let b = poly("GP", "1", 4, 3);
        let mut bad = ptr::null_mut();
        assert_eq!(khopf_poly_mul(a, b, &mut bad), KhopfStatus::InvalidContext);
        assert!(bad.is_null());
        for p in [a, b, sq, sum] {
            khopf_poly_free(p);
        }
    }
}

#[test]
fn empty_index_is_one() {
    unsafe {
        let k = poly("K", "", 2, 2);
        let mut s = ptr::null_mut();
        assert_eq!(khopf_poly_to_string(k, KhopfFormat::Text, &mut s), KhopfStatus::Ok);
        assert_eq!(take(s), "1");
        khopf_poly_free(k);
    }
}

#[test]
fn peak_conversion_and_products() {
    unsafe {
        let q = peak("opeak", "3,1");
        let mut p = ptr::null_mut();
        assert_eq!(khopf_peak_convert(q, c("tpeak").as_ptr(), &mut p), KhopfStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(khopf_peak_to_string(p, &mut s), KhopfStatus::Ok);
        assert_eq!(take(s), "2b*P[2,1] + 4*P[3,1]");

        let one = peak("tpeak", "1");
        let mut prod = ptr::null_mut();
        assert_eq!(khopf_peak_mul(one, one, &mut prod), KhopfStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(khopf_peak_to_string(prod, &mut s), KhopfStatus::Ok);
        assert!(!take(s).is_empty());

        let mut anti = ptr::null_mut();
        assert_eq!(khopf_peak_antipode(one, &mut anti), KhopfStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(khopf_peak_to_string(anti, &mut s), KhopfStatus::Ok);
        assert!(take(s).starts_with('-'));

        let mut cop = ptr::null_mut();
        assert_eq!(khopf_peak_coproduct(one, &mut cop), KhopfStatus::Ok);
        assert!(take(cop).contains('⊗'));

        for x in [q, p, one, prod, anti] {
            khopf_peak_free(x);
        }
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut p = ptr::null_mut();
        let s = khopf_poly_basis(c("nope").as_ptr(), c("1").as_ptr(), ptr::null(), 2, 2, &mut p);
        assert_eq!(s, KhopfStatus::Parse);
        assert!(p.is_null());
        assert!(last_error().contains("nope"));

        let s = khopf_poly_basis(ptr::null(), c("1").as_ptr(), ptr::null(), 2, 2, &mut p);
        assert_eq!(s, KhopfStatus::NullPointer);

        let s = khopf_poly_basis(c("GP").as_ptr(), c("1,2").as_ptr(), ptr::null(), 3, 3, &mut p);
        assert_eq!(s, KhopfStatus::InvalidIndex, "{}", last_error());

        let s = khopf_poly_basis(c("GP").as_ptr(), c("1").as_ptr(), ptr::null(), 2, 2, ptr::null_mut());
        assert_eq!(s, KhopfStatus::NullPointer);

        let bytes = [0xffu8, 0];
        let s = khopf_poly_basis(bytes.as_ptr().cast(), c("1").as_ptr(), ptr::null(), 2, 2, &mut p);
        assert_eq!(s, KhopfStatus::InvalidUtf8);

        let mut x = ptr::null_mut();
        assert_eq!(khopf_peak_basis(c("GP").as_ptr(), c("1").as_ptr(), &mut x), KhopfStatus::Parse);

        let ok = poly("GP", "1", 2, 2);
        assert!(last_error().is_empty());
        khopf_poly_free(ok);

        // freeing null is a no-op
        khopf_poly_free(ptr::null_mut());
        khopf_peak_free(ptr::null_mut());
        khopf_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_returns_reports() {
    unsafe {
        let mut out = ptr::null_mut();
        let s = khopf_verify(c("duality").as_ptr(), 3, 0, &mut out);
        assert_eq!(s, KhopfStatus::Ok, "{}", last_error());
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);

        let s = khopf_verify(c("bogus").as_ptr(), 3, 0, &mut out);
        assert_eq!(s, KhopfStatus::Parse);
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(khopf_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/khopf.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "khopf_last_error",
        "khopf_string_free",
        "khopf_version",
        "khopf_poly_basis",
        "khopf_poly_mul",
        "khopf_poly_add",
        "khopf_poly_is_zero",
        "khopf_poly_to_string",
        "khopf_poly_expand",
        "khopf_poly_free",
        "khopf_peak_basis",
        "khopf_peak_mul",
        "khopf_peak_convert",
        "khopf_peak_antipode",
        "khopf_peak_coproduct",
        "khopf_peak_to_string",
        "khopf_peak_free",
        "khopf_verify",
        "typedef struct KhopfPoly KhopfPoly",
        "typedef struct KhopfPeak KhopfPeak",
        "KHOPF_STATUS_PANIC = 10",
        "KHOPF_FORMAT_JSON = 1",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

/// Compile and run a small C program against the header and static library.
/// Skipped when no C compiler or static library is available.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libkhopf_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/c/smoke.c");
    let tmp = tempfile::tempdir().unwrap();
    let bin = tmp.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines, ["4*GP[3,2] + 2b*GP[4,2] - b^2*GP[4,3]", "2b*P[2,1] + 4*P[3,1]", "3 message"]);
}
