use std::ffi::{CStr, CString, c_char};
use std::ptr;

use kanforge_ffi::*;

const EX3_4: &str = include_str!("../../core/fixtures/ex3_4.alg");
const EX2_3: &str = include_str!("../../core/fixtures/ex2_3.alg");

fn parse(text: &str) -> *mut KfAlgebra {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { kf_algebra_parse(c.as_ptr(), &mut out) }, KfStatus::Ok);
    assert!(!out.is_null());
    out
}

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { kf_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(kf_last_error_message()) }.to_str().unwrap().to_string()
}

fn apply(a: *const KfAlgebra, name: &str) -> Result<*mut KfAlgebra, KfStatus> {
    let c = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    match unsafe { kf_apply(a, c.as_ptr(), &mut out) } {
        KfStatus::Ok => Ok(out),
        s => Err(s),
    }
}

#[test]
fn parse_print_round_trip() {
    let a = parse(EX3_4);
    assert_eq!(unsafe { kf_algebra_size(a) }, 8);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { kf_algebra_print(a, &mut text) }, KfStatus::Ok);
    let b = parse(&take_string(text));
    let mut found = false;
    let mut mapping = [usize::MAX; 8];
    let status = unsafe { kf_find_isomorphism(a, b, &mut found, mapping.as_mut_ptr(), mapping.len()) };
    assert_eq!(status, KfStatus::Ok);
    assert!(found);
    assert_eq!(mapping, [0, 1, 2, 3, 4, 5, 6, 7]);
    unsafe {
        kf_algebra_free(a);
        kf_algebra_free(b);
    }
}

#[test]
fn parse_errors_carry_position() {
    let c = CString::new("algebra x\nelements 0 1\norder 0<2\n").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { kf_algebra_parse(c.as_ptr(), &mut out) }, KfStatus::ParseError);
    assert!(out.is_null());
    assert!(last_error().starts_with("line 3"), "{}", last_error());
}

#[test]
fn check_variety_reports_verdict_and_json() {
    let a = parse(EX2_3);
    let v = CString::new("skan").unwrap();
    let mut verdict = true;
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { kf_check_variety(a, v.as_ptr(), &mut verdict, &mut json) }, KfStatus::Ok);
    assert!(!verdict);
    let json = take_string(json);
    assert!(json.contains("\"verdict\": false"), "{json}");

    let v = CString::new("kan").unwrap();
    assert_eq!(unsafe { kf_check_variety(a, v.as_ptr(), &mut verdict, ptr::null_mut()) }, KfStatus::Ok);
    assert!(verdict);

    let v = CString::new("ring").unwrap();
    assert_eq!(unsafe { kf_check_variety(a, v.as_ptr(), &mut verdict, ptr::null_mut()) }, KfStatus::UnknownName);
    unsafe { kf_algebra_free(a) };
}

#[test]
fn monteiro_and_kalman_of_diamond_agree() {
    let t = parse(EX3_4);
    let m = apply(t, "monteiro").unwrap();
    let d = apply(t, "diamond").unwrap();
    let k = apply(d, "kalman").unwrap();
    assert_eq!(unsafe { kf_algebra_size(m) }, 9);
    assert_eq!(unsafe { kf_algebra_size(k) }, 9);
    let mut found = false;
    assert_eq!(unsafe { kf_find_isomorphism(m, k, &mut found, ptr::null_mut(), 0) }, KfStatus::Ok);
    assert!(found);
    let mut short = [0usize; 3];
    assert_eq!(
        unsafe { kf_find_isomorphism(m, k, &mut found, short.as_mut_ptr(), short.len()) },
        KfStatus::BufferTooSmall
    );
    for h in [t, m, d, k] {
        unsafe { kf_algebra_free(h) };
    }
}

#[test]
fn construction_failures_map_to_status() {
    let a = parse(EX2_3);
    assert_eq!(apply(a, "center-slice").unwrap_err(), KfStatus::ConstructionFailed);
    assert!(!last_error().is_empty());
    assert_eq!(apply(a, "origami").unwrap_err(), KfStatus::UnknownName);
    let lattice = parse("algebra l\nelements 0 1\norder 0<1\n");
    assert_eq!(apply(lattice, "monteiro").unwrap_err(), KfStatus::ConstructionFailed);
    assert!(last_error().contains("knot"), "{}", last_error());
    let v = CString::new("kan").unwrap();
    let mut verdict = true;
    let status = unsafe { kf_check_variety(lattice, v.as_ptr(), &mut verdict, ptr::null_mut()) };
    assert_eq!(status, KfStatus::MissingOperation);
    unsafe {
        kf_algebra_free(a);
        kf_algebra_free(lattice);
    }
}

#[test]
fn verify_and_dot() {
    let a = parse(EX3_4);
    let mut passed = false;
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { kf_verify(a, &mut passed, &mut report) }, KfStatus::Ok);
    assert!(passed);
    assert!(take_string(report).starts_with("algebra ex3_4: strongest variety skan\n"));
    assert!(last_error().is_empty());

    let mut dot = ptr::null_mut();
    assert_eq!(unsafe { kf_export_dot(a, &mut dot) }, KfStatus::Ok);
    let dot = take_string(dot);
    assert!(dot.starts_with("digraph \"ex3_4\" {"));
    unsafe { kf_algebra_free(a) };
}

#[test]
fn null_arguments_are_rejected() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { kf_algebra_parse(ptr::null(), &mut out) }, KfStatus::NullPointer);
    assert_eq!(unsafe { kf_algebra_size(ptr::null()) }, 0);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { kf_export_dot(ptr::null(), &mut s) }, KfStatus::NullPointer);
    let mut found = false;
    assert_eq!(
        unsafe { kf_find_isomorphism(ptr::null(), ptr::null(), &mut found, ptr::null_mut(), 0) },
        KfStatus::NullPointer
    );
    unsafe {
        kf_algebra_free(ptr::null_mut());
        kf_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8_is_rejected() {
    let bytes = [0x61u8, 0xff, 0x00];
    let mut out = ptr::null_mut();
    let status = unsafe { kf_algebra_parse(bytes.as_ptr().cast(), &mut out) };
    assert_eq!(status, KfStatus::InvalidUtf8);
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/kanforge.h");
    for name in [
        "kf_algebra_parse",
        "kf_algebra_free",
        "kf_algebra_size",
        "kf_algebra_print",
        "kf_check_variety",
        "kf_apply",
        "kf_find_isomorphism",
        "kf_export_dot",
        "kf_verify",
        "kf_string_free",
        "kf_last_error_message",
        "typedef struct KfAlgebra KfAlgebra",
        "KF_STATUS_PANIC = 9",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
