//! Exercises the C entry points from Rust. Everything goes through the
//! extern "C" signatures, so pointer discipline and status codes get the
//! same treatment a C caller would give them.

use std::ptr;

use hesstrace_ffi::*;

fn open_field(p: u64, r: u32) -> *mut HtField {
    let mut handle: *mut HtField = ptr::null_mut();
    let st = unsafe { ht_field_new(p, r, &mut handle) };
    assert_eq!(st, HtStatus::Ok);
    assert!(!handle.is_null());
    handle
}

#[test]
fn lifts_over_f7_match_known_values() {
    let f = open_field(7, 1);
    assert_eq!(unsafe { ht_field_order(f) }, 7);
    // n(λ) for λ = 0..6; n(0) = 0 and the cube roots of unity give −1.
    let expected = [0i64, -1, -1, 1, -1, 1, 1];
    for (lam, want) in expected.iter().enumerate() {
        let mut got = 0i64;
        let st = unsafe { ht_hess_2f1(f, lam as u32, &mut got) };
        assert_eq!(st, HtStatus::Ok);
        assert_eq!(got, *want, "lift at λ={lam}");
    }
    let mut buf = [0i64; 7];
    assert_eq!(
        unsafe { ht_hess_2f1_all(f, buf.as_mut_ptr(), buf.len()) },
        HtStatus::Ok
    );
    assert_eq!(buf, expected);
    unsafe { ht_field_free(f) };
}

#[test]
fn traces_cover_all_fibers() {
    let f = open_field(7, 1);
    let mut a = 0i64;
    assert_eq!(unsafe { ht_trace(f, 0, &mut a) }, HtStatus::Ok);
    assert_eq!(a, -1);
    // λ = 3 has λ³ = 27: the fiber is singular.
    assert_eq!(unsafe { ht_trace(f, 3, &mut a) }, HtStatus::SingularCurve);
    assert_eq!(unsafe { ht_trace(f, 7, &mut a) }, HtStatus::BadArgument);
    unsafe { ht_field_free(f) };
}

#[test]
fn status_codes_flag_bad_inputs() {
    let mut handle: *mut HtField = ptr::null_mut();
    assert_eq!(
        unsafe { ht_field_new(6, 1, &mut handle) },
        HtStatus::BadField
    );
    assert_eq!(
        unsafe { ht_field_new(3, 1, &mut handle) },
        HtStatus::BadField
    );
    assert_eq!(
        unsafe { ht_field_new(7, 1, ptr::null_mut()) },
        HtStatus::NullPointer
    );

    // q = 11 has no cubic character, so lifts are refused but traces work.
    let f = open_field(11, 1);
    let mut n = 0i64;
    assert_eq!(
        unsafe { ht_hess_2f1(f, 1, &mut n) },
        HtStatus::NoCubicCharacter
    );
    assert_eq!(unsafe { ht_trace(f, 1, &mut n) }, HtStatus::Ok);
    assert_eq!(
        unsafe { ht_hess_2f1(ptr::null(), 1, &mut n) },
        HtStatus::NullPointer
    );
    let mut short = [0i64; 4];
    assert_eq!(
        unsafe { ht_hess_2f1_all(f, short.as_mut_ptr(), short.len()) },
        HtStatus::BadArgument
    );
    unsafe { ht_field_free(f) };
    unsafe { ht_field_free(ptr::null_mut()) };

    assert_eq!(unsafe { ht_field_order(ptr::null()) }, 0);
}

#[test]
fn class_numbers_round_trip_as_fractions() {
    let (mut num, mut den) = (0i64, 0i64);
    assert_eq!(
        unsafe { ht_hurwitz_h_star(3, &mut num, &mut den) },
        HtStatus::Ok
    );
    assert_eq!((num, den), (1, 3));
    assert_eq!(
        unsafe { ht_hurwitz_h(3, &mut num, &mut den) },
        HtStatus::Ok
    );
    assert_eq!((num, den), (1, 1));
    assert_eq!(
        unsafe { ht_hurwitz_h(0, &mut num, &mut den) },
        HtStatus::Ok
    );
    assert_eq!((num, den), (-1, 12));
    assert_eq!(
        unsafe { ht_hurwitz_h_star(23, &mut num, &mut den) },
        HtStatus::Ok
    );
    assert_eq!((num, den), (3, 1));
    assert_eq!(
        unsafe { ht_hurwitz_h(23, ptr::null_mut(), &mut den) },
        HtStatus::NullPointer
    );
}

#[test]
fn semicircle_cdf_respects_domain() {
    let mut v = 0.0f64;
    assert_eq!(unsafe { ht_semicircle_cdf(0.0, &mut v) }, HtStatus::Ok);
    assert!((v - 0.5).abs() < 1e-12);
    assert_eq!(unsafe { ht_semicircle_cdf(2.0, &mut v) }, HtStatus::Ok);
    assert!((v - 1.0).abs() < 1e-12);
    assert_eq!(
        unsafe { ht_semicircle_cdf(2.5, &mut v) },
        HtStatus::BadArgument
    );
}

#[test]
fn version_string_is_nul_terminated() {
    let p = ht_version();
    assert!(!p.is_null());
    let s = unsafe { std::ffi::CStr::from_ptr(p) };
    assert_eq!(s.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn generated_header_declares_the_surface() {
    let header = include_str!("../include/hesstrace.h");
    for name in [
        "ht_field_new",
        "ht_field_free",
        "ht_field_order",
        "ht_hess_2f1",
        "ht_hess_2f1_all",
        "ht_trace",
        "ht_hurwitz_h",
        "ht_hurwitz_h_star",
        "ht_semicircle_cdf",
        "ht_version",
        "HtStatus",
        "HtField",
    ] {
        assert!(header.contains(name), "header is missing {name}");
    }
}
