use std::ffi::{CStr, CString};
use std::ptr;

use satposet_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { satposet_string_free(p) };
    s
}

fn last_error() -> String {
    let p = satposet_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn construction_is_saturated() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(satposet_construct(SatposetConstruction::Butterfly, 4, 0, &mut f), SatposetStatus::Ok);
        assert_eq!(satposet_family_len(f), 13);
        assert_eq!(satposet_family_ground(f), 4);
        let q = satposet_poset_butterfly();
        assert_eq!(satposet_poset_size(q), 4);

        let mut free = false;
        assert_eq!(satposet_is_free(f, q, &mut free), SatposetStatus::Ok);
        assert!(free);
        let mut json = ptr::null_mut();
        assert_eq!(satposet_saturation_report_json(f, q, false, &mut json), SatposetStatus::Ok);
        assert!(take_string(json).contains("\"saturated\":true"));

        let mut bits = 99;
        assert_eq!(satposet_family_member(f, 0, &mut bits), SatposetStatus::Ok);
        assert_eq!(bits, 0);
        assert_eq!(satposet_family_member(f, 13, &mut bits), SatposetStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));

        satposet_family_free(f);
        satposet_poset_free(q);
    }
}

#[test]
fn parse_find_and_greedy() {
    unsafe {
        let text = CString::new("{1}\n{2}\n{1,2,3}\n{1,2,4}\n").unwrap();
        let mut f = ptr::null_mut();
        assert_eq!(satposet_family_parse(text.as_ptr(), 0, &mut f), SatposetStatus::Ok);
        let q = satposet_poset_butterfly();
        let mut json = ptr::null_mut();
        assert_eq!(satposet_find_copy_json(f, q, &mut json), SatposetStatus::Ok);
        assert!(take_string(json).contains("\"poset_element\":\"t1\""));

        let mut out = ptr::null_mut();
        assert_eq!(satposet_greedy_saturate(f, q, &mut out), SatposetStatus::InvalidArgument);
        assert!(out.is_null());
        satposet_family_free(f);

        let empty = [0u32; 0];
        let mut seed = ptr::null_mut();
        assert_eq!(satposet_family_from_bits(4, empty.as_ptr(), 0, &mut seed), SatposetStatus::Ok);
        assert_eq!(satposet_greedy_saturate(seed, q, &mut out), SatposetStatus::Ok);
        let mut txt = ptr::null_mut();
        assert_eq!(satposet_family_to_text(out, &mut txt), SatposetStatus::Ok);
        assert_eq!(take_string(txt).lines().count(), satposet_family_len(out));

        let mut report = ptr::null_mut();
        assert_eq!(satposet_verify_json(out, SatposetTheorem::Theorem2, &mut report), SatposetStatus::Ok);
        assert!(take_string(report).contains("\"passed\":true"));

        satposet_family_free(seed);
        satposet_family_free(out);
        satposet_poset_free(q);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut f = ptr::null_mut();
        let bad = CString::new("{1,2\n").unwrap();
        assert_eq!(satposet_family_parse(bad.as_ptr(), 0, &mut f), SatposetStatus::ParseError);
        assert!(f.is_null());
        assert_eq!(satposet_family_parse(ptr::null(), 0, &mut f), SatposetStatus::NullArgument);

        let mut q = ptr::null_mut();
        let cyclic = CString::new(r#"{"size": 2, "less": [[0, 1], [1, 0]]}"#).unwrap();
        assert_eq!(satposet_poset_from_json(cyclic.as_ptr(), &mut q), SatposetStatus::InvalidPoset);
        assert!(last_error().contains("antisymmetry"));

        assert_eq!(satposet_construct(SatposetConstruction::Kkk, 4, 3, &mut f), SatposetStatus::InvalidArgument);
        assert_eq!(satposet_poset_complete_bipartite(2, 3, &mut q), SatposetStatus::Ok);
        assert_eq!(satposet_poset_size(q), 5);
        satposet_poset_free(q);

        assert_eq!(satposet_family_len(ptr::null()), 0);
        satposet_family_free(ptr::null_mut());
        satposet_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/satposet.h");
    for name in [
        "satposet_family_parse",
        "satposet_saturation_report_json",
        "satposet_verify_json",
        "satposet_last_error",
        "SATPOSET_STATUS_CONTRACT_VIOLATION",
        "typedef struct SatposetFamily SatposetFamily;",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
