use std::ffi::{c_char, CStr, CString};
use std::ptr;

use sumset_ramsey_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    sr_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = sr_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_string()
}

unsafe fn group(spec: &str) -> *mut SrGroup {
    let mut g = ptr::null_mut();
    assert_eq!(sr_group_parse(cs(spec).as_ptr(), &mut g), SrStatus::Ok);
    g
}

unsafe fn coloring(g: *const SrGroup, text: &str, bound: u64) -> *mut SrColoring {
    let mut c = ptr::null_mut();
    assert_eq!(sr_coloring_parse(g, cs(text).as_ptr(), bound, &mut c), SrStatus::Ok);
    c
}

#[test]
fn counterexample_pair_through_the_c_abi() {
    unsafe {
        let g = group("Z/4 Z/4 Z");
        assert_eq!(sr_group_rank(g), 3);
        let c = coloring(g, "support", 1);
        let elems = [cs("1,0,1"), cs("3,2,1")];
        let ptrs: Vec<*const c_char> = elems.iter().map(|e| e.as_ptr()).collect();
        let mut mono = false;
        let mut color = ptr::null_mut();
        assert_eq!(sr_verify_witness(c, ptrs.as_ptr(), 2, &mut mono, &mut color), SrStatus::Ok);
        assert!(mono);
        assert_eq!(take(color), "Seq[(1/2,0),(0,2)]");

        let mut w = ptr::null_mut();
        assert_eq!(sr_find_witness(c, 1, 2, 0, &mut w), SrStatus::Ok);
        assert_eq!(sr_witness_len(w), 2);
        assert_eq!(take(sr_witness_element(w, 0)), "1,0,0");
        assert_eq!(take(sr_witness_element(w, 1)), "3,2,0");
        assert!(sr_witness_element(w, 2).is_null());
        assert_eq!(take(sr_witness_color(w)), "Seq[(1/2,0)]");
        sr_witness_free(w);
        sr_coloring_free(c);
        sr_group_free(g);
    }
}

#[test]
fn statuses_mirror_exit_codes() {
    unsafe {
        let g = group("Z/3 Z/3 Z/3");
        let c = coloring(g, "support", 0);
        let mut w = ptr::null_mut();
        assert_eq!(sr_find_witness(c, 0, 2, 0, &mut w), SrStatus::None);
        assert!(w.is_null());
        assert_eq!(sr_find_witness(c, 0, 2, 5, &mut w), SrStatus::Resource);
        assert!(last_error().contains("exceeded cap 5"));
        sr_coloring_free(c);
        sr_group_free(g);
        assert_eq!(SrStatus::Ok as i32, 0);
        assert_eq!(SrStatus::None as i32, 1);
        assert_eq!(SrStatus::Resource as i32, 2);
        assert_eq!(SrStatus::Input as i32, 3);
    }
}

#[test]
fn bad_input_is_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(sr_group_parse(cs("Z/1").as_ptr(), &mut g), SrStatus::Input);
        assert!(g.is_null());
        assert!(last_error().contains("modulus"));
        assert_eq!(sr_group_parse(ptr::null(), &mut g), SrStatus::Input);

        let g = group("Z/4");
        let mut c = ptr::null_mut();
        assert_eq!(sr_coloring_parse(g, cs("paisley").as_ptr(), 0, &mut c), SrStatus::Input);
        assert!(last_error().contains("paisley"));
        let c = coloring(g, "table\n1 -> 0\n", 0);
        let elems = [cs("1")];
        let ptrs: Vec<*const c_char> = elems.iter().map(|e| e.as_ptr()).collect();
        let mut mono = false;
        // 2 * 1 = 2 has no colour in the table
        assert_eq!(sr_verify_witness(c, ptrs.as_ptr(), 1, &mut mono, ptr::null_mut()), SrStatus::Input);
        sr_coloring_free(c);
        sr_group_free(g);

        // freeing null is a no-op
        sr_group_free(ptr::null_mut());
        sr_coloring_free(ptr::null_mut());
        sr_witness_free(ptr::null_mut());
        sr_string_free(ptr::null_mut());
        assert_eq!(sr_witness_len(ptr::null()), 0);
    }
}

#[test]
fn run_matches_cli_exit_codes() {
    unsafe {
        let args = [cs("--machine"), cs("analyze"), cs("--group"), cs("Z/8")];
        let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        let mut report = ptr::null_mut();
        assert_eq!(sr_run(ptrs.len(), ptrs.as_ptr(), &mut report), 0);
        let report = take(report);
        assert!(report.contains("two_torsion=2\n"), "{report}");

        let args = [cs("search"), cs("--group"), cs("Z/3"), cs("--coloring"), cs("support"), cs("--size"), cs("2")];
        let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        assert_eq!(sr_run(ptrs.len(), ptrs.as_ptr(), ptr::null_mut()), 1);

        let args = [cs("bogus")];
        let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        assert_eq!(sr_run(ptrs.len(), ptrs.as_ptr(), ptr::null_mut()), 3);
        assert!(last_error().contains("bogus"));
    }
}
