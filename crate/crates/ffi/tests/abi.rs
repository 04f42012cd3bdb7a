//! Exercises the C ABI from Rust and from a small C program.

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use bchp_ffi::*;

fn last_error() -> String {
    let p = hb_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn build_eval_serialize() {
    unsafe {
        let mut p: *mut HbPoly = ptr::null_mut();
        assert_eq!(hb_poly_new_bchp(1, 1, 0, 0, HbRoute::Rodrigues, &mut p), HbStatus::Ok);
        let (mut terms, mut deg) = (0usize, 0u32);
        assert_eq!(hb_poly_num_terms(p, &mut terms), HbStatus::Ok);
        assert_eq!(hb_poly_degree(p, &mut deg), HbStatus::Ok);
        // ξ ξ̄ − 1 = z z̄ + w w̄ + i(w z̄ − z w̄) − 1
        assert_eq!((terms, deg), (5, 2));
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(hb_poly_eval(p, 0.0, 0.0, 0.0, 0.0, &mut re, &mut im), HbStatus::Ok);
        assert_eq!((re, im), (-1.0, 0.0));

        let mut json = ptr::null_mut();
        assert_eq!(hb_poly_to_json(p, &mut json), HbStatus::Ok);
        let mut q: *mut HbPoly = ptr::null_mut();
        assert_eq!(hb_poly_from_json(json, &mut q), HbStatus::Ok);
        let mut json2 = ptr::null_mut();
        assert_eq!(hb_poly_to_json(q, &mut json2), HbStatus::Ok);
        assert_eq!(CStr::from_ptr(json), CStr::from_ptr(json2));
        hb_string_free(json);
        hb_string_free(json2);
        hb_poly_free(p);
        hb_poly_free(q);
        hb_poly_free(ptr::null_mut());
    }
}

#[test]
fn numeric_entry_points() {
    unsafe {
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(hb_uchp_eval(1, 1, 0.0, 0.0, &mut re, &mut im), HbStatus::Ok);
        assert_eq!(re, -1.0);
        let m = [1u32, 0, 1, 0];
        assert_eq!(hb_ortho_integral(m.as_ptr(), m.as_ptr(), 20, &mut re, &mut im), HbStatus::Ok);
        assert!((re - std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-12);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        assert_eq!(hb_poly_new_bchp(0, 0, 0, 0, HbRoute::Compose, ptr::null_mut()), HbStatus::NullPointer);
        assert!(last_error().contains("out"));
        let bad = CString::new("{not json").unwrap();
        let mut q: *mut HbPoly = ptr::null_mut();
        assert_eq!(hb_poly_from_json(bad.as_ptr(), &mut q), HbStatus::Parse);
        assert!(q.is_null());
        let m = [0u32; 4];
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(hb_ortho_integral(m.as_ptr(), m.as_ptr(), 0, &mut re, &mut im), HbStatus::Domain);
        let mut n = 0usize;
        assert_eq!(hb_poly_num_terms(ptr::null(), &mut n), HbStatus::NullPointer);
    }
}

#[test]
fn verify_through_abi() {
    unsafe {
        let suite = CString::new("raising").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(hb_verify(suite.as_ptr(), false, &mut out), HbStatus::Ok);
        let text = CStr::from_ptr(out).to_str().unwrap().to_owned();
        hb_string_free(out);
        assert_eq!(text.lines().count(), 4);
        assert_eq!(hb_verify(suite.as_ptr(), true, ptr::null_mut()), HbStatus::VerifyFailed);
        assert!(last_error().contains("newarizing"));
        let nope = CString::new("nope").unwrap();
        assert_eq!(hb_verify(nope.as_ptr(), false, ptr::null_mut()), HbStatus::Parse);
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "bchp.h"

int main(void) {
    HbPoly *p = NULL;
    if (hb_poly_new_bchp(1, 0, 0, 1, HB_ROUTE_BINOMIAL, &p) != HB_STATUS_OK) return 1;
    double re, im;
    if (hb_poly_eval(p, 1.0, 0.0, 0.0, 1.0, &re, &im) != HB_STATUS_OK) return 2;
    char *json = NULL;
    if (hb_poly_to_json(p, &json) != HB_STATUS_OK) return 3;
    printf("%g %g %s\n", re, im, json);
    hb_string_free(json);
    hb_poly_free(p);
    if (hb_poly_new_bchp(0, 0, 0, 0, HB_ROUTE_COMPOSE, NULL) != HB_STATUS_NULL_POINTER) return 4;
    return hb_last_error() == NULL ? 5 : 0;
}
"#;

#[test]
fn c_program_links_against_static_library() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libbchp_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("abi_smoke.c");
    let exe = tmp.join("abi_smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("0 0 {\"vars\""), "{text}");
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
        .ok_or(())
}
