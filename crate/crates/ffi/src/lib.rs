//! C ABI over the `bchp` core.
//!
//! Polynomials cross the boundary as opaque [`HbPoly`] handles. Every
//! fallible call returns an [`HbStatus`]; on failure the message is
//! available from [`hb_last_error`] on the same thread. Strings returned to
//! the caller are owned by it and released with [`hb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bchp::bchp::{bchp, Route};
use bchp::exactring::{MultiIndex4, Poly4};
use bchp::numerics::ortho::ortho_integral;
use bchp::uchp::uchp_value;
use bchp::verify::{run_suite, RunConfig, VerifyReport};
use num_complex::Complex64;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Domain = 4,
    /// A verification ran and at least one check failed.
    VerifyFailed = 5,
    Panic = 99,
}

/// Construction route for [`hb_poly_new_bchp`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HbRoute {
    Compose = 0,
    Rodrigues = 1,
    Operational = 2,
    Binomial = 3,
}

impl From<HbRoute> for Route {
    fn from(r: HbRoute) -> Route {
        match r {
            HbRoute::Compose => Route::Compose,
            HbRoute::Rodrigues => Route::Rodrigues,
            HbRoute::Operational => Route::Operational,
            HbRoute::Binomial => Route::Binomial,
        }
    }
}

/// Opaque exact polynomial in `(z, z̄, w, w̄)`.
pub struct HbPoly(Poly4);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &bchp::Error) -> HbStatus {
    match e {
        bchp::Error::Parse(_) | bchp::Error::UnknownSuite(_) => HbStatus::Parse,
        bchp::Error::Index(_) => HbStatus::InvalidArgument,
        _ => HbStatus::Domain,
    }
}

/// Runs `f`, recording errors and containing panics.
fn guard(f: impl FnOnce() -> Result<(), (HbStatus, String)>) -> HbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HbStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            HbStatus::Panic
        }
    }
}

fn core_err(e: bchp::Error) -> (HbStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (HbStatus, String) {
    (HbStatus::NullPointer, format!("`{name}` is null"))
}

/// # Safety
/// `p` is null or points to a writable `T`.
unsafe fn write<T>(p: *mut T, v: T, name: &str) -> Result<(), (HbStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    unsafe { p.write(v) };
    Ok(())
}

/// # Safety
/// `p` is null or a handle from this library that has not been freed.
unsafe fn handle<'a>(p: *const HbPoly) -> Result<&'a HbPoly, (HbStatus, String)> {
    unsafe { p.as_ref() }.ok_or_else(|| null("poly"))
}

/// # Safety
/// `s` is null or a nul-terminated string.
unsafe fn c_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, (HbStatus, String)> {
    if s.is_null() {
        return Err(null(name));
    }
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| (HbStatus::InvalidArgument, format!("`{name}` is not UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn hb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds `H_{m,n,m',n'}` exactly.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hb_poly_new_bchp(
    m: u32,
    n: u32,
    mp: u32,
    np: u32,
    route: HbRoute,
    out: *mut *mut HbPoly,
) -> HbStatus {
    guard(|| {
        let p = bchp(MultiIndex4::new(m, n, mp, np), route.into());
        unsafe { write(out, Box::into_raw(Box::new(HbPoly(p))), "out") }
    })
}

/// Parses a polynomial from its JSON form.
///
/// # Safety
/// `json` is a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hb_poly_from_json(json: *const c_char, out: *mut *mut HbPoly) -> HbStatus {
    guard(|| {
        let s = unsafe { c_str(json, "json") }?;
        let p = Poly4::from_json(s).map_err(core_err)?;
        unsafe { write(out, Box::into_raw(Box::new(HbPoly(p))), "out") }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` is null or a live handle; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hb_poly_free(p: *mut HbPoly) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Number of nonzero terms.
///
/// # Safety
/// `p` is a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hb_poly_num_terms(p: *const HbPoly, out: *mut usize) -> HbStatus {
    guard(|| {
        let h = unsafe { handle(p) }?;
        unsafe { write(out, h.0.num_terms(), "out") }
    })
}

/// Total degree; zero for the zero polynomial.
///
/// # Safety
/// `p` is a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hb_poly_degree(p: *const HbPoly, out: *mut u32) -> HbStatus {
    guard(|| {
        let h = unsafe { handle(p) }?;
        unsafe { write(out, h.0.total_degree().unwrap_or(0), "out") }
    })
}

/// Evaluates at `(z, w)` in double precision.
///
/// # Safety
/// `p` is a live handle; `out_re` and `out_im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hb_poly_eval(
    p: *const HbPoly,
    z_re: f64,
    z_im: f64,
    w_re: f64,
    w_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HbStatus {
    guard(|| {
        let h = unsafe { handle(p) }?;
        if out_re.is_null() || out_im.is_null() {
            return Err(null("out"));
        }
        let v = h.0.eval_complex(Complex64::new(z_re, z_im), Complex64::new(w_re, w_im));
        unsafe {
            out_re.write(v.re);
            out_im.write(v.im);
        }
        Ok(())
    })
}

/// Serializes to JSON; free the result with [`hb_string_free`].
///
/// # Safety
/// `p` is a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hb_poly_to_json(p: *const HbPoly, out: *mut *mut c_char) -> HbStatus {
    guard(|| {
        let h = unsafe { handle(p) }?;
        unsafe { write(out, into_c_string(h.0.to_json()), "out") }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn hb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// `H_{m,n}(z, z̄)`.
///
/// # Safety
/// `out_re` and `out_im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hb_uchp_eval(
    m: u32,
    n: u32,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HbStatus {
    guard(|| {
        if out_re.is_null() || out_im.is_null() {
            return Err(null("out"));
        }
        let z = Complex64::new(z_re, z_im);
        let v = uchp_value(m, n, z, z.conj());
        unsafe {
            out_re.write(v.re);
            out_im.write(v.im);
        }
        Ok(())
    })
}

/// `∫ H_M conj(H_N) e^{−2(|z|²+|w|²)}` with `nodes` Gauss–Hermite nodes.
///
/// # Safety
/// `m` and `n` point to four `u32` each; `out_re` and `out_im` must be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn hb_ortho_integral(
    m: *const u32,
    n: *const u32,
    nodes: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HbStatus {
    guard(|| {
        if m.is_null() || n.is_null() {
            return Err(null("index"));
        }
        if out_re.is_null() || out_im.is_null() {
            return Err(null("out"));
        }
        let read = |p: *const u32| {
            let mut a = [0u32; 4];
            a.copy_from_slice(unsafe { std::slice::from_raw_parts(p, 4) });
            MultiIndex4::from_array(a)
        };
        let v = ortho_integral(read(m), read(n), nodes).map_err(core_err)?;
        unsafe {
            out_re.write(v.re);
            out_im.write(v.im);
        }
        Ok(())
    })
}

/// Runs a verification suite with default settings and returns its JSON
/// report lines in `out_json` (may be null to discard). Returns
/// [`HbStatus::VerifyFailed`] if any check failed.
///
/// # Safety
/// `suite` is a nul-terminated string; `out_json` is null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hb_verify(suite: *const c_char, as_printed_only: bool, out_json: *mut *mut c_char) -> HbStatus {
    guard(|| {
        let s = unsafe { c_str(suite, "suite") }?;
        let cfg = RunConfig {
            as_printed_only,
            ..RunConfig::default()
        };
        let reports = run_suite(s, &cfg).map_err(core_err)?;
        if !out_json.is_null() {
            let text: String = reports.iter().map(|r| r.to_json() + "\n").collect();
            unsafe { out_json.write(into_c_string(text)) };
        }
        match reports.iter().find(|r| !r.passed()) {
            None => Ok(()),
            Some(r) => Err((HbStatus::VerifyFailed, format!("{} failed", VerifyReport::to_json(r)))),
        }
    })
}
