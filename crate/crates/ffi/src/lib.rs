//! C ABI over `coiso-core`, rational field only.
//!
//! Every function returns a [`CoisoStatus`]; on anything but `COISO_STATUS_OK` the
//! message is available from [`coiso_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coiso_core::cli::{parse_args, run};
use coiso_core::exact_core::Q;
use coiso_core::model::{FieldChoice, Workspace};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoisoStatus {
    Ok = 0,
    /// The computation ran and at least one check failed.
    CheckFailed = 1,
    /// Bad model, unknown name or bad arguments.
    InputError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

/// A loaded, validated model.
pub struct CoisoWorkspace {
    inner: Workspace<Q>,
}

/// A finished command report.
pub struct CoisoReport {
    json: CString,
    passed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(status: CoisoStatus, msg: impl Into<String>) -> CoisoStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> CoisoStatus) -> CoisoStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned()).unwrap_or_else(|| "panic".into());
            fail(CoisoStatus::Panic, msg)
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, CoisoStatus> {
    if p.is_null() {
        return Err(fail(CoisoStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| fail(CoisoStatus::InvalidUtf8, e.to_string()))
}

/// Message of the last failure on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn coiso_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a JSON model. The model must use the rational field.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coiso_workspace_load(json: *const c_char, out: *mut *mut CoisoWorkspace) -> CoisoStatus {
    guard(|| {
        if out.is_null() {
            return fail(CoisoStatus::NullPointer, "null out pointer");
        }
        let t = match text(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match coiso_core::model::model_field(t, FieldChoice::Q) {
            Ok(FieldChoice::Q) => {}
            Ok(f) => return fail(CoisoStatus::InputError, format!("field {} is not available through the C interface", f.name())),
            Err(e) => return fail(CoisoStatus::InputError, e.to_string()),
        }
        match Workspace::<Q>::parse(t, FieldChoice::Q) {
            Ok(ws) => {
                *out = Box::into_raw(Box::new(CoisoWorkspace { inner: ws }));
                CoisoStatus::Ok
            }
            Err(e) => fail(CoisoStatus::InputError, e.to_string()),
        }
    })
}

/// The shipped fixtures.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coiso_workspace_shipped(out: *mut *mut CoisoWorkspace) -> CoisoStatus {
    guard(|| {
        if out.is_null() {
            return fail(CoisoStatus::NullPointer, "null out pointer");
        }
        match Workspace::<Q>::shipped(FieldChoice::Q) {
            Ok(ws) => {
                *out = Box::into_raw(Box::new(CoisoWorkspace { inner: ws }));
                CoisoStatus::Ok
            }
            Err(e) => fail(CoisoStatus::InputError, e.to_string()),
        }
    })
}

/// # Safety
/// `ws` must come from a load function and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn coiso_workspace_free(ws: *mut CoisoWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Dimensions of `A_tot`, `A_N`, `A_0` and the reduced algebra of a named triple.
///
/// # Safety
/// `ws` must be a live workspace, `name` a nul-terminated string and `dims` room for 4 values.
#[no_mangle]
pub unsafe extern "C" fn coiso_triple_dims(ws: *const CoisoWorkspace, name: *const c_char, dims: *mut usize) -> CoisoStatus {
    guard(|| {
        if ws.is_null() || dims.is_null() {
            return fail(CoisoStatus::NullPointer, "null argument");
        }
        let name = match text(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match (*ws).inner.triple_named(name) {
            Ok(t) => {
                let d = [t.tot.dim, t.n_sub.dim(), t.zero.dim(), t.reduce().alg.dim];
                ptr::copy_nonoverlapping(d.as_ptr(), dims, 4);
                CoisoStatus::Ok
            }
            Err(e) => fail(CoisoStatus::InputError, e.to_string()),
        }
    })
}

/// Dimensions of `E_tot`, `E_N`, `E_0` of a named bimodule.
///
/// # Safety
/// `ws` must be a live workspace, `name` a nul-terminated string and `dims` room for 3 values.
#[no_mangle]
pub unsafe extern "C" fn coiso_bimodule_dims(ws: *const CoisoWorkspace, name: *const c_char, dims: *mut usize) -> CoisoStatus {
    guard(|| {
        if ws.is_null() || dims.is_null() {
            return fail(CoisoStatus::NullPointer, "null argument");
        }
        let name = match text(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match (*ws).inner.bimodule_named(name) {
            Ok(e) => {
                let (t, n, z) = e.dims();
                ptr::copy_nonoverlapping([t, n, z].as_ptr(), dims, 3);
                CoisoStatus::Ok
            }
            Err(e) => fail(CoisoStatus::InputError, e.to_string()),
        }
    })
}

/// Runs a `coiso` command line (without the program name) and returns its JSON report.
/// The status is `CHECK_FAILED` when the report contains a failing check; `*out` is still set.
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coiso_run(argv: *const *const c_char, argc: usize, out: *mut *mut CoisoReport) -> CoisoStatus {
    guard(|| {
        if out.is_null() || (argv.is_null() && argc > 0) {
            return fail(CoisoStatus::NullPointer, "null argument");
        }
        let mut args = vec!["coiso".to_string()];
        for i in 0..argc {
            match text(*argv.add(i)) {
                Ok(t) => args.push(t.to_string()),
                Err(s) => return s,
            }
        }
        let cli = match parse_args(&args) {
            Ok(c) => c,
            Err(e) => return fail(CoisoStatus::InputError, e),
        };
        match run(&cli) {
            Ok(rep) => {
                let passed = rep.passed();
                let json = CString::new(rep.to_json()).expect("json has no nul bytes");
                *out = Box::into_raw(Box::new(CoisoReport { json, passed }));
                if passed {
                    CoisoStatus::Ok
                } else {
                    fail(CoisoStatus::CheckFailed, "at least one check failed")
                }
            }
            Err(e) => fail(CoisoStatus::InputError, e.0),
        }
    })
}

/// JSON text of a report, owned by the report.
///
/// # Safety
/// `r` must be a live report or null.
#[no_mangle]
pub unsafe extern "C" fn coiso_report_json(r: *const CoisoReport) -> *const c_char {
    if r.is_null() {
        return ptr::null();
    }
    (*r).json.as_ptr()
}

/// 1 when every check passed, 0 otherwise or for null.
///
/// # Safety
/// `r` must be a live report or null.
#[no_mangle]
pub unsafe extern "C" fn coiso_report_passed(r: *const CoisoReport) -> i32 {
    (!r.is_null() && (*r).passed) as i32
}

/// # Safety
/// `r` must come from [`coiso_run`] and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn coiso_report_free(r: *mut CoisoReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
