use std::ffi::{CStr, CString};
use std::ptr;

use coiso_ffi::*;

fn last_error() -> String {
    let p = coiso_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn shipped_workspace_dims() {
    let mut ws = ptr::null_mut();
    unsafe {
        assert_eq!(coiso_workspace_shipped(&mut ws), CoisoStatus::Ok);
        let mut d = [0usize; 4];
        let name = CString::new("m2dirac").unwrap();
        assert_eq!(coiso_triple_dims(ws, name.as_ptr(), d.as_mut_ptr()), CoisoStatus::Ok);
        assert_eq!(d, [4, 3, 2, 1]);
        let mut e = [0usize; 3];
        let name = CString::new("cliff_id").unwrap();
        assert_eq!(coiso_bimodule_dims(ws, name.as_ptr(), e.as_mut_ptr()), CoisoStatus::Ok);
        assert_eq!(e, [4, 4, 3]);
        let name = CString::new("missing").unwrap();
        assert_eq!(coiso_triple_dims(ws, name.as_ptr(), d.as_mut_ptr()), CoisoStatus::InputError);
        assert!(last_error().contains("missing"));
        coiso_workspace_free(ws);
    }
}

#[test]
fn load_rejects_bad_models() {
    let mut ws = ptr::null_mut();
    let empty = CString::new("").unwrap();
    unsafe {
        assert_eq!(coiso_workspace_load(empty.as_ptr(), &mut ws), CoisoStatus::InputError);
        assert!(last_error().contains("syntax error"));
        let fp = CString::new(r#"{"field": {"Fp": 7}}"#).unwrap();
        assert_eq!(coiso_workspace_load(fp.as_ptr(), &mut ws), CoisoStatus::InputError);
        assert_eq!(coiso_workspace_load(ptr::null(), &mut ws), CoisoStatus::NullPointer);
        let ok = CString::new(r#"{"algebras": {"k": {"builtin": "k"}}, "triples": {"t": {"unred": "k"}}}"#).unwrap();
        assert_eq!(coiso_workspace_load(ok.as_ptr(), &mut ws), CoisoStatus::Ok);
        assert!(coiso_last_error().is_null());
        coiso_workspace_free(ws);
    }
}

#[test]
fn run_returns_deterministic_json() {
    let args: Vec<CString> = ["coherence", "--seed", "2", "--iters", "2"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let argv: Vec<*const std::ffi::c_char> = args.iter().map(|s| s.as_ptr()).collect();
    let mut texts = Vec::new();
    for _ in 0..2 {
        let mut rep = ptr::null_mut();
        unsafe {
            assert_eq!(coiso_run(argv.as_ptr(), argv.len(), &mut rep), CoisoStatus::Ok);
            assert_eq!(coiso_report_passed(rep), 1);
            texts.push(CStr::from_ptr(coiso_report_json(rep)).to_string_lossy().into_owned());
            coiso_report_free(rep);
        }
    }
    assert_eq!(texts[0], texts[1]);
    assert!(texts[0].contains("\"seed\": 2"));
}

#[test]
fn run_reports_input_errors() {
    let args = [CString::new("coherence").unwrap()];
    let argv = [args[0].as_ptr()];
    let mut rep = ptr::null_mut();
    unsafe {
        assert_eq!(coiso_run(argv.as_ptr(), 1, &mut rep), CoisoStatus::InputError);
    }
    assert!(rep.is_null());
    assert!(last_error().contains("--seed"));
}

#[test]
fn header_declares_the_interface() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/coiso.h")).unwrap();
    for name in ["typedef struct CoisoWorkspace CoisoWorkspace", "COISO_STATUS_CHECK_FAILED", "coiso_run", "coiso_last_error", "coiso_report_free"] {
        assert!(h.contains(name), "missing {name}");
    }
}
