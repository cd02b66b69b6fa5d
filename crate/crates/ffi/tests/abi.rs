use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use forest_ef_ffi::*;

fn parse(text: &str) -> *mut FefGraph {
    let t = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { fef_graph_parse(t.as_ptr(), &mut g) }, FefStatus::Ok);
    g
}

fn last_error() -> String {
    let p = fef_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { fef_string_free(p) };
    s
}

const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn build_and_verify_k4() {
    let g = parse(K4);
    unsafe {
        assert_eq!(fef_graph_num_vertices(g), 4);
        assert_eq!(fef_graph_num_edges(g), 6);
        let mut params = fef_tree_params_default();
        params.exact_separators = true;
        let mut sys = ptr::null_mut();
        let mut within = false;
        assert_eq!(fef_build_ef(g, &params, &mut sys, &mut within), FefStatus::Ok);
        assert!(within);
        assert!(fef_system_size(sys) > 0);
        assert!(fef_system_num_vars(sys) >= 6);

        let mut passed = false;
        let mut report = ptr::null_mut();
        assert_eq!(fef_verify(g, sys, 10, 1, &mut passed, &mut report), FefStatus::Ok);
        let report = take_string(report);
        assert!(passed, "{report}");
        assert!(report.lines().filter(|l| !l.starts_with('#')).all(|l| l.starts_with("PASS")));

        fef_system_free(sys);
        fef_graph_free(g);
    }
}

#[test]
fn system_text_round_trips_and_tampering_is_caught() {
    let g = parse("3 3\n0 1\n1 2\n0 2\n");
    unsafe {
        let mut sys = ptr::null_mut();
        assert_eq!(fef_build_ef(g, ptr::null(), &mut sys, ptr::null_mut()), FefStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(fef_system_to_text(sys, &mut text), FefStatus::Ok);
        let text = take_string(text);

        let again = CString::new(text.clone()).unwrap();
        let mut sys2 = ptr::null_mut();
        assert_eq!(fef_system_parse(again.as_ptr(), &mut sys2), FefStatus::Ok);
        assert_eq!(fef_system_size(sys2), fef_system_size(sys));

        let bad = text.replace("INEQ 2/1 0:1/1 1:1/1 2:1/1", "INEQ 3/1 0:1/1 1:1/1 2:1/1");
        assert_ne!(bad, text);
        let bad = CString::new(bad).unwrap();
        let mut sys3 = ptr::null_mut();
        assert_eq!(fef_system_parse(bad.as_ptr(), &mut sys3), FefStatus::Ok);
        let mut passed = true;
        assert_eq!(fef_verify(g, sys3, 5, 1, &mut passed, ptr::null_mut()), FefStatus::Ok);
        assert!(!passed);

        for s in [sys, sys2, sys3] {
            fef_system_free(s);
        }
        fef_graph_free(g);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(fef_graph_parse(ptr::null(), &mut g), FefStatus::NullPointer);
        assert!(g.is_null());

        let bad = CString::new("3 1\n0 9\n").unwrap();
        assert_eq!(fef_graph_parse(bad.as_ptr(), &mut g), FefStatus::ParseError);
        assert!(!last_error().is_empty());

        let g = parse(K4);
        let mut params = fef_tree_params_default();
        params.beta_num = 1;
        params.beta_den = 1;
        let mut sys = ptr::null_mut();
        assert_eq!(fef_build_ef(g, &params, &mut sys, ptr::null_mut()), FefStatus::InvalidArgument);
        assert!(last_error().contains("beta"));
        assert!(sys.is_null());

        params = fef_tree_params_default();
        params.c_num = 0;
        assert_eq!(fef_build_ef(g, &params, &mut sys, ptr::null_mut()), FefStatus::InvalidArgument);

        let junk = CString::new("not a system").unwrap();
        assert_eq!(fef_system_parse(junk.as_ptr(), &mut sys), FefStatus::ParseError);

        assert_eq!(fef_verify(g, ptr::null(), 1, 1, &mut false, ptr::null_mut()), FefStatus::NullPointer);

        fef_graph_free(g);
        fef_graph_free(ptr::null_mut());
        fef_system_free(ptr::null_mut());
        fef_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_abi_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/forest_ef.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "fef_graph_parse",
        "fef_graph_free",
        "fef_build_ef",
        "fef_system_to_text",
        "fef_verify",
        "fef_string_free",
        "fef_last_error_message",
        "FEF_STATUS_OK",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
