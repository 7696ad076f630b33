//! Exercises the C ABI end to end: parse handles, run analyses, check
//! status codes, and free everything through the exported functions.

use std::ffi::{CStr, CString};
use std::ptr;

use fqg_capi::{
    fqg_analyze_action, fqg_analyze_group, fqg_document_free, fqg_document_load,
    fqg_document_parse, fqg_last_error, fqg_reduce, fqg_string_free, fqg_verify, FqgDocument,
    FqgStatus,
};

fn fixture(name: &str) -> String {
    let path = format!("{}/../fqg/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture exists")
}

unsafe fn parse(json: &str) -> *mut FqgDocument {
    let cjson = CString::new(json).unwrap();
    let mut doc: *mut FqgDocument = ptr::null_mut();
    let status = fqg_document_parse(cjson.as_ptr(), &mut doc);
    assert_eq!(status, FqgStatus::Ok, "parse failed: {}", last_error_string());
    assert!(!doc.is_null());
    doc
}

fn last_error_string() -> String {
    let ptr = fqg_last_error();
    if ptr.is_null() {
        return String::new();
    }
    unsafe { CStr::from_ptr(ptr).to_string_lossy().into_owned() }
}

unsafe fn take_report(report: *mut std::ffi::c_char) -> serde_json::Value {
    assert!(!report.is_null());
    let text = CStr::from_ptr(report).to_str().unwrap().to_owned();
    fqg_string_free(report);
    serde_json::from_str(&text).unwrap()
}

#[test]
fn analyze_group_via_c_abi() {
    unsafe {
        let doc = parse(&fixture("kac_paljutkin.json"));
        let mut report: *mut std::ffi::c_char = ptr::null_mut();
        let status = fqg_analyze_group(doc, 0, 0.0, &mut report);
        assert_eq!(status, FqgStatus::Ok);
        let json = take_report(report);
        let profile: Vec<u64> = json["blocks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|b| b["N"].as_u64().unwrap())
            .collect();
        assert_eq!(profile, vec![1, 1, 1, 1, 2]);
        fqg_document_free(doc);
    }
}

#[test]
fn analyze_action_and_reduce_via_c_abi() {
    unsafe {
        let doc = parse(&fixture("inflate_c2.json"));

        let mut report: *mut std::ffi::c_char = ptr::null_mut();
        let status = fqg_analyze_action(doc, 0, 0.0, &mut report);
        assert_eq!(status, FqgStatus::Ok);
        let json = take_report(report);
        assert_eq!(json["core_dim"], 1);
        assert_eq!(json["kernel_dim"], 1);
        assert_eq!(json["decomposition"]["holds"], true);

        for mode in ["minimal", "reduced", "universal"] {
            let cmode = CString::new(mode).unwrap();
            let mut report: *mut std::ffi::c_char = ptr::null_mut();
            let status = fqg_reduce(doc, cmode.as_ptr(), 0, 0.0, &mut report);
            assert_eq!(status, FqgStatus::Ok, "mode {mode}: {}", last_error_string());
            let json = take_report(report);
            assert_eq!(json["pass"], true, "mode {mode}");
        }
        fqg_document_free(doc);
    }
}

#[test]
fn verify_via_c_abi() {
    unsafe {
        let doc = parse(&fixture("grading_m2.json"));
        let mut report: *mut std::ffi::c_char = ptr::null_mut();
        let status = fqg_verify(doc, 1e-9, &mut report);
        assert_eq!(status, FqgStatus::Ok);
        let json = take_report(report);
        assert_eq!(json["pass"], true);
        fqg_document_free(doc);
    }
}

#[test]
fn error_paths_set_last_error() {
    unsafe {
        // invalid JSON
        let bad = CString::new("{not json").unwrap();
        let mut doc: *mut FqgDocument = ptr::null_mut();
        assert_eq!(fqg_document_parse(bad.as_ptr(), &mut doc), FqgStatus::InputError);
        assert!(last_error_string().contains("invalid JSON"));

        // schema violation carries the JSON pointer
        let bad_cayley = CString::new(
            r#"{"kind":"finite_group","order":2,"cayley":[[0,0],[1,1]],"model":"function_algebra"}"#,
        )
        .unwrap();
        assert_eq!(fqg_document_parse(bad_cayley.as_ptr(), &mut doc), FqgStatus::InputError);
        assert!(last_error_string().contains("/cayley"), "{}", last_error_string());

        // missing file is an I/O error
        let missing = CString::new("/nonexistent/fqg-test.json").unwrap();
        assert_eq!(fqg_document_load(missing.as_ptr(), &mut doc), FqgStatus::IoError);

        // null arguments are rejected, not dereferenced
        assert_eq!(fqg_document_parse(ptr::null(), &mut doc), FqgStatus::InputError);
        assert_eq!(fqg_verify(ptr::null(), 0.0, ptr::null_mut()), FqgStatus::InputError);
        fqg_string_free(ptr::null_mut());
        fqg_document_free(ptr::null_mut());
    }
}
