use std::ffi::{CStr, CString};
use std::ptr;

use effsim_ffi::*;

fn last_error() -> String {
    let p = effsim_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn queens(pipeline: &str, n: i64) -> Vec<Vec<i64>> {
    let name = CString::new(pipeline).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { effsim_queens_run(name.as_ptr(), n, &mut h) }, EffsimStatus::Ok);
    let (count, width) = unsafe { (effsim_queens_count(h), effsim_queens_width(h)) };
    let mut sols = Vec::new();
    for i in 0..count {
        let mut row = Vec::new();
        for c in 0..width {
            let mut v = 0;
            assert_eq!(unsafe { effsim_queens_get(h, i, c, &mut v) }, EffsimStatus::Ok);
            row.push(v);
        }
        sols.push(row);
    }
    unsafe { effsim_queens_free(h) };
    sols
}

#[test]
fn four_queens_through_every_pipeline() {
    for p in ["naive", "local", "global", "sim", "fusedF", "localM", "globalM", "globalT", "simT", "fusedTF"] {
        assert_eq!(queens(p, 4), vec![vec![2, 4, 1, 3], vec![3, 1, 4, 2]], "{p}");
    }
}

#[test]
fn queens_errors() {
    let mut h = ptr::null_mut();
    let bogus = CString::new("bogus").unwrap();
    assert_eq!(unsafe { effsim_queens_run(bogus.as_ptr(), 4, &mut h) }, EffsimStatus::UnknownPipeline);
    assert!(last_error().contains("bogus"));
    assert!(h.is_null());

    let local = CString::new("local").unwrap();
    assert_eq!(unsafe { effsim_queens_run(local.as_ptr(), 0, &mut h) }, EffsimStatus::InvalidArgument);
    assert_eq!(unsafe { effsim_queens_run(ptr::null(), 4, &mut h) }, EffsimStatus::NullPointer);
    assert_eq!(unsafe { effsim_queens_run(local.as_ptr(), 4, ptr::null_mut()) }, EffsimStatus::NullPointer);

    assert_eq!(unsafe { effsim_queens_run(local.as_ptr(), 4, &mut h) }, EffsimStatus::Ok);
    assert!(effsim_last_error().is_null());
    let mut v = 0;
    assert_eq!(unsafe { effsim_queens_get(h, 2, 0, &mut v) }, EffsimStatus::InvalidArgument);
    assert_eq!(unsafe { effsim_queens_get(h, 0, 4, &mut v) }, EffsimStatus::InvalidArgument);
    assert_eq!(unsafe { effsim_queens_get(h, 0, 0, ptr::null_mut()) }, EffsimStatus::NullPointer);
    unsafe { effsim_queens_free(h) };

    assert_eq!(unsafe { effsim_queens_count(ptr::null()) }, 0);
    unsafe { effsim_queens_free(ptr::null_mut()) };
}

fn check(suite: &str, trials: u64, seed: u64) -> (usize, String) {
    let name = CString::new(suite).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { effsim_check(name.as_ptr(), trials, seed, 6, &mut h) }, EffsimStatus::Ok);
    let failures = unsafe { effsim_report_failures(h) };
    let json = unsafe { CStr::from_ptr(effsim_report_json(h)) }.to_str().unwrap().to_owned();
    unsafe { effsim_report_free(h) };
    (failures, json)
}

#[test]
fn passing_and_failing_reports() {
    let (failures, json) = check("T-fusedTF", 50, 7);
    assert_eq!(failures, 0);
    assert!(json.starts_with(r#"{"suite":"T-fusedTF","seed":7,"trials":50,"#), "{json}");

    let (failures, json) = check("revert-as-apply", 200, 7);
    assert!(failures > 0);
    assert!(json.contains("\"astText\""));

    assert_eq!(check("oracle", 20, 1).0, 0);
}

#[test]
fn check_errors() {
    let mut h = ptr::null_mut();
    let bogus = CString::new("T-bogus").unwrap();
    assert_eq!(unsafe { effsim_check(bogus.as_ptr(), 10, 1, 6, &mut h) }, EffsimStatus::UnknownSuite);
    assert!(last_error().contains("T-bogus"));
    let ok = CString::new("nondet").unwrap();
    assert_eq!(unsafe { effsim_check(ok.as_ptr(), 0, 1, 6, &mut h) }, EffsimStatus::InvalidArgument);
    assert_eq!(unsafe { effsim_check(ok.as_ptr(), 10, 1, 11, &mut h) }, EffsimStatus::InvalidArgument);
    assert!(unsafe { effsim_report_json(ptr::null()) }.is_null());
}

#[test]
fn version_matches_package() {
    let v = unsafe { CStr::from_ptr(effsim_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/effsim.h")).unwrap();
    for f in [
        "effsim_version", "effsim_last_error", "effsim_queens_run", "effsim_queens_count",
        "effsim_queens_width", "effsim_queens_get", "effsim_queens_free", "effsim_check",
        "effsim_report_failures", "effsim_report_json", "effsim_report_free", "EFFSIM_STATUS_PANIC",
    ] {
        assert!(header.contains(f), "{f} missing");
    }
}
