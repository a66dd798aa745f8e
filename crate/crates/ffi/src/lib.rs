//! C interface to the queens pipelines and the check suites.
//!
//! Every fallible call returns an [`EffsimStatus`]. On failure a message is
//! available from [`effsim_last_error`] on the same thread. Handles are
//! opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{CStr, CString, c_char};
use std::panic::{AssertUnwindSafe, catch_unwind};

use effsim::difftest::{Report, Suite};
use effsim::queens::{Pipeline, Row, solve};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EffsimStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownPipeline = 3,
    UnknownSuite = 4,
    Panic = 5,
}

/// Solutions of one queens run.
pub struct EffsimQueens {
    width: usize,
    solutions: Vec<Vec<Row>>,
}

/// Result of one suite run.
pub struct EffsimReport {
    report: Report,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: EffsimStatus, msg: impl Into<String>) -> EffsimStatus {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
    status
}

fn guard(f: impl FnOnce() -> EffsimStatus) -> EffsimStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        fail(EffsimStatus::Panic, msg)
    })
}

/// # Safety
/// `s` must be null or point to a nul-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, EffsimStatus> {
    if s.is_null() {
        return Err(fail(EffsimStatus::NullPointer, format!("{what} is null")));
    }
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| fail(EffsimStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

/// Library version as a static nul-terminated string.
#[unsafe(no_mangle)]
pub extern "C" fn effsim_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread.
#[unsafe(no_mangle)]
pub extern "C" fn effsim_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |m| m.as_ptr()))
}

/// Solves the `n`-queens puzzle with the named pipeline.
///
/// # Safety
/// `pipeline` must be a nul-terminated string and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn effsim_queens_run(
    pipeline: *const c_char,
    n: i64,
    out: *mut *mut EffsimQueens,
) -> EffsimStatus {
    guard(|| {
        if out.is_null() {
            return fail(EffsimStatus::NullPointer, "out is null");
        }
        let name = match unsafe { read_str(pipeline, "pipeline") } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let p: Pipeline = match name.parse() {
            Ok(p) => p,
            Err(e) => return fail(EffsimStatus::UnknownPipeline, format!("{e}")),
        };
        if n < 1 {
            return fail(EffsimStatus::InvalidArgument, format!("n must be at least 1, got {n}"));
        }
        let solutions = solve(p, n);
        let h = Box::new(EffsimQueens { width: n as usize, solutions });
        unsafe { *out = Box::into_raw(h) };
        EffsimStatus::Ok
    })
}

/// Number of solutions, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn effsim_queens_count(h: *const EffsimQueens) -> usize {
    unsafe { h.as_ref() }.map_or(0, |q| q.solutions.len())
}

/// Board size, which is the length of every solution.
///
/// # Safety
/// `h` must be null or a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn effsim_queens_width(h: *const EffsimQueens) -> usize {
    unsafe { h.as_ref() }.map_or(0, |q| q.width)
}

/// Row (1-based) of the queen in `column` (0-based) of solution `index`.
///
/// # Safety
/// `h` must be null or a live handle; `out` must be null or valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn effsim_queens_get(
    h: *const EffsimQueens,
    index: usize,
    column: usize,
    out: *mut i64,
) -> EffsimStatus {
    guard(|| {
        let (Some(q), false) = (unsafe { h.as_ref() }, out.is_null()) else {
            return fail(EffsimStatus::NullPointer, "handle or out is null");
        };
        match q.solutions.get(index).and_then(|s| s.get(column)) {
            Some(&r) => {
                unsafe { *out = r };
                EffsimStatus::Ok
            }
            None => fail(
                EffsimStatus::InvalidArgument,
                format!("no entry ({index}, {column}) in {} solutions of width {}", q.solutions.len(), q.width),
            ),
        }
    })
}

/// # Safety
/// `h` must be null or a handle not yet freed.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn effsim_queens_free(h: *mut EffsimQueens) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Runs the named suite. A report is produced whether or not the suite
/// passes; inspect it with [`effsim_report_failures`].
///
/// # Safety
/// `suite` must be a nul-terminated string and `out` a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn effsim_check(
    suite: *const c_char,
    trials: u64,
    seed: u64,
    depth: u32,
    out: *mut *mut EffsimReport,
) -> EffsimStatus {
    guard(|| {
        if out.is_null() {
            return fail(EffsimStatus::NullPointer, "out is null");
        }
        let name = match unsafe { read_str(suite, "suite") } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let s: Suite = match name.parse() {
            Ok(s) => s,
            Err(e) => return fail(EffsimStatus::UnknownSuite, format!("{e}")),
        };
        if trials == 0 || depth > 10 {
            return fail(EffsimStatus::InvalidArgument, "trials must be positive and depth at most 10");
        }
        let report = s.run(trials as usize, seed, depth);
        let json = CString::new(report.to_json()).expect("JSON has no nul bytes");
        unsafe { *out = Box::into_raw(Box::new(EffsimReport { report, json })) };
        EffsimStatus::Ok
    })
}

/// Number of failing trials, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn effsim_report_failures(h: *const EffsimReport) -> usize {
    unsafe { h.as_ref() }.map_or(0, |r| r.report.failures.len())
}

/// The report as JSON, owned by the handle. Null for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn effsim_report_json(h: *const EffsimReport) -> *const c_char {
    unsafe { h.as_ref() }.map_or(std::ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `h` must be null or a handle not yet freed.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn effsim_report_free(h: *mut EffsimReport) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}
