//! C ABI for `catsl`.
//!
//! Every fallible function returns a [`CatslStatus`]; on failure the message
//! is available from [`catsl_last_error`] on the same thread. Strings handed
//! out by the library must be released with [`catsl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use catsl::harness::{run_suite, simplify_command, Params};
use catsl::reflection::verify_braid;
use catsl::report::all_passed;
use catsl::strata::component_table;
use catsl::tensor_model::TensorModel;
use catsl::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatslStatus {
    Ok = 0,
    InvalidArgument = 1,
    Capacity = 2,
    NodeOutOfRange = 3,
    WeightMismatch = 4,
    UnsupportedRewrite = 5,
    Integrity = 6,
    Parse = 7,
    NullPointer = 8,
    InvalidUtf8 = 9,
    Panic = 10,
}

/// Opaque handle to a tensor model `(C^m)^{\otimes N}`.
pub struct CatslModel {
    inner: TensorModel,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CatslStatus {
    match e {
        Error::InvalidArgument(_) => CatslStatus::InvalidArgument,
        Error::Capacity { .. } => CatslStatus::Capacity,
        Error::NodeOutOfRange { .. } => CatslStatus::NodeOutOfRange,
        Error::WeightMismatch(_) => CatslStatus::WeightMismatch,
        Error::UnsupportedRewrite(_) => CatslStatus::UnsupportedRewrite,
        Error::Integrity(_) => CatslStatus::Integrity,
        Error::Parse(_) => CatslStatus::Parse,
    }
}

fn fail(status: CatslStatus, msg: &str) -> CatslStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), CatslStatus>) -> CatslStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CatslStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(CatslStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: catsl::Result<T>) -> Result<T, CatslStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, CatslStatus> {
    if p.is_null() {
        return Err(fail(CatslStatus::NullPointer, &format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(CatslStatus::InvalidUtf8, &format!("{what} is not UTF-8")))
}

fn check_out<T>(p: *mut T, what: &str) -> Result<(), CatslStatus> {
    if p.is_null() {
        return Err(fail(CatslStatus::NullPointer, &format!("{what} is null")));
    }
    Ok(())
}

fn model_ref<'a>(p: *const CatslModel) -> Result<&'a TensorModel, CatslStatus> {
    if p.is_null() {
        return Err(fail(CatslStatus::NullPointer, "model is null"));
    }
    Ok(unsafe { &(*p).inner })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), CatslStatus> {
    let c = CString::new(s).map_err(|_| fail(CatslStatus::Integrity, "output contains a NUL byte"))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failure on this thread; empty after a success.
/// Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn catsl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds the model `(C^m)^{\otimes n}` and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn catsl_model_new(m: usize, n: usize, out: *mut *mut CatslModel) -> CatslStatus {
    guard(|| {
        check_out(out, "out")?;
        let inner = lift(TensorModel::new(m, n))?;
        *out = Box::into_raw(Box::new(CatslModel { inner }));
        Ok(())
    })
}

/// # Safety
/// `model` must come from [`catsl_model_new`] and not be used afterwards.
/// Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn catsl_model_free(model: *mut CatslModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Dimension `m^N`, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn catsl_model_dim(model: *const CatslModel) -> usize {
    if model.is_null() {
        0
    } else {
        (*model).inner.dim()
    }
}

/// Runs the quantum-group relation suite. `*passed` is set to whether every
/// relation held and `*checks` to the number of checks.
///
/// # Safety
/// `model` must be a live handle; `passed` and `checks` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn catsl_relation_suite(
    model: *const CatslModel,
    passed: *mut bool,
    checks: *mut usize,
) -> CatslStatus {
    guard(|| {
        let m = model_ref(model)?;
        check_out(passed, "passed")?;
        check_out(checks, "checks")?;
        let results = lift(m.relation_suite())?;
        *passed = all_passed(&results);
        *checks = results.len();
        Ok(())
    })
}

/// Braid (or commuting) relation between the reflections at nodes `i` and
/// `j`.
///
/// # Safety
/// `model` must be a live handle; `passed` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn catsl_braid_check(
    model: *const CatslModel,
    i: usize,
    j: usize,
    passed: *mut bool,
) -> CatslStatus {
    guard(|| {
        let m = model_ref(model)?;
        check_out(passed, "passed")?;
        *passed = lift(verify_braid(m, i, j))?.passed;
        Ok(())
    })
}

/// Normal form of `word` at `weight`; `window` may be null for unbounded.
/// The rendered sum is stored in `*out`.
///
/// # Safety
/// The inputs must be null-terminated strings (or null `window`); `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn catsl_simplify(
    word: *const c_char,
    weight: *const c_char,
    window: *const c_char,
    out: *mut *mut c_char,
) -> CatslStatus {
    guard(|| {
        check_out(out, "out")?;
        let word = read_str(word, "word")?;
        let weight = read_str(weight, "weight")?;
        let window = if window.is_null() { None } else { Some(read_str(window, "window")?) };
        let s = lift(simplify_command(word, weight, window))?;
        write_string(out, s)
    })
}

/// Component table of `Z(k, N)` as a JSON array.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn catsl_strata_json(k: u32, n: u32, out: *mut *mut c_char) -> CatslStatus {
    guard(|| {
        check_out(out, "out")?;
        let t = lift(component_table(k, n))?;
        write_string(out, t.to_json())
    })
}

/// Runs a named suite with default parameters and `seed`; the JSON report
/// goes to `*out` and `*passed` tells whether every check passed.
///
/// # Safety
/// `name` must be a null-terminated string; `out` and `passed` valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn catsl_run_suite(
    name: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> CatslStatus {
    guard(|| {
        check_out(out, "out")?;
        check_out(passed, "passed")?;
        let name = read_str(name, "name")?;
        let report = lift(run_suite(name, &Params { seed: Some(seed), ..Params::default() }))?;
        *passed = report.passed();
        write_string(out, report.to_json())
    })
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn catsl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
