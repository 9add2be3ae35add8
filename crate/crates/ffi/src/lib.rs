//! C ABI for the `qdbraid` library.
//!
//! Objects are opaque heap handles released with the matching `*_free`.
//! Every fallible call returns a [`QdStatus`]; on failure a description is
//! available from [`qd_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use qdbraid::braidrep::{MonomialOp, TensorPowerRep};
use qdbraid::cli::parse_variant;
use qdbraid::cocycle::parse_cocycle_spec;
use qdbraid::double::{Conventions, TwistedDouble};
use qdbraid::group::parse_group_spec;
use qdbraid::image::{analyze, coxeter_finite, AnalyzeOptions, DEFAULT_MAX_ELEMENTS};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

/// A twisted double `D^ω(G)`.
pub struct QdDouble(TwistedDouble);

/// The braid action on the `n`-th tensor power of the regular module.
pub struct QdRep(TensorPowerRep);

/// A monomial operator: `e_i ↦ ζ_r^{scal[i]} e_{perm[i]}`.
pub struct QdOp(MonomialOp);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn guard(f: impl FnOnce() -> Result<(), (QdStatus, String)>) -> QdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QdStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QdStatus::Panic
        }
    }
}

fn invalid(e: impl ToString) -> (QdStatus, String) {
    (QdStatus::InvalidArgument, e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (QdStatus, String)> {
    if p.is_null() {
        return Err((QdStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (QdStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, (QdStatus, String)> {
    p.as_ref().ok_or_else(|| (QdStatus::NullPointer, format!("{name} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (QdStatus, String)> {
    if out.is_null() {
        return Err((QdStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn qd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Build `D^ω(G)` from a group spec (`cyclic:4`, `quaternion`, ...), a
/// cocycle spec (`trivial`, `cyclic:q`, `file:<path>`) and a variant
/// (`theta:standard`, `theta:printed`; null means standard).
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qd_double_new(
    group: *const c_char,
    cocycle: *const c_char,
    variant: *const c_char,
    out: *mut *mut QdDouble,
) -> QdStatus {
    guard(|| {
        let group = str_arg(group, "group")?;
        let cocycle = str_arg(cocycle, "cocycle")?;
        let variant = if variant.is_null() { "theta:standard" } else { str_arg(variant, "variant")? };
        let g = Arc::new(parse_group_spec(group).map_err(invalid)?);
        let w = parse_cocycle_spec(g, cocycle).map_err(invalid)?;
        let theta = parse_variant(variant).map_err(invalid)?;
        let d = TwistedDouble::with_conventions(w, Conventions::FROZEN.with_theta(theta));
        write_out(out, Box::into_raw(Box::new(QdDouble(d))))
    })
}

/// # Safety
/// `d` must be null or a handle from [`qd_double_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qd_double_free(d: *mut QdDouble) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Order of `G`, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qd_double_group_order(d: *const QdDouble) -> usize {
    d.as_ref().map_or(0, |d| d.0.cocycle().group().order())
}

/// Root-of-unity order `r` of the cocycle, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qd_double_root_order(d: *const QdDouble) -> u32 {
    d.as_ref().map_or(0, |d| d.0.r())
}

/// Run every structure check; `*passed` is 1 when all hold. A failing
/// check is described by [`qd_last_error`] while the status stays `Ok`.
///
/// # Safety
/// `d` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn qd_double_verify(d: *const QdDouble, passed: *mut i32) -> QdStatus {
    let mut failure = String::new();
    let status = guard(|| {
        let d = &ref_arg(d, "double")?.0;
        let result = d
            .cocycle()
            .check()
            .map_err(|v| v.to_string())
            .and_then(|_| d.check_associativity(1).map(|_| ()).map_err(|v| v.to_string()))
            .and_then(|_| d.check_unit().map_err(|v| v.to_string()))
            .and_then(|_| d.check_counit().map_err(|v| v.to_string()))
            .and_then(|_| d.check_coproduct_multiplicative().map_err(|v| v.to_string()))
            .and_then(|_| d.check_r_inverse().map_err(|v| v.to_string()));
        if let Err(e) = &result {
            failure = e.clone();
        }
        write_out(passed, i32::from(result.is_ok()))
    });
    if status == QdStatus::Ok && !failure.is_empty() {
        set_error(failure);
    }
    status
}

/// Tensor power representation on `n ≥ 1` strands.
///
/// # Safety
/// `d` must be a live handle and `out` writable. The double is copied.
#[no_mangle]
pub unsafe extern "C" fn qd_rep_new(d: *const QdDouble, n: usize, out: *mut *mut QdRep) -> QdStatus {
    guard(|| {
        let d = &ref_arg(d, "double")?.0;
        let rep = TensorPowerRep::new(d.clone(), n).map_err(invalid)?;
        write_out(out, Box::into_raw(Box::new(QdRep(rep))))
    })
}

/// # Safety
/// `rep` must be null or a handle from [`qd_rep_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qd_rep_free(rep: *mut QdRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Dimension `|G|^{2n}`, or 0 for a null handle.
///
/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qd_rep_dim(rep: *const QdRep) -> usize {
    rep.as_ref().map_or(0, |r| r.0.dim())
}

/// Operator of `β_i`, `1 ≤ i < n`.
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qd_rep_braid_generator(rep: *const QdRep, i: usize, out: *mut *mut QdOp) -> QdStatus {
    guard(|| {
        let op = ref_arg(rep, "rep")?.0.braid_generator(i).map_err(invalid)?;
        write_out(out, Box::into_raw(Box::new(QdOp(op))))
    })
}

/// Operator of the band generator `A_ij`, `1 ≤ i < j ≤ n`.
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qd_rep_pure_generator(
    rep: *const QdRep,
    i: usize,
    j: usize,
    out: *mut *mut QdOp,
) -> QdStatus {
    guard(|| {
        let op = ref_arg(rep, "rep")?.0.pure_braid_generator(i, j).map_err(invalid)?;
        write_out(out, Box::into_raw(Box::new(QdOp(op))))
    })
}

/// # Safety
/// `op` must be null or an operator handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qd_op_free(op: *mut QdOp) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// # Safety
/// `op` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qd_op_dim(op: *const QdOp) -> usize {
    op.as_ref().map_or(0, |o| o.0.dim())
}

/// # Safety
/// `op` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qd_op_root_order(op: *const QdOp) -> u32 {
    op.as_ref().map_or(0, |o| o.0.r())
}

unsafe fn copy_out(src: &[u32], buf: *mut u32, len: usize) -> Result<(), (QdStatus, String)> {
    if len < src.len() {
        return Err((QdStatus::BufferTooSmall, format!("need {} entries, got {len}", src.len())));
    }
    if buf.is_null() {
        return Err((QdStatus::NullPointer, "buffer is null".into()));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    Ok(())
}

/// Copy the permutation (`dim` entries) into `buf`.
///
/// # Safety
/// `op` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qd_op_perm(op: *const QdOp, buf: *mut u32, len: usize) -> QdStatus {
    guard(|| copy_out(ref_arg(op, "op")?.0.perm(), buf, len))
}

/// Copy the scalar exponents (`dim` entries, each in `[0, r)`) into `buf`.
///
/// # Safety
/// `op` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qd_op_scal(op: *const QdOp, buf: *mut u32, len: usize) -> QdStatus {
    guard(|| copy_out(ref_arg(op, "op")?.0.scal(), buf, len))
}

/// Analyze the braid and pure braid images on `n` strands and return the
/// report as JSON. `max_elements = 0` selects the default budget. Release
/// the string with [`qd_string_free`].
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qd_analyze_json(
    d: *const QdDouble,
    n: usize,
    max_elements: usize,
    out: *mut *mut c_char,
) -> QdStatus {
    guard(|| {
        let d = &ref_arg(d, "double")?.0;
        let max_elements = if max_elements == 0 { DEFAULT_MAX_ELEMENTS } else { max_elements };
        let report = analyze(d, n, &AnalyzeOptions { max_elements, ..AnalyzeOptions::default() }).map_err(invalid)?;
        let text = serde_json::to_string(&report).map_err(invalid)?;
        write_out(out, CString::new(text).map_err(invalid)?.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Coxeter's criterion: `*finite = 1` iff `1/n + 1/k > 1/2`.
///
/// # Safety
/// `finite` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qd_coxeter_finite(n: u64, k: u64, finite: *mut i32) -> QdStatus {
    guard(|| write_out(finite, i32::from(coxeter_finite(n, k).map_err(invalid)?)))
}
