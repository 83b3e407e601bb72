//! C interface to `vcat`. Workspaces are opaque handles; reports come back
//! as heap strings that the caller releases with [`vcat_string_free`].
//!
//! Every function returns a [`VcatStatus`]. On anything other than `Ok`
//! or `CheckFailed`, [`vcat_last_error`] describes what went wrong on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vcat::cli::{resolve, FunMode, Outcome, Resolved, WorkspaceFile};
use vcat::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcatStatus {
    Ok = 0,
    /// The command ran and at least one check failed.
    CheckFailed = 1,
    /// Null pointer, bad UTF-8 or an argument out of range.
    InvalidArgument = 2,
    /// The workspace text is not valid JSON or does not match the schema.
    Parse = 3,
    /// A name does not resolve, or values do not fit together.
    Reference = 4,
    /// An enumeration ran past its budget.
    Budget = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

/// A parsed and resolved workspace.
pub struct VcatWorkspace {
    resolved: Resolved,
}

/// How `vcat_fun` should check the function space.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcatFunMode {
    Levels = 0,
    Segal = 1,
    Complete = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> VcatStatus {
    match e {
        Error::Parse { .. } | Error::Unsupported(_) => VcatStatus::Parse,
        Error::BoundExceeded { .. } => VcatStatus::Budget,
        Error::Precondition(_) | Error::OutOfRange(_) => VcatStatus::InvalidArgument,
        _ => VcatStatus::Reference,
    }
}

fn fail(status: VcatStatus, msg: &str) -> VcatStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<VcatStatus, (VcatStatus, String)>) -> VcatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => fail(s, &msg),
        Err(_) => fail(VcatStatus::Internal, "panic inside vcat"),
    }
}

fn lift(e: Error) -> (VcatStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (VcatStatus, String)> {
    if p.is_null() {
        return Err((VcatStatus::InvalidArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (VcatStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn workspace<'a>(ws: *const VcatWorkspace) -> Result<&'a VcatWorkspace, (VcatStatus, String)> {
    ws.as_ref()
        .ok_or_else(|| (VcatStatus::InvalidArgument, "workspace is null".to_string()))
}

unsafe fn emit(outcome: Outcome, machine: bool, out: *mut *mut c_char) -> Result<VcatStatus, (VcatStatus, String)> {
    let text = CString::new(outcome.render(machine)).expect("reports contain no nul bytes");
    *out = text.into_raw();
    Ok(if outcome.passed() {
        VcatStatus::Ok
    } else {
        VcatStatus::CheckFailed
    })
}

fn check_out(out: *mut *mut c_char) -> Result<(), (VcatStatus, String)> {
    if out.is_null() {
        return Err((VcatStatus::InvalidArgument, "output pointer is null".into()));
    }
    Ok(())
}

/// The message for the last failed call on this thread. Owned by the
/// library and valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn vcat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn vcat_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses and resolves a workspace from JSON text. On success `*out` holds
/// a handle to release with [`vcat_workspace_free`].
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vcat_workspace_parse(
    text: *const c_char,
    budget: usize,
    out: *mut *mut VcatWorkspace,
) -> VcatStatus {
    guard(|| {
        if out.is_null() {
            return Err((VcatStatus::InvalidArgument, "output pointer is null".into()));
        }
        *out = ptr::null_mut();
        let text = str_arg(text, "text")?;
        let file = WorkspaceFile::parse(text).map_err(lift)?;
        let resolved = resolve(&file, budget).map_err(lift)?;
        *out = Box::into_raw(Box::new(VcatWorkspace { resolved }));
        Ok(VcatStatus::Ok)
    })
}

/// # Safety
/// `ws` must come from [`vcat_workspace_parse`] and not be used afterwards.
/// Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn vcat_workspace_free(ws: *mut VcatWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Checks every category, bimodule and functor.
///
/// # Safety
/// `ws` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vcat_validate(ws: *const VcatWorkspace, machine: bool, out: *mut *mut c_char) -> VcatStatus {
    guard(|| {
        check_out(out)?;
        emit(workspace(ws)?.resolved.validate(), machine, out)
    })
}

/// Composes bimodules `m` and `n` over the category `b` and compares the
/// result with the coend oracle.
///
/// # Safety
/// `ws` must be a live handle, the names nul-terminated strings and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vcat_compose(
    ws: *const VcatWorkspace,
    m: *const c_char,
    b: *const c_char,
    n: *const c_char,
    budget: usize,
    machine: bool,
    out: *mut *mut c_char,
) -> VcatStatus {
    guard(|| {
        check_out(out)?;
        let (m, b, n) = (str_arg(m, "m")?, str_arg(b, "b")?, str_arg(n, "n")?);
        let o = workspace(ws)?.resolved.compose(m, b, n, budget).map_err(lift)?;
        emit(o, machine, out)
    })
}

/// Builds the composite algebra of a named chain and checks the Segal
/// condition.
///
/// # Safety
/// As for [`vcat_compose`].
#[no_mangle]
pub unsafe extern "C" fn vcat_segal(
    ws: *const VcatWorkspace,
    chain: *const c_char,
    machine: bool,
    out: *mut *mut c_char,
) -> VcatStatus {
    guard(|| {
        check_out(out)?;
        let chain = str_arg(chain, "chain")?;
        let o = workspace(ws)?.resolved.segal(chain).map_err(lift)?;
        emit(o, machine, out)
    })
}

/// Enumerates functors `c ⊗ [k] -> d` up to `level` and runs the checks
/// selected by `mode`.
///
/// # Safety
/// As for [`vcat_compose`].
#[no_mangle]
pub unsafe extern "C" fn vcat_fun(
    ws: *const VcatWorkspace,
    c: *const c_char,
    d: *const c_char,
    level: usize,
    mode: VcatFunMode,
    budget: usize,
    machine: bool,
    out: *mut *mut c_char,
) -> VcatStatus {
    guard(|| {
        check_out(out)?;
        let (c, d) = (str_arg(c, "c")?, str_arg(d, "d")?);
        let mode = match mode {
            VcatFunMode::Levels => FunMode::Plain,
            VcatFunMode::Segal => FunMode::Segal,
            VcatFunMode::Complete => FunMode::Complete,
        };
        let o = workspace(ws)?.resolved.fun(c, d, level, mode, budget).map_err(lift)?;
        emit(o, machine, out)
    })
}

/// Releases a report string. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vcat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
