use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use vcat_ffi::*;

fn fixture(name: &str) -> CString {
    let p = format!("{}/../core/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    CString::new(std::fs::read_to_string(p).unwrap()).unwrap()
}

fn parse(name: &str) -> *mut VcatWorkspace {
    let mut ws = ptr::null_mut();
    let s = unsafe { vcat_workspace_parse(fixture(name).as_ptr(), 1 << 20, &mut ws) };
    assert_eq!(s, VcatStatus::Ok, "{}", last_error());
    ws
}

fn take(s: *mut c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { vcat_string_free(s) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(vcat_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn validate_and_compose() {
    let ws = parse("relations.json");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { vcat_validate(ws, false, &mut out) }, VcatStatus::Ok);
    assert!(take(out).contains("category X: pass"));
    let (m, b, n) = (CString::new("R").unwrap(), CString::new("Y").unwrap(), CString::new("S").unwrap());
    let s = unsafe { vcat_compose(ws, m.as_ptr(), b.as_ptr(), n.as_ptr(), 1 << 20, true, &mut out) };
    assert_eq!(s, VcatStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["passed"], true);
    unsafe { vcat_workspace_free(ws) };
}

#[test]
fn segal_and_fun() {
    let ws = parse("functions.json");
    let mut out = ptr::null_mut();
    let chain = CString::new("MN").unwrap();
    assert_eq!(unsafe { vcat_segal(ws, chain.as_ptr(), false, &mut out) }, VcatStatus::Ok);
    assert!(take(out).contains("Segal condition: pass"));
    let (c, d) = (CString::new("C").unwrap(), CString::new("B").unwrap());
    let s = unsafe { vcat_fun(ws, c.as_ptr(), d.as_ptr(), 2, VcatFunMode::Segal, 1 << 20, false, &mut out) };
    assert_eq!(s, VcatStatus::Ok, "{}", last_error());
    assert!(take(out).contains("level 2:"));
    unsafe { vcat_workspace_free(ws) };
}

#[test]
fn failed_checks_still_return_a_report() {
    let ws = parse("broken_functor.json");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { vcat_validate(ws, false, &mut out) }, VcatStatus::CheckFailed);
    assert!(take(out).contains("functor twist: FAIL"));
    unsafe { vcat_workspace_free(ws) };
}

#[test]
fn errors_map_to_statuses() {
    let mut ws = ptr::null_mut();
    let s = unsafe { vcat_workspace_parse(fixture("syntax.json").as_ptr(), 1 << 20, &mut ws) };
    assert_eq!(s, VcatStatus::Parse);
    assert!(ws.is_null());
    assert!(last_error().starts_with("5:30:"), "{}", last_error());

    let s = unsafe { vcat_workspace_parse(fixture("dangling.json").as_ptr(), 1 << 20, &mut ws) };
    assert_eq!(s, VcatStatus::Reference);
    assert!(last_error().contains("Missing"));

    assert_eq!(unsafe { vcat_workspace_parse(ptr::null(), 0, &mut ws) }, VcatStatus::InvalidArgument);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { vcat_validate(ptr::null(), false, &mut out) }, VcatStatus::InvalidArgument);

    let ws = parse("vectors.json");
    let (c, d) = (CString::new("C").unwrap(), CString::new("B").unwrap());
    let s = unsafe { vcat_fun(ws, c.as_ptr(), d.as_ptr(), 2, VcatFunMode::Levels, 3, false, &mut out) };
    assert_eq!(s, VcatStatus::Budget);
    let nope = CString::new("Nope").unwrap();
    assert_eq!(unsafe { vcat_segal(ws, nope.as_ptr(), false, &mut out) }, VcatStatus::Reference);
    unsafe { vcat_workspace_free(ws) };
    unsafe { vcat_workspace_free(ptr::null_mut()) };
    unsafe { vcat_string_free(ptr::null_mut()) };
}

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(vcat_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_everything() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/vcat.h")).unwrap();
    for f in [
        "vcat_workspace_parse", "vcat_workspace_free", "vcat_validate", "vcat_compose",
        "vcat_segal", "vcat_fun", "vcat_string_free", "vcat_last_error", "vcat_version",
        "VCAT_STATUS_BUDGET", "typedef struct VcatWorkspace VcatWorkspace",
    ] {
        assert!(h.contains(f), "{f} missing from header");
    }
    // compile the header if a C compiler is around
    if let Ok(o) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", "-"]).stdin(std::process::Stdio::piped()).spawn().and_then(|mut c| {
        use std::io::Write;
        c.stdin.take().unwrap().write_all(h.as_bytes())?;
        c.wait_with_output()
    }) {
        assert!(o.status.success(), "header does not compile");
    }
}
