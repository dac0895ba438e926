use std::ffi::{c_char, CStr, CString};
use std::ptr;

use vknot_ffi::*;

const TREFOIL: &str = "(o1+)(u2+)(o3+)(u1+)(o2+)(u3+)";

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { vk_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(vk_last_error()) }.to_str().unwrap().to_string()
}

fn parse(code: &str) -> Result<*mut VkDiagram, VkStatus> {
    let c = CString::new(code).unwrap();
    let mut d = ptr::null_mut();
    match unsafe { vk_diagram_parse(c.as_ptr(), &mut d) } {
        VkStatus::Ok => Ok(d),
        s => Err(s),
    }
}

fn invariant(d: *const VkDiagram, which: VkInvariant) -> Result<String, VkStatus> {
    let mut s = ptr::null_mut();
    match unsafe { vk_invariant(d, which, &mut s) } {
        VkStatus::Ok => Ok(take(s)),
        st => Err(st),
    }
}

#[test]
fn trefoil_invariants() {
    let d = parse(TREFOIL).unwrap();
    assert_eq!(invariant(d, VkInvariant::Bracket).unwrap(), "-A^5 - A^-3 + A^-7");
    assert_eq!(invariant(d, VkInvariant::F).unwrap(), "A^-4 + A^-12 - A^-16");
    assert_eq!(invariant(d, VkInvariant::V3).unwrap(), "1");
    assert_eq!(invariant(d, VkInvariant::Gpoly).unwrap(), "0");
    let mut n = 0usize;
    let mut w = 0i64;
    unsafe {
        assert_eq!(vk_diagram_crossings(d, &mut n), VkStatus::Ok);
        assert_eq!(vk_diagram_writhe(d, &mut w), VkStatus::Ok);
    }
    assert_eq!((n, w), (3, 3));
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { vk_diagram_gauss(d, &mut g) }, VkStatus::Ok);
    assert_eq!(take(g), TREFOIL);
    unsafe { vk_diagram_free(d) };
}

#[test]
fn matches_library() {
    let code = "(o1+)(o2+)(u1+)(u2+)";
    let d = parse(code).unwrap();
    let lib = vknot::diagram::parse_gauss(code).unwrap();
    assert_eq!(invariant(d, VkInvariant::Jones).unwrap(), vknot::bracket::jones(&lib).unwrap().render());
    assert_eq!(
        invariant(d, VkInvariant::Gpoly).unwrap(),
        vknot::biquandle::generalized_alexander(&lib).unwrap().render()
    );
    assert_eq!(
        invariant(d, VkInvariant::QuaternionicGcd).unwrap(),
        vknot::biquandle::kishino_invariant(&lib).unwrap().codim1_gcd.render()
    );
    unsafe { vk_diagram_free(d) };
}

#[test]
fn parse_errors() {
    assert_eq!(parse("(o1+)(o1+)").unwrap_err(), VkStatus::Parse);
    assert!(last_error().contains("undercrossing"));
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { vk_diagram_parse(ptr::null(), &mut d) }, VkStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { vk_diagram_parse(bad.as_ptr() as *const c_char, &mut d) }, VkStatus::InvalidUtf8);
}

#[test]
fn domain_errors() {
    let d = parse("(o1+)(u2+);(u1+)(o2+)").unwrap();
    assert_eq!(invariant(d, VkInvariant::V3).unwrap_err(), VkStatus::Domain);
    assert!(last_error().contains("components"));
    unsafe { vk_diagram_free(d) };
    assert_eq!(invariant(ptr::null(), VkInvariant::F).unwrap_err(), VkStatus::NullPointer);
}

#[test]
fn null_frees_are_ignored() {
    unsafe {
        vk_diagram_free(ptr::null_mut());
        vk_tl_free(ptr::null_mut());
        vk_string_free(ptr::null_mut());
    }
}

#[test]
fn temperley_lieb() {
    let text = CString::new("1-2,1'-2'").unwrap();
    let mut u = ptr::null_mut();
    assert_eq!(unsafe { vk_tl_parse(text.as_ptr(), &mut u) }, VkStatus::Ok);
    let (mut p, mut loops) = (ptr::null_mut(), 0usize);
    assert_eq!(unsafe { vk_tl_mul(u, u, &mut p, &mut loops) }, VkStatus::Ok);
    assert_eq!(loops, 1);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { vk_tl_to_string(p, &mut s) }, VkStatus::Ok);
    assert_eq!(take(s), "1-2,1'-2'");

    let w = CString::new("1-2,3-1',2'-3'").unwrap();
    let mut x = ptr::null_mut();
    assert_eq!(unsafe { vk_tl_parse(w.as_ptr(), &mut x) }, VkStatus::Ok);
    let mut len = 0usize;
    assert_eq!(unsafe { vk_tl_factor(x, ptr::null_mut(), 0, &mut len) }, VkStatus::BufferTooSmall);
    assert_eq!(len, 2);
    let mut buf = [0usize; 2];
    assert_eq!(unsafe { vk_tl_factor(x, buf.as_mut_ptr(), 2, &mut len) }, VkStatus::Ok);
    assert_eq!(buf, [1, 2]);

    let three = CString::new("1-2,3-3',1'-2'").unwrap();
    let mut y = ptr::null_mut();
    assert_eq!(unsafe { vk_tl_parse(three.as_ptr(), &mut y) }, VkStatus::Ok);
    assert_eq!(unsafe { vk_tl_mul(u, y, &mut p, &mut loops) }, VkStatus::Domain);
    unsafe {
        vk_tl_free(u);
        vk_tl_free(x);
        vk_tl_free(y);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(vk_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
