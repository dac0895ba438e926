//! C ABI over the `vknot` engine.
//!
//! Diagrams and Temperley-Lieb elements are opaque heap handles released
//! with their `_free` function. Every call returns a [`VkStatus`]; outputs go
//! through pointer arguments. Strings returned to the caller are
//! NUL-terminated, owned by the caller and released with
//! [`vk_string_free`]. After a failed call, [`vk_last_error`] describes the
//! failure on the calling thread.
//!
//! The matching C declarations are in `include/vknot.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vknot::biquandle::{generalized_alexander, kishino_invariant};
use vknot::bracket::{bracket, f_poly, jones};
use vknot::cli::parse_code;
use vknot::diagram::Diagram;
use vknot::temperley_lieb::{canonical_factorization, TLElement};
use vknot::vassiliev::v3;

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Opaque diagram handle.
pub struct VkDiagram(Diagram);

/// Opaque Temperley-Lieb monoid element handle.
pub struct VkTl(TLElement);

/// Invariants exposed through [`vk_invariant`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VkInvariant {
    Bracket = 0,
    F = 1,
    Jones = 2,
    V3 = 3,
    Gpoly = 4,
    QuaternionicGcd = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl ToString) {
    let text = msg.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("NULs removed"));
}

fn fail(status: VkStatus, msg: impl ToString) -> VkStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> VkStatus) -> VkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(VkStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, VkStatus> {
    if p.is_null() {
        return Err(fail(VkStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(VkStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> VkStatus {
    if out.is_null() {
        return fail(VkStatus::NullPointer, "null output pointer");
    }
    let c = CString::new(s).expect("rendered text has no NUL");
    *out = c.into_raw();
    VkStatus::Ok
}

/// Message of the last failure on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn vk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn vk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a Gauss code (or a PD code when the text contains `[`).
///
/// # Safety
/// `code` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_parse(code: *const c_char, out: *mut *mut VkDiagram) -> VkStatus {
    guard(|| {
        if out.is_null() {
            return fail(VkStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(code) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_code(text) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(VkDiagram(d)));
                VkStatus::Ok
            }
            Err(e) => fail(VkStatus::Parse, e),
        }
    })
}

/// Releases a diagram. Null is ignored.
///
/// # Safety
/// `d` must be null or a handle from [`vk_diagram_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_free(d: *mut VkDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

unsafe fn diagram<'a>(d: *const VkDiagram) -> Result<&'a Diagram, VkStatus> {
    d.as_ref().map(|h| &h.0).ok_or_else(|| fail(VkStatus::NullPointer, "null diagram handle"))
}

/// Number of classical crossings.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_crossings(d: *const VkDiagram, out: *mut usize) -> VkStatus {
    guard(|| {
        let d = match diagram(d) {
            Ok(d) => d,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(VkStatus::NullPointer, "null output pointer");
        }
        *out = d.num_crossings();
        VkStatus::Ok
    })
}

/// Writhe (sum of crossing signs).
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_writhe(d: *const VkDiagram, out: *mut i64) -> VkStatus {
    guard(|| {
        let d = match diagram(d) {
            Ok(d) => d,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(VkStatus::NullPointer, "null output pointer");
        }
        *out = d.writhe();
        VkStatus::Ok
    })
}

/// Canonical Gauss code.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_gauss(d: *const VkDiagram, out: *mut *mut c_char) -> VkStatus {
    guard(|| match diagram(d) {
        Ok(d) => write_string(out, d.to_gauss()),
        Err(s) => s,
    })
}

/// Computes an invariant and returns its canonical text rendering.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_invariant(d: *const VkDiagram, which: VkInvariant, out: *mut *mut c_char) -> VkStatus {
    guard(|| {
        let d = match diagram(d) {
            Ok(d) => d,
            Err(s) => return s,
        };
        let text = match which {
            VkInvariant::Bracket => bracket(d).map(|p| p.render()).map_err(|e| e.to_string()),
            VkInvariant::F => f_poly(d).map(|p| p.render()).map_err(|e| e.to_string()),
            VkInvariant::Jones => jones(d).map(|p| p.render()).map_err(|e| e.to_string()),
            VkInvariant::V3 => v3(d).map(|r| r.to_string()).map_err(|e| e.to_string()),
            VkInvariant::Gpoly => generalized_alexander(d).map(|p| p.render()).map_err(|e| e.to_string()),
            VkInvariant::QuaternionicGcd => {
                kishino_invariant(d).map(|r| r.codim1_gcd.render()).map_err(|e| e.to_string())
            }
        };
        match text {
            Ok(t) => write_string(out, t),
            Err(e) => fail(VkStatus::Domain, e),
        }
    })
}

/// Parses a Temperley-Lieb element written as a pairing list like `1-2,1'-2'`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_tl_parse(text: *const c_char, out: *mut *mut VkTl) -> VkStatus {
    guard(|| {
        if out.is_null() {
            return fail(VkStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match text.parse::<TLElement>() {
            Ok(u) => {
                *out = Box::into_raw(Box::new(VkTl(u)));
                VkStatus::Ok
            }
            Err(e) => fail(VkStatus::Parse, e),
        }
    })
}

/// Releases a Temperley-Lieb element. Null is ignored.
///
/// # Safety
/// `u` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vk_tl_free(u: *mut VkTl) {
    if !u.is_null() {
        drop(Box::from_raw(u));
    }
}

unsafe fn tl<'a>(u: *const VkTl) -> Result<&'a TLElement, VkStatus> {
    u.as_ref().map(|h| &h.0).ok_or_else(|| fail(VkStatus::NullPointer, "null element handle"))
}

/// Product `a * b`; `loops` receives the number of closed loops removed.
///
/// # Safety
/// `a` and `b` must be live handles; `out` and `loops` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_tl_mul(a: *const VkTl, b: *const VkTl, out: *mut *mut VkTl, loops: *mut usize) -> VkStatus {
    guard(|| {
        let (a, b) = match (tl(a), tl(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        if out.is_null() || loops.is_null() {
            return fail(VkStatus::NullPointer, "null output pointer");
        }
        match a.mul(b) {
            Ok((p, k)) => {
                *out = Box::into_raw(Box::new(VkTl(p)));
                *loops = k;
                VkStatus::Ok
            }
            Err(e) => fail(VkStatus::Domain, e),
        }
    })
}

/// Pairing-list text of an element.
///
/// # Safety
/// `u` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_tl_to_string(u: *const VkTl, out: *mut *mut c_char) -> VkStatus {
    guard(|| match tl(u) {
        Ok(u) => write_string(out, u.to_string()),
        Err(s) => s,
    })
}

/// Canonical generator word. Writes up to `cap` indices into `buf` and the
/// full length into `len`; returns `BufferTooSmall` when `cap < *len`.
///
/// # Safety
/// `u` must be a live handle; `buf` must hold `cap` entries (may be null
/// when `cap` is 0); `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_tl_factor(u: *const VkTl, buf: *mut usize, cap: usize, len: *mut usize) -> VkStatus {
    guard(|| {
        let u = match tl(u) {
            Ok(u) => u,
            Err(s) => return s,
        };
        if len.is_null() || (buf.is_null() && cap > 0) {
            return fail(VkStatus::NullPointer, "null output pointer");
        }
        let word = canonical_factorization(u);
        *len = word.len();
        if cap < word.len() {
            return fail(VkStatus::BufferTooSmall, format!("word has {} letters", word.len()));
        }
        if !word.is_empty() {
            ptr::copy_nonoverlapping(word.as_ptr(), buf, word.len());
        }
        VkStatus::Ok
    })
}
