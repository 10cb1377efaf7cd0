//! C ABI for the hypergroup library: opaque handles, integer status
//! codes, caller-freed JSON/string outputs and a thread-local last-error
//! message. The header is generated into include/hyperstruct.h at build
//! time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use hyperstruct::functors::{build_relation, RelationKind};
use hyperstruct::quotients::{abelian_invariants, as_group, quotient};
use hyperstruct::{io, Error, Hypergroup};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HsStatus {
    HsOk = 0,
    /// A required pointer argument was null.
    HsNullArgument = 1,
    /// A string argument was not valid UTF-8.
    HsInvalidUtf8 = 2,
    /// The input could not be parsed.
    HsParseError = 3,
    /// The table parsed but violates the hypergroup axioms.
    HsAxiomError = 4,
    /// The computation itself failed; see hs_last_error().
    HsComputeError = 5,
}

/// Opaque handle to a validated hypergroup.
pub struct HsHypergroup {
    inner: Hypergroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul-free error message");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> HsStatus {
    match e {
        Error::Parse(_) => HsStatus::HsParseError,
        Error::Axioms(_) => HsStatus::HsAxiomError,
        _ => HsStatus::HsComputeError,
    }
}

fn fail(e: Error) -> HsStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

/// # Safety
/// `s` must be a valid nul-terminated string or null.
unsafe fn utf8_arg<'a>(s: *const c_char) -> Result<&'a str, HsStatus> {
    if s.is_null() {
        set_error("null string argument".into());
        return Err(HsStatus::HsNullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8".into());
        HsStatus::HsInvalidUtf8
    })
}

fn return_string(s: String, out: *mut *mut c_char) -> HsStatus {
    let c = match CString::new(s) {
        Ok(c) => c,
        Err(_) => {
            set_error("output contained an interior nul byte".into());
            return HsStatus::HsComputeError;
        }
    };
    unsafe { *out = c.into_raw() };
    HsStatus::HsOk
}

/// Parses a Cayley table (JSON or whitespace text) and validates the
/// hypergroup axioms. On HS_OK, *out owns a handle the caller must
/// release with hs_free().
///
/// # Safety
/// `text` must be a valid nul-terminated string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_parse(text: *const c_char, out: *mut *mut HsHypergroup) -> HsStatus {
    if out.is_null() {
        set_error("null output argument".into());
        return HsStatus::HsNullArgument;
    }
    *out = ptr::null_mut();
    let text = match utf8_arg(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match io::parse_auto(text) {
        Ok(h) => {
            *out = Box::into_raw(Box::new(HsHypergroup { inner: h }));
            HsStatus::HsOk
        }
        Err(e) => fail(e),
    }
}

/// Releases a handle returned by hs_parse(). Null is a no-op.
///
/// # Safety
/// `h` must be null or a pointer obtained from hs_parse() that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn hs_free(h: *mut HsHypergroup) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of elements, or 0 if the handle is null.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_size(h: *const HsHypergroup) -> u32 {
    if h.is_null() {
        0
    } else {
        (*h).inner.size() as u32
    }
}

/// Classification flags as a JSON object string in *out; free with
/// hs_string_free().
///
/// # Safety
/// `h` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_classify_json(
    h: *const HsHypergroup,
    out: *mut *mut c_char,
) -> HsStatus {
    if h.is_null() || out.is_null() {
        set_error("null argument".into());
        return HsStatus::HsNullArgument;
    }
    let hg = &(*h).inner;
    let f = hg.flags();
    let json = serde_json::json!({
        "size": hg.size(),
        "associative": f.associative,
        "reproductive": f.reproductive,
        "commutative": f.commutative,
        "regular": f.regular,
        "strongly_regular": f.strongly_regular,
        "canonical": f.canonical,
        "hg_class": f.hg_class,
    });
    return_string(json.to_string(), out)
}

fn rel_of(hg: &Hypergroup, rel: &str, cap: u32) -> Result<hyperstruct::EquivRelation, Error> {
    build_relation(hg, &RelationKind::parse(rel, cap as usize)?)
}

/// Blocks of a named relation (beta|gamma|alpha|delta|nabla|lambda|
/// mod:<names>) as a JSON array of name arrays in *out; `cap` is the
/// tuple-length cap for alpha. Free with hs_string_free().
///
/// # Safety
/// `h` must be a live handle; `rel` a valid nul-terminated string; `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_relation_blocks_json(
    h: *const HsHypergroup,
    rel: *const c_char,
    cap: u32,
    out: *mut *mut c_char,
) -> HsStatus {
    if h.is_null() || out.is_null() {
        set_error("null argument".into());
        return HsStatus::HsNullArgument;
    }
    let rel = match utf8_arg(rel) {
        Ok(r) => r,
        Err(s) => return s,
    };
    let hg = &(*h).inner;
    match rel_of(hg, rel, cap) {
        Ok(r) => return_string(io::blocks_json(hg, &r), out),
        Err(e) => fail(e),
    }
}

/// Invariant-factor form of the quotient group by a named strongly
/// regular relation, e.g. "Z_4", in *out. Free with hs_string_free().
///
/// # Safety
/// Same contract as hs_relation_blocks_json().
#[no_mangle]
pub unsafe extern "C" fn hs_quotient_invariants(
    h: *const HsHypergroup,
    rel: *const c_char,
    cap: u32,
    out: *mut *mut c_char,
) -> HsStatus {
    if h.is_null() || out.is_null() {
        set_error("null argument".into());
        return HsStatus::HsNullArgument;
    }
    let rel = match utf8_arg(rel) {
        Ok(r) => r,
        Err(s) => return s,
    };
    let hg = &(*h).inner;
    let run = || -> Result<String, Error> {
        let r = rel_of(hg, rel, cap)?;
        let inv = abelian_invariants(&as_group(&quotient(hg, &r)?)?)?;
        Ok(inv.to_string())
    };
    match run() {
        Ok(s) => return_string(s, out),
        Err(e) => fail(e),
    }
}

/// Frees a string returned by any hs_*_json/invariants function. Null is
/// a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn hs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last error on this thread, or null if none. The
/// pointer is owned by the library and valid until the next failing call
/// on the same thread.
#[no_mangle]
pub extern "C" fn hs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null(), |msg| msg.as_ptr())
    })
}
