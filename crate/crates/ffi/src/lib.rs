//! C ABI for `htgroups`.
//!
//! Elements are passed around as opaque `HtDiagram` handles created by the
//! library and released with [`ht_diagram_free`]. Every fallible call returns
//! an [`HtStatus`]; on failure, [`ht_last_error`] describes the most recent
//! error on the calling thread. Strings returned through out-parameters are
//! owned by the caller and must be released with [`ht_string_free`].
//!
//! Indices in the text forms and in `component` arguments are 1-based, as on
//! the command line.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};

use htgroups::cantor::to_prefix_map;
use htgroups::operad::independence_check;
use htgroups::text::{format_word, parse_word};
use htgroups::{count_trees, parse_diagram, Error, LeafAddress, PairedDiagram};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Arguments describe no valid object (bad arity, index out of range, ...).
    Invalid = 4,
    /// Operands belong to different groups.
    Mismatch = 5,
    /// A word too short for every rule of the map.
    InsufficientDepth = 6,
    Panic = 7,
}

/// A group element in reduced form.
pub struct HtDiagram(PairedDiagram);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HtStatus {
    match e {
        Error::Parse { .. } => HtStatus::Parse,
        Error::ArityMismatch { .. } | Error::RootMismatch { .. } | Error::BoundaryMismatch(_) => HtStatus::Mismatch,
        Error::InsufficientDepth(_) => HtStatus::InsufficientDepth,
        _ => HtStatus::Invalid,
    }
}

struct Fail(HtStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> HtStatus {
    match panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => HtStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HtStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(HtStatus::NullPointer, format!("{what} is null"))
}

unsafe fn utf8<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(HtStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn element<'a>(d: *const HtDiagram, what: &str) -> Result<&'a PairedDiagram, Fail> {
    d.as_ref().map(|h| &h.0).ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_element(out: *mut *mut HtDiagram, d: PairedDiagram) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(HtDiagram(d))));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Fail(HtStatus::Invalid, "string contains NUL".into()))?;
    out.write(c.into_raw());
    Ok(())
}

fn same_group(x: &PairedDiagram, y: &PairedDiagram) -> Result<(), Fail> {
    if x.arity() != y.arity() || x.roots() != y.roots() {
        return Err(Fail(HtStatus::Mismatch, "elements belong to different groups".into()));
    }
    Ok(())
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ht_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ht_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse `F-;[perm];F+`. `default_arity` applies only when neither forest has
/// an internal node. The result is reduced.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_parse(
    text: *const c_char,
    default_arity: usize,
    out: *mut *mut HtDiagram,
) -> HtStatus {
    guard(|| {
        let s = utf8(text, "text")?;
        let d = parse_diagram(s, default_arity)?;
        put_element(out, d.reduce())
    })
}

/// Seeded random reduced element of V(arity, roots) with `carets` carets per forest.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_random(
    arity: usize,
    roots: usize,
    carets: usize,
    seed: u64,
    out: *mut *mut HtDiagram,
) -> HtStatus {
    guard(|| put_element(out, PairedDiagram::random(arity, roots, carets, seed)?))
}

/// The identity of V(arity, roots).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_identity(arity: usize, roots: usize, out: *mut *mut HtDiagram) -> HtStatus {
    guard(|| put_element(out, PairedDiagram::identity(arity, roots)?))
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `d` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_free(d: *mut HtDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_to_string(d: *const HtDiagram, out: *mut *mut c_char) -> HtStatus {
    guard(|| put_string(out, element(d, "diagram")?.to_string()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ht_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `d` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_arity(d: *const HtDiagram) -> usize {
    d.as_ref().map_or(0, |h| h.0.arity())
}

/// # Safety
/// `d` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_roots(d: *const HtDiagram) -> usize {
    d.as_ref().map_or(0, |h| h.0.roots())
}

/// # Safety
/// `d` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_leaf_count(d: *const HtDiagram) -> usize {
    d.as_ref().map_or(0, |h| h.0.leaf_count())
}

/// `x * y`: `y` acts first.
///
/// # Safety
/// `x`, `y` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_multiply(
    x: *const HtDiagram,
    y: *const HtDiagram,
    out: *mut *mut HtDiagram,
) -> HtStatus {
    guard(|| {
        let (x, y) = (element(x, "x")?, element(y, "y")?);
        same_group(x, y)?;
        put_element(out, x.multiply(y)?)
    })
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_invert(d: *const HtDiagram, out: *mut *mut HtDiagram) -> HtStatus {
    guard(|| put_element(out, element(d, "diagram")?.invert()))
}

/// A reduced copy. Handles are always reduced, so this is a copy.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_reduce(d: *const HtDiagram, out: *mut *mut HtDiagram) -> HtStatus {
    guard(|| put_element(out, element(d, "diagram")?.reduce()))
}

/// # Safety
/// `x`, `y` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_equal(x: *const HtDiagram, y: *const HtDiagram, out: *mut bool) -> HtStatus {
    guard(|| {
        let (x, y) = (element(x, "x")?, element(y, "y")?);
        same_group(x, y)?;
        put(out, x.equivalent(y))
    })
}

/// Image of the finite word `word` in copy `component` (1-based) of the
/// Cantor set, written `j:word`.
///
/// # Safety
/// `d` must be a live handle, `word` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_diagram_apply_word(
    d: *const HtDiagram,
    component: usize,
    word: *const c_char,
    out: *mut *mut c_char,
) -> HtStatus {
    guard(|| {
        let d = element(d, "diagram")?;
        if component == 0 || component > d.roots() {
            return Err(Fail(HtStatus::Invalid, format!("component {component} out of range 1..={}", d.roots())));
        }
        let w = parse_word(utf8(word, "word")?, d.arity())?;
        let image = to_prefix_map(d).apply(&LeafAddress::new(component - 1, w))?;
        put_string(out, format!("{}:{}", image.root + 1, format_word(&image.word, d.arity())))
    })
}

/// Number of `arity`-ary trees with `leaves` leaves, in decimal.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_count_trees(arity: usize, leaves: usize, out: *mut *mut c_char) -> HtStatus {
    guard(|| {
        if arity < 2 {
            return Err(Error::InvalidArity(arity).into());
        }
        put_string(out, count_trees(arity, leaves).to_string())
    })
}

/// Whether `numbers[0..len]` (each at least 2) are multiplicatively independent.
///
/// # Safety
/// `numbers` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_independence_check(numbers: *const u64, len: usize, out: *mut bool) -> HtStatus {
    guard(|| {
        if numbers.is_null() && len > 0 {
            return Err(null("numbers"));
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(numbers, len) };
        if let Some(bad) = slice.iter().find(|&&n| n < 2) {
            return Err(Fail(HtStatus::Invalid, format!("{bad} is below 2")));
        }
        put(out, independence_check(slice))
    })
}
