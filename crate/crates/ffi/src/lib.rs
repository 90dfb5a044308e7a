//! C ABI for the marked-bases kernel.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every function returns an
//! [`MbStatus`]; on failure a description is available from
//! [`mb_last_error_message`] until the next call on the same thread.
//! Strings handed out by the library are released with [`mb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use marked_bases::cli::{deserialize_resolution, parse_document, serialize_resolution, InputDocument, Object};
use marked_bases::marked::{is_marked_basis, BasisMode, BasisVerdict, MarkedSet};
use marked_bases::monom::pommaret_completion;
use marked_bases::ring::Rational;
use marked_bases::syzygy::{free_resolution, minimize_resolution, FreeResolution};

/// Result of a call. `MB_STATUS_NEGATIVE` is a valid mathematical answer
/// such as "not a marked basis".
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MbStatus {
    Ok = 0,
    Negative = 1,
    InvalidInput = 2,
    NullPointer = 3,
    Internal = 4,
}

/// A parsed input document.
pub struct MbDocument(InputDocument);

/// A free resolution with rational coefficients.
pub struct MbResolution(FreeResolution<Rational>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

type Failure = (MbStatus, String);

fn guard(f: impl FnOnce() -> Result<MbStatus, Failure>) -> MbStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MbStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    (MbStatus::NullPointer, format!("{what} is null"))
}

fn invalid(message: impl ToString) -> Failure {
    (MbStatus::InvalidInput, message.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// The object called `name`, or the last one when `name` is null.
unsafe fn object(doc: &InputDocument, name: *const c_char) -> Result<&Object, Failure> {
    if name.is_null() {
        return doc.last().map(|(_, o)| o).ok_or_else(|| invalid("the document defines no objects"));
    }
    let name = read_str(name, "name")?;
    doc.get(name).ok_or_else(|| invalid(format!("no object named {name}")))
}

/// Parses an input document. On success `*out` owns a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mb_document_parse(text: *const c_char, out: *mut *mut MbDocument) -> MbStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let doc = parse_document(text).map_err(invalid)?;
        write_out(out, Box::into_raw(Box::new(MbDocument(doc))), "out")?;
        Ok(MbStatus::Ok)
    })
}

/// Releases a document; null is ignored.
///
/// # Safety
/// `doc` must come from [`mb_document_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mb_document_free(doc: *mut MbDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Number of named objects in the document.
///
/// # Safety
/// `doc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mb_document_object_count(doc: *const MbDocument, out: *mut usize) -> MbStatus {
    guard(|| {
        let doc = doc.as_ref().ok_or_else(|| null("doc"))?;
        write_out(out, doc.0.objects.len(), "out")?;
        Ok(MbStatus::Ok)
    })
}

/// Canonical text of the document, accepted by [`mb_document_parse`].
///
/// # Safety
/// `doc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mb_document_to_string(doc: *const MbDocument, out: *mut *mut c_char) -> MbStatus {
    guard(|| {
        let doc = doc.as_ref().ok_or_else(|| null("doc"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_out(out, to_c_string(doc.0.to_string()), "out")?;
        Ok(MbStatus::Ok)
    })
}

/// Tests whether the marked set `name` (null: the last object) is a marked
/// basis. Returns `MB_STATUS_OK` for a basis and `MB_STATUS_NEGATIVE`
/// otherwise; in that case `*certificate`, if `certificate` is not null,
/// receives a description of a prolongation with non-zero normal form.
///
/// # Safety
/// `doc` must be a live handle; `name` null or a NUL-terminated string;
/// `certificate` null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mb_check_marked_basis(
    doc: *const MbDocument,
    name: *const c_char,
    certificate: *mut *mut c_char,
) -> MbStatus {
    guard(|| {
        let doc = doc.as_ref().ok_or_else(|| null("doc"))?;
        let Object::Marked(g) = object(&doc.0, name)? else {
            return Err(invalid("the object is not a marked set"));
        };
        if !certificate.is_null() {
            certificate.write(ptr::null_mut());
        }
        match is_marked_basis(g, BasisMode::Full).map_err(|e| (MbStatus::Internal, e.to_string()))? {
            BasisVerdict::NotBasis(c) => {
                if !certificate.is_null() {
                    let text = format!("x{}*f{} has normal form {}", c.variable, c.element + 1, c.remainder);
                    certificate.write(to_c_string(text));
                }
                Ok(MbStatus::Negative)
            }
            _ => Ok(MbStatus::Ok),
        }
    })
}

/// Resolves the object `name` (null: the last object): a marked basis, or
/// a quasi-stable monomial module through its Pommaret basis. Returns
/// `MB_STATUS_NEGATIVE` when the marked set is not a basis or the module
/// is not quasi-stable.
///
/// # Safety
/// `doc` must be a live handle; `name` null or a NUL-terminated string;
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mb_resolve(
    doc: *const MbDocument,
    name: *const c_char,
    minimize: bool,
    out: *mut *mut MbResolution,
) -> MbStatus {
    guard(|| {
        let doc = doc.as_ref().ok_or_else(|| null("doc"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let g = match object(&doc.0, name)? {
            Object::Marked(g) => g.clone(),
            Object::Monomial { module, .. } => match pommaret_completion(module) {
                Ok(b) => MarkedSet::monomial(b),
                Err(e) => return Err((MbStatus::Negative, e.to_string())),
            },
        };
        if !is_marked_basis(&g, BasisMode::Full)
            .map_err(|e| (MbStatus::Internal, e.to_string()))?
            .is_basis()
        {
            return Err((MbStatus::Negative, "the marked set is not a marked basis".into()));
        }
        let internal = |e: marked_bases::syzygy::SyzygyError| (MbStatus::Internal, e.to_string());
        let mut r = free_resolution(&g).map_err(internal)?;
        if minimize {
            r = minimize_resolution(&r).map_err(internal)?;
        }
        write_out(out, Box::into_raw(Box::new(MbResolution(r))), "out")?;
        Ok(MbStatus::Ok)
    })
}

/// Releases a resolution; null is ignored.
///
/// # Safety
/// `r` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mb_resolution_free(r: *mut MbResolution) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Index of the last free module.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mb_resolution_length(r: *const MbResolution, out: *mut usize) -> MbStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("resolution"))?;
        write_out(out, r.0.length(), "out")?;
        Ok(MbStatus::Ok)
    })
}

/// Number of generators of `F_level` of degree `degree`.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mb_resolution_rank(
    r: *const MbResolution,
    level: usize,
    degree: i64,
    out: *mut usize,
) -> MbStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("resolution"))?;
        if level > r.0.length() {
            return Err(invalid(format!("level {level} beyond length {}", r.0.length())));
        }
        let n = r.0.level(level).degrees().iter().filter(|&&d| d == degree).count();
        write_out(out, n, "out")?;
        Ok(MbStatus::Ok)
    })
}

/// JSON form of the resolution.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mb_resolution_to_json(r: *const MbResolution, out: *mut *mut c_char) -> MbStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("resolution"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_out(out, to_c_string(serialize_resolution(&r.0)), "out")?;
        Ok(MbStatus::Ok)
    })
}

/// Rebuilds a resolution from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mb_resolution_from_json(json: *const c_char, out: *mut *mut MbResolution) -> MbStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = deserialize_resolution(text).map_err(invalid)?;
        write_out(out, Box::into_raw(Box::new(MbResolution(r))), "out")?;
        Ok(MbStatus::Ok)
    })
}

/// Releases a string returned by the library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or the empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
