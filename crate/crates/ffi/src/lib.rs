//! C ABI over `satposet`.
//!
//! Families and posets cross the boundary as opaque handles owned by the
//! caller and released with the matching `_free` function. Every fallible
//! call returns a [`SatposetStatus`]; on failure the message is available from
//! [`satposet_last_error`] on the same thread. Strings returned through
//! `out` parameters are heap allocated and released with
//! [`satposet_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use satposet::{
    butterfly, butterfly_construction, complete_bipartite_poset, find_induced_copy,
    greedy_saturate, is_free, k2k_seed, kkk_seed, lemma1_check, n_construction, n_poset,
    saturation_report, saturation_report_fail_fast, verify_prop4, verify_theorem2,
    verify_theorem3, CandidateOrder, Error, GroundSet, PosetSpec, SetFamily,
};

/// Opaque family handle.
pub struct SatposetFamily(SetFamily);

/// Opaque poset handle.
pub struct SatposetPoset(PosetSpec);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatposetStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    ParseError = 3,
    InvalidPoset = 4,
    ContractViolation = 5,
    IoError = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatposetConstruction {
    Butterfly = 0,
    N = 1,
    K2k = 2,
    Kkk = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatposetTheorem {
    Lemma1 = 0,
    Theorem2 = 1,
    Theorem3 = 2,
    Prop4 = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SatposetStatus {
    match e {
        Error::Usage(_) => SatposetStatus::InvalidArgument,
        Error::InvalidPoset(_) => SatposetStatus::InvalidPoset,
        Error::Parse { .. } => SatposetStatus::ParseError,
        Error::Contract(_) => SatposetStatus::ContractViolation,
        Error::Io(_) => SatposetStatus::IoError,
    }
}

struct Fail(SatposetStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SatposetStatus::NullArgument, format!("{what} is null"))
}

/// Run `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> SatposetStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SatposetStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside satposet".to_string());
            SatposetStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(SatposetStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(SatposetStatus::Panic, "NUL in output".into()))?;
    write_out(out, c.into_raw(), "out")
}

fn boxed_family(f: SetFamily) -> *mut SatposetFamily {
    Box::into_raw(Box::new(SatposetFamily(f)))
}

fn boxed_poset(q: PosetSpec) -> *mut SatposetPoset {
    Box::into_raw(Box::new(SatposetPoset(q)))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn satposet_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn satposet_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a family in the text format (one set per line). `n = 0` infers the
/// ground set from the largest element.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satposet_family_parse(
    text: *const c_char,
    n: usize,
    out: *mut *mut SatposetFamily,
) -> SatposetStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let ground = if n == 0 { None } else { Some(GroundSet::new(n)?) };
        let f = SetFamily::parse(text, ground)?;
        write_out(out, boxed_family(f), "out")
    })
}

/// Build a family from subset bitmasks (element `i` is bit `i - 1`).
///
/// # Safety
/// `bits` must point to `len` readable values (or be NULL with `len = 0`).
#[no_mangle]
pub unsafe extern "C" fn satposet_family_from_bits(
    n: usize,
    bits: *const u32,
    len: usize,
    out: *mut *mut SatposetFamily,
) -> SatposetStatus {
    guard(|| {
        let slice = if len == 0 {
            &[][..]
        } else if bits.is_null() {
            return Err(null("bits"));
        } else {
            std::slice::from_raw_parts(bits, len)
        };
        let f = SetFamily::from_bits(GroundSet::new(n)?, slice.iter().copied())?;
        write_out(out, boxed_family(f), "out")
    })
}

/// # Safety
/// `f` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn satposet_family_free(f: *mut SatposetFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of members; 0 for NULL.
///
/// # Safety
/// `f` must be NULL or a live family handle.
#[no_mangle]
pub unsafe extern "C" fn satposet_family_len(f: *const SatposetFamily) -> usize {
    f.as_ref().map_or(0, |f| f.0.len())
}

/// Ground set size; 0 for NULL.
///
/// # Safety
/// `f` must be NULL or a live family handle.
#[no_mangle]
pub unsafe extern "C" fn satposet_family_ground(f: *const SatposetFamily) -> usize {
    f.as_ref().map_or(0, |f| f.0.n())
}

/// Bitmask of the `i`-th member in canonical order.
///
/// # Safety
/// `f` must be a live family handle and `out_bits` writable.
#[no_mangle]
pub unsafe extern "C" fn satposet_family_member(
    f: *const SatposetFamily,
    i: usize,
    out_bits: *mut u32,
) -> SatposetStatus {
    guard(|| {
        let f = ref_arg(f, "family")?;
        let m = f.0.members().get(i).ok_or_else(|| {
            Fail(
                SatposetStatus::InvalidArgument,
                format!("member index {i} out of range for {} members", f.0.len()),
            )
        })?;
        write_out(out_bits, m.bits(), "out_bits")
    })
}

/// Family in the text format.
///
/// # Safety
/// `f` must be a live family handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satposet_family_to_text(
    f: *const SatposetFamily,
    out: *mut *mut c_char,
) -> SatposetStatus {
    guard(|| write_string(out, ref_arg(f, "family")?.0.to_text()))
}

/// One of the explicit constructions; `k` is ignored for the butterfly and
/// N families.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn satposet_construct(
    kind: SatposetConstruction,
    n: usize,
    k: usize,
    out: *mut *mut SatposetFamily,
) -> SatposetStatus {
    guard(|| {
        let f = match kind {
            SatposetConstruction::Butterfly => butterfly_construction(n)?,
            SatposetConstruction::N => n_construction(n)?,
            SatposetConstruction::K2k => k2k_seed(n, k)?,
            SatposetConstruction::Kkk => kkk_seed(n, k)?,
        };
        write_out(out, boxed_family(f), "out")
    })
}

#[no_mangle]
pub extern "C" fn satposet_poset_butterfly() -> *mut SatposetPoset {
    boxed_poset(butterfly())
}

#[no_mangle]
pub extern "C" fn satposet_poset_n() -> *mut SatposetPoset {
    boxed_poset(n_poset())
}

/// Complete bipartite poset with every bottom below every top.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn satposet_poset_complete_bipartite(
    bottoms: usize,
    tops: usize,
    out: *mut *mut SatposetPoset,
) -> SatposetStatus {
    guard(|| write_out(out, boxed_poset(complete_bipartite_poset(bottoms, tops)?), "out"))
}

/// Poset from JSON `{"size": m, "less": [[i, j], ...]}`; the relation is
/// transitively closed before validation.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satposet_poset_from_json(
    json: *const c_char,
    out: *mut *mut SatposetPoset,
) -> SatposetStatus {
    guard(|| {
        let q = PosetSpec::from_json(str_arg(json, "json")?)?;
        write_out(out, boxed_poset(q), "out")
    })
}

/// # Safety
/// `q` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn satposet_poset_free(q: *mut SatposetPoset) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Number of poset elements; 0 for NULL.
///
/// # Safety
/// `q` must be NULL or a live poset handle.
#[no_mangle]
pub unsafe extern "C" fn satposet_poset_size(q: *const SatposetPoset) -> usize {
    q.as_ref().map_or(0, |q| q.0.size())
}

/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satposet_is_free(
    f: *const SatposetFamily,
    q: *const SatposetPoset,
    out: *mut bool,
) -> SatposetStatus {
    guard(|| {
        let (f, q) = (ref_arg(f, "family")?, ref_arg(q, "poset")?);
        write_out(out, is_free(&f.0, &q.0), "out")
    })
}

/// Saturation report as JSON: `free`, `saturated`, `unsaturated`, `witness`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satposet_saturation_report_json(
    f: *const SatposetFamily,
    q: *const SatposetPoset,
    fail_fast: bool,
    out: *mut *mut c_char,
) -> SatposetStatus {
    guard(|| {
        let (f, q) = (ref_arg(f, "family")?, ref_arg(q, "poset")?);
        let report = if fail_fast {
            saturation_report_fail_fast(&f.0, &q.0)
        } else {
            saturation_report(&f.0, &q.0)
        };
        write_string(out, report.to_json().to_string())
    })
}

/// An induced copy as a JSON witness, or the string `null` when the family
/// is free.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satposet_find_copy_json(
    f: *const SatposetFamily,
    q: *const SatposetPoset,
    out: *mut *mut c_char,
) -> SatposetStatus {
    guard(|| {
        let (f, q) = (ref_arg(f, "family")?, ref_arg(q, "poset")?);
        let json = match find_induced_copy(&f.0, &q.0, None)? {
            Some(w) => w.to_json().to_string(),
            None => "null".to_string(),
        };
        write_string(out, json)
    })
}

/// Complete a free seed to a saturated family in canonical order.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satposet_greedy_saturate(
    seed: *const SatposetFamily,
    q: *const SatposetPoset,
    out: *mut *mut SatposetFamily,
) -> SatposetStatus {
    guard(|| {
        let (seed, q) = (ref_arg(seed, "seed")?, ref_arg(q, "poset")?);
        let f = greedy_saturate(&seed.0, &q.0, &CandidateOrder::Canonical)?;
        write_out(out, boxed_family(f), "out")
    })
}

/// Run a lower-bound verifier and return its report as JSON. A report that
/// did not pass is still `SATPOSET_STATUS_OK`; read its `passed` field.
///
/// # Safety
/// `f` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn satposet_verify_json(
    f: *const SatposetFamily,
    theorem: SatposetTheorem,
    out: *mut *mut c_char,
) -> SatposetStatus {
    guard(|| {
        let f = &ref_arg(f, "family")?.0;
        let report = match theorem {
            SatposetTheorem::Lemma1 => lemma1_check(f),
            SatposetTheorem::Theorem2 => verify_theorem2(f),
            SatposetTheorem::Theorem3 => verify_theorem3(f),
            SatposetTheorem::Prop4 => verify_prop4(f),
        };
        write_string(out, report.to_json().to_string())
    })
}
