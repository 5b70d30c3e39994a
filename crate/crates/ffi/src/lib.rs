//! C ABI over `sumset-ramsey`.
//!
//! Groups, colourings and witnesses are opaque heap handles, each with its own
//! `_free` function. Every fallible call returns an [`SrStatus`] whose values
//! match the command-line exit codes. After a failure, [`sr_last_error`]
//! describes it. Strings returned to the caller are owned by the caller and
//! must be released with [`sr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sumset_ramsey::cli::resolve_coloring;
use sumset_ramsey::{find_witness, verify_witness, Coloring, Domain, Element, Error, Group, Limits, Strategy, Witness};

/// Result of a call. The first four values agree with the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SrStatus {
    /// Success; for searches, a witness was found.
    Ok = 0,
    /// The search finished without finding a witness.
    None = 1,
    /// A node or time cap was reached.
    Resource = 2,
    /// Bad input: a null pointer, unparsable text or an element outside a colouring.
    Input = 3,
    /// The library panicked; this is a bug.
    Internal = 4,
}

/// A parsed group.
pub struct SrGroup {
    inner: Group,
}

/// A colouring bound to the group it was parsed for.
pub struct SrColoring {
    group: Group,
    inner: Coloring,
}

/// A witness found by [`sr_find_witness`].
pub struct SrWitness {
    inner: Witness,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> SrStatus {
    match e {
        Error::Resource(_) => SrStatus::Resource,
        Error::Construction { .. } => SrStatus::None,
        _ => SrStatus::Input,
    }
}

/// Runs `f`, recording errors and panics in the thread's last-error slot.
fn guard(f: impl FnOnce() -> Result<SrStatus, Error>) -> SrStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            SrStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(Error::Structural(format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Error::Structural(format!("{what} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Error> {
    p.as_ref().ok_or_else(|| Error::Structural(format!("{what} is null")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the most recent failed call on this thread, or null. The
/// pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn sr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a group spec such as `"Z/4 Z/4 Z"` into `*out`.
///
/// # Safety
/// `spec` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_group_parse(spec: *const c_char, out: *mut *mut SrGroup) -> SrStatus {
    guard(|| {
        if out.is_null() {
            return Err(Error::Structural("out is null".into()));
        }
        let inner: Group = str_arg(spec, "spec")?.parse()?;
        *out = Box::into_raw(Box::new(SrGroup { inner }));
        Ok(SrStatus::Ok)
    })
}

/// Number of factors of `group`, or 0 for null.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_group_rank(group: *const SrGroup) -> usize {
    group.as_ref().map_or(0, |g| g.inner.rank())
}

/// # Safety
/// `group` must be null or a handle from [`sr_group_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sr_group_free(group: *mut SrGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Parses a colouring for `group`: rule text (`"support"`, `"random 3 7"`,
/// ...) or a colouring file path. `bound` fills in rules that need one.
///
/// # Safety
/// `group` must be a live handle, `text` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_coloring_parse(
    group: *const SrGroup,
    text: *const c_char,
    bound: u64,
    out: *mut *mut SrColoring,
) -> SrStatus {
    guard(|| {
        if out.is_null() {
            return Err(Error::Structural("out is null".into()));
        }
        let group = ref_arg(group, "group")?.inner.clone();
        let inner = resolve_coloring(str_arg(text, "text")?, &group, bound)?;
        *out = Box::into_raw(Box::new(SrColoring { group, inner }));
        Ok(SrStatus::Ok)
    })
}

/// # Safety
/// `coloring` must be null or a handle from [`sr_coloring_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sr_coloring_free(coloring: *mut SrColoring) {
    if !coloring.is_null() {
        drop(Box::from_raw(coloring));
    }
}

fn parse_elements(group: &Group, items: &[*const c_char]) -> Result<Vec<Element>, Error> {
    items
        .iter()
        .map(|&p| unsafe { group.parse_element(str_arg(p, "element")?) })
        .collect()
}

/// Checks whether `X + X` is monochromatic for the `count` comma-separated
/// elements in `elements`. Writes the verdict to `*out_mono` and, when it
/// holds and `out_color` is non-null, the colour as a new string.
///
/// # Safety
/// `coloring` must be a live handle, `elements` must point to `count` valid
/// C strings, and the out pointers must be valid or (for `out_color`) null.
#[no_mangle]
pub unsafe extern "C" fn sr_verify_witness(
    coloring: *const SrColoring,
    elements: *const *const c_char,
    count: usize,
    out_mono: *mut bool,
    out_color: *mut *mut c_char,
) -> SrStatus {
    guard(|| {
        let c = ref_arg(coloring, "coloring")?;
        if elements.is_null() || out_mono.is_null() {
            return Err(Error::Structural("elements or out_mono is null".into()));
        }
        let xs = parse_elements(&c.group, std::slice::from_raw_parts(elements, count))?;
        let (mono, color) = verify_witness(&xs, &c.inner)?;
        *out_mono = mono;
        if !out_color.is_null() {
            *out_color = color.map_or(ptr::null_mut(), |col| into_c_string(col.to_string()));
        }
        Ok(SrStatus::Ok)
    })
}

/// Searches the fragment of the colouring's group with `Z` coordinates in
/// `[-bound, bound]` for the least `n`-element witness. Returns
/// [`SrStatus::Ok`] with `*out` set, [`SrStatus::None`] after an exhaustive
/// search, or [`SrStatus::Resource`] when `node_limit` (0 for the default)
/// is reached.
///
/// # Safety
/// `coloring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_find_witness(
    coloring: *const SrColoring,
    bound: u64,
    n: usize,
    node_limit: u64,
    out: *mut *mut SrWitness,
) -> SrStatus {
    guard(|| {
        let c = ref_arg(coloring, "coloring")?;
        if out.is_null() {
            return Err(Error::Structural("out is null".into()));
        }
        *out = ptr::null_mut();
        let mut limits = Limits::default();
        if node_limit > 0 {
            limits = limits.with_nodes(node_limit);
        }
        let domain = Domain::fragment(&c.group, bound)?;
        let cert = find_witness(&domain, &c.inner, n, Strategy::ColorClasses, &limits)?;
        match cert.witness() {
            Some(w) => {
                *out = Box::into_raw(Box::new(SrWitness { inner: w.clone() }));
                Ok(SrStatus::Ok)
            }
            None => Ok(SrStatus::None),
        }
    })
}

/// Number of elements in `witness`, or 0 for null.
///
/// # Safety
/// `witness` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_witness_len(witness: *const SrWitness) -> usize {
    witness.as_ref().map_or(0, |w| w.inner.elements.len())
}

/// Element `index` of `witness` as comma-separated coordinates, or null when
/// out of range. Free with [`sr_string_free`].
///
/// # Safety
/// `witness` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_witness_element(witness: *const SrWitness, index: usize) -> *mut c_char {
    witness
        .as_ref()
        .and_then(|w| w.inner.elements.get(index))
        .map_or(ptr::null_mut(), |x| into_c_string(x.to_string()))
}

/// The common colour of `X + X`. Free with [`sr_string_free`].
///
/// # Safety
/// `witness` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_witness_color(witness: *const SrWitness) -> *mut c_char {
    witness
        .as_ref()
        .map_or(ptr::null_mut(), |w| into_c_string(w.inner.color.to_string()))
}

/// # Safety
/// `witness` must be null or a handle from [`sr_find_witness`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sr_witness_free(witness: *mut SrWitness) {
    if !witness.is_null() {
        drop(Box::from_raw(witness));
    }
}

/// Runs the command line with `argc` arguments (not including the program
/// name) and returns its exit code. The report is written to `*out_report`
/// when that is non-null.
///
/// # Safety
/// `argv` must point to `argc` valid C strings; `out_report` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn sr_run(argc: usize, argv: *const *const c_char, out_report: *mut *mut c_char) -> i32 {
    let mut args = vec!["sumset-ramsey".to_string()];
    if argc > 0 {
        if argv.is_null() {
            set_error("argv is null");
            return SrStatus::Input as i32;
        }
        for &p in std::slice::from_raw_parts(argv, argc) {
            match str_arg(p, "argument") {
                Ok(s) => args.push(s.to_string()),
                Err(e) => {
                    set_error(e.to_string());
                    return SrStatus::Input as i32;
                }
            }
        }
    }
    clear_error();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = catch_unwind(AssertUnwindSafe(|| sumset_ramsey::cli::run_with(args, &mut out, &mut err)))
        .unwrap_or(SrStatus::Internal as i32);
    if !err.is_empty() {
        set_error(String::from_utf8_lossy(&err).trim_end().to_string());
    }
    if !out_report.is_null() {
        *out_report = into_c_string(String::from_utf8_lossy(&out).into_owned());
    }
    code
}
