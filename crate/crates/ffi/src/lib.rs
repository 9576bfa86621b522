//! C ABI over `nichols-core`.
//!
//! Every entry point returns a [`NicholsStatus`]. Values come back through
//! out-pointers and objects live behind opaque handles that the caller
//! releases with the matching `*_free` function. Strings returned to C are
//! owned by the caller and released with [`nichols_string_free`]. After a
//! non-zero status, [`nichols_last_error`] describes the failure on the
//! calling thread.
//!
//! Words use 1-based letters (`x1`, `x2`, ...) in the text format, the same
//! as the command-line tool.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nichols_core::braiding::{BraidingMatrix, FamilyDescriptor};
use nichols_core::freealg::{self, parse_element, Env, FreeElement};
use nichols_core::presentations::family_env;
use nichols_core::quotient::{self, GradedIdeal};
use nichols_core::replay::Manifest;
use nichols_core::weyl;

/// Status codes returned by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NicholsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// JSON input could not be decoded.
    Json = 3,
    /// An element or relation failed to parse.
    Parse = 4,
    /// The computation itself reported an error (bad index, cap exceeded, ...).
    Compute = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

/// A braiding matrix, optionally remembering the family it came from so that
/// parameter names such as `q` resolve when parsing elements.
pub struct NicholsMatrix {
    matrix: BraidingMatrix,
    family: Option<FamilyDescriptor>,
}

/// An element of the free algebra.
pub struct NicholsElement {
    element: FreeElement,
}

/// A finitely generated homogeneous ideal under construction.
pub struct NicholsIdeal {
    theta: usize,
    generators: Vec<FreeElement>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(NicholsStatus, String);

impl Failure {
    fn compute(e: impl std::fmt::Display) -> Self {
        Failure(NicholsStatus::Compute, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, records any failure or panic in the thread-local slot and turns
/// it into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NicholsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NicholsStatus::Ok,
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {msg}"));
            NicholsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(NicholsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(NicholsStatus::Utf8, format!("{what}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(NicholsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn handle_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure(NicholsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(NicholsStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(Failure::compute)?;
    put(out, c.into_raw())
}

unsafe fn put_json(out: *mut *mut c_char, v: &impl serde::Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string(v).map_err(|e| Failure(NicholsStatus::Json, e.to_string()))?;
    put_string(out, s)
}

fn json_error(e: serde_json::Error) -> Failure {
    Failure(NicholsStatus::Json, e.to_string())
}

/// Returns the message of the last failure on this thread, or null. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nichols_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string previously returned by this library.
#[no_mangle]
pub unsafe extern "C" fn nichols_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nichols_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a matrix from `{"order": M, "exponents": [[...], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_matrix_from_json(json: *const c_char, out: *mut *mut NicholsMatrix) -> NicholsStatus {
    guard(|| {
        let matrix: BraidingMatrix = serde_json::from_str(text(json, "json")?).map_err(json_error)?;
        put(out, Box::into_raw(Box::new(NicholsMatrix { matrix, family: None })))
    })
}

/// Builds a matrix from a family descriptor such as
/// `{"family": "CartanG2", "order": 5}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_matrix_from_family(json: *const c_char, out: *mut *mut NicholsMatrix) -> NicholsStatus {
    guard(|| {
        let desc: FamilyDescriptor = serde_json::from_str(text(json, "json")?).map_err(json_error)?;
        let matrix = desc.build().map_err(Failure::compute)?;
        put(out, Box::into_raw(Box::new(NicholsMatrix { matrix, family: Some(desc) })))
    })
}

/// # Safety
/// `m` must be null or a handle from `nichols_matrix_from_*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nichols_matrix_free(m: *mut NicholsMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Writes the rank of the braiding.
///
/// # Safety
/// `m` must be a live matrix handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_matrix_theta(m: *const NicholsMatrix, out: *mut usize) -> NicholsStatus {
    guard(|| put(out, handle(m, "matrix")?.matrix.theta()))
}

/// Writes the matrix as JSON.
///
/// # Safety
/// `m` must be a live matrix handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_matrix_json(m: *const NicholsMatrix, out: *mut *mut c_char) -> NicholsStatus {
    guard(|| put_json(out, &handle(m, "matrix")?.matrix))
}

/// Writes the generalized Dynkin diagram as JSON.
///
/// # Safety
/// `m` must be a live matrix handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_diagram_json(m: *const NicholsMatrix, out: *mut *mut c_char) -> NicholsStatus {
    guard(|| put_json(out, &handle(m, "matrix")?.matrix.dynkin_diagram()))
}

/// Writes the positive roots (up to height `height_cap`) as a JSON array.
/// Fails with `Compute` when the Weyl groupoid is not finite within the cap.
///
/// # Safety
/// `m` must be a live matrix handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_roots_json(m: *const NicholsMatrix, height_cap: i64, out: *mut *mut c_char) -> NicholsStatus {
    guard(|| {
        let roots = weyl::positive_roots(&handle(m, "matrix")?.matrix, height_cap).map_err(Failure::compute)?;
        if !roots.finite {
            return Err(Failure(NicholsStatus::Compute, format!("no finite root system below height {height_cap}")));
        }
        put_json(out, &roots.positive_roots)
    })
}

/// Writes the GK-dimension of the distinguished pre-Nichols algebra.
///
/// # Safety
/// `m` must be a live matrix handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_gkdim(m: *const NicholsMatrix, out: *mut usize) -> NicholsStatus {
    guard(|| {
        let n = weyl::gkdim_distinguished(&handle(m, "matrix")?.matrix).map_err(Failure::compute)?;
        put(out, n)
    })
}

fn parse_with(m: &NicholsMatrix, src: &str) -> Result<FreeElement, Failure> {
    let env = match &m.family {
        Some(desc) => family_env(desc, &m.matrix).map_err(Failure::compute)?,
        None => Env::new(&m.matrix),
    };
    let e = parse_element(src, &env).map_err(|e| Failure(NicholsStatus::Parse, e.to_string()))?;
    if e.rank_needed() > m.matrix.theta() {
        return Err(Failure(NicholsStatus::Parse, format!("`{src}` uses a letter beyond x{}", m.matrix.theta())));
    }
    Ok(e)
}

/// Parses an element such as `[x112, x12]` or `x1^3 - q*x2`. Brackets are
/// braided commutators for the braiding of `m`.
///
/// # Safety
/// `m` must be a live matrix handle, `src` a NUL-terminated string and
/// `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_element_parse(
    m: *const NicholsMatrix,
    src: *const c_char,
    out: *mut *mut NicholsElement,
) -> NicholsStatus {
    guard(|| {
        let element = parse_with(handle(m, "matrix")?, text(src, "src")?)?;
        put(out, Box::into_raw(Box::new(NicholsElement { element })))
    })
}

/// # Safety
/// `e` must be null or a live element handle.
#[no_mangle]
pub unsafe extern "C" fn nichols_element_free(e: *mut NicholsElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Writes the element in the plain text form.
///
/// # Safety
/// `e` must be a live element handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_element_to_string(e: *const NicholsElement, out: *mut *mut c_char) -> NicholsStatus {
    guard(|| put_string(out, handle(e, "element")?.element.to_string()))
}

/// Writes the element as JSON.
///
/// # Safety
/// `e` must be a live element handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_element_json(e: *const NicholsElement, out: *mut *mut c_char) -> NicholsStatus {
    guard(|| put_json(out, &handle(e, "element")?.element))
}

/// Writes the coproduct of `e` in the braided tensor square as JSON.
///
/// # Safety
/// `m` and `e` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_coproduct_json(
    m: *const NicholsMatrix,
    e: *const NicholsElement,
    out: *mut *mut c_char,
) -> NicholsStatus {
    guard(|| {
        let d = freealg::coproduct(&handle(m, "matrix")?.matrix, &handle(e, "element")?.element);
        put_json(out, &d)
    })
}

/// Writes whether `e` is primitive in the free algebra.
///
/// # Safety
/// `m` and `e` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_is_primitive(
    m: *const NicholsMatrix,
    e: *const NicholsElement,
    out: *mut bool,
) -> NicholsStatus {
    guard(|| put(out, freealg::is_primitive(&handle(m, "matrix")?.matrix, &handle(e, "element")?.element)))
}

/// Writes whether `e` vanishes in the Nichols algebra, that is, whether it
/// lies in the kernel of the quantum symmetrizer. `cap` bounds the degree.
///
/// # Safety
/// `m` and `e` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_in_nichols_ideal(
    m: *const NicholsMatrix,
    e: *const NicholsElement,
    cap: usize,
    out: *mut bool,
) -> NicholsStatus {
    guard(|| {
        let v = freealg::in_nichols_ideal(&handle(m, "matrix")?.matrix, &handle(e, "element")?.element, cap)
            .map_err(Failure::compute)?;
        put(out, v)
    })
}

/// Starts an empty ideal in the free algebra on `theta` generators.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_ideal_new(theta: usize, out: *mut *mut NicholsIdeal) -> NicholsStatus {
    guard(|| put(out, Box::into_raw(Box::new(NicholsIdeal { theta, generators: Vec::new() }))))
}

/// # Safety
/// `i` must be null or a live ideal handle.
#[no_mangle]
pub unsafe extern "C" fn nichols_ideal_free(i: *mut NicholsIdeal) {
    if !i.is_null() {
        drop(Box::from_raw(i));
    }
}

/// Adds a copy of `e` as a generator. Generators must be homogeneous.
///
/// # Safety
/// `i` and `e` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn nichols_ideal_add(i: *mut NicholsIdeal, e: *const NicholsElement) -> NicholsStatus {
    guard(|| {
        let ideal = handle_mut(i, "ideal")?;
        let e = &handle(e, "element")?.element;
        if !e.is_homogeneous(ideal.theta) {
            return Err(Failure::compute(format!("generator {e} is not homogeneous")));
        }
        ideal.generators.push(e.clone());
        Ok(())
    })
}

fn graded(i: &NicholsIdeal) -> Result<GradedIdeal, Failure> {
    GradedIdeal::new(i.theta, i.generators.clone()).map_err(Failure::compute)
}

/// Writes whether `e` lies in the ideal, deciding with a Gröbner basis
/// truncated at `degree` (which must be at least the degree of `e`).
///
/// # Safety
/// `i` and `e` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_ideal_contains(
    i: *const NicholsIdeal,
    e: *const NicholsElement,
    degree: usize,
    out: *mut bool,
) -> NicholsStatus {
    guard(|| {
        let ideal = graded(handle(i, "ideal")?)?;
        let e = &handle(e, "element")?.element;
        let v = quotient::vanishes_in_quotient(e, &ideal, degree).map_err(Failure::compute)?;
        put(out, v)
    })
}

/// Writes the graded dimensions of the quotient up to total degree `degree`
/// as a JSON array of `{"degree": [...], "dim": n}` objects.
///
/// # Safety
/// `i` must be a live ideal handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nichols_ideal_dims_json(i: *const NicholsIdeal, degree: usize, out: *mut *mut c_char) -> NicholsStatus {
    guard(|| {
        let ideal = graded(handle(i, "ideal")?)?;
        let dims = quotient::graded_dimensions(&ideal, degree).map_err(Failure::compute)?;
        let rows: Vec<_> = dims.into_iter().map(|(d, n)| serde_json::json!({"degree": d, "dim": n})).collect();
        put_json(out, &rows)
    })
}

/// Runs a replay manifest (a built-in name or a path), writes the report as
/// JSON to `report` and whether every check passed to `passed`.
///
/// # Safety
/// `name_or_path` must be a NUL-terminated string; `report` and `passed`
/// must be writable pointers.
#[no_mangle]
pub unsafe extern "C" fn nichols_replay(
    name_or_path: *const c_char,
    report: *mut *mut c_char,
    passed: *mut bool,
) -> NicholsStatus {
    guard(|| {
        let manifest = Manifest::load(text(name_or_path, "name_or_path")?).map_err(Failure::compute)?;
        let r = manifest.run().map_err(Failure::compute)?;
        put(passed, r.passed())?;
        put_json(report, &r)
    })
}
