//! C ABI over `cohnpath`.
//!
//! Objects cross the boundary as opaque handles created by `*_parse` /
//! `*_build` functions and released with the matching `*_free`. Every
//! fallible call returns a [`CpStatus`]; on failure a description is
//! available from [`cp_last_error`] until the next call on the same thread.
//! Strings returned to the caller are owned by the caller and released with
//! [`cp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;
use std::sync::Arc;

use cohnpath::branching::{
    build_covering_system, build_identity_system, build_rotation_system, build_standard_system, check_axioms,
    faithfulness_conditions, injectivity_rank_check, BranchingSystem,
};
use cohnpath::cohn::parse_element;
use cohnpath::graph::{parse_graph, Graph};
use cohnpath::Element;

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    GraphMismatch = 4,
    Panic = 5,
}

/// Built-in branching-system constructions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CpSystemKind {
    Standard = 0,
    Rotation = 1,
    Identity = 2,
    Covering = 3,
}

/// A validated graph with its set `X`.
pub struct CpGraph {
    inner: Arc<Graph>,
}

/// An element of the relative Cohn path algebra of a graph.
pub struct CpElement {
    inner: Element,
}

/// A branching system over a graph.
pub struct CpSystem {
    inner: BranchingSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: CpStatus, msg: impl Into<String>) -> CpStatus {
    set_error(msg);
    status
}

/// Runs `f`, clearing the last error first and mapping panics to
/// [`CpStatus::Panic`].
fn guard(f: impl FnOnce() -> CpStatus) -> CpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(CpStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CpStatus> {
    if p.is_null() {
        return Err(fail(CpStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CpStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> CpStatus {
    *out = Box::into_raw(Box::new(value));
    CpStatus::Ok
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(CpStatus::NullPointer, concat!("null argument `", stringify!($p), "`"));
        })+
    };
}

/// The message for the last failing call on this thread, or null.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn cp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph file's contents.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cp_graph_parse(text: *const c_char, out: *mut *mut CpGraph) -> CpStatus {
    guard(|| {
        non_null!(out);
        let text = try_status!(read_str(text));
        match parse_graph(text) {
            Ok(g) => write_out(out, CpGraph { inner: Arc::new(g) }),
            Err(e) => fail(CpStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `g` must come from [`cp_graph_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cp_graph_free(g: *mut CpGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be a live graph handle or null.
#[no_mangle]
pub unsafe extern "C" fn cp_graph_vertex_count(g: *const CpGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// Writes 1 to `out` when every exit-free cycle passes through `Y`.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cp_graph_relative_condition_l(g: *const CpGraph, out: *mut c_int) -> CpStatus {
    guard(|| {
        non_null!(g, out);
        *out = c_int::from((*g).inner.relative_condition_l());
        CpStatus::Ok
    })
}

/// Parses an element in the element DSL over `g`.
///
/// # Safety
/// `g` must be a live graph handle, `text` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_element_parse(
    g: *const CpGraph,
    text: *const c_char,
    out: *mut *mut CpElement,
) -> CpStatus {
    guard(|| {
        non_null!(g, out);
        let text = try_status!(read_str(text));
        match parse_element(&(*g).inner, text) {
            Ok(x) => write_out(out, CpElement { inner: x }),
            Err(e) => fail(CpStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `x` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cp_element_free(x: *mut CpElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

unsafe fn binary(
    a: *const CpElement,
    b: *const CpElement,
    out: *mut *mut CpElement,
    op: fn(&Element, &Element) -> Result<Element, cohnpath::cohn::AlgebraError>,
) -> CpStatus {
    guard(|| {
        non_null!(a, b, out);
        match op(&(*a).inner, &(*b).inner) {
            Ok(x) => write_out(out, CpElement { inner: x }),
            Err(e) => fail(CpStatus::GraphMismatch, e.to_string()),
        }
    })
}

/// `a · b` in normal form.
///
/// # Safety
/// `a`, `b` must be live element handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_element_mul(a: *const CpElement, b: *const CpElement, out: *mut *mut CpElement) -> CpStatus {
    binary(a, b, out, Element::try_mul)
}

/// `a + b`.
///
/// # Safety
/// `a`, `b` must be live element handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_element_add(a: *const CpElement, b: *const CpElement, out: *mut *mut CpElement) -> CpStatus {
    binary(a, b, out, Element::try_add)
}

/// The involution `x ↦ x*`.
///
/// # Safety
/// `x` must be a live element handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_element_star(x: *const CpElement, out: *mut *mut CpElement) -> CpStatus {
    guard(|| {
        non_null!(x, out);
        write_out(out, CpElement { inner: (*x).inner.star() })
    })
}

/// Writes 1 to `out` when the element is zero.
///
/// # Safety
/// `x` must be a live element handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_element_is_zero(x: *const CpElement, out: *mut c_int) -> CpStatus {
    guard(|| {
        non_null!(x, out);
        *out = c_int::from((*x).inner.is_zero());
        CpStatus::Ok
    })
}

/// The element in the DSL; release with [`cp_string_free`]. Null on a null
/// handle.
///
/// # Safety
/// `x` must be a live element handle or null.
#[no_mangle]
pub unsafe extern "C" fn cp_element_to_string(x: *const CpElement) -> *mut c_char {
    x.as_ref().map_or(ptr::null_mut(), |x| to_c_string(x.inner.to_string()))
}

/// Builds one of the standard branching systems over `g`.
///
/// # Safety
/// `g` must be a live graph handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_system_build(g: *const CpGraph, kind: CpSystemKind, out: *mut *mut CpSystem) -> CpStatus {
    guard(|| {
        non_null!(g, out);
        let g = &(*g).inner;
        let sys = match kind {
            CpSystemKind::Standard => build_standard_system(g),
            CpSystemKind::Rotation => build_rotation_system(g),
            CpSystemKind::Identity => build_identity_system(g),
            CpSystemKind::Covering => build_covering_system(g),
        };
        write_out(out, CpSystem { inner: sys })
    })
}

/// # Safety
/// `s` must come from [`cp_system_build`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cp_system_free(s: *mut CpSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// The system in its text format; release with [`cp_string_free`].
///
/// # Safety
/// `s` must be a live system handle or null.
#[no_mangle]
pub unsafe extern "C" fn cp_system_to_string(s: *const CpSystem) -> *mut c_char {
    s.as_ref().map_or(ptr::null_mut(), |s| to_c_string(s.inner.to_string()))
}

/// Writes 1 to `out` when all five axioms hold.
///
/// # Safety
/// `s` must be a live system handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_system_check_axioms(s: *const CpSystem, out: *mut c_int) -> CpStatus {
    guard(|| {
        non_null!(s, out);
        *out = c_int::from(check_axioms(&(*s).inner).ok());
        CpStatus::Ok
    })
}

/// Writes 0 to `out_condition` when the representation is faithful, or the
/// number (1–3) of the first failing condition.
///
/// # Safety
/// `s` must be a live system handle; `out_condition` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_system_faithful(s: *const CpSystem, m_bound: usize, out_condition: *mut c_int) -> CpStatus {
    guard(|| {
        non_null!(s, out_condition);
        let f = faithfulness_conditions(&(*s).inner, m_bound);
        *out_condition = f.condition().map_or(0, |c| c as c_int);
        CpStatus::Ok
    })
}

/// Exact rank of the representation on normal monomials with
/// `|α|, |β| ≤ deg_bound`; writes the rank and the number of monomials.
///
/// # Safety
/// `s` must be a live system handle; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn cp_system_rank(
    s: *const CpSystem,
    deg_bound: usize,
    m_bound: usize,
    out_rank: *mut usize,
    out_monomials: *mut usize,
) -> CpStatus {
    guard(|| {
        non_null!(s, out_rank, out_monomials);
        let r = injectivity_rank_check(&(*s).inner, deg_bound, m_bound);
        *out_rank = r.rank;
        *out_monomials = r.monomials;
        CpStatus::Ok
    })
}

/// Runs the command-line front end on `argc` arguments (program name
/// first); returns the exit code and stores the report in `out_text`
/// (release with [`cp_string_free`]). Returns 2 on invalid arguments.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn cp_cli_run(argc: c_int, argv: *const *const c_char, out_text: *mut *mut c_char) -> c_int {
    const INPUT: c_int = cohnpath::cli::EXIT_INPUT as c_int;
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    if out_text.is_null() || (argc > 0 && argv.is_null()) || argc < 0 {
        set_error("null or negative argument");
        return INPUT;
    }
    let mut args = Vec::with_capacity(argc as usize);
    for i in 0..argc as usize {
        match read_str(*argv.add(i)) {
            Ok(s) => args.push(s.to_string()),
            Err(_) => return INPUT,
        }
    }
    match std::panic::catch_unwind(|| cohnpath::cli::run(args)) {
        Ok((code, text)) => {
            *out_text = to_c_string(text);
            code as c_int
        }
        Err(_) => {
            set_error("internal panic");
            *out_text = ptr::null_mut();
            INPUT
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(s: *mut c_char) -> String {
        let out = CStr::from_ptr(s).to_str().unwrap().to_string();
        cp_string_free(s);
        out
    }

    unsafe fn graph(text: &str) -> *mut CpGraph {
        let mut g = ptr::null_mut();
        assert_eq!(cp_graph_parse(c(text).as_ptr(), &mut g), CpStatus::Ok);
        g
    }

    const LOOP_IN_X: &str = "vertex v\nedge e v v\nX v\n";

    #[test]
    fn element_arithmetic_through_handles() {
        unsafe {
            let g = graph(LOOP_IN_X);
            assert_eq!(cp_graph_vertex_count(g), 1);
            let (mut a, mut b, mut p) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
            assert_eq!(cp_element_parse(g, c("e^").as_ptr(), &mut a), CpStatus::Ok);
            assert_eq!(cp_element_parse(g, c("e").as_ptr(), &mut b), CpStatus::Ok);
            assert_eq!(cp_element_mul(a, b, &mut p), CpStatus::Ok);
            assert_eq!(take(cp_element_to_string(p)), "v");
            let mut s = ptr::null_mut();
            assert_eq!(cp_element_star(b, &mut s), CpStatus::Ok);
            assert_eq!(take(cp_element_to_string(s)), "e^");
            for x in [a, b, p, s] {
                cp_element_free(x);
            }
            cp_graph_free(g);
        }
    }

    #[test]
    fn errors_are_reported() {
        unsafe {
            let mut g = ptr::null_mut();
            assert_eq!(cp_graph_parse(c("edge e v w").as_ptr(), &mut g), CpStatus::ParseError);
            assert!(g.is_null());
            let msg = CStr::from_ptr(cp_last_error()).to_str().unwrap();
            assert!(!msg.is_empty());
            assert_eq!(cp_graph_parse(ptr::null(), &mut g), CpStatus::NullPointer);

            let g = graph(LOOP_IN_X);
            let mut x = ptr::null_mut();
            assert_eq!(cp_element_parse(g, c("w").as_ptr(), &mut x), CpStatus::ParseError);
            assert!(CStr::from_ptr(cp_last_error()).to_str().unwrap().contains("unknown id"));

            let h = graph("vertex v\nvertex w\n");
            let (mut a, mut b, mut out) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
            cp_element_parse(g, c("v").as_ptr(), &mut a);
            cp_element_parse(h, c("v").as_ptr(), &mut b);
            assert_eq!(cp_element_add(a, b, &mut out), CpStatus::GraphMismatch);
            assert!(!cp_last_error().is_null());
            cp_element_free(a);
            cp_element_free(b);
            cp_graph_free(g);
            cp_graph_free(h);
        }
    }

    #[test]
    fn branching_verdicts() {
        unsafe {
            let g = graph(LOOP_IN_X);
            let mut rel = -1;
            assert_eq!(cp_graph_relative_condition_l(g, &mut rel), CpStatus::Ok);
            assert_eq!(rel, 0);
            for (kind, want) in [(CpSystemKind::Rotation, 0), (CpSystemKind::Identity, 3)] {
                let mut s = ptr::null_mut();
                assert_eq!(cp_system_build(g, kind, &mut s), CpStatus::Ok);
                let (mut ok, mut cond) = (0, -1);
                assert_eq!(cp_system_check_axioms(s, &mut ok), CpStatus::Ok);
                assert_eq!(ok, 1);
                assert_eq!(cp_system_faithful(s, 10, &mut cond), CpStatus::Ok);
                assert_eq!(cond, want);
                let (mut rank, mut n) = (0, 0);
                assert_eq!(cp_system_rank(s, 2, 10, &mut rank, &mut n), CpStatus::Ok);
                assert_eq!(rank == n, want == 0);
                assert!(take(cp_system_to_string(s)).starts_with("space "));
                cp_system_free(s);
            }
            cp_graph_free(g);
        }
    }

    #[test]
    fn cli_entry_point() {
        unsafe {
            let path = format!("{}/../core/fixtures/G5p.graph", env!("CARGO_MANIFEST_DIR"));
            let args = [c("cohnpath"), c("alg"), c("mul"), c(&path), c("e^ . e")];
            let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
            let mut text = ptr::null_mut();
            assert_eq!(cp_cli_run(ptrs.len() as c_int, ptrs.as_ptr(), &mut text), 0);
            assert_eq!(take(text), "v\n");
            assert_eq!(cp_cli_run(1, ptrs.as_ptr(), &mut text), 2);
            cp_string_free(text);
        }
    }

    #[test]
    fn null_handles_are_harmless() {
        unsafe {
            cp_graph_free(ptr::null_mut());
            cp_element_free(ptr::null_mut());
            cp_system_free(ptr::null_mut());
            cp_string_free(ptr::null_mut());
            assert!(cp_element_to_string(ptr::null()).is_null());
            assert_eq!(cp_graph_vertex_count(ptr::null()), 0);
            let mut z = 0;
            assert_eq!(cp_element_is_zero(ptr::null(), &mut z), CpStatus::NullPointer);
        }
    }
}
