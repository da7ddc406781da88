//! C ABI over the `twosilt` library.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Functions return a [`TsStatus`]; on failure
//! [`ts_last_error`] describes the problem. Strings handed out by the
//! library are released with [`ts_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use twosilt::algebra::BoundQuiverAlgebra;
use twosilt::explore::{explore, hasse_dot, ExploreError, ExploreOptions, MutationGraph, Start, Verdict};
use twosilt::io::report::full_report;
use twosilt::io::{example, parse_spec};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownExample = 4,
    MutationFailed = 5,
    OutOfRange = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStart {
    Algebra = 0,
    Shifted = 1,
}

/// A bound quiver algebra.
pub struct TsAlgebra {
    alg: Arc<BoundQuiverAlgebra>,
}

/// An explored mutation graph together with its algebra.
pub struct TsGraph {
    alg: Arc<BoundQuiverAlgebra>,
    graph: MutationGraph,
    order: Vec<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn guard(f: impl FnOnce() -> Result<(), (TsStatus, String)>) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TsStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TsStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, (TsStatus, String)> {
    if p.is_null() {
        return Err((TsStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (TsStatus::InvalidUtf8, e.to_string()))
}

fn null_err(what: &str) -> (TsStatus, String) {
    (TsStatus::NullPointer, format!("null {what}"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the most recent failure on this thread; empty after a
/// success. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Loads a bundled example by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_algebra_from_example(name: *const c_char, out: *mut *mut TsAlgebra) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("output pointer"));
        }
        let name = str_arg(name)?;
        let alg = example(name).ok_or_else(|| (TsStatus::UnknownExample, format!("unknown example {name:?}")))?;
        *out = Box::into_raw(Box::new(TsAlgebra { alg: Arc::new(alg) }));
        Ok(())
    })
}

/// Parses and builds an algebra from a JSON spec document.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_algebra_from_spec(text: *const c_char, out: *mut *mut TsAlgebra) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("output pointer"));
        }
        let text = str_arg(text)?;
        let spec = parse_spec(text).map_err(|e| (TsStatus::ParseError, e.to_string()))?;
        let alg = spec.build().map_err(|e| (TsStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(TsAlgebra { alg: Arc::new(alg) }));
        Ok(())
    })
}

/// # Safety
/// `alg` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ts_algebra_free(alg: *mut TsAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_algebra_num_vertices(alg: *const TsAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.alg.num_vertices())
}

/// Dimension over the ground field, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_algebra_dim(alg: *const TsAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.alg.dim())
}

/// Explores the mutation graph. `max_depth = 0` means unlimited.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_explore(
    alg: *const TsAlgebra,
    start: TsStart,
    budget: usize,
    max_depth: usize,
    out: *mut *mut TsGraph,
) -> TsStatus {
    guard(|| {
        let a = alg.as_ref().ok_or_else(|| null_err("algebra"))?;
        if out.is_null() {
            return Err(null_err("output pointer"));
        }
        if budget == 0 {
            return Err((TsStatus::OutOfRange, "budget must be at least 1".into()));
        }
        let opts = ExploreOptions {
            start: match start {
                TsStart::Algebra => Start::Algebra,
                TsStart::Shifted => Start::Shifted,
            },
            budget,
            max_depth: (max_depth > 0).then_some(max_depth),
            ..Default::default()
        };
        let graph = explore(&a.alg, &opts).map_err(|e: ExploreError| (TsStatus::MutationFailed, e.to_string()))?;
        let order = graph.sorted();
        *out = Box::into_raw(Box::new(TsGraph { alg: a.alg.clone(), graph, order }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_free(g: *mut TsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_node_count(g: *const TsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.len())
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_edge_count(g: *const TsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edges.len())
}

/// 1 if the exploration finished, 0 otherwise (including null).
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_is_finite(g: *const TsGraph) -> i32 {
    g.as_ref().map_or(0, |g| i32::from(g.graph.verdict == Verdict::Finite))
}

/// Copies the G-matrix of the `node`-th object (in canonical key order)
/// into `buf` column by column; `len` must be at least `n * n`.
///
/// # Safety
/// `g` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_gmatrix(g: *const TsGraph, node: usize, buf: *mut i64, len: usize) -> TsStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null_err("graph"))?;
        if buf.is_null() {
            return Err(null_err("buffer"));
        }
        let &i = g
            .order
            .get(node)
            .ok_or_else(|| (TsStatus::OutOfRange, format!("node {node} of {}", g.order.len())))?;
        let n = g.graph.n;
        if len < n * n {
            return Err((TsStatus::BufferTooSmall, format!("need {} entries", n * n)));
        }
        let out = std::slice::from_raw_parts_mut(buf, n * n);
        for (c, col) in g.graph.nodes[i].gvectors().iter().enumerate() {
            out[c * n..(c + 1) * n].copy_from_slice(col);
        }
        Ok(())
    })
}

unsafe fn string_out(g: *const TsGraph, f: impl FnOnce(&TsGraph) -> String) -> *mut c_char {
    let mut s = None;
    let status = guard(|| {
        let g = g.as_ref().ok_or_else(|| null_err("graph"))?;
        s = Some(f(g));
        Ok(())
    });
    match (status, s) {
        (TsStatus::Ok, Some(s)) => into_c_string(s),
        _ => ptr::null_mut(),
    }
}

/// JSON dump of the graph, or null on error.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_json(g: *const TsGraph) -> *mut c_char {
    string_out(g, |g| g.graph.to_json())
}

/// DOT text of the Hasse quiver, or null on error.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_hasse_dot(g: *const TsGraph) -> *mut c_char {
    string_out(g, |g| hasse_dot(&g.graph))
}

/// Full check report as JSON, or null on error.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_report_json(g: *const TsGraph, seed: u64) -> *mut c_char {
    string_out(g, |g| {
        let r = full_report("ffi", &g.alg, &g.graph, g.graph.len().max(1), seed);
        serde_json::to_string_pretty(&r).expect("report serializes")
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
