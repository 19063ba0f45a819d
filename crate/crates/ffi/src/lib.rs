//! C interface to the brooks coloring library.
//!
//! Graphs and colorings cross the boundary as opaque handles. Every function
//! returns a [`BrooksStatus`]; on failure the message is available from
//! [`brooks_last_error`] until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use brooks::color::brute_chromatic;
use brooks::descent::brooks_color as color_graph;
use brooks::graph::is_proper_coloring;
use brooks::{io, Coloring, Error, FiniteGraph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrooksStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    /// The graph refutes the coloring hypothesis: an odd cycle, a clique
    /// on d + 1 vertices, or a vertex of degree above d.
    Hypothesis = 3,
    Budget = 4,
    Internal = 5,
}

/// Opaque finite graph.
pub struct BrooksGraph(FiniteGraph);

/// Opaque vertex coloring.
pub struct BrooksColoring(Coloring);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BrooksStatus {
    if e.is_hypothesis_violation() {
        return BrooksStatus::Hypothesis;
    }
    match e {
        Error::NoColoringWithinCap(_) | Error::Budget(_) => BrooksStatus::Budget,
        Error::Invariant(_) => BrooksStatus::Internal,
        _ => BrooksStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (BrooksStatus, String)>) -> BrooksStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BrooksStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            BrooksStatus::Internal
        }
    }
}

fn lift<T>(r: brooks::Result<T>) -> Result<T, (BrooksStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (BrooksStatus, String) {
    (BrooksStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (BrooksStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (BrooksStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Message for the last failed call on this thread, or NULL after a
/// successful one. The pointer stays valid until the next call.
#[no_mangle]
pub extern "C" fn brooks_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a graph on `n` vertices from `m` edges stored as `2 * m`
/// consecutive vertex ids.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (it may be NULL when `m` is
/// 0) and the out pointer must be writable.
#[no_mangle]
pub unsafe extern "C" fn brooks_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out_graph: *mut *mut BrooksGraph,
) -> BrooksStatus {
    guard(|| {
        let slot = out(out_graph, "out")?;
        *slot = ptr::null_mut();
        let flat: &[usize] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        let g = lift(FiniteGraph::from_edges(n, &pairs))?;
        *slot = Box::into_raw(Box::new(BrooksGraph(g)));
        Ok(())
    })
}

/// Parses a graph in the text format read by the command line tool.
///
/// # Safety
/// `text` must be a NUL-terminated string and the out pointer must be writable.
#[no_mangle]
pub unsafe extern "C" fn brooks_graph_parse(text: *const c_char, out_graph: *mut *mut BrooksGraph) -> BrooksStatus {
    guard(|| {
        let slot = out(out_graph, "out")?;
        *slot = ptr::null_mut();
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (BrooksStatus::InvalidInput, format!("text is not UTF-8: {e}")))?;
        let g = lift(io::parse_graph(s))?;
        *slot = Box::into_raw(Box::new(BrooksGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `graph` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn brooks_graph_free(graph: *mut BrooksGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn brooks_graph_vertex_count(graph: *const BrooksGraph, out_n: *mut usize) -> BrooksStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        *out(out_n, "out")? = g.0.n();
        Ok(())
    })
}

/// Maximum degree; 0 for the empty graph.
///
/// # Safety
/// `graph` must be a live handle and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn brooks_graph_max_degree(graph: *const BrooksGraph, out_d: *mut usize) -> BrooksStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        *out(out_d, "out")? = g.0.max_degree().unwrap_or(0);
        Ok(())
    })
}

/// Colors `graph` with `d` colors, where `d` bounds the maximum degree.
/// Fails with `HYPOTHESIS` when the graph contains a clique on `d + 1`
/// vertices (or an odd cycle when `d = 2`).
///
/// # Safety
/// `graph` must be a live handle and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn brooks_color(
    graph: *const BrooksGraph,
    d: usize,
    out_coloring: *mut *mut BrooksColoring,
) -> BrooksStatus {
    guard(|| {
        let slot = out(out_coloring, "out")?;
        *slot = ptr::null_mut();
        let g = deref(graph, "graph")?;
        let c = lift(color_graph(&g.0, d))?;
        *slot = Box::into_raw(Box::new(BrooksColoring(c)));
        Ok(())
    })
}

/// Color of vertex `v`.
///
/// # Safety
/// `coloring` must be a live handle and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn brooks_coloring_get(
    coloring: *const BrooksColoring,
    v: usize,
    out_color: *mut usize,
) -> BrooksStatus {
    guard(|| {
        let c = deref(coloring, "coloring")?;
        let slot = out(out_color, "out")?;
        *slot = c
            .0
            .get(v)
            .ok_or_else(|| (BrooksStatus::InvalidInput, format!("vertex {v} has no color")))?;
        Ok(())
    })
}

/// # Safety
/// `coloring` must be a live handle and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn brooks_coloring_palette(coloring: *const BrooksColoring, out_k: *mut usize) -> BrooksStatus {
    guard(|| {
        let c = deref(coloring, "coloring")?;
        *out(out_k, "out")? = c.0.palette();
        Ok(())
    })
}

/// Coloring of vertices `0..n` with `colors[v] < palette`.
///
/// # Safety
/// `colors` must point to `n` readable values (it may be NULL when `n` is 0)
/// and the out pointer must be writable.
#[no_mangle]
pub unsafe extern "C" fn brooks_coloring_from_colors(
    palette: usize,
    colors: *const usize,
    n: usize,
    out_coloring: *mut *mut BrooksColoring,
) -> BrooksStatus {
    guard(|| {
        let slot = out(out_coloring, "out")?;
        *slot = ptr::null_mut();
        let vals: &[usize] = if n == 0 {
            &[]
        } else if colors.is_null() {
            return Err(null("colors"));
        } else {
            std::slice::from_raw_parts(colors, n)
        };
        let c = lift(Coloring::from_vec(palette, vals.to_vec()))?;
        *slot = Box::into_raw(Box::new(BrooksColoring(c)));
        Ok(())
    })
}

/// # Safety
/// `coloring` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn brooks_coloring_free(coloring: *mut BrooksColoring) {
    if !coloring.is_null() {
        drop(Box::from_raw(coloring));
    }
}

/// Whether `coloring` colors every vertex of `graph` with no monochromatic
/// edge.
///
/// # Safety
/// Both handles must be live and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn brooks_is_proper(
    graph: *const BrooksGraph,
    coloring: *const BrooksColoring,
    out_proper: *mut bool,
) -> BrooksStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        let c = deref(coloring, "coloring")?;
        let slot = out(out_proper, "out")?;
        *slot = match is_proper_coloring(&g.0, &c.0) {
            Ok(b) => b,
            Err(Error::IncompleteColoring(_)) | Err(Error::UnknownVertex(_)) => false,
            Err(e) => return Err((status_of(&e), e.to_string())),
        };
        Ok(())
    })
}

/// Chromatic number by exhaustive search, giving up with `BUDGET` above
/// `cap` colors.
///
/// # Safety
/// `graph` must be a live handle and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn brooks_chromatic_number(
    graph: *const BrooksGraph,
    cap: usize,
    out_chi: *mut usize,
) -> BrooksStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        let slot = out(out_chi, "out")?;
        *slot = lift(brute_chromatic(&g.0, cap))?;
        Ok(())
    })
}
