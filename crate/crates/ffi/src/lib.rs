//! C ABI for `wittgraph`.
//!
//! Graphs live behind an opaque `WittGraph` handle. Every fallible call
//! returns a `WittStatus`; on failure a description is available from
//! `witt_last_error_message` on the same thread. Strings returned through
//! `char **` out-parameters are owned by the caller and must be released with
//! `witt_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wittgraph::graph::{build_edge_matrix, symmetrize, GraphParseError, OrientedGraph, DEFAULT_MAX_ORIENTED_EDGES};
use wittgraph::linalg::{trace_powers, IntMatrix};
use wittgraph::oracle::CycleOracle;
use wittgraph::report::build_report;
use wittgraph::witt::{classical_witt, omega};
use wittgraph::{BigInt, WittError};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WittStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidGraph = 3,
    ParseError = 4,
    CapExceeded = 5,
    Arithmetic = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Opaque graph handle.
pub struct WittGraph {
    graph: OrientedGraph,
    matrix: IntMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: WittStatus, msg: impl Into<String>) -> WittStatus {
    set_error(msg);
    status
}

fn status_of(e: &WittError) -> WittStatus {
    match e {
        WittError::InvalidGraph(_) => WittStatus::InvalidGraph,
        WittError::CapExceeded { .. } => WittStatus::CapExceeded,
        WittError::NonExactDivision(_) => WittStatus::Arithmetic,
        _ => WittStatus::InvalidArgument,
    }
}

struct Failure(WittStatus, String);

impl From<WittError> for Failure {
    fn from(e: WittError) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs `body`, converting errors and panics into a status code.
fn guarded(body: impl FnOnce() -> Outcome) -> WittStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WittStatus::Ok,
        Ok(Err(Failure(status, msg))) => fail(status, msg),
        Err(_) => fail(WittStatus::Panic, "internal panic"),
    }
}

fn null(what: &str) -> Failure {
    Failure(WittStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const WittGraph) -> Result<&'a WittGraph, Failure> {
    g.as_ref().ok_or_else(|| null("graph"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Outcome {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|e| Failure(WittStatus::InvalidArgument, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn into_handle(graph: OrientedGraph) -> Result<Box<WittGraph>, Failure> {
    graph.check_size(DEFAULT_MAX_ORIENTED_EDGES)?;
    let matrix = build_edge_matrix(&symmetrize(&graph)).into_matrix();
    Ok(Box::new(WittGraph { graph, matrix }))
}

/// Builds a graph from `edge_count` pairs `(origin, end)` stored flat in
/// `edges` (length `2 * edge_count`).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn witt_graph_new(
    vertices: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut WittGraph,
) -> WittStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if edges.is_null() && edge_count > 0 {
            return Err(null("edges"));
        }
        let flat = if edge_count == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let handle = into_handle(OrientedGraph::new(vertices, pairs)?)?;
        *out = Box::into_raw(handle);
        Ok(())
    })
}

/// Parses `{"vertices": n, "edges": [[u, v], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn witt_graph_from_json(json: *const c_char, out: *mut *mut WittGraph) -> WittStatus {
    guarded(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(WittStatus::ParseError, e.to_string()))?;
        let graph = OrientedGraph::from_json_str(text).map_err(|e| match e {
            GraphParseError::Json(_) => Failure(WittStatus::ParseError, e.to_string()),
            GraphParseError::Invalid(w) => w.into(),
        })?;
        *out = Box::into_raw(into_handle(graph)?);
        Ok(())
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from a `witt_graph_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn witt_graph_free(g: *mut WittGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn witt_graph_edge_count(g: *const WittGraph, out: *mut usize) -> WittStatus {
    guarded(|| {
        let g = graph_ref(g)?;
        *out.as_mut().ok_or_else(|| null("out"))? = g.graph.edge_count();
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn witt_graph_is_connected(g: *const WittGraph, out: *mut bool) -> WittStatus {
    guarded(|| {
        let g = graph_ref(g)?;
        *out.as_mut().ok_or_else(|| null("out"))? = g.graph.is_connected();
        Ok(())
    })
}

/// Copies the row-major edge matrix into `buf`. `dim_out` always receives the
/// dimension; if `buf_len < dim * dim` nothing is copied and
/// `BufferTooSmall` is returned.
///
/// # Safety
/// `buf` must hold `buf_len` writable bytes (or be null with `buf_len == 0`).
#[no_mangle]
pub unsafe extern "C" fn witt_edge_matrix(
    g: *const WittGraph,
    buf: *mut u8,
    buf_len: usize,
    dim_out: *mut usize,
) -> WittStatus {
    guarded(|| {
        let g = graph_ref(g)?;
        let dim = g.matrix.dim();
        *dim_out.as_mut().ok_or_else(|| null("dim_out"))? = dim;
        if buf.is_null() || buf_len < dim * dim {
            return Err(Failure(WittStatus::BufferTooSmall, format!("need {} bytes", dim * dim)));
        }
        let dst = std::slice::from_raw_parts_mut(buf, dim * dim);
        for r in 0..dim {
            for (c, v) in g.matrix.row(r).iter().enumerate() {
                dst[r * dim + c] = u8::from(*v == 1.into());
            }
        }
        Ok(())
    })
}

fn traces_upto(g: &WittGraph, n: u32) -> Result<Vec<BigInt>, Failure> {
    if n == 0 {
        return Err(Failure(WittStatus::InvalidArgument, "n must be positive".into()));
    }
    Ok(trace_powers(&g.matrix, n as usize)?)
}

/// `Tr T^n` as a decimal string.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn witt_trace(g: *const WittGraph, n: u32, out: *mut *mut c_char) -> WittStatus {
    guarded(|| {
        let tr = traces_upto(graph_ref(g)?, n)?;
        write_string(out, tr[n as usize - 1].to_string())
    })
}

/// `Ω(n, T)` as a decimal string.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn witt_omega(g: *const WittGraph, n: u32, out: *mut *mut c_char) -> WittStatus {
    guarded(|| {
        let tr = traces_upto(graph_ref(g)?, n)?;
        write_string(out, omega(n as u64, &tr)?.to_string())
    })
}

/// The full report up to `order` as JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn witt_report_json(g: *const WittGraph, order: u32, out: *mut *mut c_char) -> WittStatus {
    guarded(|| {
        let doc = build_report(&graph_ref(g)?.graph, order as u64)?;
        let text = serde_json::to_string(&doc).map_err(|e| Failure(WittStatus::InvalidArgument, e.to_string()))?;
        write_string(out, text)
    })
}

/// Brute-force counts for length `n`: all cycles and non-periodic rotation
/// classes. `n` is capped at 10.
///
/// # Safety
/// `g` must be a live handle; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn witt_oracle_counts(
    g: *const WittGraph,
    n: u32,
    cycles_out: *mut u64,
    classes_out: *mut u64,
) -> WittStatus {
    guarded(|| {
        let g = graph_ref(g)?;
        if cycles_out.is_null() || classes_out.is_null() {
            return Err(null("out"));
        }
        let sg = symmetrize(&g.graph);
        let oracle = CycleOracle::new(&sg);
        let cycles = oracle.enumerate_cycles(n as u64)?.count() as u64;
        let classes = oracle.count_nonperiodic_classes(n as u64)?;
        *cycles_out = cycles;
        *classes_out = classes;
        Ok(())
    })
}

/// Necklace polynomial `M(n; r)` as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn witt_classical(n: u32, r: i64, out: *mut *mut c_char) -> WittStatus {
    guarded(|| {
        if r < 0 {
            return Err(Failure(
                WittStatus::InvalidArgument,
                format!("r = {r} must be nonnegative"),
            ));
        }
        write_string(out, classical_witt(n as u64, r)?.to_string())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn witt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Description of the last failure on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn witt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
