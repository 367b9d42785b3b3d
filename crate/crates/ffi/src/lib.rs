//! C ABI for the maximum k-plex solver.
//!
//! Graphs and results are opaque heap objects owned by the caller and
//! released with the matching `*_free` function. Every fallible call
//! returns a [`KplexError`]; on failure a message is available from
//! [`kplex_last_error_message`] on the same thread until the next call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::time::Duration;

use kplexer::{maple_solve, Graph, GraphError, GraphFormat, SolveResult, SolverConfig, Status, Strategy};

/// Error codes returned by fallible calls.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KplexError {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    Parse = 4,
    Internal = 5,
}

/// Solve outcome, mirrors the library status.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KplexStatus {
    Optimal = 0,
    /// No k-plex of size 2k - 1 exists.
    Trivial = 1,
    Timeout = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KplexFormat {
    /// Pick from the file extension.
    Auto = 0,
    EdgeList = 1,
    Dimacs = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KplexStrategy {
    Vertex = 0,
    Edge = 1,
    Hybrid = 2,
}

/// Solver options. Start from [`kplex_config_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct KplexConfig {
    pub strategy: KplexStrategy,
    pub reductions_enabled: bool,
    pub dbdd_bound_enabled: bool,
    /// Seconds, must be positive.
    pub time_limit_secs: f64,
    pub compute_cd: bool,
}

/// Opaque graph handle.
pub struct KplexGraph {
    inner: Graph,
}

/// Opaque solve result handle.
pub struct KplexResult {
    inner: SolveResult,
    /// Witness under the input file's labels, sorted.
    witness: Vec<u64>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(code: KplexError, msg: &str) -> KplexError {
    set_error(msg);
    code
}

fn graph_error(e: &GraphError) -> KplexError {
    let code = match e {
        GraphError::Io { .. } => KplexError::Io,
        GraphError::Parse { .. } | GraphError::IdOverflow(_) => KplexError::Parse,
        _ => KplexError::InvalidArgument,
    };
    fail(code, &e.to_string())
}

fn guard<F: FnOnce() -> KplexError>(f: F) -> KplexError {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => fail(KplexError::Internal, "internal panic"),
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn kplex_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn kplex_config_default() -> KplexConfig {
    let d = SolverConfig::default();
    KplexConfig {
        strategy: KplexStrategy::Vertex,
        reductions_enabled: d.reductions_enabled,
        dbdd_bound_enabled: d.dbdd_bound_enabled,
        time_limit_secs: d.time_limit.as_secs_f64(),
        compute_cd: d.compute_cd,
    }
}

/// Reads a graph file. `path` is a NUL-terminated UTF-8 string.
///
/// # Safety
/// `path` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kplex_graph_from_file(path: *const c_char, format: KplexFormat, out: *mut *mut KplexGraph) -> KplexError {
    guard(|| {
        if path.is_null() || out.is_null() {
            return fail(KplexError::NullPointer, "null argument");
        }
        // SAFETY: checked non-null; the caller guarantees a C string.
        let path = match unsafe { CStr::from_ptr(path) }.to_str() {
            Ok(p) => p,
            Err(_) => return fail(KplexError::InvalidArgument, "path is not UTF-8"),
        };
        let format = match format {
            KplexFormat::Auto => None,
            KplexFormat::EdgeList => Some(GraphFormat::EdgeList),
            KplexFormat::Dimacs => Some(GraphFormat::Dimacs),
        };
        match Graph::from_file(Path::new(path), format) {
            Ok(g) => {
                // SAFETY: checked non-null.
                unsafe { *out = Box::into_raw(Box::new(KplexGraph { inner: g })) };
                KplexError::Ok
            }
            Err(e) => graph_error(&e),
        }
    })
}

/// Builds a graph on vertices `0..n` from `edge_count` pairs stored flat
/// in `edges` (`2 * edge_count` entries). Self-loops and duplicate edges
/// are ignored.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (or may be null
/// when `edge_count` is 0) and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kplex_graph_from_edges(n: usize, edges: *const u32, edge_count: usize, out: *mut *mut KplexGraph) -> KplexError {
    guard(|| {
        if out.is_null() || (edges.is_null() && edge_count > 0) {
            return fail(KplexError::NullPointer, "null argument");
        }
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else {
            // SAFETY: the caller guarantees 2 * edge_count readable values.
            unsafe { std::slice::from_raw_parts(edges, 2 * edge_count) }
        };
        let pairs = flat.chunks_exact(2).map(|p| (p[0] as usize, p[1] as usize));
        match Graph::from_edges(n, pairs) {
            Ok(g) => {
                // SAFETY: checked non-null.
                unsafe { *out = Box::into_raw(Box::new(KplexGraph { inner: g })) };
                KplexError::Ok
            }
            Err(e) => graph_error(&e),
        }
    })
}

/// # Safety
/// `g` must be null or a handle from this library that is not used again.
#[no_mangle]
pub unsafe extern "C" fn kplex_graph_free(g: *mut KplexGraph) {
    if !g.is_null() {
        // SAFETY: the handle came from Box::into_raw.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn kplex_graph_vertex_count(g: *const KplexGraph) -> usize {
    // SAFETY: null or live handle.
    unsafe { g.as_ref() }.map_or(0, |g| g.inner.n())
}

/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn kplex_graph_edge_count(g: *const KplexGraph) -> usize {
    // SAFETY: null or live handle.
    unsafe { g.as_ref() }.map_or(0, |g| g.inner.m())
}

/// Finds a maximum k-plex. `config` may be null for the defaults.
///
/// # Safety
/// `g` must be a live graph handle, `config` null or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kplex_solve(g: *const KplexGraph, k: usize, config: *const KplexConfig, out: *mut *mut KplexResult) -> KplexError {
    guard(|| {
        if g.is_null() || out.is_null() {
            return fail(KplexError::NullPointer, "null argument");
        }
        if k == 0 {
            return fail(KplexError::InvalidArgument, "k must be positive");
        }
        // SAFETY: checked non-null; caller guarantees validity.
        let cfg = unsafe { config.as_ref() }.copied().unwrap_or_else(|| kplex_config_default());
        if !(cfg.time_limit_secs.is_finite() && cfg.time_limit_secs > 0.0) {
            return fail(KplexError::InvalidArgument, "time limit must be positive");
        }
        let cfg = SolverConfig {
            strategy: match cfg.strategy {
                KplexStrategy::Vertex => Strategy::Vertex,
                KplexStrategy::Edge => Strategy::Edge,
                KplexStrategy::Hybrid => Strategy::Hybrid,
            },
            reductions_enabled: cfg.reductions_enabled,
            dbdd_bound_enabled: cfg.dbdd_bound_enabled,
            time_limit: Duration::from_secs_f64(cfg.time_limit_secs),
            compute_cd: cfg.compute_cd,
            ..SolverConfig::default()
        };
        // SAFETY: checked non-null.
        let graph = unsafe { &(*g).inner };
        let inner = maple_solve(graph, k, &cfg);
        let mut witness: Vec<u64> = inner.witness.iter().map(|&v| graph.label(v)).collect();
        witness.sort_unstable();
        // SAFETY: checked non-null.
        unsafe { *out = Box::into_raw(Box::new(KplexResult { inner, witness })) };
        KplexError::Ok
    })
}

/// # Safety
/// `r` must be null or a result handle that is not used again.
#[no_mangle]
pub unsafe extern "C" fn kplex_result_free(r: *mut KplexResult) {
    if !r.is_null() {
        // SAFETY: the handle came from Box::into_raw.
        drop(unsafe { Box::from_raw(r) });
    }
}

fn with_result<T>(r: *const KplexResult, missing: T, f: impl FnOnce(&KplexResult) -> T) -> T {
    // SAFETY: callers pass null or a live handle.
    match unsafe { r.as_ref() } {
        Some(r) => f(r),
        None => missing,
    }
}

/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn kplex_result_status(r: *const KplexResult) -> KplexStatus {
    with_result(r, KplexStatus::Timeout, |r| match r.inner.status {
        Status::Optimal => KplexStatus::Optimal,
        Status::Trivial => KplexStatus::Trivial,
        Status::Timeout => KplexStatus::Timeout,
    })
}

/// Optimum size, or -1 unless the status is optimal.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn kplex_result_omega(r: *const KplexResult) -> i64 {
    with_result(r, -1, |r| r.inner.omega_k.map_or(-1, |w| w as i64))
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn kplex_result_degeneracy(r: *const KplexResult) -> i64 {
    with_result(r, -1, |r| r.inner.d as i64)
}

/// Community degeneracy, or -1 when it was not computed.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn kplex_result_community_degeneracy(r: *const KplexResult) -> i64 {
    with_result(r, -1, |r| r.inner.cd.map_or(-1, |c| c as i64))
}

/// Writes `g_k` and `cg_k` where available; returns how many were written
/// (0, 1 for `g_k` only, or 2).
///
/// # Safety
/// `r` must be a live result handle; `g_k` and `cg_k` null or valid.
#[no_mangle]
pub unsafe extern "C" fn kplex_result_gaps(r: *const KplexResult, g_k: *mut i64, cg_k: *mut i64) -> u32 {
    with_result(r, 0, |r| {
        let mut n = 0;
        if let Some(v) = r.inner.g_k {
            if !g_k.is_null() {
                // SAFETY: checked non-null.
                unsafe { *g_k = v };
            }
            n += 1;
            if let Some(c) = r.inner.cg_k {
                if !cg_k.is_null() {
                    // SAFETY: checked non-null.
                    unsafe { *cg_k = c };
                }
                n += 1;
            }
        }
        n
    })
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn kplex_result_elapsed_ms(r: *const KplexResult) -> u64 {
    with_result(r, 0, |r| r.inner.elapsed.as_millis() as u64)
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn kplex_result_search_nodes(r: *const KplexResult) -> u64 {
    with_result(r, 0, |r| r.inner.stats.nodes)
}

/// Average branching factor, NaN when nothing branched.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn kplex_result_gamma(r: *const KplexResult) -> f64 {
    with_result(r, f64::NAN, |r| r.inner.gamma.unwrap_or(f64::NAN))
}

/// Number of vertices in the best k-plex found.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn kplex_result_witness_len(r: *const KplexResult) -> usize {
    with_result(r, 0, |r| r.witness.len())
}

/// Copies up to `cap` witness labels into `buf` and returns the full
/// witness length.
///
/// # Safety
/// `r` must be a live result handle and `buf` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn kplex_result_witness(r: *const KplexResult, buf: *mut u64, cap: usize) -> usize {
    with_result(r, 0, |r| {
        let n = r.witness.len().min(cap);
        if n > 0 && !buf.is_null() {
            // SAFETY: caller guarantees cap writable slots.
            unsafe { ptr::copy_nonoverlapping(r.witness.as_ptr(), buf, n) };
        }
        r.witness.len()
    })
}
