//! C ABI over `ofg-core`.
//!
//! Conventions:
//! - Every fallible call returns an [`OfgStatus`]; results go through out
//!   pointers, which are written only on success.
//! - Strings returned to the caller are NUL-terminated, heap-owned by this
//!   library, and must be released with [`ofg_string_free`].
//! - Graph handles are released with [`ofg_graph_free`].
//! - After a non-`OK` status, [`ofg_last_error_message`] and
//!   [`ofg_last_error_code`] describe the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ofg_core::counting::{edge_count_formula, vertex_count_formula};
use ofg_core::general::{build_ofg_general, count_rotational_copies, is_valid_general};
use ofg_core::graph::{build_ofg_uniform, BfsSources, ExportFormat, FlipGraph};
use ofg_core::limits::Limits;
use ofg_core::mv::MvAssignment;
use ofg_core::path::{find_path, PathAlgorithm};
use ofg_core::pattern::CreasePattern;
use ofg_core::OfgError;

/// Result of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OfgStatus {
    Ok = 0,
    /// Rejected input: malformed string, invalid assignment, limit, ...
    InvalidInput = 1,
    /// An internal self-check failed.
    Internal = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OfgFormat {
    Dot = 0,
    Json = 1,
    Csv = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OfgAlgorithm {
    Shwoop = 0,
    Halves = 1,
}

/// Opaque flip graph handle.
pub struct OfgGraph {
    inner: FlipGraph,
}

struct LastError {
    code: CString,
    message: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

fn set_error(code: &str, message: &str) {
    let clean = |s: &str| CString::new(s.replace('\0', " ")).expect("NUL removed");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(LastError {
            code: clean(code),
            message: clean(message),
        })
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn fail(e: OfgError) -> OfgStatus {
    set_error(e.code(), &e.to_string());
    if e.is_internal() {
        OfgStatus::Internal
    } else {
        OfgStatus::InvalidInput
    }
}

fn guard(body: impl FnOnce() -> OfgStatus) -> OfgStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("E_PANIC", "panic inside ofg library");
            OfgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, OfgStatus> {
    if ptr.is_null() {
        set_error("E_NULL", "null pointer argument");
        return Err(OfgStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("E_UTF8", "argument is not valid UTF-8");
        OfgStatus::InvalidUtf8
    })
}

fn null_out() -> OfgStatus {
    set_error("E_NULL", "null output pointer");
    OfgStatus::NullPointer
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> OfgStatus {
    if out.is_null() {
        return null_out();
    }
    let c = CString::new(s).expect("library output has no NUL");
    *out = c.into_raw();
    OfgStatus::Ok
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! try_core {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return fail(e),
        }
    };
}

/// Message for the last failure on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ofg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |e| e.message.as_ptr())
    })
}

/// Stable error code (e.g. `E_MV_STRING`) for the last failure, or NULL.
#[no_mangle]
pub extern "C" fn ofg_last_error_code() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |e| e.code.as_ptr())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ofg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build OFG(A_2n). `OFG_MAX_N` bounds `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ofg_graph_build_uniform(n: u32, out: *mut *mut OfgGraph) -> OfgStatus {
    guard(|| {
        if out.is_null() {
            return null_out();
        }
        let inner = try_core!(build_ofg_uniform(n as usize, &Limits::from_env()));
        *out = Box::into_raw(Box::new(OfgGraph { inner }));
        OfgStatus::Ok
    })
}

/// Build OFG(C) for comma-separated sector angles, e.g. `"45,15,60,85,75,80"`.
///
/// # Safety
/// `angles` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ofg_graph_build_general(
    angles: *const c_char,
    out: *mut *mut OfgGraph,
) -> OfgStatus {
    guard(|| {
        let angles = try_status!(read_str(angles));
        if out.is_null() {
            return null_out();
        }
        let c = try_core!(CreasePattern::from_angle_list(angles));
        let inner = try_core!(build_ofg_general(&c, &Limits::from_env()));
        *out = Box::into_raw(Box::new(OfgGraph { inner }));
        OfgStatus::Ok
    })
}

/// # Safety
/// `graph` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ofg_graph_free(graph: *mut OfgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices; 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ofg_graph_vertex_count(graph: *const OfgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// Number of edges, counting parallel edges; 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ofg_graph_edge_count(graph: *const OfgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ofg_graph_is_multigraph(graph: *const OfgGraph) -> bool {
    graph.as_ref().is_some_and(|g| g.inner.is_multigraph())
}

/// MV string of vertex `index` (0-based, sorted order).
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ofg_graph_vertex(
    graph: *const OfgGraph,
    index: usize,
    out: *mut *mut c_char,
) -> OfgStatus {
    guard(|| {
        let Some(g) = graph.as_ref() else {
            return null_out();
        };
        let Some(v) = g.inner.vertices().get(index) else {
            return fail(OfgError::IndexOutOfRange {
                index,
                degree: g.inner.vertex_count(),
            });
        };
        write_string(out, v.to_string())
    })
}

/// Serialize the graph.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ofg_graph_export(
    graph: *const OfgGraph,
    format: OfgFormat,
    out: *mut *mut c_char,
) -> OfgStatus {
    guard(|| {
        let Some(g) = graph.as_ref() else {
            return null_out();
        };
        let format = match format {
            OfgFormat::Dot => ExportFormat::Dot,
            OfgFormat::Json => ExportFormat::Json,
            OfgFormat::Csv => ExportFormat::Csv,
        };
        write_string(out, g.inner.export(format))
    })
}

/// Connectivity and diameter (largest finite eccentricity).
///
/// # Safety
/// `graph` must be a live handle; `connected` and `diameter` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ofg_graph_diameter(
    graph: *const OfgGraph,
    connected: *mut bool,
    diameter: *mut u32,
) -> OfgStatus {
    guard(|| {
        let Some(g) = graph.as_ref() else {
            return null_out();
        };
        if connected.is_null() || diameter.is_null() {
            return null_out();
        }
        let m = g.inner.bfs_metrics(BfsSources::SymmetryOrbits);
        *connected = m.connected;
        *diameter = m.diameter;
        OfgStatus::Ok
    })
}

/// Closed-form vertex count of OFG(A_2n) as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ofg_vertex_count_formula(n: u32, out: *mut *mut c_char) -> OfgStatus {
    guard(|| {
        if n == 0 {
            return fail(OfgError::UnsupportedDegree(0));
        }
        write_string(out, vertex_count_formula(n as usize).to_string())
    })
}

/// Closed-form edge count of OFG(A_2n) as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ofg_edge_count_formula(n: u32, out: *mut *mut c_char) -> OfgStatus {
    guard(|| {
        let count = try_core!(edge_count_formula(n as usize));
        write_string(out, count.to_string())
    })
}

/// Whether an MV string is valid on the equal-angle vertex of its degree.
///
/// # Safety
/// `mv` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ofg_is_valid_uniform(mv: *const c_char, out: *mut bool) -> OfgStatus {
    guard(|| {
        let mv = try_status!(read_str(mv));
        if out.is_null() {
            return null_out();
        }
        let mv: MvAssignment = try_core!(mv.parse());
        *out = mv.is_valid_uniform();
        OfgStatus::Ok
    })
}

/// Whether an MV string is valid on the vertex with the given angles.
///
/// # Safety
/// `angles` and `mv` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ofg_is_valid_general(
    angles: *const c_char,
    mv: *const c_char,
    out: *mut bool,
) -> OfgStatus {
    guard(|| {
        let angles = try_status!(read_str(angles));
        let mv = try_status!(read_str(mv));
        if out.is_null() {
            return null_out();
        }
        let c = try_core!(CreasePattern::from_angle_list(angles));
        let mv: MvAssignment = try_core!(mv.parse());
        *out = try_core!(is_valid_general(&c, &mv));
        OfgStatus::Ok
    })
}

/// Face-flip path between two valid assignments of A_2n, as a JSON
/// document with `start`, `end` and 1-based `faces`.
///
/// # Safety
/// `from` and `to` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ofg_find_path(
    from: *const c_char,
    to: *const c_char,
    algorithm: OfgAlgorithm,
    out: *mut *mut c_char,
) -> OfgStatus {
    guard(|| {
        let from = try_status!(read_str(from));
        let to = try_status!(read_str(to));
        let mu: MvAssignment = try_core!(from.parse());
        let nu: MvAssignment = try_core!(to.parse());
        let algo = match algorithm {
            OfgAlgorithm::Shwoop => PathAlgorithm::Shwoop,
            OfgAlgorithm::Halves => PathAlgorithm::Halves,
        };
        let path = try_core!(find_path(algo, &mu, &nu));
        write_string(out, path.to_json())
    })
}

/// Distinct images of OFG(C) in OFG(A_2n) under rotations, and under
/// rotations and reflections.
///
/// # Safety
/// `angles` must be a NUL-terminated string; the outputs valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ofg_count_rotational_copies(
    angles: *const c_char,
    rotational: *mut usize,
    with_reflections: *mut usize,
) -> OfgStatus {
    guard(|| {
        let angles = try_status!(read_str(angles));
        if rotational.is_null() || with_reflections.is_null() {
            return null_out();
        }
        let c = try_core!(CreasePattern::from_angle_list(angles));
        let copies = try_core!(count_rotational_copies(&c, &Limits::from_env()));
        *rotational = copies.rotational;
        *with_reflections = copies.with_reflections;
        OfgStatus::Ok
    })
}
