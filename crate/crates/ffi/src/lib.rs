//! C ABI over `alteration-lab`.
//!
//! Conventions:
//! - every fallible function returns an [`AlStatus`] and writes results
//!   through out-pointers only on success;
//! - graphs are opaque [`AlGraph`] handles released with [`al_graph_free`];
//! - strings returned to the caller are released with [`al_string_free`];
//! - after a failure, [`al_last_error_message`] describes it until the next
//!   call on the same thread.
//!
//! Panics never cross the boundary; they surface as `AL_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use alteration_lab::alteration::{alter, independence_number, ramsey_certificate, Method, Verdict};
use alteration_lab::density::m2_report;
use alteration_lab::graph::{named_pattern, Graph, Structure};
use alteration_lab::random::{sample_gnp, RandomSource};
use alteration_lab::subgraph::enumerate_copies;
use alteration_lab::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Edgeless = 4,
    Overflow = 5,
    BudgetExhausted = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlMethod {
    Refined = 0,
    Greedy = 1,
    Krivelevich = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlVerdict {
    Certified = 0,
    NotCertified = 1,
    Undetermined = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AlCopyStats {
    pub copies: usize,
    pub covered_edges: usize,
    /// Largest number of copies through one edge.
    pub delta: usize,
    /// Largest number of copies through one pair of edges.
    pub delta2: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AlIndependence {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

/// Opaque graph handle.
pub struct AlGraph {
    graph: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(error: &Error) -> AlStatus {
    match error {
        Error::Parse { .. } | Error::UnknownPattern(_) => AlStatus::Parse,
        Error::Edgeless => AlStatus::Edgeless,
        Error::PackingBudgetExhausted { .. } => AlStatus::BudgetExhausted,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => AlStatus::Internal,
        _ => AlStatus::InvalidArgument,
    }
}

struct Failure(AlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(AlStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> AlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => AlStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            AlStatus::Internal
        }
    }
}

unsafe fn graph_ref<'a>(g: *const AlGraph, what: &str) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.graph).ok_or_else(|| null(what))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(AlStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed(graph: Graph) -> *mut AlGraph {
    Box::into_raw(Box::new(AlGraph { graph }))
}

/// Message for the last failure on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn al_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in `edges`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (or be null when
/// `edge_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn al_graph_new(
    n: usize,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut AlGraph,
) -> AlStatus {
    guard(|| {
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            let len = edge_count
                .checked_mul(2)
                .ok_or_else(|| Failure(AlStatus::Overflow, "edge count overflows".into()))?;
            std::slice::from_raw_parts(edges, len)
        };
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|p| (p[0], p[1])))?;
        put(out, boxed(g), "out")
    })
}

/// Parses the text format: a `n m` header line, then one `u v` line per edge.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn al_graph_from_text(text: *const c_char, out: *mut *mut AlGraph) -> AlStatus {
    guard(|| {
        let g = Graph::parse_text(str_arg(text, "text")?)?;
        put(out, boxed(g), "out")
    })
}

/// A named graph pattern such as `K4`, `C5`, `P3` or `K2,3`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn al_graph_named(name: *const c_char, out: *mut *mut AlGraph) -> AlStatus {
    guard(|| match named_pattern(str_arg(name, "name")?)? {
        Structure::Graph(g) => put(out, boxed(g), "out"),
        Structure::Hypergraph(_) => Err(Failure(AlStatus::InvalidArgument, "pattern is not a graph".into())),
    })
}

/// Binomial random graph from substream `index` of `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn al_sample_gnp(n: usize, p: f64, seed: u64, index: u64, out: *mut *mut AlGraph) -> AlStatus {
    guard(|| {
        let g = sample_gnp(n, p, &mut RandomSource::new(seed).stream("ffi-gnp", index))?;
        put(out, boxed(g), "out")
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn al_graph_free(g: *mut AlGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn al_graph_vertex_count(g: *const AlGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.n())
}

/// Edge count, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn al_graph_edge_count(g: *const AlGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.edge_count())
}

/// Copies up to `capacity` edges, flattened, into `out_pairs` in lexicographic order.
///
/// # Safety
/// `g` must be a live handle; `out_pairs` must have room for `2 * capacity` values.
#[no_mangle]
pub unsafe extern "C" fn al_graph_edges(g: *const AlGraph, out_pairs: *mut u32, capacity: usize) -> AlStatus {
    guard(|| {
        let g = graph_ref(g, "graph")?;
        if g.edge_count() > capacity {
            return Err(Failure(
                AlStatus::InvalidArgument,
                format!("capacity {capacity} is below the edge count {}", g.edge_count()),
            ));
        }
        if g.edge_count() > 0 && out_pairs.is_null() {
            return Err(null("out_pairs"));
        }
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            out_pairs.add(2 * i).write(u);
            out_pairs.add(2 * i + 1).write(v);
        }
        Ok(())
    })
}

/// The graph in text format; release with [`al_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn al_graph_to_text(g: *const AlGraph, out: *mut *mut c_char) -> AlStatus {
    guard(|| {
        let text = CString::new(graph_ref(g, "graph")?.to_text()).expect("text has no NUL");
        put(out, text.into_raw(), "out")
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn al_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact `m_2` as a reduced fraction, and whether the graph is strictly 2-balanced.
///
/// # Safety
/// `g` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn al_m2(
    g: *const AlGraph,
    out_numer: *mut i64,
    out_denom: *mut i64,
    out_strictly_balanced: *mut bool,
) -> AlStatus {
    guard(|| {
        let report = m2_report(graph_ref(g, "graph")?)?;
        let overflow = || Failure(AlStatus::Overflow, "density does not fit in 64 bits".into());
        let numer = i64::try_from(report.value.numer()).map_err(|_| overflow())?;
        let denom = i64::try_from(report.value.denom()).map_err(|_| overflow())?;
        put(out_numer, numer, "out_numer")?;
        put(out_denom, denom, "out_denom")?;
        put(out_strictly_balanced, report.strictly_balanced, "out_strictly_balanced")
    })
}

/// Copy statistics of `pattern` in `host`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn al_copy_stats(host: *const AlGraph, pattern: *const AlGraph, out: *mut AlCopyStats) -> AlStatus {
    guard(|| {
        let index = enumerate_copies(graph_ref(host, "host")?, graph_ref(pattern, "pattern")?)?;
        let s = index.summary();
        put(
            out,
            AlCopyStats {
                copies: s.copies,
                covered_edges: s.covered_edges,
                delta: s.delta,
                delta2: s.delta2,
            },
            "out",
        )
    })
}

/// Pattern-free subgraph of `g` produced by `method`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn al_alter(
    g: *const AlGraph,
    pattern: *const AlGraph,
    method: AlMethod,
    out: *mut *mut AlGraph,
) -> AlStatus {
    guard(|| {
        let method = match method {
            AlMethod::Refined => Method::Refined,
            AlMethod::Greedy => Method::Greedy,
            AlMethod::Krivelevich => Method::Krivelevich,
        };
        let result = alter(graph_ref(g, "graph")?, graph_ref(pattern, "pattern")?, method)?;
        put(out, boxed(result.output), "out")
    })
}

/// Independence number with at most `budget` search nodes.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn al_independence_number(g: *const AlGraph, budget: u64, out: *mut AlIndependence) -> AlStatus {
    guard(|| {
        let r = independence_number(graph_ref(g, "graph")?, budget);
        put(
            out,
            AlIndependence {
                lower: r.lower,
                upper: r.upper,
                exact: r.exact,
            },
            "out",
        )
    })
}

/// Whether `g` has no copy of `pattern` and independence number below `k`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn al_ramsey_certificate(
    g: *const AlGraph,
    pattern: *const AlGraph,
    k: usize,
    budget: u64,
    out: *mut AlVerdict,
) -> AlStatus {
    guard(|| {
        let cert = ramsey_certificate(graph_ref(g, "graph")?, graph_ref(pattern, "pattern")?, k, budget)?;
        let verdict = match cert.verdict {
            Verdict::Certified => AlVerdict::Certified,
            Verdict::NotCertified => AlVerdict::NotCertified,
            Verdict::Undetermined => AlVerdict::Undetermined,
        };
        put(out, verdict, "out")
    })
}
