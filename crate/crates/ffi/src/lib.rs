//! C ABI over `forest-ef`.
//!
//! Graphs and systems cross the boundary as opaque handles. Every fallible
//! call returns a [`FefStatus`]; on failure the message is available from
//! [`fef_last_error_message`] on the same thread. Strings returned through
//! out-parameters are owned by the caller and must be released with
//! [`fef_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use forest_ef::bounds::Exponent;
use forest_ef::formulations::{edmonds_base, recursive_ef, LinearSystem};
use forest_ef::graph::parse_graph;
use forest_ef::lp::verify_ef;
use forest_ef::separators::{build_separator_tree, ExactOracle, HeuristicOracle, TreeParams};
use forest_ef::{Graph, GraphMode, Rational};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FefStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    BuildError = 5,
    Panic = 6,
}

/// Opaque graph handle.
pub struct FefGraph(Graph);

/// Opaque linear system handle.
pub struct FefSystem(LinearSystem);

/// Separator tree parameters: `c = c_num/c_den`, `beta = beta_num/beta_den`.
/// A `leaf_threshold` of 0 picks the default `max(2, ceil(c))`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FefTreeParams {
    pub c_num: i64,
    pub c_den: i64,
    pub beta_num: u32,
    pub beta_den: u32,
    pub leaf_threshold: usize,
    /// Exhaustive separator search instead of the BFS-layer heuristic.
    pub exact_separators: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: FefStatus, msg: impl Into<String>) -> FefStatus {
    set_error(msg);
    status
}

fn guard(body: impl FnOnce() -> FefStatus) -> FefStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(FefStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, FefStatus> {
    if text.is_null() {
        return Err(fail(FefStatus::NullPointer, "text is null"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(FefStatus::InvalidUtf8, e.to_string()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next `fef_*` call on the same thread.
#[no_mangle]
pub extern "C" fn fef_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Defaults used by the command line tool: `c = 4`, `beta = 1/2`, heuristic
/// separators.
#[no_mangle]
pub extern "C" fn fef_tree_params_default() -> FefTreeParams {
    FefTreeParams {
        c_num: 4,
        c_den: 1,
        beta_num: 1,
        beta_den: 2,
        leaf_threshold: 0,
        exact_separators: false,
    }
}

/// Parses a simple graph in edge-list text form (`n m` then `m` lines `u v`).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fef_graph_parse(text: *const c_char, out: *mut *mut FefGraph) -> FefStatus {
    guard(|| {
        if out.is_null() {
            return fail(FefStatus::NullPointer, "out is null");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_graph(text, GraphMode::Simple) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(FefGraph(g)));
                FefStatus::Ok
            }
            Err(e) => fail(FefStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `g` must be null or a handle from [`fef_graph_parse`].
#[no_mangle]
pub unsafe extern "C" fn fef_graph_num_vertices(g: *const FefGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be null or a handle from [`fef_graph_parse`].
#[no_mangle]
pub unsafe extern "C" fn fef_graph_num_edges(g: *const FefGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// # Safety
/// `g` must be null or a handle from [`fef_graph_parse`], freed at most once.
#[no_mangle]
pub unsafe extern "C" fn fef_graph_free(g: *mut FefGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

fn tree_params(p: &FefTreeParams) -> Result<TreeParams, FefStatus> {
    if p.c_num <= 0 || p.c_den <= 0 {
        return Err(fail(FefStatus::InvalidArgument, "c must be positive"));
    }
    if p.beta_den == 0 {
        return Err(fail(FefStatus::InvalidArgument, "beta denominator is zero"));
    }
    let beta = Rational::new(i64::from(p.beta_num), i64::from(p.beta_den));
    let exponent = Exponent::from_rational(&beta)
        .ok_or_else(|| fail(FefStatus::InvalidArgument, "beta must lie strictly between 0 and 1"))?;
    let params = TreeParams::new(Rational::new(p.c_num, p.c_den), exponent);
    Ok(if p.leaf_threshold == 0 {
        params
    } else {
        params.with_leaf_threshold(p.leaf_threshold)
    })
}

/// Builds the recursive extended formulation of the spanning forest polytope
/// of `g`. `within_bound` (optional) receives whether the size fits the
/// closed-form bound with `d` the largest host density seen.
///
/// # Safety
/// `g` must be a live graph handle, `params` null (defaults) or valid,
/// `out` valid, `within_bound` null or valid.
#[no_mangle]
pub unsafe extern "C" fn fef_build_ef(
    g: *const FefGraph,
    params: *const FefTreeParams,
    out: *mut *mut FefSystem,
    within_bound: *mut bool,
) -> FefStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(FefStatus::NullPointer, "graph or out is null");
        };
        let p = params.as_ref().copied().unwrap_or_else(|| fef_tree_params_default());
        let tp = match tree_params(&p) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let half = Rational::new(1, 2);
        let tree = if p.exact_separators {
            build_separator_tree(&g.0, tp, &ExactOracle::new(half))
        } else {
            build_separator_tree(&g.0, tp, &HeuristicOracle::new(half))
        };
        let tree = match tree {
            Ok(t) => t,
            Err(e) => return fail(FefStatus::BuildError, e.to_string()),
        };
        match recursive_ef(&g.0, &tree, &edmonds_base) {
            Ok((sys, ledger)) => {
                if let Some(w) = within_bound.as_mut() {
                    let d = if ledger.max_host_density.is_positive() {
                        ledger.max_host_density.clone()
                    } else {
                        Rational::one()
                    };
                    *w = ledger.within_bound(&d);
                }
                *out = Box::into_raw(Box::new(FefSystem(sys)));
                FefStatus::Ok
            }
            Err(e) => fail(FefStatus::BuildError, e.to_string()),
        }
    })
}

/// Parses a system in the text form produced by [`fef_system_to_text`].
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fef_system_parse(text: *const c_char, out: *mut *mut FefSystem) -> FefStatus {
    guard(|| {
        if out.is_null() {
            return fail(FefStatus::NullPointer, "out is null");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match LinearSystem::from_text(text) {
            Ok(sys) => {
                *out = Box::into_raw(Box::new(FefSystem(sys)));
                FefStatus::Ok
            }
            Err(e) => fail(FefStatus::ParseError, e.to_string()),
        }
    })
}

/// Number of constraints (inequalities plus equalities).
///
/// # Safety
/// `sys` must be null or a live system handle.
#[no_mangle]
pub unsafe extern "C" fn fef_system_size(sys: *const FefSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.0.size())
}

/// Number of variables, original and auxiliary.
///
/// # Safety
/// `sys` must be null or a live system handle.
#[no_mangle]
pub unsafe extern "C" fn fef_system_num_vars(sys: *const FefSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.0.num_vars())
}

/// # Safety
/// `sys` must be a live system handle and `out` a valid pointer. The string
/// written to `out` must be released with [`fef_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fef_system_to_text(sys: *const FefSystem, out: *mut *mut c_char) -> FefStatus {
    guard(|| {
        let (Some(sys), false) = (sys.as_ref(), out.is_null()) else {
            return fail(FefStatus::NullPointer, "system or out is null");
        };
        *out = into_c_string(sys.0.to_text());
        FefStatus::Ok
    })
}

/// # Safety
/// `sys` must be null or a live system handle, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn fef_system_free(sys: *mut FefSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Checks that `sys` projects onto the spanning forest polytope of `g`:
/// every forest is feasible and LP optima match the greedy forest on a
/// structured plus `trials` random objectives. `report` (optional) receives
/// the per-check text.
///
/// # Safety
/// `g` and `sys` must be live handles, `passed` valid, `report` null or
/// valid. A string written to `report` must be released with
/// [`fef_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fef_verify(
    g: *const FefGraph,
    sys: *const FefSystem,
    trials: usize,
    seed: u64,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> FefStatus {
    guard(|| {
        let (Some(g), Some(sys), Some(passed)) = (g.as_ref(), sys.as_ref(), passed.as_mut()) else {
            return fail(FefStatus::NullPointer, "graph, system or passed is null");
        };
        let r = verify_ef(&g.0, &sys.0, trials, seed);
        *passed = r.passed();
        if !report.is_null() {
            *report = into_c_string(r.to_text());
        }
        FefStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn fef_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
