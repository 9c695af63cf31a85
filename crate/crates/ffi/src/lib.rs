//! C ABI over `logistic-ring`.
//!
//! Every function returns an [`LrStatus`] and writes its result through an
//! out-pointer. Graphs are exposed through the opaque [`LrGraph`] handle,
//! created by [`lr_graph_new`] and released with [`lr_graph_free`]. Strings
//! returned to C are released with [`lr_string_free`].
//!
//! Default size caps apply (`3^17` per orbit, `3^13` per sweep or graph).

use std::ffi::{c_char, CString};
use std::ptr;

use logistic_ring::{
    achieves_max_period, closed_form_period, decompose, detect_orbit, export_dot, max_period_bruteforce,
    max_period_formula, smn, Branch, Caps, Error, LogisticMap, MaxPeriodReport, ReportSource, RingModulus,
    SmnDecomposition, SmnGraph, Valuation,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LrStatus {
    Ok = 0,
    NullPointer = 1,
    NotPrime = 2,
    InvalidExponent = 3,
    ModulusTooLarge = 4,
    StateSpaceTooLarge = 5,
    MuDivisibleBy3 = 6,
    NotBase3 = 7,
    PreconditionUnmet = 8,
    OutOfRange = 9,
}

impl From<&Error> for LrStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotPrime(_) => LrStatus::NotPrime,
            Error::InvalidExponent(_) => LrStatus::InvalidExponent,
            Error::ModulusTooLarge { .. } => LrStatus::ModulusTooLarge,
            Error::StateSpaceTooLarge { .. } | Error::DegreeCapExceeded { .. } => LrStatus::StateSpaceTooLarge,
            Error::MuDivisibleBy3(_) => LrStatus::MuDivisibleBy3,
            Error::NotBase3(_) => LrStatus::NotBase3,
            Error::PreconditionUnmet(_) => LrStatus::PreconditionUnmet,
            Error::ExponentOutOfRange { .. } => LrStatus::OutOfRange,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LrOrbit {
    pub pre_period: u64,
    pub period: u64,
    pub cycle_entry: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LrBranch {
    MuBarZero = 0,
    Formula = 1,
    SmallN = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LrPeriodLaw {
    pub mu_bar: u8,
    pub entry_index: u8,
    pub entry_value: u64,
    /// False when the valuation is infinite; `v` is then 0.
    pub v_finite: bool,
    pub v: u32,
    pub branch: LrBranch,
    pub period: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LrMaxPeriod {
    pub class_modulus: u64,
    pub class_residue: u64,
    pub max_period: u64,
    pub has_witness: bool,
    pub witness: u64,
    /// True when the value came from an exhaustive sweep.
    pub brute_force: bool,
}

impl From<MaxPeriodReport> for LrMaxPeriod {
    fn from(r: MaxPeriodReport) -> Self {
        Self {
            class_modulus: r.mu_class.modulus,
            class_residue: r.mu_class.residue,
            max_period: r.max_period,
            has_witness: r.witness.is_some(),
            witness: r.witness.unwrap_or(0),
            brute_force: r.source == ReportSource::BruteForce,
        }
    }
}

/// Opaque state-mapping network with its decomposition.
pub struct LrGraph {
    graph: SmnGraph,
    dec: SmnDecomposition,
}

fn map(p: u64, n: u32, mu: u64) -> Result<LogisticMap, LrStatus> {
    let ring = RingModulus::new(p, n).map_err(|e| LrStatus::from(&e))?;
    Ok(LogisticMap::new(mu, ring))
}

/// Writes `value` through `out` or reports the failure.
fn finish<T>(result: Result<T, LrStatus>, out: *mut T) -> LrStatus {
    if out.is_null() {
        return LrStatus::NullPointer;
    }
    match result {
        Ok(v) => {
            // SAFETY: caller guarantees `out` points to writable storage for a `T`.
            unsafe { out.write(v) };
            LrStatus::Ok
        }
        Err(s) => s,
    }
}

fn lift<T>(r: logistic_ring::Result<T>) -> Result<T, LrStatus> {
    r.map_err(|e| LrStatus::from(&e))
}

/// `mu * x * (x + 1) mod p^n`; inputs are reduced first.
///
/// # Safety
/// `out` must be null or valid for writing a `u64`.
#[no_mangle]
pub unsafe extern "C" fn lr_step(p: u64, n: u32, mu: u64, x: u64, out: *mut u64) -> LrStatus {
    finish(map(p, n, mu).map(|f| f.step(f.ring().reduce(x))), out)
}

/// # Safety
/// `out` must be null or valid for writing a `u64`.
#[no_mangle]
pub unsafe extern "C" fn lr_iterate(p: u64, n: u32, mu: u64, x: u64, k: u64, out: *mut u64) -> LrStatus {
    finish(map(p, n, mu).map(|f| f.iterate(f.ring().reduce(x), k)), out)
}

/// Brute-force pre-period, period and cycle entry.
///
/// # Safety
/// `out` must be null or valid for writing an `LrOrbit`.
#[no_mangle]
pub unsafe extern "C" fn lr_detect_orbit(p: u64, n: u32, mu: u64, x0: u64, out: *mut LrOrbit) -> LrStatus {
    let r = map(p, n, mu).and_then(|f| lift(detect_orbit(x0, &f, &Caps::default()))).map(|o| LrOrbit {
        pre_period: o.pre_period,
        period: o.period,
        cycle_entry: o.cycle_entry,
    });
    finish(r, out)
}

/// Closed-form period over `Z/3^n`.
///
/// # Safety
/// `out` must be null or valid for writing an `LrPeriodLaw`.
#[no_mangle]
pub unsafe extern "C" fn lr_closed_form_period(n: u32, mu: u64, x0: u64, out: *mut LrPeriodLaw) -> LrStatus {
    let r = map(3, n, mu).and_then(|f| lift(closed_form_period(x0, &f))).map(|r| LrPeriodLaw {
        mu_bar: r.mu_bar,
        entry_index: r.entry_index,
        entry_value: r.entry_value,
        v_finite: r.v != Valuation::Infinite,
        v: r.v.finite().unwrap_or(0),
        branch: match r.branch {
            Branch::MuBarZero => LrBranch::MuBarZero,
            Branch::Formula => LrBranch::Formula,
            Branch::SmallN => LrBranch::SmallN,
        },
        period: r.period,
    });
    finish(r, out)
}

/// # Safety
/// `out` must be null or valid for writing an `LrMaxPeriod`.
#[no_mangle]
pub unsafe extern "C" fn lr_max_period_formula(n: u32, mu: u64, out: *mut LrMaxPeriod) -> LrStatus {
    let r = map(3, n, mu).and_then(|f| lift(max_period_formula(&f, &Caps::default())));
    finish(r.map(LrMaxPeriod::from), out)
}

/// # Safety
/// `out` must be null or valid for writing an `LrMaxPeriod`.
#[no_mangle]
pub unsafe extern "C" fn lr_max_period_bruteforce(p: u64, n: u32, mu: u64, out: *mut LrMaxPeriod) -> LrStatus {
    let r = map(p, n, mu).and_then(|f| lift(max_period_bruteforce(&f, &Caps::default())));
    finish(r.map(LrMaxPeriod::from), out)
}

/// # Safety
/// `out` must be null or valid for writing a `bool`.
#[no_mangle]
pub unsafe extern "C" fn lr_achieves_max_period(n: u32, mu: u64, x0: u64, out: *mut bool) -> LrStatus {
    let r = map(3, n, mu).and_then(|f| lift(achieves_max_period(x0, &f, &Caps::default())));
    finish(r, out)
}

/// Builds and decomposes the state-mapping network. Release with [`lr_graph_free`].
///
/// # Safety
/// `out` must be null or valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_new(p: u64, n: u32, mu: u64, out: *mut *mut LrGraph) -> LrStatus {
    let r = lift(RingModulus::new(p, n))
        .and_then(|ring| lift(logistic_ring::build_smn(mu, ring, &Caps::default())))
        .map(|graph| {
            let dec = decompose(&graph);
            Box::into_raw(Box::new(LrGraph { graph, dec }))
        });
    finish(r, out)
}

/// # Safety
/// `graph` must be null or a handle from [`lr_graph_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_free(graph: *mut LrGraph) {
    if !graph.is_null() {
        // SAFETY: handle was produced by Box::into_raw in lr_graph_new.
        drop(unsafe { Box::from_raw(graph) });
    }
}

unsafe fn graph_ref<'a>(graph: *const LrGraph) -> Option<&'a LrGraph> {
    // SAFETY: caller guarantees the handle is live.
    unsafe { graph.as_ref() }
}

/// Number of nodes, `p^n`; 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_len(graph: *const LrGraph) -> usize {
    unsafe { graph_ref(graph) }.map_or(0, |g| g.graph.len())
}

/// Borrowed pointer to the successor array of length [`lr_graph_len`], valid
/// until the handle is freed.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_successors(graph: *const LrGraph) -> *const u64 {
    unsafe { graph_ref(graph) }.map_or(ptr::null(), |g| g.graph.successors().as_ptr())
}

/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_cycle_count(graph: *const LrGraph) -> usize {
    unsafe { graph_ref(graph) }.map_or(0, |g| g.dec.cycles().len())
}

/// Copies cycle `index` (rotated to its minimum) into `buf` and stores its
/// full length in `len`. At most `cap` values are written.
///
/// # Safety
/// `graph` must be a live handle, `buf` valid for `cap` writes (or null with
/// `cap == 0`), and `len` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_cycle(
    graph: *const LrGraph,
    index: usize,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> LrStatus {
    let Some(g) = (unsafe { graph_ref(graph) }) else {
        return LrStatus::NullPointer;
    };
    if len.is_null() || (buf.is_null() && cap > 0) {
        return LrStatus::NullPointer;
    }
    let Some(cycle) = g.dec.cycles().get(index) else {
        return LrStatus::OutOfRange;
    };
    let copied = cycle.len().min(cap);
    unsafe {
        if copied > 0 {
            ptr::copy_nonoverlapping(cycle.as_ptr(), buf, copied);
        }
        len.write(cycle.len());
    }
    LrStatus::Ok
}

/// Tail depth of node `x` (0 for cycle nodes).
///
/// # Safety
/// `graph` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_tail_depth(graph: *const LrGraph, x: u64, out: *mut u64) -> LrStatus {
    let Some(g) = (unsafe { graph_ref(graph) }) else {
        return LrStatus::NullPointer;
    };
    let r = if (x as usize) < g.graph.len() {
        Ok(g.dec.node(x).tail_depth)
    } else {
        Err(LrStatus::OutOfRange)
    };
    finish(r, out)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// JSON decomposition document; release with [`lr_string_free`].
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_to_json(graph: *const LrGraph) -> *mut c_char {
    unsafe { graph_ref(graph) }.map_or(ptr::null_mut(), |g| into_c_string(smn::export_json(&g.graph, &g.dec)))
}

/// DOT digraph; release with [`lr_string_free`].
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_to_dot(graph: *const LrGraph) -> *mut c_char {
    unsafe { graph_ref(graph) }.map_or(ptr::null_mut(), |g| into_c_string(export_dot(&g.graph, Some(&g.dec))))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lr_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: `s` came from CString::into_raw.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn lr_status_message(status: LrStatus) -> *const c_char {
    let s: &'static std::ffi::CStr = match status {
        LrStatus::Ok => c"ok",
        LrStatus::NullPointer => c"null pointer argument",
        LrStatus::NotPrime => c"base is not prime",
        LrStatus::InvalidExponent => c"exponent must be at least 1",
        LrStatus::ModulusTooLarge => c"p^n does not fit in 63 bits",
        LrStatus::StateSpaceTooLarge => c"state space exceeds the cap",
        LrStatus::MuDivisibleBy3 => c"mu is divisible by 3",
        LrStatus::NotBase3 => c"closed form requires p = 3",
        LrStatus::PreconditionUnmet => c"precondition unmet",
        LrStatus::OutOfRange => c"index or exponent out of range",
    };
    s.as_ptr()
}
