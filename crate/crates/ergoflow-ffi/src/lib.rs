//! C ABI over the ergoflow library: opaque handles, status codes, and a
//! thread-local last-error message. The header `include/ergoflow.h` is
//! generated by cbindgen at build time.
//!
//! Conventions: every fallible function returns an [`EfStatus`] and writes
//! its results through out-pointers, which are left untouched on failure.
//! Handles must be released with the matching `_free` function; passing
//! null to a `_free` is a no-op.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ergoflow::ensemble::{DiagonalState, EnsembleShape, QuditHamiltonian};
use ergoflow::error::Error;
use ergoflow::work::{is_passive, optimal_permutation};
use ergoflow::{lambda_peak_equal_terms, product_state};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EfStatus {
    /// Success.
    Ok = 0,
    /// Invalid input: bad pointer, bad probability vector, bad shape, …
    InvalidArgument = 2,
    /// The request needs a dense vector above the configured cap.
    CapExceeded = 3,
    /// A panic was caught at the boundary; state may be stale.
    Internal = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let owned = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = owned);
}

fn status_of(error: &Error) -> EfStatus {
    match error {
        Error::CapExceeded { .. } => EfStatus::CapExceeded,
        _ => EfStatus::InvalidArgument,
    }
}

fn guard(body: impl FnOnce() -> EfStatus) -> EfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            EfStatus::Internal
        }
    }
}

/// Message describing the most recent failure on this thread. Valid until
/// the next failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn ef_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Single-system Hamiltonian: non-decreasing level energies.
pub struct EfHamiltonian(QuditHamiltonian);

/// Diagonal ensemble state over the product eigenbasis.
pub struct EfState(DiagonalState);

unsafe fn slice_arg<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if ptr.is_null() && len > 0 {
        None
    } else if len == 0 {
        Some(&[])
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

/// Creates a Hamiltonian from `len` level energies sorted non-decreasing.
///
/// # Safety
/// `levels` must point to `len` readable doubles and `out` to a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ef_hamiltonian_new(
    levels: *const f64,
    len: usize,
    out: *mut *mut EfHamiltonian,
) -> EfStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return EfStatus::InvalidArgument;
        }
        let Some(levels) = slice_arg(levels, len) else {
            set_error("levels pointer is null");
            return EfStatus::InvalidArgument;
        };
        match QuditHamiltonian::new(levels.to_vec()) {
            Ok(h) => {
                out.write(Box::into_raw(Box::new(EfHamiltonian(h))));
                EfStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Releases a Hamiltonian handle.
///
/// # Safety
/// `handle` must come from `ef_hamiltonian_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ef_hamiltonian_free(handle: *mut EfHamiltonian) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Creates the `sites`-fold product of a single-system spectrum.
///
/// # Safety
/// `spectrum` must point to `len` readable doubles and `out` to a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ef_state_product(
    spectrum: *const f64,
    len: usize,
    sites: usize,
    out: *mut *mut EfState,
) -> EfStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return EfStatus::InvalidArgument;
        }
        let Some(spectrum) = slice_arg(spectrum, len) else {
            set_error("spectrum pointer is null");
            return EfStatus::InvalidArgument;
        };
        match product_state(spectrum, sites) {
            Ok(state) => {
                out.write(Box::into_raw(Box::new(EfState(state))));
                EfStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Creates a state from explicit populations over `levels^sites` labels,
/// flat little-endian order (site 0 least significant).
///
/// # Safety
/// `populations` must point to `len` readable doubles and `out` to a
/// writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ef_state_explicit(
    sites: usize,
    levels: usize,
    populations: *const f64,
    len: usize,
    out: *mut *mut EfState,
) -> EfStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return EfStatus::InvalidArgument;
        }
        let Some(populations) = slice_arg(populations, len) else {
            set_error("populations pointer is null");
            return EfStatus::InvalidArgument;
        };
        let built = EnsembleShape::new(sites, levels)
            .and_then(|shape| DiagonalState::new(shape, populations.to_vec()));
        match built {
            Ok(state) => {
                out.write(Box::into_raw(Box::new(EfState(state))));
                EfStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Releases a state handle.
///
/// # Safety
/// `handle` must come from a state constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ef_state_free(handle: *mut EfState) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Maximal extractable work of `state` under `hamiltonian`; also reports
/// the initial and final (passive) energies.
///
/// # Safety
/// All pointers must be valid; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ef_maxwork(
    state: *const EfState,
    hamiltonian: *const EfHamiltonian,
    out_work: *mut f64,
    out_initial: *mut f64,
    out_final: *mut f64,
) -> EfStatus {
    guard(|| {
        if state.is_null() || hamiltonian.is_null() {
            set_error("state or hamiltonian handle is null");
            return EfStatus::InvalidArgument;
        }
        match optimal_permutation(&(*state).0, &(*hamiltonian).0) {
            Ok(report) => {
                if !out_work.is_null() {
                    out_work.write(report.work);
                }
                if !out_initial.is_null() {
                    out_initial.write(report.initial_energy);
                }
                if !out_final.is_null() {
                    out_final.write(report.final_energy);
                }
                EfStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Writes 1 to `out_passive` when no unitary can extract work from
/// `state`, 0 otherwise.
///
/// # Safety
/// All pointers must be valid; `out_passive` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ef_is_passive(
    state: *const EfState,
    hamiltonian: *const EfHamiltonian,
    out_passive: *mut i32,
) -> EfStatus {
    guard(|| {
        if state.is_null() || hamiltonian.is_null() || out_passive.is_null() {
            set_error("null pointer argument");
            return EfStatus::InvalidArgument;
        }
        match is_passive(&(*state).0, &(*hamiltonian).0) {
            Ok(passive) => {
                out_passive.write(passive as i32);
                EfStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Peak entanglement bounds for a transposition whose pair differs at
/// `differing` sites of a product pre-state: writes up to `capacity`
/// entries of `Lambda_k = |pa - pb| - 2k sqrt(pa pb)` into `out_entries`
/// and the full entry count into `out_len`.
///
/// # Safety
/// `out_entries` must point to `capacity` writable doubles; `out_len`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn ef_lambda_peak_equal_terms(
    pop_alpha: f64,
    pop_beta: f64,
    differing: usize,
    out_entries: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> EfStatus {
    guard(|| {
        if out_len.is_null() || (out_entries.is_null() && capacity > 0) {
            set_error("null pointer argument");
            return EfStatus::InvalidArgument;
        }
        if !(pop_alpha >= 0.0) || !(pop_beta >= 0.0) || differing > 32 {
            set_error("populations must be non-negative and differing <= 32");
            return EfStatus::InvalidArgument;
        }
        let lv = lambda_peak_equal_terms(pop_alpha, pop_beta, differing);
        out_len.write(lv.entries.len());
        for (i, &v) in lv.entries.iter().take(capacity).enumerate() {
            out_entries.add(i).write(v);
        }
        EfStatus::Ok
    })
}

/// Population ratio at which the k-th bound changes sign under equal
/// penalty terms: `1 + 2k^2 + 2k sqrt(1 + k^2)`.
#[no_mangle]
pub extern "C" fn ef_threshold_ratio_exact(k: f64) -> f64 {
    ergoflow::threshold_ratio_exact(k)
}

/// The companion threshold formula `1 + 2g + 2 sqrt(g + g^2)`; agrees
/// with the exact one at `g = 1` only.
#[no_mangle]
pub extern "C" fn ef_threshold_ratio_paper(gamma: f64) -> f64 {
    ergoflow::threshold_ratio_paper(gamma)
}
