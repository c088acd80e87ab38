// Copyright 2026 The tqsf Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! C ABI for the tqsf library.
//!
//! Every fallible call returns a [`TqsfStatus`]; results go through out-pointers. On failure the
//! message is kept per thread and read with [`tqsf_last_error`]. Handles are opaque and owned by
//! the caller, who releases them with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;

use tqsf::evolution::EvolutionMode;
use tqsf::filter::{Filter, FilterMethod, FilterRun};
use tqsf::spin::{self, AncillaKind};
use tqsf::{states, StateVector, TqsfError};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TqsfStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Arguments violate the operation's preconditions, including out-of-range indices.
    InvalidInput = 2,
    /// The circuit does not fit the simulator's qubit limit.
    Capacity = 3,
    /// Register sizes cannot resolve the operator spectrum.
    Configuration = 4,
    /// A register reading matches no attainable eigenvalue.
    Decode = 5,
    /// Numerical breakdown inside the library.
    Internal = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// Filtering circuit selector.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TqsfMethod {
    A = 0,
    /// Path registers read S²_[j].
    BSpinSquared = 1,
    /// Path registers read H_[j].
    BCoupling = 2,
    /// Sequential Hadamard tests; the run holds the exact distribution over feedback paths.
    C = 3,
    CDeferred = 4,
}

/// Phase-estimation register kind for [`tqsf_min_ancillas`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TqsfAncillaKind {
    Number = 0,
    SpinEven = 1,
    SpinOdd = 2,
    Coupling = 3,
}

/// Named initial states.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TqsfPreset {
    /// |+⟩ on every qubit.
    Hadamard = 0,
    /// H on every qubit after X on qubits 1 and 3 (needs at least 4 qubits).
    HadamardX13 = 1,
}

/// Opaque state vector.
pub struct TqsfState(StateVector);

/// Opaque filtering result.
pub struct TqsfRun(FilterRun);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &TqsfError) -> TqsfStatus {
    match e {
        TqsfError::Input(_) => TqsfStatus::InvalidInput,
        TqsfError::Capacity { .. } => TqsfStatus::Capacity,
        TqsfError::Configuration(_) => TqsfStatus::Configuration,
        TqsfError::Decode(_) => TqsfStatus::Decode,
        TqsfError::Internal(_) => TqsfStatus::Internal,
    }
}

enum Failure {
    Null(&'static str),
    Lib(TqsfError),
}

impl From<TqsfError> for Failure {
    fn from(e: TqsfError) -> Self {
        Failure::Lib(e)
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure::Lib(TqsfError::Input(message.into()))
}

/// Runs `f` behind a panic guard and converts its result into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TqsfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TqsfStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            TqsfStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let text = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {text}"));
            TqsfStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write<T>(p: *mut T, what: &'static str, value: T) -> Result<(), Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    p.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tqsf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tqsf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Dimension of each (S, M) eigenspace on `n` qubits, with `two_s` = 2S.
///
/// # Safety
/// `out` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tqsf_degeneracy(n: usize, two_s: u32, out: *mut u64) -> TqsfStatus {
    guard(|| write(out, "out", spin::degeneracy(n, two_s)?))
}

/// Smallest phase register that resolves the spectrum of the given kind.
///
/// `n` is the qubit count, or the prefix length j for [`TqsfAncillaKind::Coupling`].
///
/// # Safety
/// `out` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tqsf_min_ancillas(
    kind: TqsfAncillaKind,
    n: usize,
    out: *mut usize,
) -> TqsfStatus {
    guard(|| {
        let kind = match kind {
            TqsfAncillaKind::Number => AncillaKind::Number,
            TqsfAncillaKind::SpinEven => AncillaKind::SpinEven,
            TqsfAncillaKind::SpinOdd => AncillaKind::SpinOdd,
            TqsfAncillaKind::Coupling => AncillaKind::Coupling,
        };
        let min = if kind == AncillaKind::Coupling { 2 } else { 1 };
        if n < min {
            return Err(invalid(format!("n must be at least {min}, got {n}")));
        }
        let parity_ok = match kind {
            AncillaKind::SpinEven => n.is_multiple_of(2),
            AncillaKind::SpinOdd => n % 2 == 1,
            _ => true,
        };
        if !parity_ok {
            return Err(invalid(format!(
                "register kind does not match the parity of n = {n}"
            )));
        }
        write(out, "out", spin::min_ancillas(kind, n))
    })
}

/// Builds a named initial state on `n` qubits.
///
/// # Safety
/// `out` must be null or valid for a write. The handle is released with [`tqsf_state_free`].
#[no_mangle]
pub unsafe extern "C" fn tqsf_state_preset(
    n: usize,
    preset: TqsfPreset,
    out: *mut *mut TqsfState,
) -> TqsfStatus {
    guard(|| {
        let state = match preset {
            TqsfPreset::Hadamard => states::hadamard(n)?,
            TqsfPreset::HadamardX13 => states::hadamard_x13(n)?,
        };
        write(out, "out", boxed(TqsfState(state)))
    })
}

/// Builds a basis state from a 0/1 string, most significant qubit first.
///
/// # Safety
/// `bits` must be null or a NUL-terminated string; `out` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tqsf_state_from_bits(
    bits: *const c_char,
    out: *mut *mut TqsfState,
) -> TqsfStatus {
    guard(|| {
        if bits.is_null() {
            return Err(Failure::Null("bits"));
        }
        let text = CStr::from_ptr(bits)
            .to_str()
            .map_err(|_| invalid("bitstring is not UTF-8"))?;
        let state = StateVector::new_basis_state(text.len(), text)?;
        write(out, "out", boxed(TqsfState(state)))
    })
}

/// Builds a state from `len` amplitudes and normalizes it. `imag` may be null for a real state.
///
/// # Safety
/// `real` (and `imag` if non-null) must be valid for `len` reads; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tqsf_state_from_amplitudes(
    real: *const f64,
    imag: *const f64,
    len: usize,
    out: *mut *mut TqsfState,
) -> TqsfStatus {
    guard(|| {
        if real.is_null() {
            return Err(Failure::Null("real"));
        }
        let re = std::slice::from_raw_parts(real, len);
        let amps: Vec<Complex64> = if imag.is_null() {
            re.iter().map(|&r| Complex64::new(r, 0.0)).collect()
        } else {
            let im = std::slice::from_raw_parts(imag, len);
            re.iter()
                .zip(im)
                .map(|(&r, &i)| Complex64::new(r, i))
                .collect()
        };
        let (state, _) = StateVector::normalized(amps)?;
        write(out, "out", boxed(TqsfState(state)))
    })
}

/// Releases a state handle. Null is ignored.
///
/// # Safety
/// `state` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn tqsf_state_free(state: *mut TqsfState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Number of qubits of a state.
///
/// # Safety
/// `state` must be a live handle or null; `out` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tqsf_state_num_qubits(
    state: *const TqsfState,
    out: *mut usize,
) -> TqsfStatus {
    guard(|| write(out, "out", deref(state, "state")?.0.num_qubits()))
}

/// Copies the 2^n amplitudes into `real` and `imag`, each of capacity `len`.
///
/// # Safety
/// `state` must be a live handle; `real` and `imag` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn tqsf_state_amplitudes(
    state: *const TqsfState,
    real: *mut f64,
    imag: *mut f64,
    len: usize,
) -> TqsfStatus {
    guard(|| {
        let amps = deref(state, "state")?.0.amplitudes();
        if real.is_null() || imag.is_null() {
            return Err(Failure::Null("real/imag"));
        }
        if len < amps.len() {
            return Err(invalid(format!(
                "buffers hold {len} values, {} needed",
                amps.len()
            )));
        }
        for (k, a) in amps.iter().enumerate() {
            real.add(k).write(a.re);
            imag.add(k).write(a.im);
        }
        Ok(())
    })
}

/// Filters `state` with `method`. `trotter_steps` = 0 selects exact evolution.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for a write. The run is released with
/// [`tqsf_run_free`].
#[no_mangle]
pub unsafe extern "C" fn tqsf_run(
    state: *const TqsfState,
    method: TqsfMethod,
    trotter_steps: usize,
    out: *mut *mut TqsfRun,
) -> TqsfStatus {
    guard(|| {
        let state = &deref(state, "state")?.0;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let method = match method {
            TqsfMethod::A => FilterMethod::A,
            TqsfMethod::BSpinSquared => FilterMethod::BS2j,
            TqsfMethod::BCoupling => FilterMethod::BHj,
            TqsfMethod::C => FilterMethod::C,
            TqsfMethod::CDeferred => FilterMethod::CDeferred,
        };
        let mode = match trotter_steps {
            0 => EvolutionMode::Exact,
            steps => EvolutionMode::Trotter { steps },
        };
        let run = Filter::new(method, state.num_qubits(), mode)?.run(state)?;
        write(out, "out", boxed(TqsfRun(run)))
    })
}

/// Releases a run handle. Null is ignored.
///
/// # Safety
/// `run` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn tqsf_run_free(run: *mut TqsfRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// Number of decoded outcomes, sorted by descending S, then M, then path.
///
/// # Safety
/// `run` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tqsf_run_outcome_count(
    run: *const TqsfRun,
    out: *mut usize,
) -> TqsfStatus {
    guard(|| write(out, "out", deref(run, "run")?.0.outcomes.len()))
}

/// Total probability of register readings that decode to no label (Trotter leakage).
///
/// # Safety
/// `run` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tqsf_run_unresolved_probability(
    run: *const TqsfRun,
    out: *mut f64,
) -> TqsfStatus {
    guard(|| {
        let p = deref(run, "run")?
            .0
            .unresolved
            .iter()
            .map(|u| u.probability)
            .sum();
        write(out, "out", p)
    })
}

unsafe fn outcome<'a>(
    run: *const TqsfRun,
    index: usize,
) -> Result<&'a tqsf::filter::FilterOutcome, Failure> {
    let run = &deref(run, "run")?.0;
    run.outcomes.get(index).ok_or_else(|| {
        invalid(format!(
            "outcome index {index} out of range ({} outcomes)",
            run.outcomes.len()
        ))
    })
}

/// Born probability of outcome `index`.
///
/// # Safety
/// `run` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tqsf_run_outcome_probability(
    run: *const TqsfRun,
    index: usize,
    out: *mut f64,
) -> TqsfStatus {
    guard(|| write(out, "out", outcome(run, index)?.probability))
}

/// Final 2S of outcome `index`, and 2M when the method reads it (`has_m` reports which).
///
/// # Safety
/// `run` must be a live handle; the out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tqsf_run_outcome_spin(
    run: *const TqsfRun,
    index: usize,
    two_s: *mut u32,
    two_m: *mut i32,
    has_m: *mut bool,
) -> TqsfStatus {
    guard(|| {
        let label = &outcome(run, index)?.label;
        if two_s.is_null() || two_m.is_null() || has_m.is_null() {
            return Err(Failure::Null("two_s/two_m/has_m"));
        }
        two_s.write(label.final_two_s());
        two_m.write(label.two_m().unwrap_or(0));
        has_m.write(label.two_m().is_some());
        Ok(())
    })
}

/// Writes the text label of outcome `index` into `buf` (capacity `cap`, NUL included).
///
/// `needed` receives the full length including the NUL, so a call with `cap` = 0 sizes the buffer.
/// A buffer that is too small is an invalid-input error and is left untouched.
///
/// # Safety
/// `run` must be a live handle; `buf` must be valid for `cap` writes (or null when `cap` = 0);
/// `needed` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tqsf_run_outcome_label(
    run: *const TqsfRun,
    index: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> TqsfStatus {
    guard(|| {
        let text = CString::new(outcome(run, index)?.label.to_string())
            .map_err(|_| invalid("label contains NUL"))?;
        let bytes = text.as_bytes_with_nul();
        if !needed.is_null() {
            needed.write(bytes.len());
        }
        if cap == 0 && buf.is_null() {
            return Ok(());
        }
        if buf.is_null() {
            return Err(Failure::Null("buf"));
        }
        if cap < bytes.len() {
            return Err(invalid(format!(
                "label needs {} bytes, buffer holds {cap}",
                bytes.len()
            )));
        }
        ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, bytes.len());
        Ok(())
    })
}

/// Copy of the collapsed system state of outcome `index`.
///
/// # Safety
/// `run` must be a live handle; `out` must be valid for a write. Free with [`tqsf_state_free`].
#[no_mangle]
pub unsafe extern "C" fn tqsf_run_outcome_post_state(
    run: *const TqsfRun,
    index: usize,
    out: *mut *mut TqsfState,
) -> TqsfStatus {
    guard(|| {
        let state = outcome(run, index)?.post_state.clone();
        write(out, "out", boxed(TqsfState(state)))
    })
}

/// Draws `shots` samples from the run distribution with a seeded generator.
///
/// `counts[i]` receives the count of outcome i; `len` must be at least the outcome count.
/// `unresolved` (nullable) receives the count of undecodable readings.
///
/// # Safety
/// `run` must be a live handle; `counts` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn tqsf_run_sample(
    run: *const TqsfRun,
    shots: u64,
    seed: u64,
    counts: *mut u64,
    len: usize,
    unresolved: *mut u64,
) -> TqsfStatus {
    guard(|| {
        let run = &deref(run, "run")?.0;
        if counts.is_null() {
            return Err(Failure::Null("counts"));
        }
        if len < run.outcomes.len() {
            return Err(invalid(format!(
                "counts holds {len} values, {} needed",
                run.outcomes.len()
            )));
        }
        let sampled = run.sample(shots, seed)?;
        for (k, &c) in sampled.outcomes.iter().enumerate() {
            counts.add(k).write(c);
        }
        if !unresolved.is_null() {
            unresolved.write(sampled.unresolved.iter().sum());
        }
        Ok(())
    })
}
