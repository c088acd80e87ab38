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

//! Quantum Fourier transform and phase estimation.
//!
//! Register convention: `register[k]` is bit `k` of the register integer. The forward transform
//! maps |x⟩ to 2^{-r/2} Σ_y e^{2πi·xy/2^r} |y⟩, and phase estimation with `register[k]` controlling
//! U^{2^k} leaves an eigenphase m/2^r as the integer m.

use std::f64::consts::TAU;

use crate::error::{input_err, Result};
use crate::evolution::PhaseUnitary;
use crate::spin::SpinOperator;
use crate::statevector::{Gate, StateVector};

struct Step {
    control: Option<usize>,
    gate: Gate,
}

fn qft_steps(register: &[usize]) -> Vec<Step> {
    let r = register.len();
    let mut steps = Vec::new();
    for i in (0..r).rev() {
        steps.push(Step {
            control: None,
            gate: Gate::hadamard(register[i]),
        });
        for l in (0..i).rev() {
            let angle = TAU / (1u64 << (i - l + 1)) as f64;
            steps.push(Step {
                control: Some(register[l]),
                gate: Gate::phase(register[i], angle),
            });
        }
    }
    for i in 0..r / 2 {
        steps.push(Step {
            control: None,
            gate: Gate::swap(register[i], register[r - 1 - i]),
        });
    }
    steps
}

/// Quantum Fourier transform (or its inverse) on `register`.
pub fn qft(state: &mut StateVector, register: &[usize], inverse: bool) -> Result<()> {
    let steps = qft_steps(register);
    let apply = |state: &mut StateVector, step: &Step, gate: &Gate| match step.control {
        Some(c) => state.apply_controlled(&[c], &[true], gate),
        None => state.apply_gate(gate),
    };
    if inverse {
        for step in steps.iter().rev() {
            apply(state, step, &step.gate.dagger())?;
        }
    } else {
        for step in &steps {
            apply(state, step, &step.gate)?;
        }
    }
    Ok(())
}

/// Phase estimation of `unitary` acting on `system`, read into `register`.
///
/// Returns the eigenvalue → register integer map. Register sizes that cannot resolve the
/// spectrum are rejected before any gate is applied.
pub fn run_qpe(
    state: &mut StateVector,
    system: &[usize],
    register: &[usize],
    unitary: &PhaseUnitary,
) -> Result<Vec<(f64, u64)>> {
    if register.iter().any(|q| system.contains(q)) {
        return input_err("phase register overlaps the system qubits");
    }
    let map = unitary.phase_integers(register.len())?;
    for &q in register {
        state.apply_gate(&Gate::hadamard(q))?;
    }
    for (k, &q) in register.iter().enumerate() {
        unitary.apply_controlled(state, system, &[(q, true)], 1u64 << k)?;
    }
    qft(state, register, true)?;
    Ok(map)
}

/// Register distribution of phase estimation without simulating the system and register jointly.
///
/// The state is split into eigenspace weights w_λ = ‖P_λ ψ‖² and each eigenvalue's register state
/// is produced by phase kickback on a register-only simulator; the result is Σ_λ w_λ |⟨m|reg_λ⟩|².
/// This is how large number-operator registers are read without a 2^{n+r} vector.
pub fn spectral_register_distribution(
    state: &StateVector,
    unitary: &PhaseUnitary,
    register_size: usize,
) -> Result<Vec<f64>> {
    if state.num_qubits() != unitary.num_qubits() {
        return input_err("state and operator sizes differ");
    }
    unitary.phase_integers(register_size)?;
    let weights: Vec<(f64, f64)> = match unitary.operator() {
        SpinOperator::Number(n) => {
            let mut w = vec![0.0; n.num_qubits() + 1];
            for (index, a) in state.amplitudes().iter().enumerate() {
                w[index.count_ones() as usize] += a.norm_sqr();
            }
            w.into_iter()
                .enumerate()
                .map(|(k, p)| (k as f64, p))
                .collect()
        }
        SpinOperator::Transpositions(_) => {
            let spectrum = unitary.spectrum()?;
            spectrum
                .eigenvalues()
                .iter()
                .enumerate()
                .map(|(k, &l)| (l, spectrum.weight(k, state.amplitudes())))
                .collect()
        }
    };
    let register: Vec<usize> = (0..register_size).collect();
    let mut out = vec![0.0; 1 << register_size];
    for (lambda, weight) in weights {
        if weight == 0.0 {
            continue;
        }
        let mut reg = StateVector::zero(register_size)?;
        for (k, &q) in register.iter().enumerate() {
            reg.apply_gate(&Gate::hadamard(q))?;
            let phase = TAU * unitary.alpha() * lambda * (1u64 << k) as f64;
            reg.apply_gate(&Gate::phase(q, phase))?;
        }
        qft(&mut reg, &register, true)?;
        for (m, a) in reg.amplitudes().iter().enumerate() {
            out[m] += weight * a.norm_sqr();
        }
    }
    Ok(out)
}
