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

//! Named input states.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{input_err, Result};
use crate::statevector::{Gate, StateVector};

/// |+⟩^⊗n.
pub fn hadamard(n: usize) -> Result<StateVector> {
    let mut s = StateVector::zero(n)?;
    for q in 0..n {
        s.apply_gate(&Gate::hadamard(q))?;
    }
    Ok(s)
}

/// H^⊗n X₁X₃|0⟩: qubits 1 and 3 in |−⟩, every other qubit in |+⟩. Needs n ≥ 4.
pub fn hadamard_x13(n: usize) -> Result<StateVector> {
    if n < 4 {
        return input_err(format!("hadamard-x13 needs at least 4 qubits, got {n}"));
    }
    let mut s = StateVector::zero(n)?;
    s.apply_gate(&Gate::x(1))?;
    s.apply_gate(&Gate::x(3))?;
    for q in 0..n {
        s.apply_gate(&Gate::hadamard(q))?;
    }
    Ok(s)
}

/// Random normalized state with independent uniform real and imaginary parts in [−1, 1).
pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<StateVector> {
    let amps = (0..1usize << n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    Ok(StateVector::normalized(amps)?.0)
}
