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

//! Methods A and B: one phase-estimation register per commuting observable.

use super::{
    decode_outcome, readings, FilterMethod, FilterOutcome, FilterRun, RegisterLayout,
    UnresolvedOutcome,
};
use crate::error::{input_err, Result, TqsfError};
use crate::evolution::{EvolutionMode, PhaseUnitary};
use crate::spin::{
    coupling_sum, number_operator, prefix_spin_squared, total_spin_squared, TranspositionSum,
};
use crate::statevector::{StateVector, PRUNE_THRESHOLD};

/// Exact-mode records that fail to decode above this weight indicate a broken circuit.
const UNRESOLVED_LIMIT: f64 = 1e-10;

/// Phase unitary that writes an S² eigenvalue on `j` qubits into an `r`-bit register.
///
/// Even `j` reads S(S+1)/2; odd `j` reads S(S+1) − 3/4 with the shift folded into the identity.
fn spin_unitary(
    op: TranspositionSum,
    j: usize,
    r: usize,
    mode: EvolutionMode,
) -> Result<PhaseUnitary> {
    let scale = 1.0 / (1u64 << r) as f64;
    if j.is_multiple_of(2) {
        PhaseUnitary::new(op, scale / 2.0, mode)
    } else {
        PhaseUnitary::new(op.shifted(-0.75), scale, mode)
    }
}

/// A Method A or Method B circuit: registers plus the unitary each one estimates.
#[derive(Clone, Debug)]
pub struct RegisterCircuit {
    method: FilterMethod,
    mode: EvolutionMode,
    layout: RegisterLayout,
    unitaries: Vec<PhaseUnitary>,
}

impl RegisterCircuit {
    pub fn new(method: FilterMethod, n: usize, mode: EvolutionMode) -> Result<Self> {
        Self::with_layout(method, RegisterLayout::for_method(method, n)?, mode)
    }

    /// Builds the circuit over a caller-supplied layout, e.g. one with undersized registers.
    /// Register sizes are checked against the spectra when the circuit runs.
    pub fn with_layout(
        method: FilterMethod,
        layout: RegisterLayout,
        mode: EvolutionMode,
    ) -> Result<Self> {
        let n = layout.num_system();
        let sizes: Vec<usize> = layout.registers.iter().map(|r| r.size()).collect();
        let scale = |r: usize| 1.0 / (1u64 << r) as f64;
        let mut unitaries = Vec::with_capacity(sizes.len());
        match method {
            FilterMethod::A => {
                if sizes.len() != 2 {
                    return input_err("method a expects a z and an S register");
                }
                unitaries.push(PhaseUnitary::new(
                    number_operator(n)?,
                    scale(sizes[0]),
                    mode,
                )?);
                unitaries.push(spin_unitary(total_spin_squared(n)?, n, sizes[1], mode)?);
            }
            FilterMethod::BS2j | FilterMethod::BHj => {
                if sizes.len() != n {
                    return input_err(format!("method {method} expects {n} registers"));
                }
                unitaries.push(PhaseUnitary::new(
                    number_operator(n)?,
                    scale(sizes[0]),
                    mode,
                )?);
                for (offset, &r) in sizes[1..].iter().enumerate() {
                    let j = offset + 2;
                    unitaries.push(if method == FilterMethod::BS2j {
                        spin_unitary(prefix_spin_squared(j, n)?, j, r, mode)?
                    } else {
                        // H_[j] + 1 has eigenvalues 0..=j
                        PhaseUnitary::new(coupling_sum(j, n)?.shifted(1.0), scale(r), mode)?
                    });
                }
            }
            _ => return input_err(format!("method {method} has no phase registers")),
        }
        Ok(Self {
            method,
            mode,
            layout,
            unitaries,
        })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn method(&self) -> FilterMethod {
        self.method
    }

    pub fn unitaries(&self) -> &[PhaseUnitary] {
        &self.unitaries
    }

    /// Checks that every register separates its operator's spectrum.
    pub fn check_registers(&self) -> Result<()> {
        for (u, reg) in self.unitaries.iter().zip(&self.layout.registers) {
            u.phase_integers(reg.size()).map_err(|e| match e {
                TqsfError::Configuration(msg) => {
                    TqsfError::Configuration(format!("register {}: {msg}", reg.name))
                }
                other => other,
            })?;
        }
        Ok(())
    }

    /// Joint system + ancilla state after every phase estimation, before measurement.
    pub fn prepare(&self, state: &StateVector) -> Result<StateVector> {
        let n = self.layout.num_system();
        if state.num_qubits() != n {
            return input_err(format!(
                "state has {} qubits, circuit expects {n}",
                state.num_qubits()
            ));
        }
        self.check_registers()?;
        let mut joint = state.with_ancillas(self.layout.num_ancillas())?;
        for (u, reg) in self.unitaries.iter().zip(&self.layout.registers) {
            super::run_qpe(&mut joint, &self.layout.system, &reg.qubits, u)?;
        }
        Ok(joint)
    }

    /// Enumerates the joint register distribution and the collapsed system state of each record.
    pub fn run(&self, state: &StateVector) -> Result<FilterRun> {
        let joint = self.prepare(state)?;
        let n = self.layout.num_system();
        let mut outcomes = Vec::new();
        let mut unresolved = Vec::new();
        for ancilla in 0..1usize << self.layout.num_ancillas() {
            let block = joint.low_block(n, ancilla);
            let p: f64 = block.iter().map(|a| a.norm_sqr()).sum();
            if p <= PRUNE_THRESHOLD {
                continue;
            }
            let values = split_registers(&self.layout, ancilla);
            let reads = readings(&self.layout, &values);
            match decode_outcome(&self.layout, self.method, &values) {
                Ok(label) => {
                    let (post_state, _) = StateVector::normalized(block.to_vec())?;
                    outcomes.push(FilterOutcome {
                        label,
                        probability: p,
                        post_state,
                        readings: reads,
                    });
                }
                Err(TqsfError::Decode(msg)) => {
                    if self.mode == EvolutionMode::Exact && p > UNRESOLVED_LIMIT {
                        return Err(TqsfError::Internal(format!(
                            "exact circuit produced an undecodable record with p = {p:e}: {msg}"
                        )));
                    }
                    unresolved.push(UnresolvedOutcome {
                        readings: reads,
                        probability: p,
                    });
                }
                Err(e) => return Err(e),
            }
        }
        let mut run = FilterRun {
            method: self.method,
            mode: self.mode,
            layout: self.layout.clone(),
            outcomes,
            unresolved,
            joint_state: Some(joint),
        };
        run.sort();
        Ok(run)
    }
}

/// Splits an ancilla integer (bit 0 = first ancilla qubit) into per-register values.
fn split_registers(layout: &RegisterLayout, ancilla: usize) -> Vec<u64> {
    let mut shift = 0;
    layout
        .registers
        .iter()
        .map(|r| {
            let v = (ancilla >> shift) & ((1 << r.size()) - 1);
            shift += r.size();
            v as u64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::OutcomeLabel;
    use crate::spin::{loose_coupling_register_size, min_ancillas, AncillaKind, SpinLabel};
    use crate::statevector::Gate;

    fn hadamard(n: usize) -> StateVector {
        let mut s = StateVector::zero(n).unwrap();
        for q in 0..n {
            s.apply_gate(&Gate::hadamard(q)).unwrap();
        }
        s
    }

    #[test]
    fn method_a_binomial() {
        let run = RegisterCircuit::new(FilterMethod::A, 4, EvolutionMode::Exact)
            .unwrap()
            .run(&hadamard(4))
            .unwrap();
        assert_eq!(run.outcomes.len(), 5);
        for (k, w) in [1.0, 4.0, 6.0, 4.0, 1.0].into_iter().enumerate() {
            let label = OutcomeLabel::Spin(SpinLabel {
                two_s: 4,
                two_m: 4 - 2 * k as i32,
            });
            assert!((run.probability_of(&label) - w / 16.0).abs() < 1e-12);
        }
        assert!(run.unresolved.is_empty());
        assert_eq!(run.outcomes[0].joint_bits(), "00011");
    }

    #[test]
    fn method_a_odd_register() {
        let run = RegisterCircuit::new(FilterMethod::A, 3, EvolutionMode::Exact)
            .unwrap()
            .run(&StateVector::new_basis_state(3, "001").unwrap())
            .unwrap();
        // |001⟩ = √(1/3)|S=3/2⟩ + √(2/3)|S=1/2 components⟩, all with M = 1/2
        let p32 = run.probability_of(&OutcomeLabel::Spin(SpinLabel { two_s: 3, two_m: 1 }));
        let p12 = run.probability_of(&OutcomeLabel::Spin(SpinLabel { two_s: 1, two_m: 1 }));
        assert!((p32 - 1.0 / 3.0).abs() < 1e-12);
        assert!((p12 - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn split_follows_layout() {
        let layout = RegisterLayout::for_method(FilterMethod::A, 4).unwrap();
        assert_eq!(split_registers(&layout, 0b11_010), vec![2, 3]);
    }

    #[test]
    fn loose_coupling_register_aliases() {
        let layout = RegisterLayout::sized(FilterMethod::BHj, 4, |j| match j {
            4 => loose_coupling_register_size(j),
            _ => min_ancillas(AncillaKind::Coupling, j),
        })
        .unwrap();
        let circuit =
            RegisterCircuit::with_layout(FilterMethod::BHj, layout, EvolutionMode::Exact).unwrap();
        let err = circuit.run(&hadamard(4)).unwrap_err();
        assert!(
            matches!(err, TqsfError::Configuration(ref m) if m.contains("path[4]")),
            "{err}"
        );
    }
}
