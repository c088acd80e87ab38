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

//! Method C: one Hadamard test per coupled qubit, with or without mid-circuit measurement.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    decode_outcome, readings, FilterMethod, FilterOutcome, FilterRun, OutcomeLabel, PathLabel,
    RegisterLayout, RegisterReading, UnresolvedOutcome,
};
use crate::error::{input_err, Result, TqsfError};
use crate::evolution::{EvolutionMode, PhaseUnitary};
use crate::spin::step_operator;
use crate::statevector::{format_bits, Gate, StateVector, PRUNE_THRESHOLD};

/// V_[j] = exp(iπ G_[j]) for every reachable (j, 2·S_[j−1] > 0), acting on qubits `0..j`.
fn step_unitaries(n: usize, mode: EvolutionMode) -> Result<HashMap<(usize, u32), PhaseUnitary>> {
    let mut out = HashMap::new();
    for j in 2..=n {
        let prev = j - 1;
        for two_s in (prev % 2..=prev).step_by(2).filter(|&t| t > 0) {
            let g = step_operator(j, j, two_s as u32)?;
            out.insert((j, two_s as u32), PhaseUnitary::new(g, 0.5, mode)?);
        }
    }
    Ok(out)
}

fn system_qubits(j: usize) -> Vec<usize> {
    (0..j).collect()
}

/// Result of one Method C shot.
#[derive(Clone, Debug)]
pub struct ShotRecord {
    pub path: PathLabel,
    /// Steps taken without a Hadamard test because the prefix spin was zero.
    pub forced: Vec<bool>,
    /// Product of the Born weights of the measured bits.
    pub probability: f64,
    pub post_state: StateVector,
}

/// Method C with classical feedback.
#[derive(Clone, Debug)]
pub struct SequentialFilter {
    n: usize,
    mode: EvolutionMode,
    layout: RegisterLayout,
    unitaries: HashMap<(usize, u32), PhaseUnitary>,
}

impl SequentialFilter {
    pub fn new(n: usize, mode: EvolutionMode) -> Result<Self> {
        let layout = RegisterLayout::for_method(FilterMethod::C, n)?;
        Ok(Self {
            n,
            mode,
            layout,
            unitaries: step_unitaries(n, mode)?,
        })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    fn check(&self, state: &StateVector) -> Result<()> {
        if state.num_qubits() != self.n {
            return input_err(format!(
                "state has {} qubits, filter expects {}",
                state.num_qubits(),
                self.n
            ));
        }
        Ok(())
    }

    /// Hadamard test of step `j` given the prefix spin. Returns (p, post) for bit 0 and bit 1;
    /// branches with negligible weight are `None`.
    #[allow(clippy::type_complexity)]
    fn hadamard_test(
        &self,
        state: &StateVector,
        j: usize,
        two_s: u32,
    ) -> Result<[Option<(f64, StateVector)>; 2]> {
        let v = self.unitaries.get(&(j, two_s)).ok_or_else(|| {
            TqsfError::Internal(format!("no step operator for j = {j}, 2S = {two_s}"))
        })?;
        let ancilla = self.n;
        let mut joint = state.with_ancillas(1)?;
        joint.apply_gate(&Gate::hadamard(ancilla))?;
        v.apply_controlled(&mut joint, &system_qubits(j), &[(ancilla, true)], 1)?;
        joint.apply_gate(&Gate::hadamard(ancilla))?;
        let branch = |bit: usize| -> Result<Option<(f64, StateVector)>> {
            let block = joint.low_block(self.n, bit);
            let p: f64 = block.iter().map(|a| a.norm_sqr()).sum();
            if p <= PRUNE_THRESHOLD {
                return Ok(None);
            }
            Ok(Some((p, StateVector::normalized(block.to_vec())?.0)))
        };
        Ok([branch(0)?, branch(1)?])
    }

    /// One shot: sequential Hadamard tests, each choosing V_[j] from the previous outcome.
    pub fn shot<R: Rng + ?Sized>(&self, state: &StateVector, rng: &mut R) -> Result<ShotRecord> {
        self.check(state)?;
        let mut current = state.clone();
        let mut two_s = 1u32;
        let mut bits = Vec::with_capacity(self.n - 1);
        let mut forced = Vec::with_capacity(self.n - 1);
        let mut probability = 1.0;
        for j in 2..=self.n {
            if two_s == 0 {
                bits.push(true);
                forced.push(true);
                two_s = 1;
                continue;
            }
            let [zero, one] = self.hadamard_test(&current, j, two_s)?;
            let p1 = one.as_ref().map_or(0.0, |b| b.0);
            let p0 = zero.as_ref().map_or(0.0, |b| b.0);
            let up = rng.random::<f64>() * (p0 + p1) < p1;
            let (p, post) = if up { one } else { zero }
                .ok_or_else(|| TqsfError::Internal("selected an empty branch".into()))?;
            probability *= p;
            current = post;
            bits.push(up);
            forced.push(false);
            two_s = if up { two_s + 1 } else { two_s - 1 };
        }
        Ok(ShotRecord {
            path: PathLabel::from_step_bits(&bits)?,
            forced,
            probability,
            post_state: current,
        })
    }

    /// Shot histogram over paths. Shot `i` draws from ChaCha8 stream `i` of `seed`, so the counts do
    /// not depend on the thread count.
    pub fn sample_paths(
        &self,
        state: &StateVector,
        shots: u64,
        seed: u64,
    ) -> Result<BTreeMap<PathLabel, u64>> {
        if shots == 0 {
            return input_err("shots must be at least 1");
        }
        self.check(state)?;
        (0..shots)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                self.shot(state, &mut rng).map(|r| r.path)
            })
            .try_fold(BTreeMap::new, |mut acc, path| {
                *acc.entry(path?).or_insert(0u64) += 1;
                Ok(acc)
            })
            .try_reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                Ok(a)
            })
    }

    /// Every feedback branch with its probability and final system state.
    pub fn run_exact(&self, state: &StateVector) -> Result<FilterRun> {
        self.check(state)?;
        let mut frontier = vec![(Vec::<bool>::new(), 1u32, 1.0f64, state.clone())];
        for j in 2..=self.n {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for (bits, two_s, p, psi) in frontier {
                if two_s == 0 {
                    let mut b = bits;
                    b.push(true);
                    next.push((b, 1, p, psi));
                    continue;
                }
                let branches = self.hadamard_test(&psi, j, two_s)?;
                for (bit, branch) in branches.into_iter().enumerate() {
                    if let Some((q, post)) = branch {
                        let up = bit == 1;
                        let mut b = bits.clone();
                        b.push(up);
                        let s = if up { two_s + 1 } else { two_s - 1 };
                        next.push((b, s, p * q, post));
                    }
                }
            }
            frontier = next;
        }
        let mut outcomes = Vec::with_capacity(frontier.len());
        for (bits, _, p, post_state) in frontier {
            if p <= PRUNE_THRESHOLD {
                continue;
            }
            let path = PathLabel::from_step_bits(&bits)?;
            let value = bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
            outcomes.push(FilterOutcome {
                label: OutcomeLabel::Path { path, two_m: None },
                probability: p,
                post_state,
                readings: vec![RegisterReading {
                    register: "hadamard".into(),
                    value,
                    bits: format_bits(value, bits.len()),
                }],
            });
        }
        let mut run = FilterRun {
            method: FilterMethod::C,
            mode: self.mode,
            layout: self.layout.clone(),
            outcomes,
            unresolved: Vec::new(),
            joint_state: None,
        };
        run.sort();
        Ok(run)
    }
}

/// Method C with every measurement deferred to the end: one ancilla per step, and a
/// multi-controlled V_[j] for each reachable spin history of the earlier steps.
#[derive(Clone, Debug)]
pub struct DeferredCircuit {
    n: usize,
    mode: EvolutionMode,
    layout: RegisterLayout,
    unitaries: HashMap<(usize, u32), PhaseUnitary>,
}

/// Reachable step histories before step `j`, with the prefix spin each one ends at.
fn histories(j: usize) -> Vec<(Vec<bool>, u32)> {
    let mut out = vec![(Vec::new(), 1u32)];
    for _ in 2..j {
        out = out
            .into_iter()
            .flat_map(|(bits, two_s)| {
                let mut branches = Vec::with_capacity(2);
                let mut up = bits.clone();
                up.push(true);
                branches.push((up, two_s + 1));
                if two_s > 0 {
                    let mut down = bits;
                    down.push(false);
                    branches.push((down, two_s - 1));
                }
                branches
            })
            .collect();
    }
    out
}

impl DeferredCircuit {
    pub fn new(n: usize, mode: EvolutionMode) -> Result<Self> {
        let layout = RegisterLayout::for_method(FilterMethod::CDeferred, n)?;
        Ok(Self {
            n,
            mode,
            layout,
            unitaries: step_unitaries(n, mode)?,
        })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    /// Number of controlled blocks in the circuit (V_[j] plus forced-increase phase flips).
    pub fn num_blocks(&self) -> usize {
        (2..=self.n).map(|j| histories(j).len()).sum()
    }

    /// Joint state before the final measurement of the step ancillas.
    pub fn prepare(&self, state: &StateVector) -> Result<StateVector> {
        if state.num_qubits() != self.n {
            return input_err(format!(
                "state has {} qubits, circuit expects {}",
                state.num_qubits(),
                self.n
            ));
        }
        let ancilla = |j: usize| self.layout.registers[j - 2].qubits[0];
        let mut joint = state.with_ancillas(self.layout.num_ancillas())?;
        for j in 2..=self.n {
            let a = ancilla(j);
            joint.apply_gate(&Gate::hadamard(a))?;
            for (bits, two_s) in histories(j) {
                let mut controls: Vec<(usize, bool)> = bits
                    .iter()
                    .enumerate()
                    .map(|(step, &b)| (ancilla(step + 2), b))
                    .collect();
                if two_s == 0 {
                    // H Z H = X: the step bit reads 1 (forced increase) on this history
                    let qubits: Vec<usize> = controls.iter().map(|c| c.0).collect();
                    let values: Vec<bool> = controls.iter().map(|c| c.1).collect();
                    joint.apply_controlled(&qubits, &values, &Gate::z(a))?;
                } else {
                    controls.push((a, true));
                    let v = &self.unitaries[&(j, two_s)];
                    v.apply_controlled(&mut joint, &system_qubits(j), &controls, 1)?;
                }
            }
            joint.apply_gate(&Gate::hadamard(a))?;
        }
        Ok(joint)
    }

    pub fn run(&self, state: &StateVector) -> Result<FilterRun> {
        let joint = self.prepare(state)?;
        let mut outcomes = Vec::new();
        let mut unresolved = Vec::new();
        for ancilla in 0..1usize << self.layout.num_ancillas() {
            let block = joint.low_block(self.n, ancilla);
            let p: f64 = block.iter().map(|a| a.norm_sqr()).sum();
            if p <= PRUNE_THRESHOLD {
                continue;
            }
            let values: Vec<u64> = (0..self.n - 1)
                .map(|k| ((ancilla >> k) & 1) as u64)
                .collect();
            let reads = readings(&self.layout, &values);
            match decode_outcome(&self.layout, FilterMethod::CDeferred, &values) {
                Ok(label) => outcomes.push(FilterOutcome {
                    label,
                    probability: p,
                    post_state: StateVector::normalized(block.to_vec())?.0,
                    readings: reads,
                }),
                Err(TqsfError::Decode(_)) if self.mode != EvolutionMode::Exact => {
                    unresolved.push(UnresolvedOutcome {
                        readings: reads,
                        probability: p,
                    })
                }
                Err(e) => {
                    return Err(TqsfError::Internal(format!(
                        "deferred circuit produced an invalid record with p = {p:e}: {e}"
                    )))
                }
            }
        }
        let mut run = FilterRun {
            method: FilterMethod::CDeferred,
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
