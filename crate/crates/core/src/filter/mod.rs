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

//! Total-spin filtering circuits.
//!
//! * Method A reads N₁ and S² into two phase registers; every shot leaves the system in an
//!   (S, M) eigenstate.
//! * Method B reads every prefix spin S²_[j] (or the cheaper H_[j]) into its own register, which
//!   resolves the degenerate components along their coupling paths.
//! * Method C couples one qubit at a time with a single-ancilla Hadamard test on
//!   V_[j] = exp(iπ G_[j]), choosing the next operator from the previous outcome. The deferred
//!   variant replaces the classical feedback by multi-controlled blocks and measures at the end.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result, TqsfError};
use crate::evolution::EvolutionMode;
use crate::spin::{decode_s, Parity, SpinLabel};
use crate::statevector::{format_bits, sample_histogram, StateVector};

pub mod layout;
pub mod path;
pub mod qpe;
mod registers;
mod sequential;

pub use layout::{Register, RegisterLayout};
pub use path::PathLabel;
pub use qpe::{qft, run_qpe, spectral_register_distribution};
pub use registers::RegisterCircuit;
pub use sequential::{DeferredCircuit, SequentialFilter, ShotRecord};

/// Which filtering circuit to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FilterMethod {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b-s2j")]
    BS2j,
    #[serde(rename = "b-hj")]
    BHj,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "c-deferred")]
    CDeferred,
}

impl FilterMethod {
    pub const ALL: [FilterMethod; 5] = [
        FilterMethod::A,
        FilterMethod::BS2j,
        FilterMethod::BHj,
        FilterMethod::C,
        FilterMethod::CDeferred,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FilterMethod::A => "a",
            FilterMethod::BS2j => "b-s2j",
            FilterMethod::BHj => "b-hj",
            FilterMethod::C => "c",
            FilterMethod::CDeferred => "c-deferred",
        }
    }
}

impl fmt::Display for FilterMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FilterMethod {
    type Err = TqsfError;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        FilterMethod::ALL
            .into_iter()
            .find(|m| m.name() == lower)
            .ok_or_else(|| TqsfError::Input(format!("unknown method {s:?}")))
    }
}

/// Decoded meaning of one measurement record.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutcomeLabel {
    Spin(SpinLabel),
    Path {
        path: PathLabel,
        #[serde(skip_serializing_if = "Option::is_none")]
        two_m: Option<i32>,
    },
}

impl OutcomeLabel {
    pub fn final_two_s(&self) -> u32 {
        match self {
            OutcomeLabel::Spin(l) => l.two_s,
            OutcomeLabel::Path { path, .. } => path.final_two_s(),
        }
    }

    pub fn two_m(&self) -> Option<i32> {
        match self {
            OutcomeLabel::Spin(l) => Some(l.two_m),
            OutcomeLabel::Path { two_m, .. } => *two_m,
        }
    }

    pub fn path(&self) -> Option<&PathLabel> {
        match self {
            OutcomeLabel::Spin(_) => None,
            OutcomeLabel::Path { path, .. } => Some(path),
        }
    }

    fn sort_key(&self) -> (u32, Vec<u32>, i32) {
        (
            self.final_two_s(),
            self.path()
                .map(|p| p.two_s_sequence().to_vec())
                .unwrap_or_default(),
            self.two_m().unwrap_or(0),
        )
    }
}

impl fmt::Display for OutcomeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeLabel::Spin(l) => l.fmt(f),
            OutcomeLabel::Path { path, two_m: None } => path.fmt(f),
            OutcomeLabel::Path {
                path,
                two_m: Some(m),
            } => write!(f, "{path} M={}", crate::spin::labels::half(i64::from(*m))),
        }
    }
}

/// Value measured on one register.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegisterReading {
    pub register: String,
    pub value: u64,
    /// Most significant bit first.
    pub bits: String,
}

/// One filtered branch: label, Born probability and the collapsed system state.
#[derive(Clone, Debug)]
pub struct FilterOutcome {
    pub label: OutcomeLabel,
    pub probability: f64,
    pub post_state: StateVector,
    pub readings: Vec<RegisterReading>,
}

impl FilterOutcome {
    /// Register bitstrings concatenated in layout order.
    pub fn joint_bits(&self) -> String {
        self.readings.iter().map(|r| r.bits.as_str()).collect()
    }
}

/// A register record whose integers correspond to no attainable eigenvalue (Trotter leakage).
#[derive(Clone, Debug, Serialize)]
pub struct UnresolvedOutcome {
    pub readings: Vec<RegisterReading>,
    pub probability: f64,
}

impl UnresolvedOutcome {
    /// Register bitstrings concatenated in layout order.
    pub fn joint_bits(&self) -> String {
        self.readings.iter().map(|r| r.bits.as_str()).collect()
    }
}

/// All outcomes of one filtering run.
#[derive(Clone, Debug)]
pub struct FilterRun {
    pub method: FilterMethod,
    pub mode: EvolutionMode,
    pub layout: RegisterLayout,
    pub outcomes: Vec<FilterOutcome>,
    pub unresolved: Vec<UnresolvedOutcome>,
    /// Joint system + ancilla state before the final measurement, when the method has one.
    pub joint_state: Option<StateVector>,
}

impl FilterRun {
    pub fn total_probability(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability).sum::<f64>()
            + self.unresolved.iter().map(|o| o.probability).sum::<f64>()
    }

    pub fn find(&self, label: &OutcomeLabel) -> Option<&FilterOutcome> {
        self.outcomes.iter().find(|o| &o.label == label)
    }

    pub fn probability_of(&self, label: &OutcomeLabel) -> f64 {
        self.find(label).map_or(0.0, |o| o.probability)
    }

    /// Draws `shots` records from the exact distribution with a seeded ChaCha8 stream.
    ///
    /// Counts are aligned with `outcomes` and `unresolved`.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<RunCounts> {
        if shots == 0 {
            return input_err("shots must be at least 1");
        }
        let weights: Vec<f64> = self
            .outcomes
            .iter()
            .map(|o| o.probability)
            .chain(self.unresolved.iter().map(|o| o.probability))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hist = sample_histogram(&weights, shots, &mut rng)?;
        let count = |i: usize| hist.get(&i).copied().unwrap_or(0);
        let k = self.outcomes.len();
        Ok(RunCounts {
            outcomes: (0..k).map(count).collect(),
            unresolved: (k..weights.len()).map(count).collect(),
        })
    }

    pub(crate) fn sort(&mut self) {
        self.outcomes
            .sort_by_key(|o| std::cmp::Reverse(o.label.sort_key()));
    }
}

/// Shot counts from [`FilterRun::sample`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunCounts {
    pub outcomes: Vec<u64>,
    pub unresolved: Vec<u64>,
}

pub(crate) fn readings(layout: &RegisterLayout, values: &[u64]) -> Vec<RegisterReading> {
    layout
        .registers
        .iter()
        .zip(values)
        .map(|(r, &v)| RegisterReading {
            register: r.name.clone(),
            value: v,
            bits: format_bits(v, r.size()),
        })
        .collect()
}

fn decode_two_m(k: u64, n: usize) -> Result<i32> {
    if k as usize > n {
        return Err(TqsfError::Decode(format!(
            "z-register value {k} exceeds {n} qubits"
        )));
    }
    Ok(n as i32 - 2 * k as i32)
}

fn check_m(two_s: u32, two_m: i32) -> Result<()> {
    if two_m.unsigned_abs() > two_s {
        return Err(TqsfError::Decode(format!(
            "M = {two_m}/2 is incompatible with S = {two_s}/2"
        )));
    }
    Ok(())
}

/// Maps measured register integers (in layout order) to a spin or path label.
///
/// For methods C and C-deferred the values are the per-step bits (1 = increase).
pub fn decode_outcome(
    layout: &RegisterLayout,
    method: FilterMethod,
    values: &[u64],
) -> Result<OutcomeLabel> {
    let n = layout.num_system();
    let expected = match method {
        FilterMethod::C => n.saturating_sub(1),
        _ => layout.registers.len(),
    };
    if values.len() != expected {
        return input_err(format!(
            "expected {expected} register values, got {}",
            values.len()
        ));
    }
    match method {
        FilterMethod::A => {
            let two_m = decode_two_m(values[0], n)?;
            let two_s = decode_s(values[1], n, Parity::of(n))?;
            check_m(two_s, two_m)?;
            Ok(OutcomeLabel::Spin(SpinLabel { two_s, two_m }))
        }
        FilterMethod::BS2j => {
            let two_m = decode_two_m(values[0], n)?;
            let mut seq = vec![1u32];
            for (offset, &m) in values[1..].iter().enumerate() {
                let j = offset + 2;
                seq.push(decode_s(m, j, Parity::of(j))?);
            }
            let path = PathLabel::from_two_s_sequence(seq)?;
            check_m(path.final_two_s(), two_m)?;
            Ok(OutcomeLabel::Path {
                path,
                two_m: Some(two_m),
            })
        }
        FilterMethod::BHj => {
            let two_m = decode_two_m(values[0], n)?;
            let mut bits = Vec::with_capacity(n - 1);
            let mut two_s = 1i64;
            for (offset, &m) in values[1..].iter().enumerate() {
                let j = (offset + 2) as i64;
                // h = m - 1; growth gives 2h = 2S + j - 1, shrinkage gives 2h = j - 3 - 2S
                let twice_h = 2 * (m as i64 - 1);
                if twice_h == two_s + j - 1 {
                    bits.push(true);
                    two_s += 1;
                } else if two_s >= 1 && twice_h == j - 3 - two_s {
                    bits.push(false);
                    two_s -= 1;
                } else {
                    return Err(TqsfError::Decode(format!(
                        "H[{j}] register value {m} is unreachable from prefix spin {two_s}/2"
                    )));
                }
            }
            let path = PathLabel::from_step_bits(&bits)?;
            check_m(path.final_two_s(), two_m)?;
            Ok(OutcomeLabel::Path {
                path,
                two_m: Some(two_m),
            })
        }
        FilterMethod::C | FilterMethod::CDeferred => {
            let bits: Vec<bool> = values
                .iter()
                .map(|&v| match v {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(TqsfError::Decode(format!(
                        "step value {other} is not a bit"
                    ))),
                })
                .collect::<Result<_>>()?;
            Ok(OutcomeLabel::Path {
                path: PathLabel::from_step_bits(&bits)?,
                two_m: None,
            })
        }
    }
}

/// A reusable filter for one method, system size and evolution mode.
#[derive(Clone, Debug)]
pub enum Filter {
    Registers(RegisterCircuit),
    Sequential(SequentialFilter),
    Deferred(DeferredCircuit),
}

impl Filter {
    pub fn new(method: FilterMethod, n: usize, mode: EvolutionMode) -> Result<Self> {
        Ok(match method {
            FilterMethod::A | FilterMethod::BS2j | FilterMethod::BHj => {
                Filter::Registers(RegisterCircuit::new(method, n, mode)?)
            }
            FilterMethod::C => Filter::Sequential(SequentialFilter::new(n, mode)?),
            FilterMethod::CDeferred => Filter::Deferred(DeferredCircuit::new(n, mode)?),
        })
    }

    pub fn layout(&self) -> &RegisterLayout {
        match self {
            Filter::Registers(c) => c.layout(),
            Filter::Sequential(s) => s.layout(),
            Filter::Deferred(d) => d.layout(),
        }
    }

    /// Exact outcome enumeration. Method C enumerates every classical-feedback branch.
    pub fn run(&self, state: &StateVector) -> Result<FilterRun> {
        match self {
            Filter::Registers(c) => c.run(state),
            Filter::Sequential(s) => s.run_exact(state),
            Filter::Deferred(d) => d.run(state),
        }
    }
}

/// Method A: joint (S, M) filtering.
pub fn method_a(state: &StateVector, mode: EvolutionMode) -> Result<FilterRun> {
    RegisterCircuit::new(FilterMethod::A, state.num_qubits(), mode)?.run(state)
}

/// Method B: path-resolved filtering with S²_[j] (`FilterMethod::BS2j`) or H_[j]
/// (`FilterMethod::BHj`) registers.
pub fn method_b(
    state: &StateVector,
    variant: FilterMethod,
    mode: EvolutionMode,
) -> Result<FilterRun> {
    if !matches!(variant, FilterMethod::BS2j | FilterMethod::BHj) {
        return input_err(format!("{variant} is not a method B variant"));
    }
    RegisterCircuit::new(variant, state.num_qubits(), mode)?.run(state)
}

/// Method C, one shot with classical feedback.
pub fn method_c<R: rand::Rng + ?Sized>(
    state: &StateVector,
    mode: EvolutionMode,
    rng: &mut R,
) -> Result<ShotRecord> {
    SequentialFilter::new(state.num_qubits(), mode)?.shot(state, rng)
}

/// Method C with deferred measurement, exact distribution over path bitstrings.
pub fn method_c_deferred(state: &StateVector, mode: EvolutionMode) -> Result<FilterRun> {
    DeferredCircuit::new(state.num_qubits(), mode)?.run(state)
}
