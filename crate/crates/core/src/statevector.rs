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

//! Dense statevector simulation.
//!
//! Bit order: qubit `q` is bit `q` of the basis-state index, so qubit 0 is the least significant
//! bit. Every bitstring produced or accepted by this crate is written most-significant qubit
//! first, i.e. it reads like the binary expansion of the index.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input_err, Result, TqsfError};

/// Tolerance for norm preservation and unitarity checks.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Probabilities at or below this value are dropped from exact distributions.
pub const PRUNE_THRESHOLD: f64 = 1e-12;

/// Largest total qubit count (system plus ancillas) handled in exact mode.
pub const MAX_QUBITS: usize = 20;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex amplitude vector of length `2^num_qubits`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

fn check_capacity(num_qubits: usize) -> Result<()> {
    if num_qubits > MAX_QUBITS {
        return Err(TqsfError::Capacity {
            what: "statevector qubits",
            requested: num_qubits,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Renders `value` as `width` bits, most significant first.
pub fn format_bits(value: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|b| if (value >> b) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a most-significant-first bitstring.
pub fn parse_bits(bits: &str) -> Result<u64> {
    if bits.len() > 64 {
        return input_err(format!("bitstring of length {} is too long", bits.len()));
    }
    bits.chars().try_fold(0u64, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        other => input_err(format!("invalid character {other:?} in bitstring")),
    })
}

fn validate_qubits(num_qubits: usize, qubits: &[usize], what: &str) -> Result<()> {
    let mut seen = 0u64;
    for &q in qubits {
        if q >= num_qubits {
            return input_err(format!(
                "{what} qubit {q} out of range for {num_qubits} qubits"
            ));
        }
        if seen & (1 << q) != 0 {
            return input_err(format!("{what} qubit {q} listed twice"));
        }
        seen |= 1 << q;
    }
    Ok(())
}

/// Collects the bits of `index` at `qubits` into an integer; `qubits[0]` becomes bit 0.
#[inline]
pub(crate) fn extract_bits(index: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .fold(0, |acc, (b, &q)| acc | (((index >> q) & 1) << b))
}

/// Inverse of [`extract_bits`]: spreads the bits of `value` over `qubits`.
#[inline]
pub(crate) fn deposit_bits(value: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .fold(0, |acc, (b, &q)| acc | (((value >> b) & 1) << q))
}

impl StateVector {
    /// The all-zero state |0…0⟩.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    /// Computational basis state with the given index.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_capacity(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return input_err(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            ));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Basis state from a most-significant-first bitstring of length `num_qubits`.
    pub fn new_basis_state(num_qubits: usize, bitstring: &str) -> Result<Self> {
        if bitstring.chars().count() != num_qubits {
            return input_err(format!(
                "bitstring {bitstring:?} has length {}, expected {num_qubits}",
                bitstring.chars().count()
            ));
        }
        Self::basis(num_qubits, parse_bits(bitstring)? as usize)
    }

    /// Wraps an amplitude vector that must already be normalized.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::from_unnormalized(amplitudes)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE * 1e2 {
            return input_err(format!("amplitudes have norm {norm}, expected 1"));
        }
        Ok(state)
    }

    /// Wraps an amplitude vector and rescales it to unit norm. Returns the original norm too.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<(Self, f64)> {
        let mut state = Self::from_unnormalized(amplitudes)?;
        let norm = state.norm();
        if norm < 1e-300 || !norm.is_finite() {
            return input_err("amplitude vector has zero or non-finite norm");
        }
        state.scale(1.0 / norm);
        Ok((state, norm))
    }

    fn from_unnormalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return input_err(format!("amplitude count {len} is not a power of two"));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_capacity(num_qubits)?;
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Euclidean distance ‖self − other‖.
    pub fn distance(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Fidelity |⟨self|other⟩|², insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        for a in &mut self.amplitudes {
            *a *= factor;
        }
    }

    /// Tensor product with `self` on the low qubits and `high` on the qubits above.
    pub fn tensor(&self, high: &StateVector) -> Result<StateVector> {
        let num_qubits = self.num_qubits + high.num_qubits;
        check_capacity(num_qubits)?;
        let mut amplitudes = Vec::with_capacity(1 << num_qubits);
        for h in &high.amplitudes {
            amplitudes.extend(self.amplitudes.iter().map(|l| l * h));
        }
        Ok(StateVector {
            num_qubits,
            amplitudes,
        })
    }

    /// Amplitudes of the low `low_qubits` qubits on the branch where the qubits above read
    /// `high_value` (unnormalized).
    pub(crate) fn low_block(&self, low_qubits: usize, high_value: usize) -> &[Complex64] {
        let width = 1usize << low_qubits;
        &self.amplitudes[high_value * width..(high_value + 1) * width]
    }

    /// Appends `extra` ancilla qubits prepared in |0⟩ above the existing qubits.
    pub fn with_ancillas(&self, extra: usize) -> Result<StateVector> {
        self.tensor(&StateVector::zero(extra)?)
    }

    /// Runs `f` on every `2^targets.len()`-dimensional slice spanned by `targets`, restricted to
    /// the branches where each `(qubit, value)` control matches. The slice handed to `f` is indexed
    /// with `targets[0]` as its least significant bit.
    ///
    /// Amplitudes are gathered by strided iteration; the full operator is never embedded.
    pub fn apply_on_subsystem<F>(
        &mut self,
        targets: &[usize],
        controls: &[(usize, bool)],
        mut f: F,
    ) -> Result<()>
    where
        F: FnMut(&mut [Complex64]),
    {
        validate_qubits(self.num_qubits, targets, "target")?;
        let control_qubits: Vec<usize> = controls.iter().map(|c| c.0).collect();
        validate_qubits(self.num_qubits, &control_qubits, "control")?;
        if control_qubits.iter().any(|c| targets.contains(c)) {
            return input_err("control and target qubits overlap");
        }
        let target_mask = deposit_bits((1usize << targets.len()) - 1, targets);
        let (control_mask, control_value) = controls
            .iter()
            .fold((0usize, 0usize), |(mask, value), &(q, bit)| {
                (mask | (1 << q), value | (usize::from(bit) << q))
            });
        let offsets: Vec<usize> = (0..1usize << targets.len())
            .map(|l| deposit_bits(l, targets))
            .collect();
        let mut local = vec![ZERO; offsets.len()];
        for base in 0..self.amplitudes.len() {
            if base & target_mask != 0 || base & control_mask != control_value {
                continue;
            }
            for (slot, &off) in local.iter_mut().zip(&offsets) {
                *slot = self.amplitudes[base | off];
            }
            f(&mut local);
            for (slot, &off) in local.iter().zip(&offsets) {
                self.amplitudes[base | off] = *slot;
            }
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        self.apply_controlled(&[], &[], gate)
    }

    /// Applies `gate` on the branches where `control_qubits` hold `control_values`
    /// (`false` is an open control).
    pub fn apply_controlled(
        &mut self,
        control_qubits: &[usize],
        control_values: &[bool],
        gate: &Gate,
    ) -> Result<()> {
        if control_qubits.len() != control_values.len() {
            return input_err("control qubit and control value lists differ in length");
        }
        let controls: Vec<(usize, bool)> = control_qubits
            .iter()
            .copied()
            .zip(control_values.iter().copied())
            .collect();
        let dim = gate.dim();
        let mut scratch = vec![ZERO; dim];
        self.apply_on_subsystem(&gate.targets, &controls, |local| {
            for (r, out) in scratch.iter_mut().enumerate() {
                let row = &gate.matrix[r * dim..(r + 1) * dim];
                *out = row.iter().zip(local.iter()).map(|(m, a)| m * a).sum();
            }
            local.copy_from_slice(&scratch);
        })
    }

    /// Born probabilities of every value of `qubits`, indexed with `qubits[0]` as bit 0.
    pub fn register_probabilities(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        validate_qubits(self.num_qubits, qubits, "measured")?;
        let mut probs = vec![0.0; 1 << qubits.len()];
        for (index, a) in self.amplitudes.iter().enumerate() {
            probs[extract_bits(index, qubits)] += a.norm_sqr();
        }
        Ok(probs)
    }

    /// Exact outcome distribution over `qubits`, keyed by bitstring (last listed qubit first).
    /// Entries at or below [`PRUNE_THRESHOLD`] are omitted.
    pub fn outcome_distribution(&self, qubits: &[usize]) -> Result<BTreeMap<String, f64>> {
        Ok(self
            .register_probabilities(qubits)?
            .into_iter()
            .enumerate()
            .filter(|(_, p)| *p > PRUNE_THRESHOLD)
            .map(|(v, p)| (format_bits(v as u64, qubits.len()), p))
            .collect())
    }

    /// Probability of `qubits` reading `value` and the renormalized collapsed state.
    pub fn collapse(&self, qubits: &[usize], value: usize) -> Result<(f64, StateVector)> {
        validate_qubits(self.num_qubits, qubits, "measured")?;
        let mut amplitudes = self.amplitudes.clone();
        let mut weight = 0.0;
        for (index, a) in amplitudes.iter_mut().enumerate() {
            if extract_bits(index, qubits) == value {
                weight += a.norm_sqr();
            } else {
                *a = ZERO;
            }
        }
        if weight <= 1e-15 {
            return Err(TqsfError::Internal(format!(
                "collapse onto outcome {value} with negligible probability {weight:e}"
            )));
        }
        let mut post = StateVector {
            num_qubits: self.num_qubits,
            amplitudes,
        };
        post.scale(1.0 / weight.sqrt());
        Ok((weight, post))
    }

    /// Projective measurement of `qubits` with Born-rule sampling from `rng`.
    pub fn measure<R: Rng + ?Sized>(
        &self,
        qubits: &[usize],
        rng: &mut R,
    ) -> Result<MeasurementResult> {
        let probs = self.register_probabilities(qubits)?;
        let dist = WeightedIndex::new(&probs)
            .map_err(|e| TqsfError::Internal(format!("degenerate norm in measurement: {e}")))?;
        let value = dist.sample(rng);
        let (probability, post_state) = self.collapse(qubits, value)?;
        let bits = qubits
            .iter()
            .enumerate()
            .map(|(b, &q)| (q, (value >> b) & 1 == 1))
            .collect();
        Ok(MeasurementResult {
            bits,
            value,
            probability,
            post_state,
        })
    }

    /// Samples `shots` measurements of `qubits` from a seeded ChaCha8 stream.
    pub fn sample_counts(
        &self,
        qubits: &[usize],
        shots: u64,
        seed: u64,
    ) -> Result<BTreeMap<String, u64>> {
        if shots == 0 {
            return input_err("shots must be at least 1");
        }
        let probs = self.register_probabilities(qubits)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(sample_histogram(&probs, shots, &mut rng)?
            .into_iter()
            .map(|(v, c)| (format_bits(v as u64, qubits.len()), c))
            .collect())
    }
}

/// Draws `shots` indices from the (possibly unnormalized) weights and counts them.
pub fn sample_histogram<R: Rng + ?Sized>(
    weights: &[f64],
    shots: u64,
    rng: &mut R,
) -> Result<BTreeMap<usize, u64>> {
    let dist = WeightedIndex::new(weights)
        .map_err(|e| TqsfError::Internal(format!("cannot sample from weights: {e}")))?;
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        *counts.entry(dist.sample(rng)).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Outcome of a projective measurement.
#[derive(Clone, Debug)]
pub struct MeasurementResult {
    /// Observed bit per measured qubit.
    pub bits: BTreeMap<usize, bool>,
    /// The same bits packed with the first measured qubit as bit 0.
    pub value: usize,
    /// Born weight of the observed bits before collapse.
    pub probability: f64,
    pub post_state: StateVector,
}

/// Unitary on `k` ordered target qubits. The matrix is row-major of dimension `2^k`, and its
/// index uses `targets[0]` as the least significant bit.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    matrix: Vec<Complex64>,
    targets: Vec<usize>,
}

impl Gate {
    pub fn new(matrix: Vec<Complex64>, targets: Vec<usize>) -> Result<Self> {
        let dim = 1usize << targets.len();
        if matrix.len() != dim * dim {
            return input_err(format!(
                "gate on {} qubits needs a {dim}x{dim} matrix, got {} entries",
                targets.len(),
                matrix.len()
            ));
        }
        validate_qubits(usize::BITS as usize, &targets, "gate target")?;
        for r in 0..dim {
            for c in 0..dim {
                let dot: Complex64 = (0..dim)
                    .map(|k| matrix[k * dim + r].conj() * matrix[k * dim + c])
                    .sum();
                let expected = if r == c { ONE } else { ZERO };
                if (dot - expected).norm() > NORM_TOLERANCE {
                    return input_err("gate matrix is not unitary");
                }
            }
        }
        Ok(Self { matrix, targets })
    }

    fn single(m: [Complex64; 4], q: usize) -> Self {
        Self {
            matrix: m.to_vec(),
            targets: vec![q],
        }
    }

    pub fn hadamard(q: usize) -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::single([h, h, h, -h], q)
    }

    pub fn x(q: usize) -> Self {
        Self::single([ZERO, ONE, ONE, ZERO], q)
    }

    pub fn z(q: usize) -> Self {
        Self::single([ONE, ZERO, ZERO, -ONE], q)
    }

    /// diag(1, e^{iθ})
    pub fn phase(q: usize, theta: f64) -> Self {
        Self::single([ONE, ZERO, ZERO, Complex64::from_polar(1.0, theta)], q)
    }

    pub fn swap(a: usize, b: usize) -> Self {
        let mut m = vec![ZERO; 16];
        for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            m[r * 4 + c] = ONE;
        }
        Self {
            matrix: m,
            targets: vec![a, b],
        }
    }

    pub fn dagger(&self) -> Self {
        let dim = self.dim();
        let mut m = vec![ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                m[c * dim + r] = self.matrix[r * dim + c].conj();
            }
        }
        Self {
            matrix: m,
            targets: self.targets.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.targets.len()
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }
}
