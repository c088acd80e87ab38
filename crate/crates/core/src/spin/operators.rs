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

//! Spin operators written as weighted sums of qubit transpositions.
//!
//! Every operator here conserves the number of 1s in a basis state, which the oracle exploits to
//! diagonalize Hamming-weight blocks separately.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{input_err, Result};

/// One transposition P_ij (the SWAP of qubits `i < j`) with its weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transposition {
    pub i: usize,
    pub j: usize,
    pub coefficient: f64,
}

impl Transposition {
    /// Basis index with bits `i` and `j` exchanged.
    #[inline]
    pub fn permute(&self, index: usize) -> usize {
        let bi = (index >> self.i) & 1;
        let bj = (index >> self.j) & 1;
        if bi == bj {
            index
        } else {
            index ^ ((1 << self.i) | (1 << self.j))
        }
    }
}

/// Hermitian operator `(c0·I + Σ_p c_p P_{i_p j_p}) / denominator` on `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct TranspositionSum {
    num_qubits: usize,
    identity_coefficient: f64,
    terms: Vec<Transposition>,
    denominator: f64,
}

impl TranspositionSum {
    pub fn new(num_qubits: usize, identity_coefficient: f64) -> Result<Self> {
        if num_qubits == 0 {
            return input_err("operator needs at least one qubit");
        }
        Ok(Self {
            num_qubits,
            identity_coefficient,
            terms: Vec::new(),
            denominator: 1.0,
        })
    }

    /// Adds `coefficient · P_ij`. The pair is stored with `i < j`.
    pub fn add_pair(&mut self, i: usize, j: usize, coefficient: f64) -> Result<()> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if i == j {
            return input_err(format!(
                "transposition needs two distinct qubits, got ({i}, {j})"
            ));
        }
        if j >= self.num_qubits {
            return input_err(format!(
                "transposition ({i}, {j}) out of range for {} qubits",
                self.num_qubits
            ));
        }
        if self.terms.iter().any(|t| t.i == i && t.j == j) {
            return input_err(format!("transposition ({i}, {j}) already present"));
        }
        self.terms.push(Transposition { i, j, coefficient });
        Ok(())
    }

    pub fn with_denominator(mut self, denominator: f64) -> Result<Self> {
        if denominator == 0.0 || !denominator.is_finite() {
            return input_err("denominator must be finite and nonzero");
        }
        self.denominator = denominator;
        Ok(self)
    }

    /// Adds `shift · I` to the operator (in the scaled frame).
    pub fn shifted(mut self, shift: f64) -> Self {
        self.identity_coefficient += shift * self.denominator;
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn identity_coefficient(&self) -> f64 {
        self.identity_coefficient
    }

    pub fn terms(&self) -> &[Transposition] {
        &self.terms
    }

    pub fn denominator(&self) -> f64 {
        self.denominator
    }

    /// Applies the operator to a `2^num_qubits` amplitude slice.
    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let scale = 1.0 / self.denominator;
        let mut out: Vec<Complex64> = psi
            .iter()
            .map(|a| a * (self.identity_coefficient * scale))
            .collect();
        for t in &self.terms {
            let w = t.coefficient * scale;
            for (index, a) in psi.iter().enumerate() {
                out[t.permute(index)] += a * w;
            }
        }
        out
    }

    /// Diagonal-free matrix element ⟨row|O|col⟩ between basis states.
    pub(crate) fn column(&self, col: usize) -> Vec<(usize, f64)> {
        let scale = 1.0 / self.denominator;
        let mut entries = vec![(col, self.identity_coefficient * scale)];
        for t in &self.terms {
            entries.push((t.permute(col), t.coefficient * scale));
        }
        entries
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let dim = 1usize << self.num_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            for (row, v) in self.column(col) {
                m[(row, col)] += v;
            }
        }
        m
    }
}

/// N₁ = ½ Σ_k (I − Z_k), the number of qubits in |1⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumberOperator {
    num_qubits: usize,
}

impl NumberOperator {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        psi.iter()
            .enumerate()
            .map(|(index, a)| a * f64::from(index.count_ones()))
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let dim = 1usize << self.num_qubits;
        DMatrix::from_fn(dim, dim, |r, c| {
            if r == c {
                f64::from(r.count_ones())
            } else {
                0.0
            }
        })
    }
}

/// Any operator the filtering circuits exponentiate.
#[derive(Clone, Debug, PartialEq)]
pub enum SpinOperator {
    Transpositions(TranspositionSum),
    Number(NumberOperator),
}

impl SpinOperator {
    pub fn num_qubits(&self) -> usize {
        match self {
            SpinOperator::Transpositions(t) => t.num_qubits(),
            SpinOperator::Number(n) => n.num_qubits(),
        }
    }

    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        match self {
            SpinOperator::Transpositions(t) => t.apply(psi),
            SpinOperator::Number(n) => n.apply(psi),
        }
    }

    pub(crate) fn column(&self, col: usize) -> Vec<(usize, f64)> {
        match self {
            SpinOperator::Transpositions(t) => t.column(col),
            SpinOperator::Number(_) => vec![(col, f64::from(col.count_ones()))],
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        match self {
            SpinOperator::Transpositions(t) => t.to_dense(),
            SpinOperator::Number(n) => n.to_dense(),
        }
    }
}

impl From<TranspositionSum> for SpinOperator {
    fn from(t: TranspositionSum) -> Self {
        SpinOperator::Transpositions(t)
    }
}

impl From<NumberOperator> for SpinOperator {
    fn from(n: NumberOperator) -> Self {
        SpinOperator::Number(n)
    }
}

/// Total spin S² = n(4−n)/4 · I + Σ_{i<j} P_ij.
pub fn total_spin_squared(n: usize) -> Result<TranspositionSum> {
    if n == 0 {
        return input_err("total spin needs n >= 1");
    }
    prefix_sum(n, n)
}

/// S²_[j]: total spin of qubits `0..j`, embedded in an `n`-qubit space.
pub fn prefix_spin_squared(j: usize, n: usize) -> Result<TranspositionSum> {
    if j < 2 || j > n {
        return input_err(format!("prefix length {j} outside [2, {n}]"));
    }
    prefix_sum(j, n)
}

fn prefix_sum(j: usize, n: usize) -> Result<TranspositionSum> {
    let jf = j as f64;
    let mut op = TranspositionSum::new(n, jf * (4.0 - jf) / 4.0)?;
    for b in 1..j {
        for a in 0..b {
            op.add_pair(a, b, 1.0)?;
        }
    }
    Ok(op)
}

/// H_[j] = Σ_{i<j−1} P_{i,j−1}: qubit `j−1` exchanged with every earlier qubit.
pub fn coupling_sum(j: usize, n: usize) -> Result<TranspositionSum> {
    if j < 2 || j > n {
        return input_err(format!("prefix length {j} outside [2, {n}]"));
    }
    let mut op = TranspositionSum::new(n, 0.0)?;
    for i in 0..j - 1 {
        op.add_pair(i, j - 1, 1.0)?;
    }
    Ok(op)
}

/// G_[j] = (S²_[j] − S²_[j−1] + S_[j−1] + 1/4) / (2 S_[j−1] + 1), given `two_s_prev = 2 S_[j−1]`.
///
/// On a prefix-spin eigenspace it has eigenvalue 1 where the spin grows and 0 where it shrinks.
/// A vanishing prefix spin is rejected; that step is forced and needs no operator.
pub fn step_operator(j: usize, n: usize, two_s_prev: u32) -> Result<TranspositionSum> {
    if two_s_prev == 0 {
        return input_err("step operator is undefined for zero prefix spin");
    }
    if two_s_prev as usize > j - 1 || !(j - 1 + two_s_prev as usize).is_multiple_of(2) {
        return input_err(format!(
            "prefix spin {two_s_prev}/2 is not reachable with {} qubits",
            j - 1
        ));
    }
    let h = coupling_sum(j, n)?;
    // S²_[j] − S²_[j−1] = (5 − 2j)/4 + H_[j]
    let identity = (5.0 - 2.0 * j as f64) / 4.0 + f64::from(two_s_prev) / 2.0 + 0.25;
    let mut op = TranspositionSum::new(n, identity)?;
    for t in h.terms() {
        op.add_pair(t.i, t.j, t.coefficient)?;
    }
    op.with_denominator(f64::from(two_s_prev) + 1.0)
}

/// N₁ on `n` qubits. Its eigenvalue on a basis state is the Hamming weight `k`, and M = n/2 − k.
pub fn number_operator(n: usize) -> Result<NumberOperator> {
    if n == 0 {
        return input_err("number operator needs n >= 1");
    }
    Ok(NumberOperator { num_qubits: n })
}
