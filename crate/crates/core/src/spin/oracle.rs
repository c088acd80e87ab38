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

//! Exact eigendecomposition of spin operators.
//!
//! The operators conserve Hamming weight, so each weight block is diagonalized on its own and the
//! eigenvalues are then clustered across blocks. Projectors are kept in factored form (block
//! eigenvectors plus a cluster id per column) and only densified on request.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::labels::SpinLabel;
use super::operators::{total_spin_squared, SpinOperator};
use crate::error::{input_err, Result, TqsfError};
use crate::statevector::{StateVector, PRUNE_THRESHOLD};

/// Largest operator (in qubits) the oracle will diagonalize.
pub const ORACLE_MAX_QUBITS: usize = 12;

/// Eigenvalues closer than this are merged into one eigenspace.
pub const CLUSTER_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug)]
struct WeightBlock {
    indices: Vec<usize>,
    /// Orthonormal eigenvectors as columns, `indices.len()` square.
    vectors: DMatrix<f64>,
    /// Eigenspace id of each column.
    cluster: Vec<usize>,
}

/// Spectral decomposition of a Hermitian operator: distinct eigenvalues and their projectors.
#[derive(Clone, Debug)]
pub struct ProjectorSet {
    num_qubits: usize,
    eigenvalues: Vec<f64>,
    ranks: Vec<usize>,
    blocks: Vec<WeightBlock>,
}

/// Full eigendecomposition of `op` with eigenvalues clustered at [`CLUSTER_TOLERANCE`].
pub fn eigen_oracle(op: &SpinOperator) -> Result<ProjectorSet> {
    let n = op.num_qubits();
    if n > ORACLE_MAX_QUBITS {
        return Err(TqsfError::Capacity {
            what: "oracle qubits",
            requested: n,
            limit: ORACLE_MAX_QUBITS,
        });
    }
    let mut by_weight: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for index in 0..1usize << n {
        by_weight[index.count_ones() as usize].push(index);
    }

    let mut position = vec![0usize; 1 << n];
    let mut raw = Vec::with_capacity(n + 1);
    let mut spectrum: Vec<(f64, usize, usize)> = Vec::new();
    for indices in by_weight {
        for (p, &index) in indices.iter().enumerate() {
            position[index] = p;
        }
        let dim = indices.len();
        let mut block = DMatrix::<f64>::zeros(dim, dim);
        for (c, &index) in indices.iter().enumerate() {
            for (row, v) in op.column(index) {
                if row.count_ones() != index.count_ones() {
                    return Err(TqsfError::Internal(
                        "operator does not conserve Hamming weight".into(),
                    ));
                }
                block[(position[row], c)] += v;
            }
        }
        let eig = SymmetricEigen::new(block);
        let b = raw.len();
        spectrum.extend(eig.eigenvalues.iter().enumerate().map(|(c, &v)| (v, b, c)));
        raw.push((indices, eig.eigenvectors));
    }

    spectrum.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut eigenvalues: Vec<f64> = Vec::new();
    let mut ranks: Vec<usize> = Vec::new();
    let mut sums: Vec<f64> = Vec::new();
    let mut cluster_of: Vec<Vec<usize>> = raw.iter().map(|(i, _)| vec![0; i.len()]).collect();
    let mut prev = f64::NEG_INFINITY;
    for &(value, b, c) in &spectrum {
        if value - prev > CLUSTER_TOLERANCE {
            sums.push(0.0);
            ranks.push(0);
        }
        let id = sums.len() - 1;
        sums[id] += value;
        ranks[id] += 1;
        cluster_of[b][c] = id;
        prev = value;
    }
    for (sum, rank) in sums.iter().zip(&ranks) {
        eigenvalues.push(sum / *rank as f64);
    }

    let blocks = raw
        .into_iter()
        .zip(cluster_of)
        .map(|((indices, vectors), cluster)| WeightBlock {
            indices,
            vectors,
            cluster,
        })
        .collect();
    Ok(ProjectorSet {
        num_qubits: n,
        eigenvalues,
        ranks,
        blocks,
    })
}

impl ProjectorSet {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Distinct eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Rank of each eigenspace projector, aligned with [`Self::eigenvalues`].
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Eigenspace whose eigenvalue is within [`CLUSTER_TOLERANCE`] of `value`.
    pub fn find(&self, value: f64) -> Option<usize> {
        self.eigenvalues
            .iter()
            .position(|v| (v - value).abs() <= CLUSTER_TOLERANCE)
    }

    /// Rank of eigenspace `k` inside the Hamming-weight-`weight` block.
    pub fn rank_in_weight(&self, k: usize, weight: usize) -> usize {
        self.blocks
            .get(weight)
            .map_or(0, |b| b.cluster.iter().filter(|&&c| c == k).count())
    }

    /// Returns Σ_λ f(λ) P_λ ψ for a `2^num_qubits` slice.
    pub fn apply_spectral<F>(&self, psi: &[Complex64], f: F) -> Vec<Complex64>
    where
        F: Fn(usize, f64) -> Complex64,
    {
        let factors: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &v)| f(k, v))
            .collect();
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        let mut coeffs = Vec::new();
        for block in &self.blocks {
            let dim = block.indices.len();
            coeffs.clear();
            for c in 0..dim {
                let factor = factors[block.cluster[c]];
                if factor == Complex64::new(0.0, 0.0) {
                    coeffs.push(factor);
                    continue;
                }
                let column = block.vectors.column(c);
                let overlap: Complex64 = block
                    .indices
                    .iter()
                    .zip(column.iter())
                    .map(|(&i, &v)| psi[i] * v)
                    .sum();
                coeffs.push(overlap * factor);
            }
            for (c, coeff) in coeffs.iter().enumerate() {
                if *coeff == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let column = block.vectors.column(c);
                for (&i, &v) in block.indices.iter().zip(column.iter()) {
                    out[i] += coeff * v;
                }
            }
        }
        out
    }

    /// P_k ψ
    pub fn project(&self, k: usize, psi: &[Complex64]) -> Vec<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        self.apply_spectral(psi, |c, _| if c == k { one } else { zero })
    }

    /// ⟨ψ|P_k|ψ⟩
    pub fn weight(&self, k: usize, psi: &[Complex64]) -> f64 {
        self.project(k, psi).iter().map(|a| a.norm_sqr()).sum()
    }

    /// Orthonormal basis of eigenspace `k` as full-length columns.
    pub fn basis(&self, k: usize) -> DMatrix<f64> {
        let dim = 1usize << self.num_qubits;
        let mut out = DMatrix::zeros(dim, self.ranks[k]);
        let mut col = 0;
        for block in &self.blocks {
            for (c, &cluster) in block.cluster.iter().enumerate() {
                if cluster != k {
                    continue;
                }
                for (r, &i) in block.indices.iter().enumerate() {
                    out[(i, col)] = block.vectors[(r, c)];
                }
                col += 1;
            }
        }
        out
    }

    pub fn dense_projector(&self, k: usize) -> DMatrix<f64> {
        let b = self.basis(k);
        &b * b.transpose()
    }
}

/// Projects states onto joint (S, M) eigenspaces using a cached S² decomposition.
#[derive(Clone, Debug)]
pub struct SpinProjector {
    n: usize,
    total_spin: ProjectorSet,
}

impl SpinProjector {
    pub fn new(n: usize) -> Result<Self> {
        let total_spin = eigen_oracle(&total_spin_squared(n)?.into())?;
        Ok(Self { n, total_spin })
    }

    pub fn total_spin(&self) -> &ProjectorSet {
        &self.total_spin
    }

    fn eigenspace(&self, label: &SpinLabel) -> Result<Option<usize>> {
        if !label.is_valid_for(self.n) {
            return input_err(format!("{label} is not valid for {} qubits", self.n));
        }
        Ok(self.total_spin.find(label.spin_squared()))
    }

    /// P_[S,M] ψ (unnormalized).
    pub fn projected(&self, state: &StateVector, label: &SpinLabel) -> Result<Vec<Complex64>> {
        if state.num_qubits() != self.n {
            return input_err(format!(
                "state has {} qubits, projector expects {}",
                state.num_qubits(),
                self.n
            ));
        }
        let zero = Complex64::new(0.0, 0.0);
        let Some(k) = self.eigenspace(label)? else {
            return Ok(vec![zero; state.dim()]);
        };
        let weight = label.hamming_weight(self.n) as u32;
        let mut out = self.total_spin.project(k, state.amplitudes());
        for (index, a) in out.iter_mut().enumerate() {
            if index.count_ones() != weight {
                *a = zero;
            }
        }
        Ok(out)
    }

    /// A_{S,M} = ⟨ψ|P_[S,M]|ψ⟩ and the normalized projection, or `None` when A is negligible.
    pub fn project(
        &self,
        state: &StateVector,
        label: &SpinLabel,
    ) -> Result<(f64, Option<StateVector>)> {
        let projected = self.projected(state, label)?;
        let amplitude: f64 = projected.iter().map(|a| a.norm_sqr()).sum();
        if amplitude <= PRUNE_THRESHOLD {
            return Ok((amplitude, None));
        }
        let (normalized, _) = StateVector::normalized(projected)?;
        Ok((amplitude, Some(normalized)))
    }

    /// Rank of P_[S,M].
    pub fn rank(&self, label: &SpinLabel) -> Result<usize> {
        Ok(self.eigenspace(label)?.map_or(0, |k| {
            self.total_spin
                .rank_in_weight(k, label.hamming_weight(self.n))
        }))
    }
}

/// One-shot convenience around [`SpinProjector::project`].
pub fn project_sm(state: &StateVector, label: &SpinLabel) -> Result<(f64, Option<StateVector>)> {
    SpinProjector::new(state.num_qubits())?.project(state, label)
}
