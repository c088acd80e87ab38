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

//! Phase unitaries U = exp(2πi·α·O) for the spin operators.
//!
//! Exact mode uses the oracle's spectral projectors. Trotter mode applies the identity part as a
//! phase and splits the transposition sum into first-order products of SWAP rotations
//! exp(iφ P_ij) = cos φ · I + i sin φ · P_ij, visiting pairs in lexicographic order. Powers U^p are
//! taken by scaling the angle, never by repetition.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result, TqsfError};
use crate::spin::{eigen_oracle, ProjectorSet, SpinOperator, Transposition};
use crate::statevector::StateVector;

/// How a phase unitary is realized on the simulator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EvolutionMode {
    #[default]
    Exact,
    Trotter {
        steps: usize,
    },
}

/// U = exp(2πi·alpha·operator).
#[derive(Debug)]
pub struct PhaseUnitary {
    operator: SpinOperator,
    alpha: f64,
    mode: EvolutionMode,
    spectrum: OnceLock<std::result::Result<ProjectorSet, TqsfError>>,
}

impl Clone for PhaseUnitary {
    fn clone(&self) -> Self {
        let spectrum = OnceLock::new();
        if let Some(s) = self.spectrum.get() {
            let _ = spectrum.set(s.clone());
        }
        Self {
            operator: self.operator.clone(),
            alpha: self.alpha,
            mode: self.mode,
            spectrum,
        }
    }
}

/// Fractional part of `x`, mapped into [0, 1).
fn frac(x: f64) -> f64 {
    x - x.floor()
}

/// In-place exp(iφ P_ij) on a slice: cos φ · ψ + i sin φ · SWAP_ij ψ.
pub(crate) fn swap_rotation_local(psi: &mut [Complex64], phi: f64, i: usize, j: usize) {
    let (sin, cos) = phi.sin_cos();
    let isin = Complex64::new(0.0, sin);
    let diagonal = Complex64::new(cos, sin);
    let (bi, bj) = (1usize << i, 1usize << j);
    for index in 0..psi.len() {
        match (index & bi != 0, index & bj != 0) {
            (false, true) => {
                let partner = index ^ bi ^ bj;
                let (a, b) = (psi[index], psi[partner]);
                psi[index] = a * cos + b * isin;
                psi[partner] = b * cos + a * isin;
            }
            (true, false) => {}
            _ => psi[index] *= diagonal,
        }
    }
}

/// Applies exp(iα P_ij) to `state`.
pub fn apply_swap_rotation(state: &mut StateVector, alpha: f64, i: usize, j: usize) -> Result<()> {
    if i == j {
        return input_err("swap rotation needs two distinct qubits");
    }
    let (lo, hi) = (i.min(j), i.max(j));
    state.apply_on_subsystem(&[lo, hi], &[], |local| {
        swap_rotation_local(local, alpha, 0, 1)
    })
}

impl PhaseUnitary {
    pub fn new(operator: impl Into<SpinOperator>, alpha: f64, mode: EvolutionMode) -> Result<Self> {
        if !alpha.is_finite() {
            return input_err("phase scale must be finite");
        }
        if let EvolutionMode::Trotter { steps } = mode {
            if steps == 0 {
                return input_err("trotter mode needs at least one step");
            }
        }
        Ok(Self {
            operator: operator.into(),
            alpha,
            mode,
            spectrum: OnceLock::new(),
        })
    }

    pub fn operator(&self) -> &SpinOperator {
        &self.operator
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mode(&self) -> EvolutionMode {
        self.mode
    }

    pub fn num_qubits(&self) -> usize {
        self.operator.num_qubits()
    }

    /// Cached spectral decomposition (computed on first use).
    pub fn spectrum(&self) -> Result<&ProjectorSet> {
        self.spectrum
            .get_or_init(|| eigen_oracle(&self.operator))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Distinct eigenvalues of the operator, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        match &self.operator {
            SpinOperator::Number(n) => Ok((0..=n.num_qubits()).map(|k| k as f64).collect()),
            SpinOperator::Transpositions(_) => Ok(self.spectrum()?.eigenvalues().to_vec()),
        }
    }

    /// Register integer for every eigenvalue when read with `register_size` phase bits.
    ///
    /// Fails with a configuration error when a phase is not an exact `register_size`-bit binary
    /// fraction in [0, 1) or when two eigenvalues share an integer.
    pub fn phase_integers(&self, register_size: usize) -> Result<Vec<(f64, u64)>> {
        let scale = (1u64 << register_size) as f64;
        let mut out: Vec<(f64, u64)> = Vec::new();
        for lambda in self.eigenvalues()? {
            let x = self.alpha * lambda * scale;
            let m = x.round();
            if (x - m).abs() > 1e-9 || m < 0.0 || m >= scale {
                return Err(TqsfError::Configuration(format!(
                    "eigenvalue {lambda} gives phase {} which is not a distinct {register_size}-bit \
                     fraction in [0, 1) (aliasing)",
                    self.alpha * lambda
                )));
            }
            let m = m as u64;
            if let Some((other, _)) = out.iter().find(|(_, v)| *v == m) {
                return Err(TqsfError::Configuration(format!(
                    "eigenvalues {other} and {lambda} alias to register value {m} with \
                     {register_size} bits"
                )));
            }
            out.push((lambda, m));
        }
        Ok(out)
    }

    /// Applies U^power to a `2^num_qubits` slice using the mode this unitary was built with.
    pub fn apply_local(&self, psi: &mut [Complex64], power: u64) -> Result<()> {
        match self.mode {
            EvolutionMode::Exact => self.exact_local(psi, power),
            EvolutionMode::Trotter { steps } => {
                self.trotter_local(psi, power, steps);
                Ok(())
            }
        }
    }

    fn check_len(&self, psi: &[Complex64]) -> Result<()> {
        if psi.len() != 1 << self.num_qubits() {
            return input_err(format!(
                "slice of length {} does not match a {}-qubit operator",
                psi.len(),
                self.num_qubits()
            ));
        }
        Ok(())
    }

    fn exact_local(&self, psi: &mut [Complex64], power: u64) -> Result<()> {
        self.check_len(psi)?;
        let scale = self.alpha * power as f64;
        match &self.operator {
            SpinOperator::Number(_) => number_phases(psi, scale),
            SpinOperator::Transpositions(_) => {
                let out = self.spectrum()?.apply_spectral(psi, |_, lambda| {
                    Complex64::from_polar(1.0, TAU * frac(scale * lambda))
                });
                psi.copy_from_slice(&out);
            }
        }
        Ok(())
    }

    fn trotter_local(&self, psi: &mut [Complex64], power: u64, steps: usize) {
        let scale = self.alpha * power as f64;
        match &self.operator {
            // diagonal: a product of single-qubit phase gates, exact at any step count
            SpinOperator::Number(_) => number_phases(psi, scale),
            SpinOperator::Transpositions(t) => {
                let d = t.denominator();
                let global =
                    Complex64::from_polar(1.0, TAU * frac(scale * t.identity_coefficient() / d));
                for a in psi.iter_mut() {
                    *a *= global;
                }
                let mut terms: Vec<Transposition> = t.terms().to_vec();
                terms.sort_by_key(|p| (p.i, p.j));
                for _ in 0..steps {
                    for p in &terms {
                        let phi = TAU * scale * p.coefficient / d / steps as f64;
                        swap_rotation_local(psi, phi, p.i, p.j);
                    }
                }
            }
        }
    }

    /// U^power on `qubits` of `state`, realized exactly.
    pub fn apply_exact(&self, state: &mut StateVector, qubits: &[usize], power: u64) -> Result<()> {
        self.with_mode(EvolutionMode::Exact)?
            .apply_controlled(state, qubits, &[], power)
    }

    /// U^power on `qubits` of `state`, realized by first-order Trotter with `steps` slices.
    pub fn apply_trotter(
        &self,
        state: &mut StateVector,
        qubits: &[usize],
        power: u64,
        steps: usize,
    ) -> Result<()> {
        self.with_mode(EvolutionMode::Trotter { steps })?
            .apply_controlled(state, qubits, &[], power)
    }

    /// U^power on `qubits`, in this unitary's mode.
    pub fn apply(&self, state: &mut StateVector, qubits: &[usize], power: u64) -> Result<()> {
        self.apply_controlled(state, qubits, &[], power)
    }

    /// U^power on `qubits` restricted to branches where every control matches its value.
    pub fn apply_controlled(
        &self,
        state: &mut StateVector,
        qubits: &[usize],
        controls: &[(usize, bool)],
        power: u64,
    ) -> Result<()> {
        if qubits.len() != self.num_qubits() {
            return input_err(format!(
                "operator acts on {} qubits but {} were given",
                self.num_qubits(),
                qubits.len()
            ));
        }
        if self.mode == EvolutionMode::Exact {
            if let SpinOperator::Transpositions(_) = self.operator {
                self.spectrum()?;
            }
        }
        let mut failure = None;
        state.apply_on_subsystem(qubits, controls, |local| {
            if let Err(e) = self.apply_local(local, power) {
                failure.get_or_insert(e);
            }
        })?;
        failure.map_or(Ok(()), Err)
    }

    /// Same operator and scale under another evolution mode.
    pub fn with_mode(&self, mode: EvolutionMode) -> Result<Self> {
        let mut out = Self::new(self.operator.clone(), self.alpha, mode)?;
        if let Some(s) = self.spectrum.get() {
            out.spectrum = OnceLock::from(s.clone());
        }
        Ok(out)
    }
}

fn number_phases(psi: &mut [Complex64], scale: f64) {
    let qubits = psi.len().trailing_zeros() as usize;
    let phase = Complex64::from_polar(1.0, TAU * frac(scale));
    for q in 0..qubits {
        for (index, a) in psi.iter_mut().enumerate() {
            if (index >> q) & 1 == 1 {
                *a *= phase;
            }
        }
    }
}
