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

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result, TqsfError};

/// (S, M) stored as the integers 2S and 2M.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinLabel {
    pub two_s: u32,
    pub two_m: i32,
}

impl SpinLabel {
    pub fn new(two_s: u32, two_m: i32, n: usize) -> Result<Self> {
        let label = Self { two_s, two_m };
        if !label.is_valid_for(n) {
            return input_err(format!("{label} is not a valid spin label for {n} qubits"));
        }
        Ok(label)
    }

    pub fn is_valid_for(&self, n: usize) -> bool {
        self.two_s as usize <= n
            && (n - self.two_s as usize).is_multiple_of(2)
            && self.two_m.unsigned_abs() <= self.two_s
            && (self.two_s as i64 - self.two_m as i64) % 2 == 0
    }

    pub fn s(&self) -> f64 {
        f64::from(self.two_s) / 2.0
    }

    pub fn m(&self) -> f64 {
        f64::from(self.two_m) / 2.0
    }

    /// S(S+1)
    pub fn spin_squared(&self) -> f64 {
        spin_squared_eigenvalue(self.two_s)
    }

    /// Number of qubits in |1⟩ for this M on `n` qubits.
    pub fn hamming_weight(&self, n: usize) -> usize {
        ((n as i64 - self.two_m as i64) / 2) as usize
    }

    /// Every valid label on `n` qubits, S descending then M descending.
    pub fn all(n: usize) -> Vec<SpinLabel> {
        let mut labels = Vec::new();
        for two_s in (n % 2..=n).rev().filter(|t| (n - t).is_multiple_of(2)) {
            for two_m in (-(two_s as i32)..=two_s as i32).rev().step_by(2) {
                labels.push(SpinLabel {
                    two_s: two_s as u32,
                    two_m,
                });
            }
        }
        labels
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S={}, M={}",
            half(i64::from(self.two_s)),
            half(i64::from(self.two_m))
        )
    }
}

/// Formats `twice / 2` as an integer or a `k/2` fraction.
pub fn half(twice: i64) -> String {
    if twice % 2 == 0 {
        format!("{}", twice / 2)
    } else {
        format!("{twice}/2")
    }
}

pub fn spin_squared_eigenvalue(two_s: u32) -> f64 {
    let s = f64::from(two_s) / 2.0;
    s * (s + 1.0)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the (S, M) eigenspace for any allowed M: C(n, n/2−S) − C(n, n/2−S−1).
pub fn degeneracy(n: usize, two_s: u32) -> Result<u64> {
    if two_s as usize > n || !(n - two_s as usize).is_multiple_of(2) {
        return input_err(format!("2S = {two_s} is not attainable on {n} qubits"));
    }
    let k = ((n - two_s as usize) / 2) as u64;
    let n = n as u64;
    Ok(binomial(n, k) - if k == 0 { 0 } else { binomial(n, k - 1) })
}

/// Which phase-estimation register is being sized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AncillaKind {
    /// N₁ with eigenvalues 0..=n.
    Number,
    /// S² on an even count, read as S(S+1)/2.
    SpinEven,
    /// S² on an odd count, read as (S−1/2)(S+3/2).
    SpinOdd,
    /// H_[j] + 1 with eigenvalues 0..=j.
    Coupling,
}

/// Largest register integer the kind produces for argument `n` (or `j`).
pub fn max_phase_integer(kind: AncillaKind, n: usize) -> u64 {
    let n = n as u64;
    match kind {
        AncillaKind::Number | AncillaKind::Coupling => n,
        AncillaKind::SpinEven => {
            let k = n / 2;
            k * (k + 1) / 2
        }
        AncillaKind::SpinOdd => {
            let k = n / 2;
            k * (k + 2)
        }
    }
}

fn bits_exceeding(max: u64) -> usize {
    let mut r = 1;
    while (1u64 << r) <= max {
        r += 1;
    }
    r
}

/// Smallest register size for which every eigenvalue lands on a distinct exact binary fraction.
///
/// For [`AncillaKind::Coupling`] this is ⌈log2(j+1)⌉, one bit more than the looser
/// `n_[j] > log2(j−1)` bound at some sizes; see [`loose_coupling_register_size`].
pub fn min_ancillas(kind: AncillaKind, n: usize) -> usize {
    bits_exceeding(max_phase_integer(kind, n))
}

/// Register size for an S² phase register on `n` qubits, choosing the parity form.
pub fn spin_register_size(n: usize) -> usize {
    min_ancillas(spin_kind(n), n)
}

pub fn spin_kind(n: usize) -> AncillaKind {
    if n.is_multiple_of(2) {
        AncillaKind::SpinEven
    } else {
        AncillaKind::SpinOdd
    }
}

/// Smallest `r` with `r > log2(j − 1)`. Too small to separate h = −1 from h = 2^r − 1 when
/// `j + 1 > 2^r`; kept so callers can demonstrate the collision.
pub fn loose_coupling_register_size(j: usize) -> usize {
    bits_exceeding(j.saturating_sub(1) as u64)
}

/// Parity form of an S² phase register.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Inverts the S² phase map: `m = S(S+1)/2` (even) or `m = (S−1/2)(S+3/2)` (odd).
/// Returns 2S, which must not exceed `n`.
pub fn decode_s(m: u64, n: usize, parity: Parity) -> Result<u32> {
    let mut step = 0u64;
    loop {
        let (value, two_s) = match parity {
            Parity::Even => (step * (step + 1) / 2, 2 * step),
            Parity::Odd => (step * (step + 2), 2 * step + 1),
        };
        if value == m {
            if two_s as usize > n {
                return Err(TqsfError::Decode(format!(
                    "register value {m} means 2S = {two_s}, above {n} qubits"
                )));
            }
            return Ok(two_s as u32);
        }
        if value > m {
            return Err(TqsfError::Decode(format!(
                "register value {m} is not an attainable {parity:?} spin phase"
            )));
        }
        step += 1;
    }
}
