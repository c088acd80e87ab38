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

use serde::Serialize;

use crate::error::{Result, TqsfError};
use crate::spin::labels::half;

/// Sequence of prefix spins 2·S_[1], …, 2·S_[n] obtained by coupling one qubit at a time.
///
/// Step bits use 1 for a spin increase, with the leftmost bit describing the second qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PathLabel {
    two_s_sequence: Vec<u32>,
}

impl PathLabel {
    pub fn from_two_s_sequence(two_s_sequence: Vec<u32>) -> Result<Self> {
        if two_s_sequence.first() != Some(&1) {
            return Err(TqsfError::Decode(format!(
                "path {two_s_sequence:?} must start at 2S = 1"
            )));
        }
        if two_s_sequence.windows(2).any(|w| w[0].abs_diff(w[1]) != 1) {
            return Err(TqsfError::Decode(format!(
                "path {two_s_sequence:?} has a step that is not ±1/2"
            )));
        }
        Ok(Self { two_s_sequence })
    }

    /// Builds the path from step bits (`true` = increase). A step down from S = 0 is rejected.
    pub fn from_step_bits(bits: &[bool]) -> Result<Self> {
        let mut seq = vec![1u32];
        for &up in bits {
            let last = *seq.last().unwrap_or(&1);
            if up {
                seq.push(last + 1);
            } else if last == 0 {
                return Err(TqsfError::Decode("path steps below zero total spin".into()));
            } else {
                seq.push(last - 1);
            }
        }
        Ok(Self {
            two_s_sequence: seq,
        })
    }

    pub fn two_s_sequence(&self) -> &[u32] {
        &self.two_s_sequence
    }

    pub fn num_qubits(&self) -> usize {
        self.two_s_sequence.len()
    }

    pub fn final_two_s(&self) -> u32 {
        *self.two_s_sequence.last().unwrap_or(&1)
    }

    pub fn step_bits(&self) -> Vec<bool> {
        self.two_s_sequence
            .windows(2)
            .map(|w| w[1] > w[0])
            .collect()
    }

    /// Step bits as text, 1 = increase, leftmost = second qubit (e.g. "110").
    pub fn bit_string(&self) -> String {
        self.step_bits()
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// Alternate rendering: 0 = increase, read right to left (rightmost = second qubit).
    pub fn right_to_left_string(&self) -> String {
        self.step_bits()
            .iter()
            .rev()
            .map(|&b| if b { '0' } else { '1' })
            .collect()
    }
}

impl fmt::Display for PathLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (S={})",
            self.bit_string(),
            half(i64::from(self.final_two_s()))
        )
    }
}
