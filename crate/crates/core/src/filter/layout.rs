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

use serde::Serialize;

use super::FilterMethod;
use crate::error::{input_err, Result, TqsfError};
use crate::spin::{min_ancillas, spin_register_size, AncillaKind};
use crate::statevector::MAX_QUBITS;

/// A named block of ancilla qubits. `qubits[0]` holds the least significant bit of its integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Register {
    pub name: String,
    pub qubits: Vec<usize>,
}

impl Register {
    pub fn size(&self) -> usize {
        self.qubits.len()
    }
}

/// System qubits occupy `0..n`; ancilla registers follow in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegisterLayout {
    pub system: Vec<usize>,
    pub registers: Vec<Register>,
}

impl RegisterLayout {
    fn with_system(n: usize) -> Self {
        Self {
            system: (0..n).collect(),
            registers: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, size: usize) {
        let start = self.total_qubits();
        self.registers.push(Register {
            name: name.into(),
            qubits: (start..start + size).collect(),
        });
    }

    /// Layout for `method` on `n` system qubits with registers sized by [`min_ancillas`].
    pub fn for_method(method: FilterMethod, n: usize) -> Result<Self> {
        Self::sized(method, n, |j| min_ancillas(AncillaKind::Coupling, j))
    }

    /// Same as [`Self::for_method`] but with a caller-chosen size for the H_[j] registers.
    pub fn sized(
        method: FilterMethod,
        n: usize,
        coupling_size: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        if n == 0 {
            return input_err("at least one system qubit is required");
        }
        if n < 2 && method != FilterMethod::A {
            return input_err(format!("method {method} needs at least two system qubits"));
        }
        let mut layout = Self::with_system(n);
        match method {
            FilterMethod::A => {
                layout.push("z", min_ancillas(AncillaKind::Number, n));
                layout.push("S", spin_register_size(n));
            }
            FilterMethod::BS2j | FilterMethod::BHj => {
                layout.push("z", min_ancillas(AncillaKind::Number, n));
                for j in 2..=n {
                    let size = if method == FilterMethod::BS2j {
                        spin_register_size(j)
                    } else {
                        coupling_size(j)
                    };
                    layout.push(format!("path[{j}]"), size);
                }
            }
            FilterMethod::C => layout.push("hadamard", 1),
            FilterMethod::CDeferred => {
                for j in 2..=n {
                    layout.push(format!("step[{j}]"), 1);
                }
            }
        }
        let total = layout.total_qubits();
        if total > MAX_QUBITS {
            return Err(TqsfError::Capacity {
                what: "circuit qubits",
                requested: total,
                limit: MAX_QUBITS,
            });
        }
        Ok(layout)
    }

    pub fn num_system(&self) -> usize {
        self.system.len()
    }

    pub fn total_qubits(&self) -> usize {
        self.system.len() + self.registers.iter().map(Register::size).sum::<usize>()
    }

    pub fn num_ancillas(&self) -> usize {
        self.total_qubits() - self.system.len()
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    /// Ancilla qubits ordered so that a most-significant-first rendering prints the registers in
    /// declaration order, each most significant bit first.
    pub fn rendering_order(&self) -> Vec<usize> {
        self.registers
            .iter()
            .rev()
            .flat_map(|r| r.qubits.iter().copied())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_a_four_qubits() {
        let l = RegisterLayout::for_method(FilterMethod::A, 4).unwrap();
        assert_eq!(l.register("z").unwrap().size(), 3);
        assert_eq!(l.register("S").unwrap().size(), 2);
        assert_eq!(l.register("z").unwrap().qubits, vec![4, 5, 6]);
        assert_eq!(l.total_qubits(), 9);
        assert_eq!(l.rendering_order(), vec![7, 8, 4, 5, 6]);
    }

    #[test]
    fn method_b_sizes() {
        let s2j = RegisterLayout::for_method(FilterMethod::BS2j, 4).unwrap();
        let sizes: Vec<usize> = s2j.registers.iter().map(Register::size).collect();
        assert_eq!(sizes, vec![3, 1, 2, 2]);
        assert_eq!(s2j.total_qubits(), 12);
        let hj = RegisterLayout::for_method(FilterMethod::BHj, 4).unwrap();
        let sizes: Vec<usize> = hj.registers.iter().map(Register::size).collect();
        assert_eq!(sizes, vec![3, 2, 2, 3]);
    }

    #[test]
    fn capacity_and_input_errors() {
        assert!(matches!(
            RegisterLayout::for_method(FilterMethod::BS2j, 9),
            Err(TqsfError::Capacity { .. })
        ));
        assert!(RegisterLayout::for_method(FilterMethod::C, 1).is_err());
        assert!(RegisterLayout::for_method(FilterMethod::A, 0).is_err());
    }
}
