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

//! Spin operators, eigenvalue bookkeeping and the exact diagonalization oracle.

pub mod labels;
pub mod operators;
pub mod oracle;

pub use labels::{
    decode_s, degeneracy, loose_coupling_register_size, min_ancillas, spin_kind,
    spin_register_size, AncillaKind, Parity, SpinLabel,
};
pub use operators::{
    coupling_sum, number_operator, prefix_spin_squared, step_operator, total_spin_squared,
    NumberOperator, SpinOperator, Transposition, TranspositionSum,
};
pub use oracle::{eigen_oracle, project_sm, ProjectorSet, SpinProjector, ORACLE_MAX_QUBITS};
