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

use thiserror::Error;

/// Errors raised by the simulator, the operator algebra and the filtering circuits.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TqsfError {
    /// Caller supplied arguments that violate an operation's preconditions.
    #[error("invalid input: {0}")]
    Input(String),

    /// The requested simulation does not fit the dense capacity limits.
    #[error("capacity exceeded: {what} needs {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    /// A measured register integer does not correspond to any attainable eigenvalue.
    #[error("decode error: {0}")]
    Decode(String),

    /// Register sizing cannot resolve the operator spectrum (phase aliasing or
    /// phases that are not exact binary fractions).
    #[error("configuration error: {0}")]
    Configuration(String),

    /// Numerical breakdown that should be impossible for valid input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, TqsfError>;

pub(crate) fn input_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(TqsfError::Input(msg.into()))
}
