// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use thiserror::Error;

use crate::finset::FinSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("window mismatch: {0}")]
    WindowMismatch(String),
    #[error("window {0} exceeds the supported maximum of 64 indices")]
    WindowTooLarge(u32),
    #[error("set {set} lies outside the ground [{base}, {window})")]
    OutOfWindow { set: FinSet, base: u32, window: u32 },
    #[error("{0} is not a member of the family")]
    NotMember(FinSet),
    #[error("family is not hereditary")]
    NotHereditary,
    #[error("{target} is not a spread of {original}")]
    NotASpread { original: FinSet, target: FinSet },
    #[error("headroom {headroom} violates the window {window}")]
    HeadroomViolation { headroom: u32, window: u32 },
    #[error("removing {0} breaks heredity")]
    HeredityBroken(FinSet),
    #[error("unsupported descriptor: {0}")]
    UnsupportedDescriptor(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("automorphism count exceeds the cap of {0}")]
    AutomorphismOverflow(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
