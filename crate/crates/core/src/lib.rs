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


//! Compact hereditary families of finite sets.
//!
//! Explicit families over a finite window, lazily evaluated infinite
//! families given by descriptors, the combinatorial norms they induce,
//! Cantor-Bendixson ranks, spreads, and permutation isomorphism search.

pub mod constructions;
pub mod error;
pub mod extension;
pub mod family;
pub mod lazy;
mod lp;
pub mod norm;
pub mod finset;
pub mod iso;
pub mod ordinal;
pub mod permutation;
pub mod spreading;
pub mod text;

pub use error::{Error, Result};
pub use extension::ExtensionSet;
pub use family::ExplicitFamily;
pub use lazy::LazyFamily;
pub use finset::FinSet;
pub use ordinal::{OrdinalW2, RankValue};
pub use permutation::Permutation;
