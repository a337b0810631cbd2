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

//! Ordinals below ω·ω.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The ordinal `ω·limit + finite`.
///
/// Field order gives the lexicographic comparison on `(limit, finite)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct OrdinalW2 {
    pub limit: u32,
    pub finite: u32,
}

impl OrdinalW2 {
    pub const ZERO: OrdinalW2 = OrdinalW2 { limit: 0, finite: 0 };
    pub const OMEGA: OrdinalW2 = OrdinalW2 { limit: 1, finite: 0 };

    pub const fn new(limit: u32, finite: u32) -> Self {
        OrdinalW2 { limit, finite }
    }

    pub const fn finite(n: u32) -> Self {
        OrdinalW2 { limit: 0, finite: n }
    }

    pub const fn omega_times(q: u32) -> Self {
        OrdinalW2 { limit: q, finite: 0 }
    }

    pub fn is_finite(&self) -> bool {
        self.limit == 0
    }

    pub fn is_limit(&self) -> bool {
        self.limit > 0 && self.finite == 0
    }

    pub fn succ(self) -> Self {
        OrdinalW2 {
            finite: self.finite + 1,
            ..self
        }
    }

    /// Left subtraction by a natural: the `β` with `k + β = self`, or zero
    /// when `self < k`.
    pub fn minus_finite(self, k: u32) -> Self {
        if self.limit > 0 {
            self
        } else {
            OrdinalW2::finite(self.finite.saturating_sub(k))
        }
    }
}

impl fmt::Display for OrdinalW2 {
    /// `w` stands for ω: `3`, `w`, `w+2`, `w*2`, `w*2+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.limit, self.finite) {
            (0, r) => write!(f, "{r}"),
            (1, 0) => write!(f, "w"),
            (1, r) => write!(f, "w+{r}"),
            (q, 0) => write!(f, "w*{q}"),
            (q, r) => write!(f, "w*{q}+{r}"),
        }
    }
}

impl fmt::Debug for OrdinalW2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for OrdinalW2 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || format!("not an ordinal below w*w: {s}");
        let (head, finite) = match s.split_once('+') {
            Some((h, r)) => (h, r.parse::<u32>().map_err(|_| bad())?),
            None if s.starts_with('w') => (s, 0),
            None => return s.parse::<u32>().map(OrdinalW2::finite).map_err(|_| bad()),
        };
        let limit = match head {
            "w" => 1,
            _ => head
                .strip_prefix("w*")
                .and_then(|q| q.parse::<u32>().ok())
                .ok_or_else(bad)?,
        };
        Ok(OrdinalW2 { limit, finite })
    }
}

/// Outcome of a budgeted rank computation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum RankValue {
    Exact(OrdinalW2),
    /// The rank exceeds the budget and is at least this value.
    AtLeast(OrdinalW2),
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankValue::Exact(o) => write!(f, "{o}"),
            RankValue::AtLeast(o) => write!(f, ">= {o}"),
        }
    }
}
