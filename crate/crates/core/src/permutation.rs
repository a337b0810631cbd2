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

//! Finitely supported permutations of ω.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finset::FinSet;

/// A bijection of `[0, window)` extended by the identity beyond the window.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    table: Vec<u32>,
}

impl Permutation {
    pub fn identity(window: u32) -> Self {
        Permutation {
            table: (0..window).collect(),
        }
    }

    pub fn from_table(table: Vec<u32>) -> Result<Self> {
        let n = table.len();
        let mut seen = vec![false; n];
        for &t in &table {
            let t = t as usize;
            if t >= n || seen[t] {
                return Err(Error::InvalidPermutation(format!(
                    "{table:?} is not a bijection of [0, {n})"
                )));
            }
            seen[t] = true;
        }
        Ok(Permutation { table })
    }

    /// Builds a permutation from `source > target` pairs; unlisted points are fixed.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let window = pairs
            .iter()
            .map(|&(a, b)| a.max(b) + 1)
            .max()
            .unwrap_or(0);
        let mut table: Vec<u32> = (0..window).collect();
        let mut assigned = vec![false; window as usize];
        for &(a, b) in pairs {
            if assigned[a as usize] {
                return Err(Error::InvalidPermutation(format!("{a} mapped twice")));
            }
            assigned[a as usize] = true;
            table[a as usize] = b;
        }
        Self::from_table(table)
    }

    /// The transposition of `a` and `b`.
    pub fn swap(a: u32, b: u32) -> Self {
        let window = a.max(b) + 1;
        let mut table: Vec<u32> = (0..window).collect();
        table.swap(a as usize, b as usize);
        Permutation { table }
    }

    pub fn window(&self) -> u32 {
        self.table.len() as u32
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.table.get(i as usize).copied().unwrap_or(i)
    }

    pub fn image(&self, s: &FinSet) -> FinSet {
        s.map(|i| self.apply(i))
    }

    pub fn image_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros();
            out |= 1 << self.apply(i);
            m &= m - 1;
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.table.len()];
        for (i, &t) in self.table.iter().enumerate() {
            inv[t as usize] = i as u32;
        }
        Permutation { table: inv }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Self {
        let w = self.window().max(other.window());
        Permutation {
            table: (0..w).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    /// Same permutation with its table padded to `window`.
    pub fn extended(&self, window: u32) -> Self {
        let w = self.window().max(window);
        Permutation {
            table: (0..w).map(|i| self.apply(i)).collect(),
        }
    }

    /// Drops trailing fixed points from the table.
    pub fn trimmed(&self) -> Self {
        let mut table = self.table.clone();
        while let Some(&last) = table.last() {
            if last as usize == table.len() - 1 {
                table.pop();
            } else {
                break;
            }
        }
        Permutation { table }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &t)| i as u32 == t)
    }

    /// Points not fixed by the permutation.
    pub fn support(&self) -> FinSet {
        self.table
            .iter()
            .enumerate()
            .filter(|&(i, &t)| i as u32 != t)
            .map(|(i, _)| i as u32)
            .collect()
    }

    /// Parses `[1>3 2>1 3>2]`.
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidPermutation(format!("expected [a>b ...], got {text}")))?;
        let mut pairs = Vec::new();
        for word in inner.split_whitespace() {
            let (a, b) = word
                .split_once('>')
                .ok_or_else(|| Error::InvalidPermutation(format!("bad pair {word}")))?;
            let a: u32 = a
                .parse()
                .map_err(|_| Error::InvalidPermutation(format!("bad index {a}")))?;
            let b: u32 = b
                .parse()
                .map_err(|_| Error::InvalidPermutation(format!("bad index {b}")))?;
            pairs.push((a, b));
        }
        Self::from_pairs(&pairs)
    }
}

impl fmt::Display for Permutation {
    /// Moved points only, e.g. `[1>3 2>1 3>2]`; the identity prints as `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        let mut first = true;
        for (i, &t) in self.table.iter().enumerate() {
            if i as u32 != t {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{i}>{t}")?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
