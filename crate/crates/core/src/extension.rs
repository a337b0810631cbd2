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

//! Eventually periodic subsets of ω.
//!
//! Extension sets `{n ∉ s : s ∪ {n} ∈ F}` of every family in the
//! descriptor class have this shape: finitely many exceptional points
//! below a threshold, then a periodic tail. Block families need the
//! period; everything built from Schreier or cubes has period 1.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::finset::FinSet;

/// The periodic part: every `n ≥ threshold` with `n mod modulus` in `residues`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Tail {
    pub threshold: u32,
    pub modulus: u32,
    pub residues: Vec<u32>,
}

impl Tail {
    pub fn contains(&self, n: u32) -> bool {
        n >= self.threshold && self.residues.binary_search(&(n % self.modulus)).is_ok()
    }
}

/// A subset of ω: `exceptional ∪ tail`, with `exceptional` below the
/// tail threshold. Values are always kept in canonical form (smallest
/// period, then smallest threshold), so structural equality is set
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtensionSet {
    exceptional: FinSet,
    tail: Option<Tail>,
}

impl ExtensionSet {
    pub fn empty() -> Self {
        ExtensionSet {
            exceptional: FinSet::empty(),
            tail: None,
        }
    }

    pub fn finite(set: FinSet) -> Self {
        ExtensionSet {
            exceptional: set,
            tail: None,
        }
    }

    /// `{n : n ≥ threshold}`.
    pub fn from_threshold(threshold: u32) -> Self {
        Self::periodic(threshold, 1, &[0], |_| false)
    }

    /// Members below `threshold` come from `below`; from `threshold` on the
    /// set is periodic with the given residues.
    pub fn periodic(threshold: u32, modulus: u32, residues: &[u32], below: impl Fn(u32) -> bool) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let exceptional: FinSet = (0..threshold).filter(|&n| below(n)).collect();
        let mut residues: Vec<u32> = residues.iter().map(|r| r % modulus).collect();
        residues.sort_unstable();
        residues.dedup();
        let tail = if residues.is_empty() {
            None
        } else {
            Some(Tail {
                threshold,
                modulus,
                residues,
            })
        };
        ExtensionSet { exceptional, tail }.normalized()
    }

    pub fn exceptional(&self) -> &FinSet {
        &self.exceptional
    }

    pub fn tail(&self) -> Option<&Tail> {
        self.tail.as_ref()
    }

    pub fn has_tail(&self) -> bool {
        self.tail.is_some()
    }

    pub fn is_infinite(&self) -> bool {
        self.tail.is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.exceptional.is_empty() && self.tail.is_none()
    }

    /// Cardinality when finite.
    pub fn finite_len(&self) -> Option<usize> {
        match self.tail {
            None => Some(self.exceptional.len()),
            Some(_) => None,
        }
    }

    pub fn contains(&self, n: u32) -> bool {
        match &self.tail {
            Some(t) if n >= t.threshold => t.contains(n),
            _ => self.exceptional.contains(n),
        }
    }

    /// Elements below `bound`.
    pub fn elements_below(&self, bound: u32) -> FinSet {
        (0..bound).filter(|&n| self.contains(n)).collect()
    }

    /// The threshold from which the set is periodic (0 for finite sets
    /// beyond their maximum).
    pub fn stable_from(&self) -> u32 {
        match &self.tail {
            Some(t) => t.threshold,
            None => self.exceptional.last().map_or(0, |m| m + 1),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.tail.as_ref().map_or(1, |t| t.modulus)
    }

    fn tail_has_residue(&self, r: u32) -> bool {
        self.tail
            .as_ref()
            .is_some_and(|t| t.residues.binary_search(&(r % t.modulus)).is_ok())
    }

    /// Pointwise combination of two sets by a boolean operator.
    pub fn combine(&self, other: &ExtensionSet, op: impl Fn(bool, bool) -> bool) -> ExtensionSet {
        let threshold = self.stable_from().max(other.stable_from());
        let modulus = self.modulus().lcm(&other.modulus());
        let residues: Vec<u32> = (0..modulus)
            .filter(|&r| op(self.tail_has_residue(r), other.tail_has_residue(r)))
            .collect();
        ExtensionSet::periodic(threshold, modulus, &residues, |n| {
            op(self.contains(n), other.contains(n))
        })
    }

    pub fn union(&self, other: &ExtensionSet) -> ExtensionSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &ExtensionSet) -> ExtensionSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &ExtensionSet) -> ExtensionSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> ExtensionSet {
        self.combine(&ExtensionSet::empty(), |a, _| !a)
    }

    /// Image under a map that is the identity from `fixed_from` on and a
    /// bijection of `[0, fixed_from)`; `preimage` is its inverse.
    pub fn map_finitely_supported(&self, fixed_from: u32, preimage: impl Fn(u32) -> u32) -> ExtensionSet {
        let threshold = self.stable_from().max(fixed_from);
        let residues: Vec<u32> = self
            .tail
            .as_ref()
            .map(|t| t.residues.clone())
            .unwrap_or_default();
        ExtensionSet::periodic(threshold, self.modulus(), &residues, |n| {
            self.contains(preimage(n))
        })
    }

    /// Least element `≥ from` in residue class `residue mod modulus`,
    /// provided that class lies in the tail.
    pub fn first_in_class(&self, from: u32, modulus: u32, residue: u32) -> Option<u32> {
        let t = self.tail.as_ref()?;
        if !modulus.is_multiple_of(t.modulus) {
            return None;
        }
        let start = t.threshold.max(from);
        let n = start + (residue % modulus + modulus - start % modulus) % modulus;
        t.contains(n).then_some(n)
    }

    fn normalized(mut self) -> Self {
        let Some(mut tail) = self.tail.take() else {
            return self;
        };
        // smallest period
        let m = tail.modulus;
        for d in (1..=m).filter(|d| m % d == 0) {
            let fits = (0..m).all(|r| {
                tail.residues.binary_search(&r).is_ok() == tail.residues.binary_search(&(r % d)).is_ok()
            });
            if fits {
                tail.residues = tail.residues.iter().copied().filter(|&r| r < d).collect();
                tail.modulus = d;
                break;
            }
        }
        // smallest threshold
        while tail.threshold > 0 {
            let prev = tail.threshold - 1;
            let predicted = tail.residues.binary_search(&(prev % tail.modulus)).is_ok();
            if predicted == self.exceptional.contains(prev) {
                tail.threshold = prev;
            } else {
                break;
            }
        }
        self.exceptional = self
            .exceptional
            .iter()
            .filter(|&n| n < tail.threshold)
            .collect();
        self.tail = Some(tail);
        self
    }
}

impl fmt::Display for ExtensionSet {
    /// `{1} + [3..)`, `[4..) mod 2 in {1}`, `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(t) = &self.tail else {
            return write!(f, "{}", self.exceptional);
        };
        if !self.exceptional.is_empty() {
            write!(f, "{} + ", self.exceptional)?;
        }
        write!(f, "[{}..)", t.threshold)?;
        if t.modulus > 1 {
            write!(f, " mod {} in {}", t.modulus, FinSet::new(t.residues.iter().copied()))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExtensionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
