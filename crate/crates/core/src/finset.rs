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

//! Finite sets of natural indices.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A finite subset of ω stored as a strictly increasing sequence.
///
/// The total order is the canonical one used everywhere in the crate:
/// first by size, then lexicographically on the increasing enumeration.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinSet(Vec<u32>);

impl FinSet {
    pub fn empty() -> Self {
        FinSet(Vec::new())
    }

    pub fn singleton(n: u32) -> Self {
        FinSet(vec![n])
    }

    /// Builds a set from arbitrary elements, sorting and deduplicating.
    pub fn new(elements: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        FinSet(v)
    }

    /// Returns `None` unless `elements` is strictly increasing.
    pub fn from_sorted(elements: Vec<u32>) -> Option<Self> {
        if elements.windows(2).all(|w| w[0] < w[1]) {
            Some(FinSet(elements))
        } else {
            None
        }
    }

    /// All `i` in `[lo, hi)`.
    pub fn range(lo: u32, hi: u32) -> Self {
        FinSet((lo..hi).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut v = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros();
            v.push(i);
            m &= m - 1;
        }
        FinSet(v)
    }

    /// Bitmask form; `None` when an element is 64 or larger.
    pub fn to_mask(&self) -> Option<u64> {
        let mut mask = 0u64;
        for &e in &self.0 {
            if e >= 64 {
                return None;
            }
            mask |= 1 << e;
        }
        Some(mask)
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn contains(&self, n: u32) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn is_subset(&self, other: &FinSet) -> bool {
        self.0.iter().all(|&e| other.contains(e))
    }

    pub fn is_disjoint(&self, other: &FinSet) -> bool {
        self.0.iter().all(|&e| !other.contains(e))
    }

    /// `self ∪ {n}`.
    pub fn with(&self, n: u32) -> FinSet {
        match self.0.binary_search(&n) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, n);
                FinSet(v)
            }
        }
    }

    /// `self ∖ {n}`.
    pub fn without(&self, n: u32) -> FinSet {
        FinSet(self.0.iter().copied().filter(|&e| e != n).collect())
    }

    pub fn union(&self, other: &FinSet) -> FinSet {
        FinSet::new(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &FinSet) -> FinSet {
        FinSet(self.iter().filter(|&e| other.contains(e)).collect())
    }

    pub fn difference(&self, other: &FinSet) -> FinSet {
        FinSet(self.iter().filter(|&e| !other.contains(e)).collect())
    }

    /// Image under an arbitrary map.
    pub fn map(&self, f: impl Fn(u32) -> u32) -> FinSet {
        FinSet::new(self.iter().map(f))
    }

    /// All subsets, in no particular order.
    pub fn subsets(&self) -> Vec<FinSet> {
        let n = self.0.len();
        (0u64..(1u64 << n))
            .map(|bits| {
                FinSet(
                    (0..n)
                        .filter(|i| bits >> i & 1 == 1)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    /// Parses `{2 3}`, `{}` or `-` (the empty set).
    pub fn parse_literal(text: &str) -> Option<FinSet> {
        let t = text.trim();
        if t == "-" {
            return Some(FinSet::empty());
        }
        let inner = t.strip_prefix('{')?.strip_suffix('}')?;
        let parsed: Result<Vec<u32>, _> = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
            .map(str::parse)
            .collect();
        Some(FinSet::new(parsed.ok()?))
    }
}

impl Ord for FinSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for FinSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<u32> for FinSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        FinSet::new(iter)
    }
}

impl<const N: usize> From<[u32; N]> for FinSet {
    fn from(a: [u32; N]) -> Self {
        FinSet::new(a)
    }
}

/// Canonical comparison of two bitmask-encoded sets (size, then lexicographic).
pub(crate) fn mask_cmp(a: u64, b: u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        // Same size: the first differing element decides.
        let diff = a ^ b;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff.trailing_zeros();
        if a >> low & 1 == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}
