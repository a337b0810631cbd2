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

//! Spreads of finite sets and spreading families.
//!
//! `t` is a spread of `s` when some injection `σ: s → ω` with `σ(i) ≥ i`
//! has image `t`. This holds exactly when `|s| = |t|` and the increasing
//! enumerations satisfy `t_i ≥ s_i` position by position, which is what
//! the code checks.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::family::ExplicitFamily;
use crate::finset::FinSet;

/// An injection from `source` onto `target` that never moves a point down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadWitness {
    source: FinSet,
    target: FinSet,
    map: Vec<(u32, u32)>,
}

impl SpreadWitness {
    /// Validates the injection, image and pointwise domination.
    pub fn new(source: FinSet, target: FinSet, map: Vec<(u32, u32)>) -> Result<Self> {
        let domain: FinSet = map.iter().map(|&(a, _)| a).collect();
        let image: FinSet = map.iter().map(|&(_, b)| b).collect();
        let ok = map.len() == source.len()
            && domain == source
            && image == target
            && map.iter().all(|&(a, b)| b >= a);
        if !ok {
            return Err(Error::NotASpread { original: source, target });
        }
        let mut map = map;
        map.sort_unstable();
        Ok(SpreadWitness { source, target, map })
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    /// Pairs `(i, σ(i))` sorted by `i`.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.map
    }

    pub fn apply(&self, i: u32) -> Option<u32> {
        self.map.iter().find(|&&(a, _)| a == i).map(|&(_, b)| b)
    }
}

pub fn is_spread_of(s: &FinSet, t: &FinSet) -> bool {
    s.len() == t.len() && s.iter().zip(t.iter()).all(|(a, b)| b >= a)
}

/// The order-preserving witness `σ(s_i) = t_i`, when `t` is a spread of `s`.
pub fn spread_witness(s: &FinSet, t: &FinSet) -> Option<SpreadWitness> {
    if !is_spread_of(s, t) {
        return None;
    }
    Some(SpreadWitness {
        source: s.clone(),
        target: t.clone(),
        map: s.iter().zip(t.iter()).collect(),
    })
}

/// A witness fixing `s ∩ t` pointwise and matching `s ∖ t` to `t ∖ s` in
/// increasing order.
pub fn canonical_spread_witness(s: &FinSet, t: &FinSet) -> Result<SpreadWitness> {
    if !is_spread_of(s, t) {
        return Err(Error::NotASpread {
            original: s.clone(),
            target: t.clone(),
        });
    }
    let common = s.intersection(t);
    let moved_from = s.difference(&common);
    let moved_to = t.difference(&common);
    let mut map: Vec<(u32, u32)> = common.iter().map(|i| (i, i)).collect();
    map.extend(moved_from.iter().zip(moved_to.iter()));
    SpreadWitness::new(s.clone(), t.clone(), map)
}

/// Every spread of `t` inside `[lo, hi)`.
pub fn spreads_within(t: &FinSet, lo: u32, hi: u32) -> Vec<FinSet> {
    let elems = t.elements();
    let k = elems.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(elems: &[u32], k: usize, lo: u32, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<FinSet>) {
        let i = cur.len();
        if i == k {
            out.push(FinSet::from_sorted(cur.clone()).expect("increasing by construction"));
            return;
        }
        let mut start = elems[i].max(lo);
        if let Some(&prev) = cur.last() {
            start = start.max(prev + 1);
        }
        let remaining = (k - i - 1) as u32;
        let mut v = start;
        while v + remaining < hi {
            cur.push(v);
            rec(elems, k, lo, hi, cur, out);
            cur.pop();
            v += 1;
        }
    }
    rec(elems, k, lo, hi, &mut cur, &mut out);
    out
}

/// Mask variant of [`spreads_within`] for sets below 64.
pub(crate) fn spread_masks_within(t: u64, lo: u32, hi: u32) -> Vec<u64> {
    spreads_within(&FinSet::from_mask(t), lo, hi)
        .into_iter()
        .map(|s| s.to_mask().expect("window below 64"))
        .collect()
}

/// Whether every spread (inside the window) of every member lying below
/// `headroom` is again a member.
///
/// Members with an element at or above `headroom` are not used as sources;
/// their spreads may leave the window, so the window cannot vouch for them.
pub fn is_spreading(f: &ExplicitFamily, headroom: u32) -> Result<bool> {
    if headroom > f.window() {
        return Err(Error::HeadroomViolation {
            headroom,
            window: f.window(),
        });
    }
    let limit = if headroom >= 64 {
        u64::MAX
    } else {
        (1u64 << headroom) - 1
    };
    for &m in f.masks() {
        if m & !limit != 0 {
            continue;
        }
        for u in spread_masks_within(m, f.base(), f.window()) {
            if !f.contains_mask(u) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A member and a spread of it inside the window that is missing, if any.
pub fn spreading_violation(f: &ExplicitFamily, headroom: u32) -> Result<Option<(FinSet, FinSet)>> {
    if headroom > f.window() {
        return Err(Error::HeadroomViolation {
            headroom,
            window: f.window(),
        });
    }
    for s in f.members() {
        if s.last().is_some_and(|m| m >= headroom) {
            continue;
        }
        for u in spreads_within(&s, f.base(), f.window()) {
            if !f.contains(&u) {
                return Ok(Some((s, u)));
            }
        }
    }
    Ok(None)
}

/// Smallest superfamily closed under spreads inside the window.
///
/// Uses elementary moves `i → i+1`, which generate the spread relation.
pub fn spreading_closure(f: &ExplicitFamily) -> ExplicitFamily {
    let top = f.window();
    let mut seen: HashSet<u64> = f.masks().iter().copied().collect();
    let mut stack: Vec<u64> = f.masks().to_vec();
    while let Some(m) = stack.pop() {
        let mut rest = m;
        while rest != 0 {
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            let j = i + 1;
            if j < top && m >> j & 1 == 0 {
                let moved = (m & !(1u64 << i)) | (1u64 << j);
                if seen.insert(moved) {
                    stack.push(moved);
                }
            }
        }
    }
    ExplicitFamily::from_masks_unchecked(f.base(), f.window(), seen.into_iter().collect())
}
