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


//! Exclusion sets, strata and level reconstruction for spreading families.
//!
//! For a member `s`, `I_s = {i : {i} ∪ s ∉ F}`. In a hereditary spreading
//! family `I_s` is an initial segment of the complement of `s`, spreads
//! never enlarge it, and level `n + 1` is recovered from level `n` and the
//! sizes `|I_s|` alone. On explicit families every set here is taken
//! inside the window.

use serde::{Deserialize, Serialize};

use super::signature::bits;
use crate::error::{Error, Result};
use crate::extension::ExtensionSet;
use crate::family::ExplicitFamily;
use crate::finset::FinSet;
use crate::lazy::LazyFamily;
use crate::spreading::is_spread_of;

/// `I_s` inside the window of an explicit family.
pub fn i_set(f: &ExplicitFamily, s: &FinSet) -> Result<FinSet> {
    if !f.contains(s) {
        return Err(Error::NotMember(s.clone()));
    }
    let m = s.to_mask().expect("members lie in the window");
    Ok(FinSet::from_mask(i_mask(f, m)))
}

pub(crate) fn i_mask(f: &ExplicitFamily, m: u64) -> u64 {
    let free = f.ground() & !m;
    bits(free)
        .filter(|&i| !f.contains_mask(m | 1u64 << i))
        .fold(0, |acc, i| acc | 1u64 << i)
}

/// `I_s` of a lazy family within its ground `[base, ∞)`; finite or cofinite.
pub fn i_set_lazy(l: &LazyFamily, s: &FinSet) -> Result<ExtensionSet> {
    let ext = l.extension_set(s)?;
    let outside = ExtensionSet::finite(s.union(&FinSet::range(0, l.base())));
    Ok(ext.complement().difference(&outside))
}

/// Members of size `n` with `|I_s| ≤ k`.
pub fn stratum(f: &ExplicitFamily, n: usize, k: usize) -> ExplicitFamily {
    f.filter(|m| m.count_ones() as usize == n && i_mask(f, m).count_ones() as usize <= k)
}

/// Both steps of the comparison `|I_t| ≤ |I_s|` for a spread `t` of `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub source: FinSet,
    pub target: FinSet,
    pub source_size: usize,
    pub target_size: usize,
    /// `I_t ∖ s ⊆ I_s ∖ t`.
    pub outside_inclusion: bool,
    /// `|I_t ∩ s| ≤ |I_s ∩ t|`.
    pub inside_bound: bool,
}

impl ClaimReport {
    pub fn holds(&self) -> bool {
        self.target_size <= self.source_size && self.outside_inclusion && self.inside_bound
    }
}

/// Compares `I_s` and `I_t` for members `s, t` of equal size with `t` a
/// spread of `s`.
pub fn claim_check(f: &ExplicitFamily, s: &FinSet, t: &FinSet) -> Result<ClaimReport> {
    for u in [s, t] {
        if !f.contains(u) {
            return Err(Error::NotMember(u.clone()));
        }
    }
    if !is_spread_of(s, t) {
        return Err(Error::NotASpread {
            original: s.clone(),
            target: t.clone(),
        });
    }
    let (ms, mt) = (s.to_mask().unwrap(), t.to_mask().unwrap());
    Ok(claim_masks(ms, mt, i_mask(f, ms), i_mask(f, mt)))
}

fn claim_masks(ms: u64, mt: u64, is: u64, it: u64) -> ClaimReport {
    ClaimReport {
        source: FinSet::from_mask(ms),
        target: FinSet::from_mask(mt),
        source_size: is.count_ones() as usize,
        target_size: it.count_ones() as usize,
        outside_inclusion: (it & !ms) & !(is & !mt) == 0,
        inside_bound: (it & ms).count_ones() <= (is & mt).count_ones(),
    }
}

/// Outcome of checking every spread pair of equal-size members.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimScan {
    pub pairs: usize,
    pub violations: Vec<ClaimReport>,
}

pub fn claim_scan(f: &ExplicitFamily) -> ClaimScan {
    let mut scan = ClaimScan::default();
    let top = f.max_member_size();
    for n in 0..=top {
        let level: Vec<(u64, u64, Vec<u32>)> = f
            .level(n)
            .map(|m| (m, i_mask(f, m), bits(m).collect()))
            .collect();
        for (ms, is, es) in &level {
            for (mt, it, et) in &level {
                if ms == mt || !es.iter().zip(et).all(|(a, b)| b >= a) {
                    continue;
                }
                scan.pairs += 1;
                let report = claim_masks(*ms, *mt, *is, *it);
                if !report.holds() {
                    scan.violations.push(report);
                }
            }
        }
    }
    scan
}

/// `{τ_k(X)}`: the `k` least elements of `X`.
fn initial_segment(x: u64, k: usize) -> u64 {
    bits(x).take(k).fold(0, |acc, i| acc | 1u64 << i)
}

/// Level `n + 1` rebuilt from the strata of level `n`: for `s` with
/// `|I_s| = k`, the sets `{i} ∪ s` with `i` outside `s` and outside the
/// `k` least points of the window not in `s`.
pub fn reconstruct_level(f: &ExplicitFamily, n: usize) -> ExplicitFamily {
    let ground = f.ground();
    let span = ground.count_ones() as usize;
    let mut masks = Vec::new();
    let mut below = ExplicitFamily::from_masks_unchecked(f.base(), f.window(), Vec::new());
    for k in 0..=span {
        let layer = stratum(f, n, k);
        for &m in layer.masks() {
            if below.contains_mask(m) {
                continue;
            }
            let rest = ground & !m;
            let allowed = rest & !initial_segment(rest, k);
            masks.extend(bits(allowed).map(|i| m | 1u64 << i));
        }
        below = layer;
    }
    ExplicitFamily::from_masks_unchecked(f.base(), f.window(), masks)
}

/// Levels `n` at which reconstruction differs from the family.
pub fn reconstruction_failures(f: &ExplicitFamily) -> Vec<usize> {
    (0..=f.max_member_size())
        .filter(|&n| {
            let expected = f.filter(|m| m.count_ones() as usize == n + 1);
            reconstruct_level(f, n) != expected
        })
        .collect()
}
