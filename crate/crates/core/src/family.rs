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

//! Finite families of finite sets living inside a window `[base, window)`.
//!
//! Members are stored as 64-bit masks, so windows are limited to 64
//! indices. The member list is kept in canonical order (size, then
//! lexicographic) and mirrored in a hash index for lookups.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{mask_cmp, FinSet};
use crate::permutation::Permutation;

pub const MAX_WINDOW: u32 = 64;

#[derive(Clone)]
pub struct ExplicitFamily {
    base: u32,
    window: u32,
    members: Vec<u64>,
    index: HashSet<u64>,
}

impl PartialEq for ExplicitFamily {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.window == other.window && self.members == other.members
    }
}

impl Eq for ExplicitFamily {}

impl std::hash::Hash for ExplicitFamily {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.base.hash(state);
        self.window.hash(state);
        self.members.hash(state);
    }
}

fn ground_mask(base: u32, window: u32) -> u64 {
    let upper = if window >= 64 {
        u64::MAX
    } else {
        (1u64 << window) - 1
    };
    let lower = if base >= 64 { u64::MAX } else { (1u64 << base) - 1 };
    upper & !lower
}

impl ExplicitFamily {
    pub fn new(base: u32, window: u32, members: impl IntoIterator<Item = FinSet>) -> Result<Self> {
        check_window(window)?;
        let ground = ground_mask(base, window);
        let mut masks = Vec::new();
        for s in members {
            match s.to_mask() {
                Some(m) if m & !ground == 0 => masks.push(m),
                _ => {
                    return Err(Error::OutOfWindow {
                        set: s,
                        base,
                        window,
                    })
                }
            }
        }
        Ok(Self::from_masks_unchecked(base, window, masks))
    }

    /// Builds a family from bitmasks; masks must already lie in the ground.
    pub fn from_masks(base: u32, window: u32, masks: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_window(window)?;
        let ground = ground_mask(base, window);
        let masks: Vec<u64> = masks.into_iter().collect();
        if let Some(&bad) = masks.iter().find(|&&m| m & !ground != 0) {
            return Err(Error::OutOfWindow {
                set: FinSet::from_mask(bad),
                base,
                window,
            });
        }
        Ok(Self::from_masks_unchecked(base, window, masks))
    }

    pub(crate) fn from_masks_unchecked(base: u32, window: u32, masks: Vec<u64>) -> Self {
        let index: HashSet<u64> = masks.into_iter().collect();
        let mut members: Vec<u64> = index.iter().copied().collect();
        members.sort_unstable_by(|&a, &b| mask_cmp(a, b));
        ExplicitFamily {
            base,
            window,
            members,
            index,
        }
    }

    /// The empty family on a window.
    pub fn empty(base: u32, window: u32) -> Result<Self> {
        Self::from_masks(base, window, [])
    }

    /// All subsets of `[base, window)` with at most `k` elements.
    pub fn cube(base: u32, window: u32, k: usize) -> Result<Self> {
        check_window(window)?;
        let ground = ground_mask(base, window);
        let mut masks = Vec::new();
        let mut sub = ground;
        loop {
            if sub.count_ones() as usize <= k {
                masks.push(sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & ground;
        }
        Self::from_masks(base, window, masks)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    /// The ground `[base, window)` as a mask.
    pub fn ground(&self) -> u64 {
        ground_mask(self.base, self.window)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in canonical order, as masks.
    pub fn masks(&self) -> &[u64] {
        &self.members
    }

    pub fn members(&self) -> impl Iterator<Item = FinSet> + '_ {
        self.members.iter().map(|&m| FinSet::from_mask(m))
    }

    pub fn contains(&self, s: &FinSet) -> bool {
        s.to_mask().is_some_and(|m| self.index.contains(&m))
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.index.contains(&mask)
    }

    pub fn max_member_size(&self) -> usize {
        self.members
            .last()
            .map(|m| m.count_ones() as usize)
            .unwrap_or(0)
    }

    /// Number of members of each size, indexed by size.
    pub fn size_profile(&self) -> Vec<usize> {
        let mut profile = vec![0; self.max_member_size() + 1];
        for &m in &self.members {
            profile[m.count_ones() as usize] += 1;
        }
        profile
    }

    /// Members of exactly `n` elements.
    pub fn level(&self, n: usize) -> impl Iterator<Item = u64> + '_ {
        self.members
            .iter()
            .copied()
            .filter(move |m| m.count_ones() as usize == n)
    }

    pub fn is_hereditary(&self) -> bool {
        self.members.iter().all(|&m| {
            let mut rest = m;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                if !self.index.contains(&(m & !bit)) {
                    return false;
                }
                rest &= rest - 1;
            }
            // the empty member needs no check, and a nonempty member reaches ∅ by induction
            true
        })
    }

    /// Whether `{i}` is a member for every `i` in the ground.
    pub fn contains_all_singletons(&self) -> bool {
        let g = self.ground();
        (0..64).filter(|i| g >> i & 1 == 1).all(|i| self.index.contains(&(1u64 << i)))
    }

    pub fn downward_closure(&self) -> ExplicitFamily {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut stack: Vec<u64> = self.members.clone();
        while let Some(m) = stack.pop() {
            if !seen.insert(m) {
                continue;
            }
            let mut rest = m;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                let sub = m & !bit;
                if !seen.contains(&sub) {
                    stack.push(sub);
                }
                rest &= rest - 1;
            }
        }
        Self::from_masks_unchecked(self.base, self.window, seen.into_iter().collect())
    }

    pub fn maximal_elements(&self) -> ExplicitFamily {
        let maximal: Vec<u64> = if self.is_hereditary() {
            let free = self.ground();
            self.members
                .iter()
                .copied()
                .filter(|&m| {
                    let mut rest = free & !m;
                    while rest != 0 {
                        let bit = rest & rest.wrapping_neg();
                        if self.index.contains(&(m | bit)) {
                            return false;
                        }
                        rest &= rest - 1;
                    }
                    true
                })
                .collect()
        } else {
            self.members
                .iter()
                .copied()
                .filter(|&m| !self.members.iter().any(|&t| t != m && t & m == m))
                .collect()
        };
        Self::from_masks_unchecked(self.base, self.window, maximal)
    }

    /// The family `{π[s] : s ∈ F}`; images must stay inside the ground.
    pub fn apply_permutation(&self, pi: &Permutation) -> Result<ExplicitFamily> {
        if pi.window() > self.window {
            let moved_outside = pi.support().iter().any(|i| i >= self.window);
            if moved_outside {
                return Err(Error::WindowMismatch(format!(
                    "permutation {pi} moves points outside the window {}",
                    self.window
                )));
            }
        }
        let ground = self.ground();
        let mut out = Vec::with_capacity(self.members.len());
        for &m in &self.members {
            let img = pi.image_mask(m);
            if img & !ground != 0 {
                return Err(Error::WindowMismatch(format!(
                    "permutation {pi} maps {} outside [{}, {})",
                    FinSet::from_mask(m),
                    self.base,
                    self.window
                )));
            }
            out.push(img);
        }
        Ok(Self::from_masks_unchecked(self.base, self.window, out))
    }

    /// Members contained in `a`.
    pub fn trace(&self, a: &FinSet) -> ExplicitFamily {
        let within = a.iter().filter(|&e| e < 64).fold(0u64, |acc, e| acc | 1 << e);
        let kept = self
            .members
            .iter()
            .copied()
            .filter(|&m| m & !within == 0)
            .collect();
        Self::from_masks_unchecked(self.base, self.window, kept)
    }

    pub fn union(&self, other: &ExplicitFamily) -> Result<ExplicitFamily> {
        if self.base != other.base || self.window != other.window {
            return Err(Error::WindowMismatch(format!(
                "[{}, {}) vs [{}, {})",
                self.base, self.window, other.base, other.window
            )));
        }
        Ok(Self::from_masks_unchecked(
            self.base,
            self.window,
            self.members.iter().chain(&other.members).copied().collect(),
        ))
    }

    /// Members satisfying a predicate, same window.
    pub fn filter(&self, mut keep: impl FnMut(u64) -> bool) -> ExplicitFamily {
        let kept = self.members.iter().copied().filter(|&m| keep(m)).collect();
        Self::from_masks_unchecked(self.base, self.window, kept)
    }
}

pub(crate) fn check_window(window: u32) -> Result<()> {
    if window > MAX_WINDOW {
        Err(Error::WindowTooLarge(window))
    } else {
        Ok(())
    }
}

impl fmt::Debug for ExplicitFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}) ", self.base, self.window)?;
        f.debug_set().entries(self.members()).finish()
    }
}

impl PartialOrd for ExplicitFamily {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Families order by member count, then member lists in canonical order.
impl Ord for ExplicitFamily {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.base, self.window, self.members.len())
            .cmp(&(other.base, other.window, other.members.len()))
            .then_with(|| {
                for (&a, &b) in self.members.iter().zip(&other.members) {
                    let c = mask_cmp(a, b);
                    if c.is_ne() {
                        return c;
                    }
                }
                std::cmp::Ordering::Equal
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(window: u32, sets: &[&[u32]]) -> ExplicitFamily {
        ExplicitFamily::new(0, window, sets.iter().map(|s| FinSet::new(s.iter().copied()))).unwrap()
    }

    #[test]
    fn contains_examples() {
        let f = fam(2, &[&[], &[0], &[1], &[0, 1]]);
        assert!(f.contains(&FinSet::from([0, 1])));
        let g = fam(2, &[&[], &[0], &[1]]);
        assert!(!g.contains(&FinSet::from([0, 1])));
        let c = ExplicitFamily::cube(0, 3, 2).unwrap();
        assert!(!c.contains(&FinSet::from([0, 1, 2])));
        assert_eq!(c.len(), 7);
    }

    #[test]
    fn heredity_examples() {
        assert!(fam(2, &[&[], &[0], &[1], &[0, 1]]).is_hereditary());
        assert!(!fam(2, &[&[0, 1]]).is_hereditary());
    }

    #[test]
    fn closure_examples() {
        let f = fam(2, &[&[0, 1]]).downward_closure();
        assert_eq!(f, fam(2, &[&[], &[0], &[1], &[0, 1]]));
        let g = fam(4, &[&[1, 3], &[2]]).downward_closure();
        assert_eq!(g, fam(4, &[&[], &[1], &[2], &[3], &[1, 3]]));
        assert_eq!(g.downward_closure(), g);
    }

    #[test]
    fn maximal_examples() {
        let f = fam(2, &[&[], &[0], &[1], &[0, 1]]);
        assert_eq!(f.maximal_elements(), fam(2, &[&[0, 1]]));
        let anti = fam(4, &[&[0, 1], &[2], &[1, 3]]);
        assert_eq!(anti.maximal_elements(), anti);
    }

    #[test]
    fn permutation_examples() {
        let f = fam(3, &[&[0, 1]]);
        let pi = Permutation::swap(0, 2);
        assert_eq!(f.apply_permutation(&pi).unwrap(), fam(3, &[&[1, 2]]));
        let sym = fam(3, &[&[1], &[2]]);
        assert_eq!(sym.apply_permutation(&Permutation::swap(1, 2)).unwrap(), sym);
        assert!(f.apply_permutation(&Permutation::swap(0, 5)).is_err());
    }

    #[test]
    fn trace_examples() {
        let c = ExplicitFamily::cube(0, 3, 2).unwrap();
        assert_eq!(c.trace(&FinSet::from([0, 2])), fam(3, &[&[], &[0], &[2], &[0, 2]]));
        assert_eq!(c.trace(&FinSet::range(0, 5)), c);
        assert_eq!(c.trace(&FinSet::empty()), fam(3, &[&[]]));
    }

    #[test]
    fn rejects_out_of_window_members() {
        assert!(ExplicitFamily::new(1, 3, [FinSet::from([0])]).is_err());
        assert!(ExplicitFamily::new(0, 3, [FinSet::from([3])]).is_err());
        assert!(ExplicitFamily::new(0, 65, []).is_err());
    }
}
