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


//! Point invariants used to prune permutation search.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::family::ExplicitFamily;

/// Invariants of a point `α` of an explicit family, preserved by every
/// permutation of the window.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PointSignature {
    /// `size_counts[k]`: members of size `k` containing `α`.
    pub size_counts: Vec<usize>,
    /// Window-relative rank: the longest chain of members strictly above
    /// `{α}`, i.e. how many rounds of discarding maximal members `{α}`
    /// survives. Zero when `{α}` is not a member.
    pub depth: usize,
    /// `|{n : {α, n} ∈ F}|`.
    pub extension_count: usize,
}

pub fn point_signature(f: &ExplicitFamily, alpha: u32) -> PointSignature {
    let bit = 1u64 << alpha;
    let top = f.max_member_size();
    let mut size_counts = vec![0; top + 1];
    for &m in f.masks() {
        if m & bit != 0 {
            size_counts[m.count_ones() as usize] += 1;
        }
    }
    let depth = size_counts.iter().rposition(|&c| c > 0).map_or(0, |k| k - 1);
    PointSignature {
        extension_count: size_counts.get(2).copied().unwrap_or(0),
        size_counts,
        depth,
    }
}

/// Signatures of every point of the ground `[base, window)`.
pub fn signatures(f: &ExplicitFamily) -> Vec<PointSignature> {
    (f.base()..f.window()).map(|a| point_signature(f, a)).collect()
}

type RefineKey = (u32, Vec<Vec<u32>>);

/// Colours of the ground points of several families, refined jointly so
/// that equal colours mean the same thing across the families. Colour
/// `i` of family `j` belongs to point `base + i`.
pub(crate) fn joint_colors(families: &[&ExplicitFamily]) -> Vec<Vec<u32>> {
    let mut ids: BTreeMap<PointSignature, u32> = BTreeMap::new();
    let sigs: Vec<Vec<PointSignature>> = families.iter().map(|f| signatures(f)).collect();
    for s in sigs.iter().flatten() {
        ids.entry(s.clone()).or_insert(0);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i as u32;
    }
    let mut colors: Vec<Vec<u32>> = sigs
        .iter()
        .map(|v| v.iter().map(|s| ids[s]).collect())
        .collect();
    let mut classes = count_classes(&colors);
    loop {
        let keys: Vec<Vec<RefineKey>> = families
            .iter()
            .zip(&colors)
            .map(|(f, c)| refine_keys(f, c))
            .collect();
        let mut table: BTreeMap<&RefineKey, u32> = BTreeMap::new();
        for k in keys.iter().flatten() {
            table.entry(k).or_insert(0);
        }
        for (i, v) in table.values_mut().enumerate() {
            *v = i as u32;
        }
        let next: Vec<Vec<u32>> = keys
            .iter()
            .map(|v| v.iter().map(|k| table[k]).collect())
            .collect();
        let now = count_classes(&next);
        colors = next;
        if now == classes {
            return colors;
        }
        classes = now;
    }
}

fn count_classes(colors: &[Vec<u32>]) -> usize {
    let mut all: Vec<u32> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn refine_keys(f: &ExplicitFamily, colors: &[u32]) -> Vec<RefineKey> {
    let base = f.base();
    (base..f.window())
        .map(|p| {
            let mut around: Vec<Vec<u32>> = f
                .masks()
                .iter()
                .filter(|&&m| m >> p & 1 == 1)
                .map(|&m| {
                    let mut c: Vec<u32> = bits(m & !(1u64 << p))
                        .map(|q| colors[(q - base) as usize])
                        .collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            around.sort();
            (colors[(p - base) as usize], around)
        })
        .collect()
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros();
            m &= m - 1;
            Some(i)
        }
    })
}

/// Image of a mask under a point table (identity beyond the table).
pub(crate) fn map_mask(m: u64, table: &[u32]) -> u64 {
    bits(m).fold(0, |acc, i| {
        acc | 1u64 << table.get(i as usize).copied().unwrap_or(i)
    })
}

/// Classes of points whose transposition is an automorphism, each in
/// increasing order, sorted by least element.
pub fn twin_classes(f: &ExplicitFamily) -> Vec<Vec<u32>> {
    let ground: Vec<u32> = (f.base()..f.window()).collect();
    let mut class_of: Vec<Option<usize>> = vec![None; ground.len()];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for (i, &p) in ground.iter().enumerate() {
        if class_of[i].is_some() {
            continue;
        }
        let c = classes.len();
        class_of[i] = Some(c);
        let mut class = vec![p];
        for (j, &q) in ground.iter().enumerate().skip(i + 1) {
            if class_of[j].is_none() && is_twin(f, p, q) {
                class_of[j] = Some(c);
                class.push(q);
            }
        }
        classes.push(class);
    }
    classes
}

fn is_twin(f: &ExplicitFamily, p: u32, q: u32) -> bool {
    let (bp, bq) = (1u64 << p, 1u64 << q);
    f.masks().iter().all(|&m| {
        let has_p = m & bp != 0;
        let has_q = m & bq != 0;
        has_p == has_q || f.contains_mask(m ^ bp ^ bq)
    })
}
