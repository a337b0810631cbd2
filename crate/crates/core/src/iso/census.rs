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


//! Exhaustive census of small hereditary spreading families.
//!
//! A hereditary spreading family on ω is determined near the origin by
//! its members inside `[base, base + M)`, which form a down-set of the
//! order `u ≤ t` iff `u` is a spread of a subset of `t`. Each such
//! down-set `A` yields the window family `G_N`: the closure of `A` under
//! spreads inside `[base, N)`. Distinct down-sets give distinct families,
//! and every `G_N` is hereditary and closed under in-window spreads.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::search::{automorphism_count, find_pi_homeomorphism};
use super::signature::{signatures, PointSignature};
use crate::error::{Error, Result};
use crate::family::{check_window, ExplicitFamily};
use crate::finset::FinSet;
use crate::permutation::Permutation;
use crate::spreading::spreading_closure;
use crate::text::write_family;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusConfig {
    /// Generators live in `[base, base + members)`.
    pub members: u32,
    pub window: u32,
    pub base: u32,
    /// Largest generator size; `members` when absent.
    pub max_size: Option<usize>,
    /// Require every singleton of the generator range.
    pub require_singletons: bool,
    /// Worker threads for the pair search; rayon's default when absent.
    pub workers: Option<usize>,
}

impl CensusConfig {
    pub fn new(members: u32, window: u32) -> Self {
        CensusConfig {
            members,
            window,
            base: 0,
            max_size: None,
            require_singletons: true,
            workers: None,
        }
    }

    fn size_bound(&self) -> usize {
        self.max_size.unwrap_or(self.members as usize).min(self.members as usize)
    }

    fn check(&self) -> Result<()> {
        check_window(self.window)?;
        let need = 2 * self.members as usize + self.size_bound();
        if (self.window as usize) < need {
            return Err(Error::Precondition(format!(
                "window {} is below the headroom 2*{} + {} = {need}",
                self.window,
                self.members,
                self.size_bound()
            )));
        }
        Ok(())
    }
}

/// Immediate predecessors of `t` below `top`: drop one point, or move one
/// point up by one.
fn lower_covers(t: u64, top: u32) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = t;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        out.push(t & !(1u64 << i));
        if i + 1 < top && t >> (i + 1) & 1 == 0 {
            out.push((t & !(1u64 << i)) | 1u64 << (i + 1));
        }
    }
    out
}

/// Every window family `G_N` in canonical order.
pub fn enumerate_hereditary_spreading(config: &CensusConfig) -> Result<Vec<ExplicitFamily>> {
    config.check()?;
    let (base, m) = (config.base, config.members);
    let bound = config.size_bound();
    let range: u64 = ((1u64 << m) - 1) << base;
    // nonempty generators in a linear extension: size up, sum down
    let mut elems: Vec<u64> = (1..=range >> base)
        .map(|x| x << base)
        .filter(|&x| x & !range == 0 && (x.count_ones() as usize) <= bound)
        .collect();
    let key = |x: &u64| {
        let sum: u32 = (0..64).filter(|i| x >> i & 1 == 1).sum();
        (x.count_ones(), std::cmp::Reverse(sum), *x)
    };
    elems.sort_by_key(key);
    let index: HashMap<u64, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let covers: Vec<Vec<usize>> = elems
        .iter()
        .map(|&t| {
            lower_covers(t, base + m)
                .into_iter()
                .filter(|&u| u != 0)
                .map(|u| index[&u])
                .collect()
        })
        .collect();
    let mut chosen = vec![false; elems.len()];
    let mut out = Vec::new();
    down_sets(&elems, &covers, config.require_singletons, 0, &mut chosen, &mut |picked| {
        let mut masks = vec![0u64];
        masks.extend(picked);
        let a = ExplicitFamily::from_masks_unchecked(base, config.window, masks);
        out.push(spreading_closure(&a));
    });
    out.sort();
    Ok(out)
}

fn down_sets(
    elems: &[u64],
    covers: &[Vec<usize>],
    singletons: bool,
    i: usize,
    chosen: &mut Vec<bool>,
    emit: &mut dyn FnMut(Vec<u64>),
) {
    if i == elems.len() {
        emit(elems.iter().zip(chosen.iter()).filter(|(_, &c)| c).map(|(&e, _)| e).collect());
        return;
    }
    let can_take = covers[i].iter().all(|&j| chosen[j]);
    let must_take = singletons && elems[i].count_ones() == 1;
    if can_take {
        chosen[i] = true;
        down_sets(elems, covers, singletons, i + 1, chosen, emit);
        chosen[i] = false;
    }
    if !must_take {
        down_sets(elems, covers, singletons, i + 1, chosen, emit);
    }
}

/// Cheap π-invariant used to bucket families before searching.
fn bucket_key(f: &ExplicitFamily) -> (usize, Vec<usize>, Vec<PointSignature>) {
    let mut sigs = signatures(f);
    sigs.sort();
    (f.len(), f.size_profile(), sigs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub left: usize,
    pub right: usize,
    pub permutation: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub index: usize,
    pub family: String,
    pub signatures: Vec<PointSignature>,
    pub automorphism_count: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub config: CensusConfig,
    pub families: usize,
    pub pairs: usize,
    /// Pairs that reached the permutation search after invariant filtering.
    pub searched: usize,
    pub counterexamples: Vec<Counterexample>,
    pub records: Vec<FamilyRecord>,
}

impl CensusReport {
    /// `families: F, pairs: P, counterexamples: C`, then one line per counterexample.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "families: {}, pairs: {}, counterexamples: {}",
            self.families,
            self.pairs,
            self.counterexamples.len()
        );
        for c in &self.counterexamples {
            out.push_str(&format!("\n  #{} ~ #{} via {}", c.left, c.right, c.permutation));
        }
        out
    }
}

fn with_workers<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(job()),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map(|pool| pool.install(job))
            .map_err(|e| Error::Precondition(format!("thread pool: {e}"))),
    }
}

/// Searches every pair of distinct enumerated families for a permutation
/// carrying one onto the other; any hit is a counterexample.
pub fn uniqueness_census(config: &CensusConfig) -> Result<CensusReport> {
    let families = enumerate_hereditary_spreading(config)?;
    let n = families.len();
    let mut buckets: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (i, f) in families.iter().enumerate() {
        buckets.entry(bucket_key(f)).or_default().push(i);
    }
    let candidates: Vec<(usize, usize)> = buckets
        .values()
        .flat_map(|v| {
            v.iter()
                .enumerate()
                .flat_map(move |(a, &i)| v[a + 1..].iter().map(move |&j| (i, j)))
        })
        .collect();
    let (counterexamples, records) = with_workers(config.workers, || {
        let mut hits: Vec<Counterexample> = candidates
            .par_iter()
            .filter_map(|&(i, j)| {
                find_pi_homeomorphism(&families[i], &families[j])
                    .expect("same ground")
                    .map(|permutation| Counterexample {
                        left: i,
                        right: j,
                        permutation,
                    })
            })
            .collect();
        hits.sort_by_key(|c| (c.left, c.right));
        let records: Vec<FamilyRecord> = families
            .par_iter()
            .enumerate()
            .map(|(index, f)| FamilyRecord {
                index,
                family: write_family(f),
                signatures: signatures(f),
                automorphism_count: automorphism_count(f),
            })
            .collect();
        (hits, records)
    })?;
    Ok(CensusReport {
        config: config.clone(),
        families: n,
        pairs: n * n.saturating_sub(1) / 2,
        searched: candidates.len(),
        counterexamples,
        records,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachabilityReport {
    pub candidates: usize,
    /// Indices of enumerated families carried onto the input, with `π`
    /// mapping the candidate onto the input.
    pub found: Vec<(usize, Permutation)>,
}

/// Searches the regular families of the census on the ground of `f`,
/// generated inside `[base, base + members)` with generators no larger
/// than the members of `f`, for one π-homeomorphic to `f`.
pub fn regular_reachability(f: &ExplicitFamily, members: u32) -> Result<ReachabilityReport> {
    let config = CensusConfig {
        members,
        window: f.window(),
        base: f.base(),
        max_size: Some(f.max_member_size()),
        require_singletons: true,
        workers: None,
    };
    let families = enumerate_hereditary_spreading(&config)?;
    let mut found = Vec::new();
    for (i, g) in families.iter().enumerate() {
        if let Some(pi) = find_pi_homeomorphism(g, f)? {
            found.push((i, pi));
        }
    }
    Ok(ReachabilityReport {
        candidates: families.len(),
        found,
    })
}

/// Members of `f` inside the generator range, as a set list.
pub fn generators(f: &ExplicitFamily, members: u32) -> Vec<FinSet> {
    let range: u64 = ((1u64 << members) - 1) << f.base();
    f.masks()
        .iter()
        .filter(|&&m| m & !range == 0)
        .map(|&m| FinSet::from_mask(m))
        .collect()
}
