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


//! Constructors for the families studied here.
//!
//! Catalog names accepted by the descriptor parser:
//!
//! | name | family |
//! |------|--------|
//! | `ex-4-perm-pair:F` | `[ω]^≤2` without `{2,3}` |
//! | `ex-4-perm-pair:G` | `[ω]^≤2` without `{1,2}` |
//! | `ex-homeo-not-pi:F` | `[ω]^≤1 ∪ [ω∖{1}]^2` over `[1, ∞)` |
//! | `ex-homeo-not-pi:G` | `[ω]^≤2` over `[1, ∞)` |
//! | `ex-adjacent-removed` | `[ω]^≤2` over `[1, ∞)` without the pairs `{n, n+1}` |
//! | `ex-initial-pairs` | Schreier sets whose two least elements are not consecutive |
//!
//! The perm pair is related by the permutation `1 → 3, 2 → 1, 3 → 2`,
//! which carries `{2,3}` to `{1,2}`. The homeo pair is homeomorphic but
//! not related by any permutation of the index set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{check_window, ExplicitFamily};
use crate::finset::FinSet;
use crate::lazy::node::Node;
use crate::lazy::LazyFamily;
use crate::permutation::Permutation;

pub const CATALOG_NAMES: [&str; 6] = [
    "ex-4-perm-pair:F",
    "ex-4-perm-pair:G",
    "ex-homeo-not-pi:F",
    "ex-homeo-not-pi:G",
    "ex-adjacent-removed",
    "ex-initial-pairs",
];

/// `{s : |s| ≤ min(s) + 1} ∪ {∅}`.
pub fn schreier() -> LazyFamily {
    LazyFamily::from_node(Node::Schreier)
}

/// All sets of size at most `n`.
pub fn cube(n: u32) -> LazyFamily {
    LazyFamily::from_node(Node::Cube(n))
}

/// A position `ω·block + offset` in a union of `m` copies of ω.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BlockIndex {
    pub block: u32,
    pub offset: u32,
}

impl BlockIndex {
    pub fn new(block: u32, offset: u32) -> Self {
        BlockIndex { block, offset }
    }

    /// The natural index used by [`block_schreier`] with `m` blocks.
    pub fn encode(self, m: u32) -> Result<u32> {
        if self.block >= m {
            return Err(Error::Precondition(format!(
                "block {} out of range for {m} blocks",
                self.block
            )));
        }
        Ok(self.offset * m + self.block)
    }

    pub fn decode(n: u32, m: u32) -> Self {
        BlockIndex {
            block: n % m,
            offset: n / m,
        }
    }
}

/// A Schreier copy in every block of `m` blocks; members stay in one block.
///
/// Indices interleave the blocks: `n` encodes `BlockIndex::decode(n, m)`.
pub fn block_schreier(m: u32) -> Result<LazyFamily> {
    if m == 0 {
        return Err(Error::Precondition("block-schreier needs at least one block".into()));
    }
    Ok(LazyFamily::from_node(Node::BlockSchreier(m)))
}

/// Encodes a set of block indices for [`block_schreier`].
pub fn encode_blocks(points: &[BlockIndex], m: u32) -> Result<FinSet> {
    points.iter().map(|p| p.encode(m)).collect()
}

/// `L ∖ R`. Every removed set must be a member whose proper supersets
/// are all removed too, so the result stays hereditary.
pub fn remove_sets(family: &LazyFamily, removed: &[FinSet]) -> Result<LazyFamily> {
    let mut sets = removed.to_vec();
    sets.sort();
    sets.dedup();
    if sets.is_empty() {
        return Ok(family.clone());
    }
    for r in &sets {
        let ext = family.extension_set(r)?;
        let closed = ext.finite_len().is_some()
            && ext
                .exceptional()
                .iter()
                .all(|n| sets.binary_search(&r.with(n)).is_ok());
        if !closed {
            return Err(Error::HeredityBroken(r.clone()));
        }
    }
    Ok(LazyFamily::from_node(Node::Remove {
        sets,
        inner: family.node().clone(),
    }))
}

/// Schreier sets with no consecutive pair `{n, n+1}` as initial segment.
/// Compact but neither hereditary nor spreading.
pub fn remove_pattern_initial_pairs() -> LazyFamily {
    LazyFamily::from_node(Node::InitialPairs)
}

/// `[ω]^≤2` over `[1, ∞)` without the pairs `{n, n+1}`.
pub fn adjacent_pairs_removed() -> LazyFamily {
    LazyFamily::from_node(Node::AdjacentRemoved)
}

/// `(F, G)` with `F = [ω]^≤1 ∪ [ω∖{1}]^2` and `G = [ω]^≤2`, both over `[1, ∞)`.
pub fn homeo_not_pi_pair() -> (LazyFamily, LazyFamily) {
    let f = based(
        &union(&cube(1), &restrict_ground(&cube(2), &FinSet::singleton(1))),
        1,
    );
    (f, based(&cube(2), 1))
}

/// `(F, G)` with `F = [ω]^≤2 ∖ {{2,3}}` and `G = [ω]^≤2 ∖ {{1,2}}`.
pub fn perm_pair() -> (LazyFamily, LazyFamily) {
    let f = remove_sets(&cube(2), &[FinSet::from([2, 3])]).expect("pairs are maximal");
    let g = remove_sets(&cube(2), &[FinSet::from([1, 2])]).expect("pairs are maximal");
    (f, g)
}

/// `π[L]`. The permutation must fix every point below the base.
pub fn permuted(family: &LazyFamily, pi: &Permutation) -> Result<LazyFamily> {
    let pi = pi.trimmed();
    if pi.is_identity() {
        return Ok(family.clone());
    }
    if pi.support().first().is_some_and(|p| p < family.base()) {
        return Err(Error::InvalidPermutation(format!(
            "{pi} moves points below the base {}",
            family.base()
        )));
    }
    Ok(LazyFamily::from_node(Node::Permute {
        inverse: pi.inverse(),
        pi,
        inner: family.node().clone(),
    }))
}

/// Members avoiding `excluded`.
pub fn restrict_ground(family: &LazyFamily, excluded: &FinSet) -> LazyFamily {
    if excluded.is_empty() {
        return family.clone();
    }
    LazyFamily::from_node(Node::Restrict {
        excluded: excluded.clone(),
        inner: family.node().clone(),
    })
}

pub fn union(a: &LazyFamily, b: &LazyFamily) -> LazyFamily {
    LazyFamily::from_node(Node::Union(a.node().clone(), b.node().clone()))
}

/// Members inside `[base, ∞)`.
pub fn based(family: &LazyFamily, base: u32) -> LazyFamily {
    if base <= family.base() {
        return family.clone();
    }
    LazyFamily::from_node(Node::Based {
        base,
        inner: family.node().clone(),
    })
}

/// Looks up a catalog name; see the module table.
pub fn catalog(name: &str) -> Result<LazyFamily> {
    match name {
        "ex-4-perm-pair:F" => Ok(perm_pair().0),
        "ex-4-perm-pair:G" => Ok(perm_pair().1),
        "ex-homeo-not-pi:F" => Ok(homeo_not_pi_pair().0),
        "ex-homeo-not-pi:G" => Ok(homeo_not_pi_pair().1),
        "ex-adjacent-removed" => Ok(adjacent_pairs_removed()),
        "ex-initial-pairs" => Ok(remove_pattern_initial_pairs()),
        _ => Err(Error::parse(
            1,
            format!("unknown descriptor `{name}`; catalog names: {}", CATALOG_NAMES.join(", ")),
        )),
    }
}

/// A maximal member containing `alpha` and avoiding `avoid`, found by
/// extending `{alpha}` with the least admissible points above
/// `max(avoid ∪ {alpha})`.
pub fn singleton_density_witness(family: &LazyFamily, alpha: u32, avoid: &FinSet) -> Result<Option<FinSet>> {
    let mut s = FinSet::singleton(alpha);
    if avoid.contains(alpha) || !family.contains(&s) {
        return Ok(None);
    }
    let floor = avoid.last().map_or(alpha, |m| m.max(alpha));
    loop {
        let ext = family.extension_set(&s)?;
        if ext.is_empty() {
            return Ok(Some(s));
        }
        let from = floor.max(s.last().unwrap_or(0)) + 1;
        let next = if ext.is_infinite() {
            (from..).find(|&n| ext.contains(n))
        } else {
            ext.exceptional().iter().find(|&n| n >= from)
        };
        match next {
            Some(n) => s = s.with(n),
            None => return Ok(None),
        }
    }
}

/// A maximal member of an explicit family containing `alpha` and avoiding `avoid`.
pub fn singleton_density_witness_explicit(f: &ExplicitFamily, alpha: u32, avoid: &FinSet) -> Option<FinSet> {
    f.maximal_elements()
        .members()
        .find(|m| m.contains(alpha) && m.is_disjoint(avoid))
}

/// A finite forest; `parent[v]` is the immediate predecessor of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTree {
    parent: Vec<Option<u32>>,
    height: Vec<u32>,
}

impl FiniteTree {
    pub fn new(parent: Vec<Option<u32>>) -> Result<Self> {
        let n = parent.len();
        let mut height = vec![u32::MAX; n];
        for v in 0..n {
            // walk up; a path longer than n means a cycle
            let mut depth = 0u32;
            let mut cur = parent[v];
            while let Some(p) = cur {
                if p as usize >= n || depth as usize >= n {
                    return Err(Error::Precondition(format!("parent map is not a forest at node {v}")));
                }
                depth += 1;
                cur = parent[p as usize];
            }
            height[v] = depth;
        }
        Ok(FiniteTree { parent, height })
    }

    /// `n` nodes, each the parent of the next.
    pub fn chain(n: u32) -> Self {
        Self::new((0..n).map(|v| v.checked_sub(1)).collect()).expect("a chain is a forest")
    }

    /// `n` pairwise incomparable nodes.
    pub fn antichain(n: u32) -> Self {
        Self::new(vec![None; n as usize]).expect("an antichain is a forest")
    }

    /// The complete binary tree with `levels` levels, in breadth-first order.
    pub fn complete_binary(levels: u32) -> Self {
        let n = (1u32 << levels) - 1;
        Self::new((0..n).map(|v| if v == 0 { None } else { Some((v - 1) / 2) }).collect())
            .expect("a binary tree is a forest")
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: u32) -> Option<u32> {
        self.parent[v as usize]
    }

    /// Number of strict predecessors.
    pub fn height(&self, v: u32) -> u32 {
        self.height[v as usize]
    }

    /// One more than the largest node height; zero for the empty forest.
    pub fn tree_height(&self) -> u32 {
        self.height.iter().map(|h| h + 1).max().unwrap_or(0)
    }

    /// Strict predecessors of `v`, nearest first.
    pub fn ancestors(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut cur = self.parent(v);
        while let Some(p) = cur {
            out.push(p);
            cur = self.parent(p);
        }
        out
    }

    pub fn is_chain(&self, nodes: &FinSet) -> bool {
        let Some(deepest) = nodes.iter().max_by_key(|&v| self.height(v)) else {
            return true;
        };
        let line = self.ancestors(deepest);
        nodes.iter().all(|v| v == deepest || line.contains(&v))
    }
}

/// The chains of `tree` whose height sets belong to `f`.
pub fn tree_lift(tree: &FiniteTree, f: &ExplicitFamily) -> Result<ExplicitFamily> {
    if !f.is_hereditary() {
        return Err(Error::NotHereditary);
    }
    if f.window() < tree.tree_height() {
        return Err(Error::Precondition(format!(
            "window {} is below the tree height {}",
            f.window(),
            tree.tree_height()
        )));
    }
    let n = tree.len() as u32;
    check_window(n)?;
    let mut masks = Vec::new();
    if f.contains(&FinSet::empty()) {
        masks.push(0);
    }
    for v in 0..n {
        // chains whose deepest node is v
        let line = tree.ancestors(v);
        let mut stack = vec![(1u64 << v, 1u64 << tree.height(v), 0usize)];
        while let Some((nodes, heights, next)) = stack.pop() {
            if !f.contains_mask(heights) {
                continue;
            }
            masks.push(nodes);
            for (i, &a) in line.iter().enumerate().skip(next) {
                stack.push((nodes | 1u64 << a, heights | 1u64 << tree.height(a), i + 1));
            }
        }
    }
    ExplicitFamily::from_masks(0, n, masks)
}
