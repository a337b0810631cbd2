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


//! Finitely described infinite families on ω.
//!
//! A [`LazyFamily`] is an immutable descriptor tree. Membership is
//! decided directly; extension sets, derivatives and Cantor-Bendixson
//! ranks come from per-node stabilization data, so every answer is exact.
//! Compositions whose ranks cannot be certified are rejected with
//! [`Error::UnsupportedDescriptor`].

mod descriptor;
pub(crate) mod node;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::extension::ExtensionSet;
use crate::family::{check_window, ExplicitFamily};
use crate::finset::FinSet;
use crate::ordinal::{OrdinalW2, RankValue};
use node::{Ctx, Node};

/// Default rank budget: two limit stages.
pub const DEFAULT_BUDGET: OrdinalW2 = OrdinalW2::omega_times(2);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LazyFamily {
    root: Arc<Node>,
}

impl LazyFamily {
    pub(crate) fn from_node(node: Node) -> Self {
        LazyFamily { root: Arc::new(node) }
    }

    pub(crate) fn node(&self) -> &Arc<Node> {
        &self.root
    }

    /// Least index of the ground set `[base, ∞)`.
    pub fn base(&self) -> u32 {
        self.root.base()
    }

    pub fn is_hereditary(&self) -> bool {
        self.root.is_hereditary()
    }

    pub fn contains(&self, s: &FinSet) -> bool {
        self.root.contains(s, &Ctx::default())
    }

    /// Upper bound on `|s|` over members `s` with `min(s) ≤ min_at_most`.
    pub fn max_member_size(&self, min_at_most: u32) -> usize {
        self.root.max_member_size(min_at_most)
    }

    /// `{n ∉ s : s ∪ {n} ∈ F}`.
    pub fn extension_set(&self, s: &FinSet) -> Result<ExtensionSet> {
        let ctx = Ctx::default();
        if !self.root.contains(s, &ctx) {
            return Err(Error::NotMember(s.clone()));
        }
        Ok(self.root.extension_set(s, &ctx))
    }

    fn check_rank_support(&self) -> Result<()> {
        if self.root.one_point_valid() {
            Ok(())
        } else {
            Err(Error::UnsupportedDescriptor(format!(
                "ranks of {self} need a hereditary family under every composite"
            )))
        }
    }

    /// The Cantor-Bendixson derivative: members with infinitely many
    /// one-point extensions.
    pub fn derivative(&self) -> Result<LazyFamily> {
        if !self.is_hereditary() {
            return Err(Error::UnsupportedDescriptor(format!(
                "derivative of the non-hereditary family {self}"
            )));
        }
        self.check_rank_support()?;
        let node = match self.root.as_ref() {
            Node::Derived { order, inner } => Node::Derived {
                order: order + 1,
                inner: inner.clone(),
            },
            _ => Node::Derived {
                order: 1,
                inner: self.root.clone(),
            },
        };
        Ok(LazyFamily::from_node(node))
    }

    /// The largest `β` with `s` in the `β`-th derived family, reported
    /// exactly when it does not exceed `budget`.
    pub fn cb_rank_point(&self, s: &FinSet, budget: OrdinalW2) -> Result<RankValue> {
        self.check_rank_support()?;
        let ctx = Ctx::default();
        if !self.root.contains(s, &ctx) {
            return Err(Error::NotMember(s.clone()));
        }
        let r = self.root.rank(s, &ctx);
        Ok(if r <= budget {
            RankValue::Exact(r)
        } else {
            RankValue::AtLeast(budget.succ())
        })
    }

    /// The least `α` with an empty `α`-th derived family; zero for the
    /// empty family, otherwise one more than the rank of `∅`.
    pub fn family_rank(&self, budget: OrdinalW2) -> Result<RankValue> {
        let empty = FinSet::empty();
        if !self.contains(&empty) {
            if self.is_hereditary() {
                return Ok(RankValue::Exact(OrdinalW2::ZERO));
            }
            return Err(Error::Precondition(format!("{self} does not contain the empty set")));
        }
        Ok(match self.cb_rank_point(&empty, budget)? {
            RankValue::Exact(r) => RankValue::Exact(r.succ()),
            RankValue::AtLeast(b) => RankValue::AtLeast(b.succ()),
        })
    }

    /// The first `count` points of climbing tail classes at `s`, with the
    /// ranks of the corresponding one-point extensions. These ranks are
    /// nondecreasing and unbounded, which certifies a limit rank at `s`.
    pub fn limit_witness(&self, s: &FinSet, count: usize) -> Result<Vec<(u32, OrdinalW2)>> {
        self.check_rank_support()?;
        let ctx = Ctx::default();
        if !self.root.contains(s, &ctx) {
            return Err(Error::NotMember(s.clone()));
        }
        let shape = self.root.shape(s, &ctx);
        let mut out = Vec::new();
        let mut n = shape.threshold;
        // a climbing class in the tail exists iff the rank is a limit
        let climbing_exists = (0..shape.modulus).any(|r| {
            let rep = shape.representative(r);
            shape.is_climbing(rep) && self.root.contains(&s.with(rep), &ctx)
        });
        while climbing_exists && out.len() < count {
            let t = s.with(n);
            if shape.is_climbing(n) && self.root.contains(&t, &ctx) {
                out.push((n, self.root.rank(&t, &ctx)));
            }
            n += 1;
        }
        Ok(out)
    }

    /// Members contained in `within`, in canonical order. Needs a
    /// hereditary family, so that every member is reached from `∅`.
    pub fn members_within(&self, within: &FinSet) -> Result<Vec<FinSet>> {
        if !self.is_hereditary() {
            return Err(Error::NotHereditary);
        }
        let ctx = Ctx::default();
        let mut out = Vec::new();
        if !self.root.contains(&FinSet::empty(), &ctx) {
            return Ok(out);
        }
        let elems = within.elements();
        let mut stack = vec![(FinSet::empty(), 0usize)];
        while let Some((s, next)) = stack.pop() {
            for (i, &n) in elems.iter().enumerate().skip(next) {
                let t = s.with(n);
                if self.root.contains(&t, &ctx) {
                    stack.push((t, i + 1));
                }
            }
            out.push(s);
        }
        out.sort();
        Ok(out)
    }

    /// Members inside `[base, window)`, as an explicit family.
    pub fn truncate(&self, window: u32) -> Result<ExplicitFamily> {
        let base = self.base();
        let window = window.max(base);
        check_window(window)?;
        let ctx = Ctx::default();
        let mut masks = Vec::new();
        if self.is_hereditary() {
            for m in self.members_within(&FinSet::range(base, window))? {
                masks.push(m.to_mask().expect("window below 64"));
            }
        } else {
            let limit = self.max_member_size(window.saturating_sub(1));
            let ground = FinSet::range(base, window);
            let mut current = vec![FinSet::empty()];
            for _ in 0..=limit {
                let mut next = Vec::new();
                for s in &current {
                    if self.root.contains(s, &ctx) {
                        masks.push(s.to_mask().expect("window below 64"));
                    }
                    let from = s.last().map_or(base, |m| m + 1);
                    next.extend(ground.iter().filter(|&n| n >= from).map(|n| s.with(n)));
                }
                current = next;
            }
        }
        ExplicitFamily::from_masks(base, window, masks)
    }
}

impl fmt::Display for LazyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self.root.as_ref(), f)
    }
}

impl fmt::Debug for LazyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self.root.as_ref(), f)
    }
}

impl FromStr for LazyFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        descriptor::parse(s)
    }
}
