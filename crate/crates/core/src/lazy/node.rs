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


//! Descriptor nodes and the one-point rank engine.
//!
//! Every node answers membership and, for a member `s`, a [`Shape`]: a
//! threshold and modulus past which membership and rank of `s ∪ {n}`
//! depend only on the residue of `n`, except in classes marked climbing,
//! where the rank is nondecreasing and unbounded below the next limit.
//! Extension sets and ranks are computed from shapes alone.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;

use crate::extension::ExtensionSet;
use crate::finset::FinSet;
use crate::ordinal::OrdinalW2;
use crate::permutation::Permutation;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Node {
    Schreier,
    Cube(u32),
    /// `m` copies of the Schreier family; index `r·m + q` is offset `r` of block `q`.
    BlockSchreier(u32),
    /// Sets of size at most two over `[1, ∞)` without a pair `{n, n+1}`.
    AdjacentRemoved,
    /// Schreier sets whose two least elements are not consecutive.
    InitialPairs,
    /// `sets` sorted canonically; every removed set is isolated in `inner`.
    Remove {
        sets: Vec<FinSet>,
        inner: Arc<Node>,
    },
    /// Image under `pi`, which is trimmed and fixes every point below the base.
    Permute {
        pi: Permutation,
        inverse: Permutation,
        inner: Arc<Node>,
    },
    Union(Arc<Node>, Arc<Node>),
    /// Members avoiding `excluded`.
    Restrict {
        excluded: FinSet,
        inner: Arc<Node>,
    },
    /// Members inside `[base, ∞)`.
    Based {
        base: u32,
        inner: Arc<Node>,
    },
    /// The derived set of the given order; `inner` is never itself derived.
    Derived {
        order: u32,
        inner: Arc<Node>,
    },
}

/// Tail behaviour of `s ∪ {n}` for `n ≥ threshold`, per residue mod `modulus`.
#[derive(Clone, Debug)]
pub(crate) struct Shape {
    pub threshold: u32,
    pub modulus: u32,
    pub climbing: Vec<bool>,
}

impl Shape {
    fn steady(threshold: u32, modulus: u32) -> Self {
        Shape {
            threshold,
            modulus,
            climbing: vec![false; modulus as usize],
        }
    }

    fn climbing(threshold: u32, modulus: u32) -> Self {
        Shape {
            threshold,
            modulus,
            climbing: vec![true; modulus as usize],
        }
    }

    fn raised(mut self, t: u32) -> Self {
        self.threshold = self.threshold.max(t);
        self
    }

    pub fn is_climbing(&self, n: u32) -> bool {
        self.climbing[(n % self.modulus) as usize]
    }

    /// Least `n ≥ threshold` in class `r`.
    pub fn representative(&self, r: u32) -> u32 {
        let t = self.threshold;
        t + (r + self.modulus - t % self.modulus) % self.modulus
    }
}

/// Rank memo shared across one top-level computation.
#[derive(Default)]
pub(crate) struct Ctx {
    ranks: RefCell<HashMap<(usize, FinSet), OrdinalW2>>,
}

fn key(node: &Node) -> usize {
    node as *const Node as usize
}

fn last_plus_one(s: &FinSet) -> u32 {
    s.last().map_or(0, |m| m + 1)
}

impl Node {
    pub fn base(&self) -> u32 {
        match self {
            Node::Schreier | Node::Cube(_) | Node::BlockSchreier(_) | Node::InitialPairs => 0,
            Node::AdjacentRemoved => 1,
            Node::Remove { inner, .. }
            | Node::Permute { inner, .. }
            | Node::Restrict { inner, .. }
            | Node::Derived { inner, .. } => inner.base(),
            Node::Union(a, b) => a.base().min(b.base()),
            Node::Based { base, inner } => (*base).max(inner.base()),
        }
    }

    pub fn is_hereditary(&self) -> bool {
        match self {
            Node::InitialPairs => false,
            Node::Schreier | Node::Cube(_) | Node::BlockSchreier(_) | Node::AdjacentRemoved => true,
            Node::Remove { inner, .. }
            | Node::Permute { inner, .. }
            | Node::Restrict { inner, .. }
            | Node::Based { inner, .. }
            | Node::Derived { inner, .. } => inner.is_hereditary(),
            Node::Union(a, b) => a.is_hereditary() && b.is_hereditary(),
        }
    }

    /// Whether the one-point rank recursion is valid at every member.
    ///
    /// Holds for hereditary families and for leaves that agree locally with
    /// a hereditary family at every nonempty member.
    pub fn one_point_valid(&self) -> bool {
        match self {
            Node::Permute { inner, .. } => inner.one_point_valid(),
            Node::Remove { inner, .. }
            | Node::Restrict { inner, .. }
            | Node::Based { inner, .. }
            | Node::Derived { inner, .. } => inner.is_hereditary() && inner.one_point_valid(),
            Node::Union(a, b) => {
                a.is_hereditary() && b.is_hereditary() && a.one_point_valid() && b.one_point_valid()
            }
            _ => true,
        }
    }

    /// Upper bound on `|s|` over members with `min(s) ≤ x`.
    pub fn max_member_size(&self, x: u32) -> usize {
        match self {
            Node::Schreier | Node::InitialPairs => x as usize + 1,
            Node::Cube(n) => *n as usize,
            Node::BlockSchreier(m) => (x / m) as usize + 1,
            Node::AdjacentRemoved => 2,
            Node::Permute { pi, inner, .. } => {
                inner.max_member_size(x.max(pi.window().saturating_sub(1)))
            }
            Node::Union(a, b) => a.max_member_size(x).max(b.max_member_size(x)),
            Node::Remove { inner, .. }
            | Node::Restrict { inner, .. }
            | Node::Based { inner, .. }
            | Node::Derived { inner, .. } => inner.max_member_size(x),
        }
    }

    pub fn contains(&self, s: &FinSet, ctx: &Ctx) -> bool {
        let e = s.elements();
        match self {
            Node::Schreier => e.is_empty() || e.len() <= e[0] as usize + 1,
            Node::Cube(n) => e.len() <= *n as usize,
            Node::BlockSchreier(m) => {
                e.is_empty()
                    || (e.iter().all(|x| x % m == e[0] % m) && e.len() <= (e[0] / m) as usize + 1)
            }
            Node::AdjacentRemoved => {
                e.len() <= 2 && e.iter().all(|&x| x >= 1) && !(e.len() == 2 && e[1] == e[0] + 1)
            }
            Node::InitialPairs => {
                (e.is_empty() || e.len() <= e[0] as usize + 1) && !(e.len() >= 2 && e[1] == e[0] + 1)
            }
            Node::Remove { sets, inner } => sets.binary_search(s).is_err() && inner.contains(s, ctx),
            Node::Permute { inverse, inner, .. } => inner.contains(&inverse.image(s), ctx),
            Node::Union(a, b) => a.contains(s, ctx) || b.contains(s, ctx),
            Node::Restrict { excluded, inner } => s.is_disjoint(excluded) && inner.contains(s, ctx),
            Node::Based { base, inner } => e.first().is_none_or(|x| x >= base) && inner.contains(s, ctx),
            Node::Derived { order, inner } => {
                inner.contains(s, ctx) && inner.rank(s, ctx) >= OrdinalW2::finite(*order)
            }
        }
    }

    /// Shape at a member `s`; the threshold always exceeds `max(s)`.
    pub fn shape(&self, s: &FinSet, ctx: &Ctx) -> Shape {
        let above = last_plus_one(s);
        let shape = match self {
            Node::Schreier => {
                if s.is_empty() {
                    Shape::climbing(0, 1)
                } else {
                    Shape::steady(above, 1)
                }
            }
            Node::Cube(_) => Shape::steady(above, 1),
            Node::BlockSchreier(m) => {
                if s.is_empty() {
                    Shape::climbing(0, *m)
                } else {
                    Shape::steady(above, *m)
                }
            }
            // {a, a+1} is the only pair through a that is missing
            Node::AdjacentRemoved => {
                if s.is_empty() {
                    Shape::steady(1, 1)
                } else {
                    Shape::steady(above + 1, 1)
                }
            }
            Node::InitialPairs => match s.len() {
                0 => Shape::climbing(0, 1),
                1 => Shape::steady(above + 1, 1),
                _ => Shape::steady(above, 1),
            },
            Node::Remove { sets, inner } => {
                let top = sets.iter().map(last_plus_one).max().unwrap_or(0);
                inner.shape(s, ctx).raised(top)
            }
            Node::Permute { pi, inverse, inner } => {
                inner.shape(&inverse.image(s), ctx).raised(pi.window())
            }
            Node::Restrict { excluded, inner } => inner.shape(s, ctx).raised(last_plus_one(excluded)),
            Node::Based { base, inner } => inner.shape(s, ctx).raised(*base),
            Node::Union(a, b) => self.union_shape(a, b, s, ctx),
            Node::Derived { order, inner } => {
                let mut shape = inner.shape(s, ctx);
                let k = OrdinalW2::finite(*order);
                let mut top = shape.threshold;
                for r in 0..shape.modulus {
                    let mut n = shape.representative(r);
                    if !shape.is_climbing(n) || !inner.contains(&s.with(n), ctx) {
                        continue;
                    }
                    while inner.rank(&s.with(n), ctx) < k {
                        n += shape.modulus;
                    }
                    top = top.max(n);
                }
                shape.threshold = top;
                shape
            }
        };
        shape.raised(above)
    }

    fn union_shape(&self, a: &Node, b: &Node, s: &FinSet, ctx: &Ctx) -> Shape {
        let in_a = a.contains(s, ctx);
        let in_b = b.contains(s, ctx);
        if !in_b {
            return a.shape(s, ctx);
        }
        if !in_a {
            return b.shape(s, ctx);
        }
        let sa = a.shape(s, ctx);
        let sb = b.shape(s, ctx);
        let modulus = sa.modulus.lcm(&sb.modulus);
        let mut shape = Shape::steady(sa.threshold.max(sb.threshold), modulus);
        for r in 0..modulus {
            let n = shape.representative(r);
            let t = s.with(n);
            let va = a.contains(&t, ctx).then(|| (a.rank(&t, ctx), sa.is_climbing(n)));
            let vb = b.contains(&t, ctx).then(|| (b.rank(&t, ctx), sb.is_climbing(n)));
            shape.climbing[r as usize] = match (va, vb) {
                (None, None) => false,
                (Some((_, c)), None) | (None, Some((_, c))) => c,
                (Some((_, ca)), Some((_, cb))) if ca == cb => ca,
                (Some((v, false)), Some((x, true))) | (Some((x, true)), Some((v, false))) => {
                    v < OrdinalW2::omega_times(x.limit + 1)
                }
                _ => unreachable!(),
            };
        }
        shape
    }

    /// Cantor-Bendixson rank of a member, by the one-point recursion.
    pub fn rank(&self, s: &FinSet, ctx: &Ctx) -> OrdinalW2 {
        let k = (key(self), s.clone());
        if let Some(&v) = ctx.ranks.borrow().get(&k) {
            return v;
        }
        let shape = self.shape(s, ctx);
        let mut best = OrdinalW2::ZERO;
        for r in 0..shape.modulus {
            let n = shape.representative(r);
            let t = s.with(n);
            if !self.contains(&t, ctx) {
                continue;
            }
            let v = self.rank(&t, ctx);
            let contribution = if shape.is_climbing(n) {
                OrdinalW2::omega_times(v.limit + 1)
            } else {
                v.succ()
            };
            best = best.max(contribution);
        }
        ctx.ranks.borrow_mut().insert(k, best);
        best
    }

    /// `{n ∉ s : s ∪ {n} ∈ F}` for a member `s`.
    pub fn extension_set(&self, s: &FinSet, ctx: &Ctx) -> ExtensionSet {
        let shape = self.shape(s, ctx);
        let residues: Vec<u32> = (0..shape.modulus)
            .filter(|&r| self.contains(&s.with(shape.representative(r)), ctx))
            .collect();
        ExtensionSet::periodic(shape.threshold, shape.modulus, &residues, |n| {
            !s.contains(n) && self.contains(&s.with(n), ctx)
        })
    }
}
