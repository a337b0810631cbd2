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


//! The combinatorial norm `‖x‖ = sup { Σ_{α∈s} |x_α| : s ∈ F }`, its dual
//! ball and signed permutation operators.
//!
//! Scalars are exact rationals and signs are real. For a hereditary
//! family the extreme points of the dual ball are the signed functionals
//! `Σ_{α∈s} θ_α e*_α` over maximal members `s`; [`is_extreme_brute`]
//! decides vertexhood independently by exact linear programming.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::ExplicitFamily;
use crate::finset::FinSet;
use crate::lazy::LazyFamily;
use crate::lp::in_convex_hull;
use crate::permutation::Permutation;

/// A finitely supported rational vector; zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct SparseVector {
    entries: BTreeMap<u32, BigRational>,
}

impl SparseVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u32, BigRational)>) -> Self {
        let mut v = Self::zero();
        for (i, x) in entries {
            v.set(i, x);
        }
        v
    }

    /// Integer entries at consecutive indices from zero.
    pub fn from_integers(values: &[i64]) -> Self {
        Self::from_entries(
            values
                .iter()
                .enumerate()
                .map(|(i, &x)| (i as u32, BigRational::from_integer(x.into()))),
        )
    }

    /// `Σ_{α∈s} ±e_α` with minus signs on `negative`.
    pub fn indicator(s: &FinSet, negative: &FinSet) -> Self {
        Self::from_entries(s.iter().map(|i| {
            let one = BigRational::from_integer(1.into());
            (i, if negative.contains(i) { -one } else { one })
        }))
    }

    pub fn get(&self, i: u32) -> BigRational {
        self.entries.get(&i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn set(&mut self, i: u32, x: BigRational) {
        if x.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, x);
        }
    }

    pub fn support(&self) -> FinSet {
        FinSet::new(self.entries.keys().copied())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigRational)> + '_ {
        self.entries.iter().map(|(&i, x)| (i, x))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_entries(self.iter().map(|(i, x)| (i, x * c)))
    }

    pub fn add(&self, other: &SparseVector) -> Self {
        let mut out = self.clone();
        for (i, x) in other.iter() {
            out.set(i, out.get(i) + x);
        }
        out
    }

    /// Negates the entries indexed by `flips`.
    pub fn flip_signs(&self, flips: &FinSet) -> Self {
        Self::from_entries(
            self.iter()
                .map(|(i, x)| (i, if flips.contains(i) { -x.clone() } else { x.clone() })),
        )
    }

    /// `vec` header, then `index value` lines in increasing index order.
    pub fn to_text(&self) -> String {
        let mut out = String::from("vec\n");
        for (i, x) in self.iter() {
            writeln!(out, "{i} {x}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header = false;
        let mut v = Self::zero();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !header {
                if line != "vec" {
                    return Err(Error::parse(line_no, "expected `vec` header"));
                }
                header = true;
                continue;
            }
            let mut words = line.split_whitespace();
            let (Some(i), Some(x), None) = (words.next(), words.next(), words.next()) else {
                return Err(Error::parse(line_no, "expected `index value`"));
            };
            let i: u32 = i
                .parse()
                .map_err(|_| Error::parse(line_no, format!("not an index: {i}")))?;
            let x: BigRational = x
                .parse()
                .map_err(|_| Error::parse(line_no, format!("not a rational: {x}")))?;
            if v.entries.contains_key(&i) {
                return Err(Error::parse(line_no, format!("index {i} repeated")));
            }
            v.set(i, x);
        }
        if !header {
            return Err(Error::parse(0, "missing `vec` header"));
        }
        Ok(v)
    }
}

/// `Σ_{α∈support} θ_α e*_α`, with `θ_α = −1` exactly on `negative`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SignedFunctional {
    support: FinSet,
    negative: FinSet,
}

impl SignedFunctional {
    pub fn new(support: FinSet, negative: FinSet) -> Result<Self> {
        if !negative.is_subset(&support) {
            return Err(Error::Precondition(format!(
                "negative signs {negative} outside the support {support}"
            )));
        }
        Ok(SignedFunctional { support, negative })
    }

    pub fn positive(support: FinSet) -> Self {
        SignedFunctional {
            support,
            negative: FinSet::empty(),
        }
    }

    pub fn support(&self) -> &FinSet {
        &self.support
    }

    pub fn negative(&self) -> &FinSet {
        &self.negative
    }

    pub fn sign(&self, i: u32) -> i32 {
        if !self.support.contains(i) {
            0
        } else if self.negative.contains(i) {
            -1
        } else {
            1
        }
    }

    /// All `2^|s|` sign patterns over `s`.
    pub fn all_over(s: &FinSet) -> Vec<SignedFunctional> {
        s.subsets()
            .into_iter()
            .map(|negative| SignedFunctional {
                support: s.clone(),
                negative,
            })
            .collect()
    }

    fn coordinates(&self, base: u32, window: u32) -> Vec<BigRational> {
        (base..window)
            .map(|i| BigRational::from_integer(self.sign(i).into()))
            .collect()
    }
}

impl fmt::Display for SignedFunctional {
    /// `+e0 -e3`; the zero functional prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .support
            .iter()
            .map(|i| format!("{}e{i}", if self.negative.contains(i) { '-' } else { '+' }))
            .collect();
        f.write_str(&terms.join(" "))
    }
}

/// `T e_α = θ_α e_{π(α)}` with `θ_α = −1` exactly on `negated`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPermutationOperator {
    pub permutation: Permutation,
    pub negated: FinSet,
}

impl SignedPermutationOperator {
    pub fn new(permutation: Permutation, negated: FinSet) -> Self {
        SignedPermutationOperator { permutation, negated }
    }

    pub fn identity() -> Self {
        Self::new(Permutation::identity(0), FinSet::empty())
    }

    pub fn inverse(&self) -> Self {
        // T⁻¹ e_β = θ_{π⁻¹β} e_{π⁻¹β}
        SignedPermutationOperator {
            permutation: self.permutation.inverse(),
            negated: self.permutation.image(&self.negated),
        }
    }
}

pub fn functional_apply(f: &SignedFunctional, x: &SparseVector) -> BigRational {
    let mut total = BigRational::zero();
    for i in f.support.iter() {
        let v = x.get(i);
        if f.negative.contains(i) {
            total -= v;
        } else {
            total += v;
        }
    }
    total
}

/// `‖x‖_F` over an explicit family, scanning every member.
pub fn norm(f: &ExplicitFamily, x: &SparseVector) -> BigRational {
    let weights: Vec<(u32, BigRational)> = x
        .iter()
        .filter(|&(i, _)| i >= f.base() && i < f.window())
        .map(|(i, v)| (i, v.abs()))
        .collect();
    let mut best = BigRational::zero();
    for &m in f.masks() {
        let mut total = BigRational::zero();
        for (i, w) in &weights {
            if m >> i & 1 == 1 {
                total += w;
            }
        }
        if total > best {
            best = total;
        }
    }
    best
}

/// `‖x‖_L` over a hereditary lazy family, searching members inside the
/// support of `x`.
pub fn norm_lazy(l: &LazyFamily, x: &SparseVector) -> Result<BigRational> {
    if !l.is_hereditary() {
        return Err(Error::NotHereditary);
    }
    let mut best = BigRational::zero();
    if !l.contains(&FinSet::empty()) {
        return Ok(best);
    }
    let items: Vec<(u32, BigRational)> = x.iter().map(|(i, v)| (i, v.abs())).collect();
    // suffix sums bound what the remaining indices can add
    let mut rest = vec![BigRational::zero(); items.len() + 1];
    for k in (0..items.len()).rev() {
        rest[k] = &rest[k + 1] + &items[k].1;
    }
    let mut stack = vec![(FinSet::empty(), BigRational::zero(), 0usize)];
    while let Some((s, total, next)) = stack.pop() {
        if total > best {
            best = total.clone();
        }
        if &total + &rest[next] <= best {
            continue;
        }
        for (k, (i, w)) in items.iter().enumerate().skip(next) {
            let t = s.with(*i);
            if l.contains(&t) {
                stack.push((t, &total + w, k + 1));
            }
        }
    }
    Ok(best)
}

/// Signed functionals over the maximal members of a hereditary family,
/// in canonical order.
pub fn extreme_points(f: &ExplicitFamily) -> Result<Vec<SignedFunctional>> {
    if !f.is_hereditary() {
        return Err(Error::NotHereditary);
    }
    let mut out: Vec<SignedFunctional> = f
        .maximal_elements()
        .members()
        .flat_map(|s| SignedFunctional::all_over(&s))
        .collect();
    out.sort();
    Ok(out)
}

/// Whether `g` is a vertex of the convex hull of all signed functionals
/// over members of `f`, decided by exact linear programming.
pub fn is_extreme_brute(f: &ExplicitFamily, g: &SignedFunctional) -> Result<bool> {
    if !f.contains(&g.support) {
        return Err(Error::NotMember(g.support.clone()));
    }
    let candidates: BTreeSet<SignedFunctional> = f
        .members()
        .flat_map(|s| SignedFunctional::all_over(&s))
        .filter(|c| c != g)
        .collect();
    let (b, w) = (f.base(), f.window());
    let points: Vec<Vec<BigRational>> = candidates.iter().map(|c| c.coordinates(b, w)).collect();
    Ok(!in_convex_hull(&points, &g.coordinates(b, w)))
}

/// `max |φ(x)|` over the extreme points `φ` of the dual ball.
pub fn extreme_value(f: &ExplicitFamily, x: &SparseVector) -> Result<BigRational> {
    Ok(extreme_points(f)?
        .iter()
        .map(|g| functional_apply(g, x).abs())
        .max()
        .unwrap_or_else(BigRational::zero))
}

/// Whether the extreme points norm every sampled vector exactly.
pub fn norming_check(f: &ExplicitFamily, sample: &[SparseVector]) -> Result<bool> {
    let points = extreme_points(f)?;
    Ok(sample.iter().all(|x| {
        let attained = points
            .iter()
            .map(|g| functional_apply(g, x).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        attained == norm(f, x)
    }))
}

pub fn apply_operator(t: &SignedPermutationOperator, x: &SparseVector) -> SparseVector {
    SparseVector::from_entries(x.iter().map(|(i, v)| {
        let v = if t.negated.contains(i) { -v.clone() } else { v.clone() };
        (t.permutation.apply(i), v)
    }))
}

/// A set in `π[F] Δ G` and the two norms that disagree on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryWitness {
    pub set: FinSet,
    /// `1_set` in the target coordinates.
    pub vector: SparseVector,
    /// `‖T⁻¹ 1_set‖_F`.
    pub source_norm: BigRational,
    /// `‖1_set‖_G`.
    pub target_norm: BigRational,
}

/// Decides whether `T` is an isometry from `X_F` onto `X_G`: exactly when
/// `π[F]` and `G` have the same nonempty members. Otherwise the
/// canonically least set of `π[F] Δ G` is returned with its disagreeing
/// norms.
///
/// The empty set never contributes to a norm, so the empty family and
/// `{∅}` both give the zero norm and are not told apart.
pub fn is_isometry(
    t: &SignedPermutationOperator,
    f: &ExplicitFamily,
    g: &ExplicitFamily,
) -> Result<Option<IsometryWitness>> {
    if f.base() != g.base() || f.window() != g.window() {
        return Err(Error::WindowMismatch(format!(
            "[{}, {}) against [{}, {})",
            f.base(),
            f.window(),
            g.base(),
            g.window()
        )));
    }
    if !f.is_hereditary() || !g.is_hereditary() {
        return Err(Error::NotHereditary);
    }
    let image = f.apply_permutation(&t.permutation)?;
    let Some(set) = image
        .members()
        .filter(|s| !g.contains(s))
        .chain(g.members().filter(|s| !image.contains(s)))
        .filter(|s| !s.is_empty())
        .min()
    else {
        return Ok(None);
    };
    let vector = SparseVector::indicator(&set, &FinSet::empty());
    let source = apply_operator(&t.inverse(), &vector);
    Ok(Some(IsometryWitness {
        source_norm: norm(f, &source),
        target_norm: norm(g, &vector),
        set,
        vector,
    }))
}

impl fmt::Display for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
