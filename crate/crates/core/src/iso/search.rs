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


//! Backtracking search for permutations carrying one family onto another.
//!
//! Points of the ground are assigned in increasing order and candidates
//! are tried in increasing order, so the first solution found is the
//! lexicographically least. Pruning uses jointly refined colours, the
//! members whose largest point was just assigned, a member count on the
//! assigned region, and twins: the least solution is increasing on every
//! class of interchangeable points of the source family.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::signature::{joint_colors, map_mask, twin_classes};
use crate::error::{Error, Result};
use crate::family::ExplicitFamily;
use crate::finset::FinSet;
use crate::permutation::Permutation;

struct Search<'a> {
    g: &'a ExplicitFamily,
    base: u32,
    window: u32,
    colors_f: Vec<u32>,
    colors_g: Vec<u32>,
    /// Nonempty members of `F` by largest point.
    by_max: Vec<Vec<u64>>,
    /// Members of `F` inside `[base, p]`, by `p`.
    inside: Vec<usize>,
    twin_prev: Vec<Option<u32>>,
    table: Vec<u32>,
    used: u64,
}

impl<'a> Search<'a> {
    fn new(f: &'a ExplicitFamily, g: &'a ExplicitFamily) -> Option<Self> {
        if f.len() != g.len() || f.size_profile() != g.size_profile() {
            return None;
        }
        let colors = joint_colors(&[f, g]);
        let mut hf = colors[0].clone();
        let mut hg = colors[1].clone();
        hf.sort_unstable();
        hg.sort_unstable();
        if hf != hg {
            return None;
        }
        let (base, window) = (f.base(), f.window());
        let span = (window - base) as usize;
        let mut by_max = vec![Vec::new(); span];
        for &m in f.masks() {
            if m != 0 {
                by_max[(63 - m.leading_zeros() - base) as usize].push(m);
            }
        }
        let empty = usize::from(f.contains_mask(0));
        let inside = by_max
            .iter()
            .scan(empty, |acc, v| {
                *acc += v.len();
                Some(*acc)
            })
            .collect();
        let mut twin_prev = vec![None; span];
        for class in twin_classes(f) {
            for w in class.windows(2) {
                twin_prev[(w[1] - base) as usize] = Some(w[0]);
            }
        }
        Some(Search {
            g,
            base,
            window,
            colors_f: colors[0].clone(),
            colors_g: colors[1].clone(),
            by_max,
            inside,
            twin_prev,
            table: (0..window).collect(),
            used: 0,
        })
    }

    fn consistent(&self, p: u32) -> bool {
        let i = (p - self.base) as usize;
        if !self.by_max[i]
            .iter()
            .all(|&m| self.g.contains_mask(map_mask(m, &self.table)))
        {
            return false;
        }
        let in_image = self.g.masks().iter().filter(|&&m| m & !self.used == 0).count();
        in_image == self.inside[i]
    }

    /// Visits solutions in lexicographic order until `visit` returns false.
    fn run(&mut self, p: u32, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if p == self.window {
            return visit(&self.table);
        }
        let i = (p - self.base) as usize;
        let floor = self.twin_prev[i].map_or(self.base, |t| self.table[t as usize] + 1);
        for q in floor..self.window {
            let j = (q - self.base) as usize;
            if self.used >> q & 1 == 1 || self.colors_g[j] != self.colors_f[i] {
                continue;
            }
            self.table[p as usize] = q;
            self.used |= 1u64 << q;
            let keep_going = !self.consistent(p) || self.run(p + 1, visit);
            self.used &= !(1u64 << q);
            self.table[p as usize] = p;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

fn check_same_ground(f: &ExplicitFamily, g: &ExplicitFamily) -> Result<()> {
    if f.base() != g.base() || f.window() != g.window() {
        return Err(Error::WindowMismatch(format!(
            "[{}, {}) against [{}, {})",
            f.base(),
            f.window(),
            g.base(),
            g.window()
        )));
    }
    Ok(())
}

/// The lexicographically least permutation `π` of the ground with
/// `π[F] = G`, if any. Points below the base stay fixed.
pub fn find_pi_homeomorphism(f: &ExplicitFamily, g: &ExplicitFamily) -> Result<Option<Permutation>> {
    check_same_ground(f, g)?;
    let Some(mut search) = Search::new(f, g) else {
        return Ok(None);
    };
    let mut found = None;
    let base = search.base;
    search.run(base, &mut |table| {
        found = Some(table.to_vec());
        false
    });
    Ok(found.map(|t| Permutation::from_table(t).expect("search builds bijections").trimmed()))
}

/// Automorphisms increasing on every twin class; one per coset of the
/// twin symmetry group.
fn class_monotone_automorphisms(f: &ExplicitFamily, limit: Option<usize>) -> Result<Vec<Vec<u32>>> {
    let mut search = Search::new(f, f).expect("a family matches itself");
    let mut out = Vec::new();
    let mut overflow = false;
    let base = search.base;
    search.run(base, &mut |table| {
        out.push(table.to_vec());
        if limit.is_some_and(|l| out.len() > l) {
            overflow = true;
            return false;
        }
        true
    });
    if overflow {
        return Err(Error::AutomorphismOverflow(limit.unwrap_or(0)));
    }
    Ok(out)
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Number of permutations of the ground fixing the family.
pub fn automorphism_count(f: &ExplicitFamily) -> BigUint {
    let twins: BigUint = twin_classes(f).iter().map(|c| factorial(c.len())).product();
    let cosets = class_monotone_automorphisms(f, None).expect("no limit").len();
    twins * cosets
}

/// Every automorphism in lexicographic order, or an overflow error when
/// there are more than `cap`.
pub fn automorphisms(f: &ExplicitFamily, cap: usize) -> Result<Vec<Permutation>> {
    if automorphism_count(f) > BigUint::from(cap) {
        return Err(Error::AutomorphismOverflow(cap));
    }
    let classes = twin_classes(f);
    let mut out = Vec::new();
    for table in class_monotone_automorphisms(f, None)? {
        // compose with every permutation of every twin class
        let mut partial = vec![table];
        for class in &classes {
            let mut next = Vec::new();
            for t in &partial {
                for order in permutations_of(class) {
                    let mut u = t.clone();
                    for (&from, &to) in class.iter().zip(&order) {
                        u[from as usize] = t[to as usize];
                    }
                    next.push(u);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out.sort();
    Ok(out
        .into_iter()
        .map(|t| Permutation::from_table(t).expect("automorphisms are bijections").trimmed())
        .collect())
}

fn permutations_of(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Automorphisms split into those of the member support and relabelings
/// of free points (points in no member).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismReport {
    pub count: BigUint,
    pub free_points: FinSet,
    /// Automorphisms fixing every free point.
    pub support_count: BigUint,
    pub twin_classes: Vec<Vec<u32>>,
    /// Support automorphisms, listed when at most the cap.
    pub support_automorphisms: Option<Vec<Permutation>>,
}

pub fn automorphism_report(f: &ExplicitFamily, cap: usize) -> AutomorphismReport {
    let covered = f.masks().iter().fold(0u64, |a, &m| a | m);
    let free_points: FinSet = (f.base()..f.window()).filter(|&p| covered >> p & 1 == 0).collect();
    let count = automorphism_count(f);
    let support_count = &count / factorial(free_points.len());
    let support_automorphisms = (support_count <= BigUint::from(cap)).then(|| {
        automorphisms(f, usize::MAX)
            .expect("no cap")
            .into_iter()
            .filter(|pi| free_points.iter().all(|p| pi.apply(p) == p))
            .collect()
    });
    AutomorphismReport {
        count,
        free_points,
        support_count,
        twin_classes: twin_classes(f),
        support_automorphisms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{perm_pair, schreier};

    fn fam(window: u32, sets: &[&[u32]]) -> ExplicitFamily {
        ExplicitFamily::new(0, window, sets.iter().map(|s| FinSet::new(s.iter().copied()))).unwrap()
    }

    #[test]
    fn identity_for_symmetric_family() {
        let f = ExplicitFamily::cube(0, 3, 1).unwrap();
        assert_eq!(find_pi_homeomorphism(&f, &f).unwrap(), Some(Permutation::identity(0)));
    }

    #[test]
    fn perm_pair_is_found() {
        let (f, g) = perm_pair();
        let (f, g) = (f.truncate(6).unwrap(), g.truncate(6).unwrap());
        let pi = find_pi_homeomorphism(&f, &g).unwrap().unwrap();
        assert_eq!(f.apply_permutation(&pi).unwrap(), g);
        assert_eq!(pi.image(&FinSet::from([2, 3])), FinSet::from([1, 2]));
    }

    #[test]
    fn mismatched_windows_are_rejected() {
        let f = ExplicitFamily::cube(0, 3, 1).unwrap();
        let g = ExplicitFamily::cube(0, 4, 1).unwrap();
        assert!(find_pi_homeomorphism(&f, &g).is_err());
    }

    #[test]
    fn automorphism_examples() {
        let f = ExplicitFamily::cube(0, 2, 1).unwrap();
        assert_eq!(automorphisms(&f, 10).unwrap().len(), 2);
        let g = fam(3, &[&[], &[0], &[1], &[0, 1], &[2]]);
        let autos = automorphisms(&g, 10).unwrap();
        assert_eq!(autos, vec![Permutation::identity(0), Permutation::swap(0, 1)]);
        let big = ExplicitFamily::cube(0, 8, 1).unwrap();
        assert_eq!(automorphism_count(&big), BigUint::from(40320u32));
        assert_eq!(automorphisms(&big, 100), Err(Error::AutomorphismOverflow(100)));
    }

    #[test]
    fn truncated_schreier_symmetry_is_a_window_artifact() {
        // {2,3,4} plays the role of the infinite tail in window 5
        let f = schreier().truncate(5).unwrap();
        let report = automorphism_report(&f, 100);
        assert_eq!(report.count, BigUint::from(6u32));
        assert!(report.free_points.is_empty());
        assert_eq!(report.twin_classes, vec![vec![0], vec![1], vec![2, 3, 4]]);
    }

    #[test]
    fn free_points_are_split_off() {
        let f = fam(4, &[&[], &[0], &[1], &[0, 1]]);
        let report = automorphism_report(&f, 100);
        assert_eq!(report.count, BigUint::from(4u32));
        assert_eq!(report.free_points, FinSet::from([2, 3]));
        assert_eq!(report.support_count, BigUint::from(2u32));
        assert_eq!(report.support_automorphisms.unwrap().len(), 2);
    }
}
