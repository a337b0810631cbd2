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


//! Property suites for families, spreads, norms and isomorphism search,
//! each checked against an independent oracle.

use combfam::iso::{
    automorphism_count, enumerate_hereditary_spreading, find_pi_homeomorphism, point_signature, stratum,
    CensusConfig,
};
use combfam::norm::{apply_operator, is_isometry, norm, SignedPermutationOperator, SparseVector};
use combfam::spreading::{
    canonical_spread_witness, is_spread_of, is_spreading, spreading_closure, spreads_within,
};
use combfam::{ExplicitFamily, FinSet, Permutation};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

fn family(max_w: u32) -> impl Strategy<Value = ExplicitFamily> {
    (1..=max_w).prop_flat_map(|w| {
        let full = (1u64 << w) - 1;
        prop::collection::vec(any::<u64>().prop_map(move |m| m & full), 0..8)
            .prop_map(move |masks| ExplicitFamily::from_masks(0, w, masks).unwrap())
    })
}

fn hereditary(max_w: u32) -> impl Strategy<Value = ExplicitFamily> {
    family(max_w).prop_map(|f| f.downward_closure())
}

fn shuffled(w: u32) -> impl Strategy<Value = Permutation> {
    Just((0..w).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|t| Permutation::from_table(t).unwrap())
}

fn family_and_perm(max_w: u32) -> impl Strategy<Value = (ExplicitFamily, Permutation)> {
    hereditary(max_w).prop_flat_map(|f| {
        let w = f.window();
        (Just(f), shuffled(w))
    })
}

fn set_below(n: u32, max_len: usize) -> impl Strategy<Value = FinSet> {
    prop::collection::btree_set(0..n, 0..=max_len).prop_map(FinSet::new)
}

fn vector(w: u32) -> impl Strategy<Value = SparseVector> {
    prop::collection::vec((-6i64..=6, 1i64..=3), w as usize).prop_map(|v| {
        SparseVector::from_entries(
            v.into_iter()
                .enumerate()
                .map(|(i, (p, q))| (i as u32, BigRational::new(BigInt::from(p), BigInt::from(q)))),
        )
    })
}

/// Whether some permutation of the window carries `f` onto `g`, by trying all.
fn brute_pi(f: &ExplicitFamily, g: &ExplicitFamily) -> Option<Permutation> {
    let w = f.window();
    let mut table: Vec<u32> = (0..w).collect();
    let mut found = None;
    permute_all(&mut table, 0, &mut |t| {
        let pi = Permutation::from_table(t.to_vec()).unwrap();
        if found.is_none() && f.apply_permutation(&pi).unwrap() == *g {
            found = Some(pi.trimmed());
        }
    });
    found
}

fn permute_all(t: &mut Vec<u32>, i: usize, visit: &mut dyn FnMut(&[u32])) {
    if i == t.len() {
        visit(t);
        return;
    }
    for j in i..t.len() {
        t.swap(i, j);
        permute_all(t, i + 1, visit);
        t.swap(i, j);
    }
}

fn brute_automorphisms(f: &ExplicitFamily) -> usize {
    let mut table: Vec<u32> = (0..f.window()).collect();
    let mut count = 0;
    permute_all(&mut table, 0, &mut |t| {
        let pi = Permutation::from_table(t.to_vec()).unwrap();
        count += (f.apply_permutation(&pi).unwrap() == *f) as usize;
    });
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn downward_closure_is_idempotent_and_hereditary(f in family(6)) {
        let d = f.downward_closure();
        prop_assert!(d.is_hereditary());
        prop_assert_eq!(d.downward_closure(), d.clone());
        prop_assert!(f.members().all(|s| d.contains(&s)));
        prop_assert_eq!(d.maximal_elements().downward_closure(), d);
    }

    #[test]
    fn spreading_closure_is_idempotent(f in family(6)) {
        let c = spreading_closure(&f);
        prop_assert_eq!(spreading_closure(&c), c.clone());
        prop_assert!(is_spreading(&c, c.window()).unwrap());
        prop_assert!(f.members().all(|s| c.contains(&s)));
    }

    #[test]
    fn permutation_images_invert((f, pi) in family_and_perm(6)) {
        let image = f.apply_permutation(&pi).unwrap();
        prop_assert_eq!(image.apply_permutation(&pi.inverse()).unwrap(), f.clone());
        prop_assert_eq!(image.is_hereditary(), f.is_hereditary());
        prop_assert_eq!(image.size_profile(), f.size_profile());
        prop_assert_eq!(image.maximal_elements(), f.maximal_elements().apply_permutation(&pi).unwrap());
    }

    #[test]
    fn canonical_witness_is_valid(s in set_below(12, 5), t in set_below(12, 5)) {
        match canonical_spread_witness(&s, &t) {
            Ok(w) => {
                prop_assert!(is_spread_of(&s, &t));
                prop_assert!(w.pairs().iter().all(|&(a, b)| b >= a && s.contains(a) && t.contains(b)));
                for i in s.intersection(&t).iter() {
                    prop_assert_eq!(w.apply(i), Some(i));
                }
            }
            Err(_) => prop_assert!(!is_spread_of(&s, &t)),
        }
    }

    #[test]
    fn spreads_within_are_exactly_the_spreads(s in set_below(8, 4)) {
        let listed = spreads_within(&s, 0, 8);
        let brute: Vec<FinSet> = (0..1u64 << 8)
            .map(FinSet::from_mask)
            .filter(|t| is_spread_of(&s, t))
            .collect();
        let mut listed_sorted = listed.clone();
        listed_sorted.sort();
        let mut brute_sorted = brute;
        brute_sorted.sort();
        prop_assert_eq!(listed_sorted, brute_sorted);
    }

    #[test]
    fn norm_axioms(f in hereditary(6), seeds in (vector(6), vector(6), -4i64..=4)) {
        let (x, y, c) = seeds;
        let c = BigRational::from_integer(BigInt::from(c));
        prop_assert!(norm(&f, &x.add(&y)) <= norm(&f, &x) + norm(&f, &y));
        prop_assert_eq!(norm(&f, &x.scale(&c)), c.abs() * norm(&f, &x));
        let flips: FinSet = (0..6).filter(|i| i % 2 == 0).collect();
        prop_assert_eq!(norm(&f, &x.flip_signs(&flips)), norm(&f, &x));
        for i in 0..f.window() {
            let e = SparseVector::indicator(&FinSet::singleton(i), &FinSet::empty());
            let expected = if f.contains(&FinSet::singleton(i)) { 1 } else { 0 };
            prop_assert_eq!(norm(&f, &e), BigRational::from_integer(BigInt::from(expected)));
        }
    }

    #[test]
    fn indicator_norm_is_largest_trace(f in hereditary(6), s in set_below(6, 6)) {
        let s = FinSet::new(s.iter().filter(|&i| i < f.window()));
        let x = SparseVector::indicator(&s, &FinSet::empty());
        let largest = f.members().map(|m| m.intersection(&s).len()).max().unwrap_or(0);
        prop_assert_eq!(norm(&f, &x), BigRational::from_integer(BigInt::from(largest)));
    }

    #[test]
    fn signatures_travel_with_points((f, pi) in family_and_perm(6)) {
        let image = f.apply_permutation(&pi).unwrap();
        for a in 0..f.window() {
            prop_assert_eq!(point_signature(&image, pi.apply(a)), point_signature(&f, a));
        }
    }

    #[test]
    fn search_recovers_permuted_families((f, pi) in family_and_perm(7)) {
        let g = f.apply_permutation(&pi).unwrap();
        let found = find_pi_homeomorphism(&f, &g).unwrap().expect("g is a permuted copy");
        prop_assert_eq!(f.apply_permutation(&found).unwrap(), g);
    }

    #[test]
    fn search_matches_exhaustive_permutations(f in hereditary(7), g in hereditary(7)) {
        prop_assume!(f.window() == g.window());
        let found = find_pi_homeomorphism(&f, &g).unwrap();
        let brute = brute_pi(&f, &g);
        prop_assert_eq!(found.is_some(), brute.is_some());
        if let Some(pi) = found {
            prop_assert_eq!(f.apply_permutation(&pi).unwrap(), g);
        }
    }

    #[test]
    fn automorphism_count_matches_exhaustive(f in hereditary(6)) {
        prop_assert_eq!(automorphism_count(&f), BigUint::from(brute_automorphisms(&f)));
    }

    #[test]
    fn isometry_adjoint((f, pi) in family_and_perm(5), negated in set_below(5, 5), same in any::<bool>(), g in hereditary(5)) {
        let w = f.window();
        let negated = FinSet::new(negated.iter().filter(|&i| i < w));
        let t = SignedPermutationOperator::new(pi.clone(), negated);
        let g = if same || g.window() != w { f.apply_permutation(&pi).unwrap() } else { g };
        let forward = is_isometry(&t, &f, &g).unwrap();
        let backward = is_isometry(&t.inverse(), &g, &f).unwrap();
        prop_assert_eq!(forward.is_none(), backward.is_none());
        if let Some(witness) = forward {
            prop_assert_ne!(&witness.source_norm, &witness.target_norm);
            let x = apply_operator(&t.inverse(), &witness.vector);
            prop_assert_eq!(norm(&f, &x), witness.source_norm);
            prop_assert_eq!(norm(&g, &witness.vector), witness.target_norm);
        }
    }
}

/// Down-set closure preserves spreading when the window leaves headroom
/// for fresh points above every member.
#[test]
fn downward_closure_keeps_spreading_with_headroom() {
    for m in 1..=4u32 {
        for size in 1..=m as usize {
            let window = 2 * m + size as u32;
            let mut config = CensusConfig::new(m, window);
            config.max_size = Some(size);
            for relaxed in [false, true] {
                config.require_singletons = !relaxed;
                for g in enumerate_hereditary_spreading(&config).unwrap() {
                    // the maximal members generate a spreading, non-hereditary family
                    let top = spreading_closure(&g.maximal_elements());
                    if is_spreading(&top, m).unwrap() {
                        assert!(is_spreading(&top.downward_closure(), m).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn strata_are_spreading() {
    for m in 1..=4u32 {
        for relaxed in [false, true] {
            let mut config = CensusConfig::new(m, 3 * m);
            config.require_singletons = !relaxed;
            for f in enumerate_hereditary_spreading(&config).unwrap() {
                for n in 0..=f.max_member_size() {
                    for k in 0..=f.window() as usize {
                        let layer = stratum(&f, n, k);
                        assert!(is_spreading(&layer, f.window()).unwrap(), "stratum {n},{k} of {f:?}");
                        assert!(is_spreading(&layer.downward_closure(), m).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn relaxed_singletons_base_case() {
    // without the singleton requirement the census still has no collisions
    for m in 1..=4u32 {
        let mut config = CensusConfig::new(m, 3 * m);
        config.require_singletons = false;
        for f in enumerate_hereditary_spreading(&config).unwrap() {
            // missing singletons form an initial segment of the window
            let missing: Vec<u32> = (0..f.window()).filter(|&i| !f.contains(&FinSet::singleton(i))).collect();
            assert_eq!(missing, (0..missing.len() as u32).collect::<Vec<_>>());
        }
        let report = combfam::iso::uniqueness_census(&config).unwrap();
        assert!(report.counterexamples.is_empty(), "{}", report.summary());
    }
}
