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


//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed; the process
//! exits nonzero when any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use combfam::constructions::{adjacent_pairs_removed, cube, homeo_not_pi_pair, perm_pair, schreier};
use combfam::iso::census::generators;
use combfam::iso::{
    claim_scan, enumerate_hereditary_spreading, find_pi_homeomorphism, reconstruction_failures,
    regular_reachability, uniqueness_census, CensusConfig,
};
use combfam::lazy::DEFAULT_BUDGET;
use combfam::norm::{
    apply_operator, extreme_points, functional_apply, is_extreme_brute, is_isometry, norm, SignedFunctional,
    SignedPermutationOperator, SparseVector,
};
use combfam::spreading::is_spread_of;
use combfam::{ExplicitFamily, FinSet, OrdinalW2, Permutation, RankValue};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMIT_SCHREIER_RANKS: Duration = Duration::from_secs(10);
const LIMIT_CUBE_RANKS: Duration = Duration::from_secs(1);
const LIMIT_EXTREME_SWEEP: Duration = Duration::from_secs(60);
const LIMIT_NORMING: Duration = Duration::from_secs(30);
const LIMIT_CENSUS_M4: Duration = Duration::from_secs(300);
const LIMIT_SPREAD_ORACLE: Duration = Duration::from_secs(30);

const SEED_NORMING: u64 = 0x5eed_0004;
const SEED_ISOMETRY: u64 = 0x5eed_0011;

/// Outcome of one criterion: pass flag and a one-line detail.
type Verdict = (bool, String);

type Criterion = (&'static str, fn() -> Verdict);

fn timed(limit: Duration, elapsed: Duration, ok: bool, detail: String) -> Verdict {
    let in_time = elapsed <= limit;
    (
        ok && in_time,
        format!("{detail}; {:.2?} (limit {:?})", elapsed, limit),
    )
}

fn c1_schreier_ranks() -> Verdict {
    let start = Instant::now();
    let s = schreier();
    let mut bad = Vec::new();
    for n in 0..=8u32 {
        let r = s.cb_rank_point(&FinSet::singleton(n), DEFAULT_BUDGET).unwrap();
        if r != RankValue::Exact(OrdinalW2::finite(n)) {
            bad.push(format!("{{{n}}} -> {r}"));
        }
    }
    timed(
        LIMIT_SCHREIER_RANKS,
        start.elapsed(),
        bad.is_empty(),
        format!("rank {{n}} = n for n = 0..8, mismatches {bad:?}"),
    )
}

fn c2_cube_ranks() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 0..=6u32 {
        let r = cube(n).family_rank(DEFAULT_BUDGET).unwrap();
        if r != RankValue::Exact(OrdinalW2::finite(n + 1)) {
            bad.push(format!("cube {n} -> {r}"));
        }
    }
    timed(
        LIMIT_CUBE_RANKS,
        start.elapsed(),
        bad.is_empty(),
        format!("family rank n+1 for n = 0..6, mismatches {bad:?}"),
    )
}

/// Every hereditary family on `[0, w)`, as the down-sets of the subset lattice.
fn hereditary_families(w: u32) -> Vec<ExplicitFamily> {
    let subsets: Vec<u64> = {
        let mut v: Vec<u64> = (0..1u64 << w).collect();
        v.sort_by_key(|m| m.count_ones());
        v
    };
    let mut out = Vec::new();
    let mut chosen: Vec<u64> = Vec::new();
    fn rec(subsets: &[u64], i: usize, chosen: &mut Vec<u64>, w: u32, out: &mut Vec<ExplicitFamily>) {
        if i == subsets.len() {
            out.push(ExplicitFamily::from_masks(0, w, chosen.clone()).unwrap());
            return;
        }
        let m = subsets[i];
        let lower_present = (0..w)
            .filter(|b| m >> b & 1 == 1)
            .all(|b| chosen.contains(&(m & !(1u64 << b))));
        if lower_present {
            chosen.push(m);
            rec(subsets, i + 1, chosen, w, out);
            chosen.pop();
        }
        rec(subsets, i + 1, chosen, w, out);
    }
    rec(&subsets, 0, &mut chosen, w, &mut out);
    out
}

fn c3_extreme_points() -> Verdict {
    let start = Instant::now();
    let mut families = 0;
    let mut disagreements = Vec::new();
    for w in 0..=4 {
        for f in hereditary_families(w).into_iter().filter(|f| f.len() <= 12) {
            families += 1;
            let listed: BTreeSet<SignedFunctional> = extreme_points(&f).unwrap().into_iter().collect();
            let mut brute = BTreeSet::new();
            for s in f.members() {
                for g in SignedFunctional::all_over(&s) {
                    if is_extreme_brute(&f, &g).unwrap() {
                        brute.insert(g);
                    }
                }
            }
            if listed != brute {
                disagreements.push(format!("{:?}", f.members().collect::<Vec<_>>()));
            }
        }
    }
    timed(
        LIMIT_EXTREME_SWEEP,
        start.elapsed(),
        disagreements.is_empty() && families > 0,
        format!("{families} hereditary families, disagreements {disagreements:?}"),
    )
}

fn random_hereditary(rng: &mut ChaCha8Rng, w: u32) -> ExplicitFamily {
    let count = rng.gen_range(0..=w as usize + 2);
    let full = if w == 0 { 0 } else { (1u64 << w) - 1 };
    let gens: Vec<u64> = (0..count).map(|_| rng.gen::<u64>() & full).collect();
    ExplicitFamily::from_masks(0, w, gens.into_iter().chain([0])).unwrap().downward_closure()
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=4)))
}

fn c4_norming() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED_NORMING);
    let mut bad = 0;
    for _ in 0..500 {
        let w = rng.gen_range(1..=6);
        let f = random_hereditary(&mut rng, w);
        let x = SparseVector::from_entries((0..w).map(|i| (i, random_rational(&mut rng))));
        let best = extreme_points(&f)
            .unwrap()
            .iter()
            .map(|g| functional_apply(g, &x).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        if norm(&f, &x) != best {
            bad += 1;
        }
    }
    timed(
        LIMIT_NORMING,
        start.elapsed(),
        bad == 0,
        format!("500 random pairs, mismatches {bad}"),
    )
}

/// Hereditary families on `[0, m)` containing every singleton and closed
/// under spreads inside `[0, m)`, by brute force over all families.
fn regular_generator_sets(m: u32) -> BTreeSet<Vec<u64>> {
    let nonsingle: Vec<u64> = (0..1u64 << m).filter(|x| x.count_ones() >= 2).collect();
    let base: Vec<u64> = std::iter::once(0).chain((0..m).map(|i| 1u64 << i)).collect();
    let mut out = BTreeSet::new();
    for pick in 0..1u64 << nonsingle.len() {
        let mut fam: Vec<u64> = base.clone();
        fam.extend(nonsingle.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &x)| x));
        let f = ExplicitFamily::from_masks(0, m, fam).unwrap();
        let closed = f.is_hereditary()
            && f.members().all(|s| {
                f.members().chain(all_sets(m)).all(|t| !is_spread_of(&s, &t) || f.contains(&t))
            });
        if closed {
            out.insert(f.masks().to_vec());
        }
    }
    out
}

fn all_sets(m: u32) -> impl Iterator<Item = FinSet> {
    (0..1u64 << m).map(FinSet::from_mask)
}

fn census_config(m: u32) -> CensusConfig {
    CensusConfig::new(m, 3 * m)
}

fn c5_census() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut m4 = Duration::ZERO;
    for m in 2..=4 {
        let start = Instant::now();
        let report = uniqueness_census(&census_config(m)).unwrap();
        let elapsed = start.elapsed();
        if m == 4 {
            m4 = elapsed;
        }
        let families = enumerate_hereditary_spreading(&census_config(m)).unwrap();
        let seen: BTreeSet<Vec<u64>> = families
            .iter()
            .map(|f| {
                let g = ExplicitFamily::new(0, m, generators(f, m)).unwrap();
                g.masks().to_vec()
            })
            .collect();
        let oracle = regular_generator_sets(m);
        let count_ok = seen == oracle && families.len() == oracle.len();
        ok &= count_ok && report.counterexamples.is_empty();
        parts.push(format!("M={m} N={} [{}] oracle {}", 3 * m, report.summary(), if count_ok { "agrees" } else { "DISAGREES" }));
    }
    timed(LIMIT_CENSUS_M4, m4, ok, parts.join("; "))
}

fn census_families() -> Vec<ExplicitFamily> {
    let mut out = Vec::new();
    for m in 1..=4 {
        for relaxed in [false, true] {
            let mut c = census_config(m);
            c.require_singletons = !relaxed;
            out.extend(enumerate_hereditary_spreading(&c).unwrap());
        }
    }
    out
}

fn c6_claim() -> Verdict {
    let families = census_families();
    let mut pairs = 0;
    let mut violations = Vec::new();
    for f in &families {
        let scan = claim_scan(f);
        pairs += scan.pairs;
        violations.extend(scan.violations.into_iter().map(|v| format!("{} -> {}", v.source, v.target)));
    }
    (
        violations.is_empty(),
        format!("{} families, {pairs} spread pairs, violations {violations:?}", families.len()),
    )
}

fn c7_reconstruction() -> Verdict {
    let families = census_families();
    let mut bad = Vec::new();
    let mut levels = 0;
    for (i, f) in families.iter().enumerate() {
        levels += f.max_member_size() + 1;
        let failures = reconstruction_failures(f);
        if !failures.is_empty() {
            bad.push(format!("#{i} levels {failures:?}"));
        }
    }
    (
        bad.is_empty(),
        format!("{} families, {levels} levels, violations {bad:?}", families.len()),
    )
}

fn c8_permuted_pair() -> Verdict {
    let (lf, lg) = perm_pair();
    let f = lf.truncate(6).unwrap();
    let g = lg.truncate(6).unwrap();
    match find_pi_homeomorphism(&f, &g).unwrap() {
        Some(pi) => {
            let ok = f.apply_permutation(&pi).unwrap() == g;
            (ok, format!("pi = {pi}, pi[F] = G: {ok}"))
        }
        None => (false, "no permutation found".into()),
    }
}

fn c9_homeo_not_pi() -> Verdict {
    let (lf, lg) = homeo_not_pi_pair();
    let f = lf.truncate(8).unwrap();
    let g = lg.truncate(8).unwrap();
    let found = find_pi_homeomorphism(&f, &g).unwrap();
    (
        found.is_none() && f.base() == 1,
        format!("base {}, window 8, result {:?}", f.base(), found.map(|p| p.to_string())),
    )
}

fn c10_reachability() -> Verdict {
    let f = adjacent_pairs_removed().truncate(13).unwrap();
    let report = regular_reachability(&f, 5).unwrap();
    (
        report.found.is_empty() && report.candidates > 0,
        format!("{} regular candidates, partners found {}", report.candidates, report.found.len()),
    )
}

fn random_permutation(rng: &mut ChaCha8Rng, w: u32) -> Permutation {
    let mut table: Vec<u32> = (0..w).collect();
    table.shuffle(rng);
    Permutation::from_table(table).unwrap()
}

/// `T` is an isometry on the window iff it preserves the norm of every
/// `±1_s`.
fn isometry_by_norms(t: &SignedPermutationOperator, f: &ExplicitFamily, g: &ExplicitFamily) -> bool {
    let w = f.window();
    (0..1u64 << w).all(|s| {
        let set = FinSet::from_mask(s);
        (0..1u64 << w).filter(|n| n & !s == 0).all(|neg| {
            let x = SparseVector::indicator(&set, &FinSet::from_mask(neg));
            norm(f, &x) == norm(g, &apply_operator(t, &x))
        })
    })
}

fn c11_isometry() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED_ISOMETRY);
    let mut disagreements = 0;
    let mut isometries = 0;
    for _ in 0..200 {
        let w = rng.gen_range(1..=6);
        let f = random_hereditary(&mut rng, w);
        let pi = random_permutation(&mut rng, w);
        let negated: FinSet = (0..w).filter(|_| rng.gen_bool(0.5)).collect();
        let t = SignedPermutationOperator::new(pi.clone(), negated);
        let g = match rng.gen_range(0..3) {
            0 => random_hereditary(&mut rng, w),
            1 => f.apply_permutation(&random_permutation(&mut rng, w)).unwrap(),
            _ => f.apply_permutation(&pi).unwrap(),
        };
        let exact = is_isometry(&t, &f, &g).unwrap().is_none();
        isometries += exact as usize;
        if exact != isometry_by_norms(&t, &f, &g) {
            disagreements += 1;
        }
    }
    (
        disagreements == 0,
        format!("200 pairs ({isometries} isometries), disagreements {disagreements}"),
    )
}

/// Backtracking search for an injection `σ: s → t`, onto, with `σ(i) ≥ i`.
fn injection_exists(s: &[u32], t: &[u32], used: &mut Vec<bool>) -> bool {
    let Some((&first, rest)) = s.split_first() else {
        return used.iter().all(|&u| u);
    };
    for (j, &target) in t.iter().enumerate() {
        if !used[j] && target >= first {
            used[j] = true;
            let found = injection_exists(rest, t, used);
            used[j] = false;
            if found {
                return true;
            }
        }
    }
    false
}

fn c12_spread_oracle() -> Verdict {
    let start = Instant::now();
    let sets: Vec<FinSet> = all_sets(10).filter(|s| s.len() <= 5).collect();
    let mut pairs = 0usize;
    let mut bad = 0usize;
    for s in &sets {
        for t in &sets {
            pairs += 1;
            let brute = s.len() == t.len() && injection_exists(s.elements(), t.elements(), &mut vec![false; t.len()]);
            if brute != is_spread_of(s, t) {
                bad += 1;
            }
        }
    }
    timed(
        LIMIT_SPREAD_ORACLE,
        start.elapsed(),
        bad == 0,
        format!("{pairs} pairs, disagreements {bad}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("schreier singleton ranks", c1_schreier_ranks),
        ("cube family ranks", c2_cube_ranks),
        ("extreme points vs vertex oracle", c3_extreme_points),
        ("norming by extreme points", c4_norming),
        ("uniqueness census", c5_census),
        ("exclusion-set claim", c6_claim),
        ("level reconstruction", c7_reconstruction),
        ("permuted pair", c8_permuted_pair),
        ("homeomorphic pair without permutation", c9_homeo_not_pi),
        ("non-regular reachability", c10_reachability),
        ("isometry iff family equality", c11_isometry),
        ("spread dominance oracle", c12_spread_oracle),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            });
        failed += !ok as usize;
        println!("[{}] {:>2}. {name}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
