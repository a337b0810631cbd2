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


//! Exact convex-combination feasibility by phase-one simplex.
//!
//! Bland's rule guarantees termination; all arithmetic is over
//! `BigRational`, so the answer is exact.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Whether `target` is a convex combination of `points`.
pub(crate) fn in_convex_hull(points: &[Vec<BigRational>], target: &[BigRational]) -> bool {
    let n = points.len();
    if n == 0 {
        return false;
    }
    let d = target.len();
    let m = d + 1;
    let width = n + m + 1;
    let rhs = width - 1;
    // rows: coordinates, then the weight sum; columns: λ, artificials, rhs
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![BigRational::zero(); width];
        for (j, p) in points.iter().enumerate() {
            row[j] = if i < d { p[i].clone() } else { BigRational::one() };
        }
        row[n + i] = BigRational::one();
        row[rhs] = if i < d { target[i].clone() } else { BigRational::one() };
        if row[rhs].is_negative() {
            for (j, v) in row.iter_mut().enumerate() {
                if j != n + i {
                    *v = -v.clone();
                }
            }
        }
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs of minimizing the artificial sum
    let mut cost = vec![BigRational::zero(); width];
    for j in 0..width {
        if j >= n && j < n + m {
            continue;
        }
        let mut c = BigRational::zero();
        for row in &t {
            c -= &row[j];
        }
        cost[j] = c;
    }
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[enter];
            let better = match &leave {
                None => true,
                Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase one is bounded below by zero
        let (r, _) = leave.expect("phase one cannot be unbounded");
        let pivot = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r || row[enter].is_zero() {
                continue;
            }
            let factor = row[enter].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
        let factor = cost[enter].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            *v -= &factor * p;
        }
        basis[r] = enter;
    }
    // objective value is minus the rhs entry of the cost row
    cost[rhs].is_zero()
}
