//! Exact linear-programming feasibility over the rationals.
//!
//! Only feasibility is needed: a phase-1 simplex with Bland's rule (which
//! cannot cycle) decides whether a system has a solution and produces one.

use crate::lattice::Rat;
use crate::linalg::RatMatrix;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

/// Decides feasibility of `{ x >= 0 : a x = b }`. Returns a solution.
pub fn feasible_nonneg_eq(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.rows();
    let n = a.cols();
    assert_eq!(b.len(), m);
    // Tableau: columns 0..n are x, n..n+m artificials, last column the rhs.
    // Row i: sum_j T[i][j] var_j = rhs_i with rhs >= 0.
    let width = n + m + 1;
    let mut t = vec![vec![Rat::zero(); width]; m];
    let mut basis = vec![0usize; m];
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            let v = a.at(i, j).clone();
            t[i][j] = if flip { -v } else { v };
        }
        t[i][n + i] = Rat::one();
        t[i][width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        basis[i] = n + i;
    }
    // Objective: minimize the sum of artificials. Reduced cost row z[j]
    // relative to the current basis (artificial basis initially).
    let mut z = vec![Rat::zero(); width];
    for row in &t {
        for (zj, tj) in z.iter_mut().zip(row.iter()) {
            *zj += tj;
        }
    }
    for j in n..n + m {
        z[j] = Rat::zero();
    }

    loop {
        // Bland: entering column = smallest index with positive reduced cost
        // among genuine variables (artificials never re-enter).
        let Some(enter) = (0..n).find(|&j| z[j].is_positive()) else {
            break;
        };
        // Ratio test, Bland tie-break by smallest basis index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        // The phase-1 objective is bounded below by 0, so a pivot row exists.
        let leave = leave.expect("phase-1 objective is bounded");
        // Pivot at (leave, enter).
        let p = t[leave][enter].clone();
        for v in t[leave].iter_mut() {
            *v = &*v / &p;
        }
        for i in 0..m {
            if i != leave && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..width {
                    let v = &t[i][j] - &f * &t[leave][j];
                    t[i][j] = v;
                }
            }
        }
        if !z[enter].is_zero() {
            let f = z[enter].clone();
            for j in 0..width {
                let v = &z[j] - &f * &t[leave][j];
                z[j] = v;
            }
        }
        basis[leave] = enter;
    }

    // Optimum of the artificial sum: value of basic artificials.
    let mut art_sum = Rat::zero();
    for i in 0..m {
        if basis[i] >= n {
            art_sum += &t[i][width - 1];
        }
    }
    if !art_sum.is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

/// Decides feasibility of `{ x free : a x >= b }` by splitting variables and
/// adding slacks. Returns a solution.
pub fn feasible_free_ge(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.rows();
    let n = a.cols();
    assert_eq!(b.len(), m);
    // a(p - q) - s = b with p, q, s >= 0.
    let mut big = RatMatrix::zero(m, 2 * n + m);
    for i in 0..m {
        for j in 0..n {
            big.set(i, j, a.at(i, j).clone());
            big.set(i, n + j, -a.at(i, j).clone());
        }
        big.set(i, 2 * n + i, -Rat::one());
    }
    let sol = feasible_nonneg_eq(&big, b)?;
    Some((0..n).map(|j| &sol[j] - &sol[n + j]).collect())
}

/// Is `v` a nonnegative combination of the columns of `gens`?
pub fn in_cone_hull(gens: &RatMatrix, v: &[Rat]) -> bool {
    feasible_nonneg_eq(gens, v).is_some()
}
