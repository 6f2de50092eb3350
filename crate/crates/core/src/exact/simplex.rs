//! Phase-one simplex over exact rationals.

use num_traits::{Signed, Zero};

use super::{RatMatrix, Rational};
use crate::error::{contract, Result};

/// Finds `x >= 0` with `A·x = b`, or proves none exists.
///
/// Runs the phase-one problem `min Σ a` subject to `A·x + a = b`,
/// `x, a >= 0` (rows sign-flipped so `b >= 0`) with Bland's rule, so the
/// method terminates. A positive optimum means infeasibility.
pub fn feasible_nonnegative(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.rows() {
        return Err(contract(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let (m, n) = (a.rows(), a.cols());
    let width = n + m + 1;
    // Tableau rows: constraints, then the phase-one objective (reduced costs).
    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![Rational::zero(); width];
        for (j, slot) in row.iter_mut().take(n).enumerate() {
            let v = a.get(i, j);
            if !v.is_zero() {
                *slot = if flip { -v } else { v.clone() };
            }
        }
        row[n + i] = super::one();
        row[width - 1] = if flip { -&b[i] } else { b[i].clone() };
        tableau.push(row);
    }
    // Reduced cost of column j is -(sum of constraint column j) for original
    // columns and 0 for the basic artificials; last entry is -objective.
    let mut cost = vec![Rational::zero(); width];
    for row in &tableau {
        for j in 0..n {
            if !row[j].is_zero() {
                cost[j] -= &row[j];
            }
        }
        cost[width - 1] -= &row[width - 1];
    }
    tableau.push(cost);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let obj = &tableau[m];
        // Bland: smallest index with negative reduced cost.
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            let coeff = &tableau[i][enter];
            if !coeff.is_positive() {
                continue;
            }
            let ratio = &tableau[i][width - 1] / coeff;
            let better = match &leave {
                None => true,
                Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always limits.
        let (pivot_row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tableau, pivot_row, enter);
        basis[pivot_row] = enter;
    }

    if !tableau[m][width - 1].is_zero() {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = tableau[i][width - 1].clone();
        }
    }
    debug_assert!(x.iter().all(|v| !v.is_negative()));
    debug_assert_eq!(a.mul_vec(&x)?, b);
    Ok(Some(x))
}

fn pivot(tableau: &mut [Vec<Rational>], row: usize, col: usize) {
    let scale = super::one() / &tableau[row][col];
    for v in tableau[row].iter_mut() {
        if !v.is_zero() {
            *v *= &scale;
        }
    }
    let pivot_row = tableau[row].clone();
    let support: Vec<usize> = (0..pivot_row.len())
        .filter(|&j| !pivot_row[j].is_zero())
        .collect();
    for (i, other) in tableau.iter_mut().enumerate() {
        if i == row || other[col].is_zero() {
            continue;
        }
        let factor = other[col].clone();
        for &j in &support {
            let delta = &factor * &pivot_row[j];
            other[j] -= delta;
        }
    }
}
