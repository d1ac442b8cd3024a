//! Exact rational linear programming for the degree-1 level.
//!
//! For the linear program `min { c'x : Ax >= b, Dx = f }` the first
//! relaxation level already collapses to the classical dual
//! `max { a'b + t'f : A'a + D't = c, a >= 0 }`, so one exact simplex solve
//! settles it. Everything here is dense rational arithmetic with Bland's
//! rule, which terminates without any tolerance tuning.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of [`lp_level_one`]: the multiplier vectors are the dual solution,
/// `alpha` for the inequality rows and `beta` for the equality rows.
#[derive(Debug, Clone)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub value: Option<BigRational>,
    pub alpha: Vec<BigRational>,
    pub beta: Vec<BigRational>,
}

/// Solves `max { alpha'b + beta'f : A'alpha + D'beta = c, alpha >= 0 }`, the
/// multiplier program of `min { c'x : Ax >= b, Dx = f }`.
///
/// `a` is `m x n` row-major, `d` is `p x n`. Infeasibility or unboundedness
/// of the multiplier program is reported in the status.
pub fn lp_level_one(
    c: &[BigRational],
    a: &[Vec<BigRational>],
    b: &[BigRational],
    d: &[Vec<BigRational>],
    f: &[BigRational],
) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    let p = d.len();
    assert_eq!(b.len(), m, "one bound per inequality row");
    assert_eq!(f.len(), p, "one value per equality row");
    assert!(a.iter().all(|row| row.len() == n), "inequality row width");
    assert!(d.iter().all(|row| row.len() == n), "equality row width");

    // Nonnegative unknowns z = (alpha, beta+, beta-); one equality per
    // primal variable: A'alpha + D'beta+ - D'beta- = c.
    let cols = m + 2 * p;
    let mut eq_rows = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = Vec::with_capacity(cols);
        for i in 0..m {
            row.push(a[i][j].clone());
        }
        for t in 0..p {
            row.push(d[t][j].clone());
        }
        for t in 0..p {
            row.push(-d[t][j].clone());
        }
        eq_rows.push(row);
    }
    let mut obj = Vec::with_capacity(cols);
    obj.extend(b.iter().cloned());
    obj.extend(f.iter().cloned());
    obj.extend(f.iter().map(|v| -v.clone()));

    match solve_standard(eq_rows, c.to_vec(), obj) {
        StdOutcome::Infeasible => LpOutcome {
            status: LpStatus::Infeasible,
            value: None,
            alpha: Vec::new(),
            beta: Vec::new(),
        },
        StdOutcome::Unbounded => LpOutcome {
            status: LpStatus::Unbounded,
            value: None,
            alpha: Vec::new(),
            beta: Vec::new(),
        },
        StdOutcome::Optimal { x, value } => {
            let alpha = x[..m].to_vec();
            let beta = (0..p).map(|t| &x[m + t] - &x[m + p + t]).collect();
            LpOutcome { status: LpStatus::Optimal, value: Some(value), alpha, beta }
        }
    }
}

enum StdOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

/// `max { obj'z : rows z = rhs, z >= 0 }` by two-phase tableau simplex with
/// Bland's rule. Redundant equality rows discovered in phase 1 are dropped.
fn solve_standard(
    mut rows: Vec<Vec<BigRational>>,
    mut rhs: Vec<BigRational>,
    obj: Vec<BigRational>,
) -> StdOutcome {
    let n_rows = rows.len();
    let n_real = obj.len();
    for (row, b) in rows.iter_mut().zip(rhs.iter_mut()) {
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            *b = -b.clone();
        }
    }
    // Columns: real variables, then one artificial per row.
    for (i, row) in rows.iter_mut().enumerate() {
        for k in 0..n_rows {
            row.push(if k == i {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            });
        }
    }
    let mut basis: Vec<usize> = (n_real..n_real + n_rows).collect();

    // Phase 1: maximize -(sum of artificials); priced out over the
    // artificial basis the reduced cost of column j is sum_i rows[i][j].
    let n_total = n_real + n_rows;
    let mut red = vec![BigRational::zero(); n_total];
    for j in 0..n_real {
        for row in &rows {
            red[j] = &red[j] + &row[j];
        }
    }
    let feasible = pivot_loop(&mut rows, &mut rhs, &mut red, &mut basis, n_total);
    debug_assert!(feasible, "artificial basis is always feasible");
    if rhs
        .iter()
        .zip(&basis)
        .any(|(b, &j)| j >= n_real && !b.is_zero())
    {
        return StdOutcome::Infeasible;
    }

    // Drive leftover zero-value artificials out of the basis; a row with no
    // real coefficients left is a dependent equality and is dropped.
    let mut i = 0;
    while i < rows.len() {
        if basis[i] >= n_real {
            match (0..n_real).find(|&j| !rows[i][j].is_zero()) {
                Some(j) => pivot(&mut rows, &mut rhs, &mut red, &mut basis, i, j),
                None => {
                    rows.remove(i);
                    rhs.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase 2 over the real columns only: artificial columns stay, priced
    // prohibitively so Bland never re-enters them.
    let mut red = vec![BigRational::zero(); n_real];
    for j in 0..n_real {
        red[j] = obj[j].clone();
    }
    for (i, &bj) in basis.iter().enumerate() {
        debug_assert!(bj < n_real);
        if obj[bj].is_zero() {
            continue;
        }
        for j in 0..n_real {
            red[j] = &red[j] - &(&obj[bj] * &rows[i][j]);
        }
    }
    if !pivot_loop(&mut rows, &mut rhs, &mut red, &mut basis, n_real) {
        return StdOutcome::Unbounded;
    }

    let mut x = vec![BigRational::zero(); n_real];
    let mut value = BigRational::zero();
    for (i, &bj) in basis.iter().enumerate() {
        if bj < n_real {
            x[bj] = rhs[i].clone();
            value = &value + &(&obj[bj] * &rhs[i]);
        }
    }
    StdOutcome::Optimal { x, value }
}

/// Bland pivoting until no reduced cost is positive; `false` on an unbounded
/// ray. Entering columns are restricted to `0..n_enter`.
fn pivot_loop(
    rows: &mut Vec<Vec<BigRational>>,
    rhs: &mut Vec<BigRational>,
    red: &mut [BigRational],
    basis: &mut [usize],
    n_enter: usize,
) -> bool {
    loop {
        let Some(enter) = (0..n_enter).find(|&j| red[j].is_positive()) else {
            return true;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows.len() {
            if !rows[i][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[i] / &rows[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => {
                    ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                }
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((li, _)) = leave else {
            return false;
        };
        pivot(rows, rhs, red, basis, li, enter);
    }
}

fn pivot(
    rows: &mut [Vec<BigRational>],
    rhs: &mut [BigRational],
    red: &mut [BigRational],
    basis: &mut [usize],
    pr: usize,
    pc: usize,
) {
    let piv = rows[pr][pc].clone();
    for v in rows[pr].iter_mut() {
        *v = &*v / &piv;
    }
    rhs[pr] = &rhs[pr] / &piv;
    for i in 0..rows.len() {
        if i == pr || rows[i][pc].is_zero() {
            continue;
        }
        let factor = rows[i][pc].clone();
        for j in 0..rows[i].len() {
            let delta = &factor * &rows[pr][j];
            rows[i][j] = &rows[i][j] - &delta;
        }
        rhs[i] = &rhs[i] - &(&factor * &rhs[pr]);
    }
    if !red[pc].is_zero() {
        let factor = red[pc].clone();
        for j in 0..red.len().min(rows[pr].len()) {
            let delta = &factor * &rows[pr][j];
            red[j] = &red[j] - &delta;
        }
    }
    basis[pr] = pc;
}
