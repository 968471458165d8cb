//! Exact-by-enumeration solver for the small dense linear programs of the
//! energy-per-bit bounds. Every basic feasible solution is enumerated, so
//! the result is deterministic and independent of any pivoting strategy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard size limits of the dense solver. The bound LPs have at most 4
/// variables and 4 inequality rows.
pub const MAX_VARS: usize = 8;
pub const MAX_ROWS: usize = 8;

/// Feasibility tolerance on row-norm-scaled residuals.
pub const FEAS_TOL: f64 = 1e-9;
/// Singularity threshold on the row-norm-normalized determinant.
pub const SING_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstraintSense {
    LessEqual,
    GreaterEqual,
}

/// Dense LP in standard form over nonnegative variables, with a uniform
/// constraint sense across rows.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub matrix: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    pub sense: Sense,
    pub constraint_sense: ConstraintSense,
}

impl LpProblem {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.matrix.len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        let m = self.num_rows();
        if n == 0 || n > MAX_VARS || m == 0 || m > MAX_ROWS {
            return Err(Error::LpTooLarge { vars: n, rows: m });
        }
        let all_finite = self.objective.iter().all(|v| v.is_finite())
            && self.rhs.iter().all(|v| v.is_finite())
            && self
                .matrix
                .iter()
                .all(|row| row.len() == n && row.iter().all(|v| v.is_finite()));
        if !all_finite || self.rhs.len() != m {
            return Err(Error::LpTooLarge { vars: n, rows: m });
        }
        Ok(())
    }
}

/// Optimal value, an attaining vertex and the constraint rows active there.
/// Row indices `0..m` are inequality rows, `m..m+n` the nonnegativity rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub value: f64,
    pub vertex: Vec<f64>,
    pub active_set: Vec<usize>,
}

/// Solves an n x n system by Gaussian elimination with partial pivoting.
/// Returns the solution and the absolute determinant, or None if a pivot
/// vanishes entirely.
fn solve_square(a: &[[f64; MAX_VARS]], b: &[f64], n: usize) -> Option<([f64; MAX_VARS], f64)> {
    let mut m = [[0.0f64; MAX_VARS + 1]; MAX_VARS];
    for i in 0..n {
        m[i][..n].copy_from_slice(&a[i][..n]);
        m[i][n] = b[i];
    }
    let mut abs_det = 1.0;
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if m[r][col].abs() > m[piv][col].abs() {
                piv = r;
            }
        }
        if m[piv][col] == 0.0 {
            return None;
        }
        m.swap(col, piv);
        abs_det *= m[col][col].abs();
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f != 0.0 {
                for c in col..=n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    let mut x = [0.0f64; MAX_VARS];
    for i in (0..n).rev() {
        let mut s = m[i][n];
        for j in i + 1..n {
            s -= m[i][j] * x[j];
        }
        x[i] = s / m[i][i];
    }
    Some((x, abs_det))
}

/// Advances `combo[..n]` to the next size-n subset of `0..total` in
/// lexicographic order; returns false when exhausted.
fn next_combination(combo: &mut [usize; MAX_VARS], n: usize, total: usize) -> bool {
    let mut i = n;
    while i > 0 {
        i -= 1;
        if combo[i] != i + total - n {
            combo[i] += 1;
            for j in i + 1..n {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Finds the optimum by enumerating all candidate bases: subsets of size n
/// drawn from the m inequality rows plus the n nonnegativity rows.
pub fn solve(problem: &LpProblem) -> Result<LpSolution> {
    problem.validate()?;
    let n = problem.num_vars();
    let m = problem.num_rows();

    // internal canonical form: maximize c.x subject to A x <= b, x >= 0
    let negate_obj = problem.sense == Sense::Minimize;
    let negate_rows = problem.constraint_sense == ConstraintSense::GreaterEqual;
    let mut c = [0.0f64; MAX_VARS];
    for j in 0..n {
        c[j] = if negate_obj {
            -problem.objective[j]
        } else {
            problem.objective[j]
        };
    }
    let mut a = [[0.0f64; MAX_VARS]; MAX_ROWS];
    let mut b = [0.0f64; MAX_ROWS];
    let mut row_norm = [0.0f64; MAX_ROWS];
    for i in 0..m {
        for j in 0..n {
            a[i][j] = if negate_rows {
                -problem.matrix[i][j]
            } else {
                problem.matrix[i][j]
            };
        }
        b[i] = if negate_rows {
            -problem.rhs[i]
        } else {
            problem.rhs[i]
        };
        let norm = a[i][..n].iter().map(|v| v * v).sum::<f64>().sqrt();
        row_norm[i] = norm.max(1.0);
    }

    // pre-check: a variable that can improve the objective must have a
    // positive coefficient in at least one row, otherwise it can grow
    // without bound
    for j in 0..n {
        if c[j] > 0.0 && !(0..m).any(|i| a[i][j] > 0.0) {
            return Err(Error::Unbounded { variable: j });
        }
    }

    let total = m + n; // inequality rows, then nonnegativity rows
    let mut combo = [0usize; MAX_VARS];
    for (j, slot) in combo.iter_mut().enumerate().take(n) {
        *slot = j;
    }

    let mut best: Option<(f64, [f64; MAX_VARS], [usize; MAX_VARS])> = None;
    loop {
        // build and solve the active system for this basis
        let mut sys = [[0.0f64; MAX_VARS]; MAX_VARS];
        let mut rhs = [0.0f64; MAX_VARS];
        let mut norm_prod = 1.0f64;
        for (k, &row) in combo[..n].iter().enumerate() {
            if row < m {
                sys[k][..n].copy_from_slice(&a[row][..n]);
                rhs[k] = b[row];
                norm_prod *= row_norm[row];
            } else {
                sys[k][row - m] = 1.0;
                rhs[k] = 0.0;
            }
        }
        if let Some((x, abs_det)) = solve_square(&sys, &rhs, n) {
            if abs_det / norm_prod >= SING_TOL {
                let feasible = (0..m).all(|i| {
                    let resid: f64 = (0..n).map(|j| a[i][j] * x[j]).sum::<f64>() - b[i];
                    resid <= FEAS_TOL * row_norm[i]
                }) && x[..n].iter().all(|&v| v >= -FEAS_TOL);
                if feasible {
                    let val: f64 = (0..n).map(|j| c[j] * x[j]).sum();
                    let replace = match &best {
                        None => true,
                        Some((bv, bx, _)) => {
                            let tie = (val - bv).abs() <= 1e-12 * bv.abs().max(1.0);
                            if tie {
                                lex_less(&x[..n], &bx[..n])
                            } else {
                                val > *bv
                            }
                        }
                    };
                    if replace {
                        let mut act = [0usize; MAX_VARS];
                        act[..n].copy_from_slice(&combo[..n]);
                        best = Some((val, x, act));
                    }
                }
            }
        }

        if !next_combination(&mut combo, n, total) {
            break;
        }
    }

    match best {
        None => Err(Error::Infeasible),
        Some((val, x, act)) => Ok(LpSolution {
            value: if negate_obj { -val } else { val },
            vertex: x[..n].to_vec(),
            active_set: act[..n].to_vec(),
        }),
    }
}

/// Absolute difference between the optima of a primal/dual pair. By strong
/// duality this vanishes for the bound LPs.
pub fn duality_gap(primal: &LpProblem, dual: &LpProblem) -> Result<f64> {
    let p = solve(primal)?;
    let d = solve(dual)?;
    Ok((p.value - d.value).abs())
}
