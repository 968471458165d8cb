//! Exact rational-arithmetic LP oracle used to cross-check the float
//! vertex-enumeration solver.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use diamondlab::lp::{ConstraintSense, LpProblem, Sense};

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Maximize c.x subject to A x <= b, x >= 0, solved exactly over the
/// rationals by enumerating all n-subsets of the m + n bounding rows.
/// Returns None when infeasible. Ties between equally good vertices are
/// broken by the lexicographically smallest vertex, mirroring the float
/// solver's policy.
pub fn solve_exact_max(
    c: &[BigRational],
    a: &[Vec<BigRational>],
    b: &[BigRational],
) -> Option<(BigRational, Vec<BigRational>)> {
    let n = c.len();
    let m = a.len();
    let total = m + n;
    let mut best: Option<(BigRational, Vec<BigRational>)> = None;

    let mut combo: Vec<usize> = (0..n).collect();
    loop {
        if let Some(vertex) = solve_basis(&combo, a, b, n, m) {
            if feasible(&vertex, a, b) {
                let value: BigRational = c
                    .iter()
                    .zip(&vertex)
                    .map(|(ci, xi)| ci * xi)
                    .fold(BigRational::zero(), |acc, t| acc + t);
                let replace = match &best {
                    None => true,
                    Some((bv, bx)) => value > *bv || (value == *bv && vertex < *bx),
                };
                if replace {
                    best = Some((value, vertex));
                }
            }
        }
        if !next_combination(&mut combo, n, total) {
            break;
        }
    }
    best
}

/// Applies the float solver's Minimize/GreaterEqual normalization, then
/// solves exactly. Returns the optimum in the original orientation.
pub fn solve_exact(p: &LpProblem) -> Option<(BigRational, Vec<BigRational>)> {
    let n = p.num_vars();
    let negate_obj = p.sense == Sense::Minimize;
    let negate_rows = p.constraint_sense == ConstraintSense::GreaterEqual;
    let c: Vec<BigRational> = p
        .objective
        .iter()
        .map(|&v| if negate_obj { -rat(v) } else { rat(v) })
        .collect();
    let a: Vec<Vec<BigRational>> = p
        .matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| if negate_rows { -rat(v) } else { rat(v) })
                .collect()
        })
        .collect();
    let b: Vec<BigRational> = p
        .rhs
        .iter()
        .map(|&v| if negate_rows { -rat(v) } else { rat(v) })
        .collect();
    debug_assert!(c.len() == n);
    let (value, vertex) = solve_exact_max(&c, &a, &b)?;
    Some((if negate_obj { -value } else { value }, vertex))
}

fn solve_basis(
    combo: &[usize],
    a: &[Vec<BigRational>],
    b: &[BigRational],
    n: usize,
    m: usize,
) -> Option<Vec<BigRational>> {
    // build the n x n system: row < m is an inequality at equality,
    // row m + j pins x_j = 0
    let mut mat: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(n);
    for &r in combo {
        if r < m {
            mat.push(a[r].clone());
            rhs.push(b[r].clone());
        } else {
            let mut row = vec![BigRational::zero(); n];
            row[r - m] = BigRational::one();
            mat.push(row);
            rhs.push(BigRational::zero());
        }
    }
    // exact Gaussian elimination
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in 0..n {
            if r != col && !mat[r][col].is_zero() {
                let f = &mat[r][col] / &mat[col][col];
                for cc in 0..n {
                    let t = &f * &mat[col][cc];
                    mat[r][cc] -= t;
                }
                let t = &f * &rhs[col];
                rhs[r] -= t;
            }
        }
    }
    Some(
        (0..n)
            .map(|i| &rhs[i] / &mat[i][i])
            .collect::<Vec<BigRational>>(),
    )
}

fn feasible(x: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    if x.iter().any(|xi| xi < &BigRational::zero()) {
        return false;
    }
    a.iter().zip(b).all(|(row, bi)| {
        let lhs: BigRational = row
            .iter()
            .zip(x)
            .map(|(ai, xi)| ai * xi)
            .fold(BigRational::zero(), |acc, t| acc + t);
        lhs <= *bi
    })
}

fn next_combination(combo: &mut [usize], k: usize, total: usize) -> bool {
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] + (k - i) < total {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    bigint_to_f64(numer) / bigint_to_f64(denom)
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    let s = v.to_string();
    s.parse::<f64>().expect("bigint decimal parse")
}
