//! Cross-checks the float vertex-enumeration solver against an exact
//! rational-arithmetic oracle, on random instances and on the bound LPs.

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use diamondlab::lp::{self, ConstraintSense, LpProblem, Sense};
use diamondlab::{bounds, AsyncParams, ChannelGains};

fn check_against_oracle(p: &LpProblem, tol: f64) {
    let float = lp::solve(p).expect("float solve");
    let (value, _) = common::solve_exact(p).expect("exact solve");
    let exact = common::rational_to_f64(&value);
    let scale = exact.abs().max(1.0);
    assert!(
        (float.value - exact).abs() <= tol * scale,
        "float {} vs exact {}",
        float.value,
        exact
    );
}

#[test]
fn bound_lps_match_exact_oracle() {
    let mut rng = ChaCha12Rng::seed_from_u64(99);
    for _ in 0..200 {
        let mut g = || 10f64.powf(rng.random_range(-2.0..=2.0));
        let gains = ChannelGains::new(g(), g(), g(), g()).unwrap();
        let beta = rng.random_range(0.0..=5.0);
        let params = AsyncParams::new(1.0, beta).unwrap();
        let can = gains.canonicalize();
        for p in [
            bounds::lpbound_problem(&can, &params),
            bounds::lpbound2_problem(&can, &params),
            bounds::primallp_problem(&can, &params),
            bounds::primallp2_problem(&can, &params),
        ] {
            check_against_oracle(&p, 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // random bounded maximization problems: rows of positive coefficients
    // guarantee a bounded feasible polytope
    #[test]
    fn random_bounded_lps_match_exact_oracle(
        n in 1usize..5,
        m in 1usize..5,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let objective: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..4.0)).collect();
        let matrix: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.random_range(0.1..4.0)).collect())
            .collect();
        let rhs: Vec<f64> = (0..m).map(|_| rng.random_range(0.5..4.0)).collect();
        let p = LpProblem {
            objective,
            matrix,
            rhs,
            sense: Sense::Maximize,
            constraint_sense: ConstraintSense::LessEqual,
        };
        check_against_oracle(&p, 1e-9);
    }

    #[test]
    fn solution_vertex_is_feasible_and_consistent(
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let n = rng.random_range(1..=4);
        let m = rng.random_range(1..=4);
        let objective: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..4.0)).collect();
        let matrix: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.random_range(0.1..4.0)).collect())
            .collect();
        let rhs: Vec<f64> = (0..m).map(|_| rng.random_range(0.5..4.0)).collect();
        let p = LpProblem {
            objective: objective.clone(),
            matrix: matrix.clone(),
            rhs: rhs.clone(),
            sense: Sense::Maximize,
            constraint_sense: ConstraintSense::LessEqual,
        };
        let sol = lp::solve(&p).unwrap();
        prop_assert_eq!(sol.vertex.len(), n);
        prop_assert_eq!(sol.active_set.len(), n);
        for (row, &b) in matrix.iter().zip(&rhs) {
            let lhs: f64 = row.iter().zip(&sol.vertex).map(|(a, x)| a * x).sum();
            let norm: f64 = row.iter().map(|a| a * a).sum::<f64>().sqrt().max(1.0);
            prop_assert!(lhs <= b + 1e-9 * norm);
        }
        for &x in &sol.vertex {
            prop_assert!(x >= -1e-9);
        }
        let obj: f64 = objective.iter().zip(&sol.vertex).map(|(c, x)| c * x).sum();
        prop_assert!((obj - sol.value).abs() <= 1e-12 * sol.value.abs().max(1.0));
    }
}
