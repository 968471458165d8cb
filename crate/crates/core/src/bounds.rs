//! Closed-form and LP-backed upper/lower bounds on the asynchronous
//! minimum energy-per-bit of the diamond network.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{self, ConstraintSense, LpProblem, Sense};
use crate::model::{AsyncParams, CanonicalGains, ChannelGains};

/// Synchronous point-to-point minimum energy-per-bit over a link with power
/// gain `h`: gamma / h.
pub fn eb_sync_p2p(h: f64, params: &AsyncParams) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidParameter {
            name: "h",
            value: h,
        });
    }
    Ok(params.gamma() / h)
}

/// Asynchronous point-to-point minimum energy-per-bit with uniform
/// arrivals: (1 + beta) * gamma / h.
pub fn eb_async_p2p(h: f64, params: &AsyncParams) -> Result<f64> {
    Ok((1.0 + params.beta) * eb_sync_p2p(h, params)?)
}

/// Separation-based two-relay upper bound
/// (1+beta) * gamma * (1/weak_g + 1/(h1+h2)): both relays must decode, so
/// the first hop is paced by the weak gain.
pub fn ub_separation_both(gains: &ChannelGains, params: &AsyncParams) -> f64 {
    let can = gains.canonicalize();
    (1.0 + params.beta) * params.gamma() * (1.0 / can.weak_g + 1.0 / can.sum_h())
}

/// Decode-and-forward over a single relay: two concatenated asynchronous
/// point-to-point channels, (1+beta) * gamma * (1/g_i + 1/h_i).
pub fn ub_one_relay(gains: &ChannelGains, relay_index: u8, params: &AsyncParams) -> Result<f64> {
    let (g, h) = match relay_index {
        1 => (gains.g1, gains.h1),
        2 => (gains.g2, gains.h2),
        _ => {
            return Err(Error::InvalidParameter {
                name: "relay_index",
                value: relay_index as f64,
            })
        }
    };
    Ok((1.0 + params.beta) * params.gamma() * (1.0 / g + 1.0 / h))
}

/// Best upper bound: minimum over relay-1-only, relay-2-only and the
/// two-relay separation scheme.
pub fn ub_best(gains: &ChannelGains, params: &AsyncParams) -> f64 {
    let r1 = ub_one_relay(gains, 1, params).expect("valid index");
    let r2 = ub_one_relay(gains, 2, params).expect("valid index");
    r1.min(r2).min(ub_separation_both(gains, params))
}

/// The three cut constraint rows shared by all four bound LPs, in the
/// canonical (strong relay first) labeling.
fn cut_rows(can: &CanonicalGains) -> (Vec<Vec<f64>>, Vec<f64>) {
    let (g1, g2, h1, h2) = (can.strong_g, can.weak_g, can.strong_h, can.weak_h);
    (
        vec![
            vec![g1 + g2, 0.0, g2, g1],
            vec![0.0, h1 + h2, h1, 0.0],
            vec![0.0, h1 + h2, 0.0, h2],
        ],
        vec![1.0, 1.0, 1.0],
    )
}

/// Cut-set dual LP: maximize gamma*(1+beta)*(y1+y2+y3+y4) over the cut rows.
pub fn lpbound_problem(can: &CanonicalGains, params: &AsyncParams) -> LpProblem {
    let (matrix, rhs) = cut_rows(can);
    let c = params.gamma() * (1.0 + params.beta);
    LpProblem {
        objective: vec![c; 4],
        matrix,
        rhs,
        sense: Sense::Maximize,
        constraint_sense: ConstraintSense::LessEqual,
    }
}

/// Strengthened dual LP: the y1 coefficient picks up the extra
/// beta * strong_g / weak_g from the broadcast cut.
pub fn lpbound2_problem(can: &CanonicalGains, params: &AsyncParams) -> LpProblem {
    let (matrix, rhs) = cut_rows(can);
    let gamma = params.gamma();
    let beta = params.beta;
    LpProblem {
        objective: vec![
            gamma * (1.0 + beta + beta * can.strong_g / can.weak_g),
            gamma * (1.0 + beta),
            gamma * (1.0 + beta),
            gamma * (1.0 + beta),
        ],
        matrix,
        rhs,
        sense: Sense::Maximize,
        constraint_sense: ConstraintSense::LessEqual,
    }
}

fn primal_matrix(can: &CanonicalGains) -> Vec<Vec<f64>> {
    let (g1, g2, h1, h2) = (can.strong_g, can.weak_g, can.strong_h, can.weak_h);
    vec![
        vec![g1 + g2, 0.0, 0.0],
        vec![0.0, h1 + h2, h1 + h2],
        vec![g2, h1, 0.0],
        vec![g1, 0.0, h2],
    ]
}

/// Primal cut-set LP: minimize x_s + x_r1 + x_r2 over the per-cut energy
/// constraints, with the delta slack already sent to zero.
pub fn primallp_problem(can: &CanonicalGains, params: &AsyncParams) -> LpProblem {
    let e = params.gamma() * (1.0 + params.beta);
    LpProblem {
        objective: vec![1.0; 3],
        matrix: primal_matrix(can),
        rhs: vec![e; 4],
        sense: Sense::Minimize,
        constraint_sense: ConstraintSense::GreaterEqual,
    }
}

/// Primal of the strengthened bound: the source-cut row tightens to
/// gamma * [1 + beta*(g1+g2)/g2].
pub fn primallp2_problem(can: &CanonicalGains, params: &AsyncParams) -> LpProblem {
    let gamma = params.gamma();
    let beta = params.beta;
    let e = gamma * (1.0 + beta);
    let source_row = gamma * (1.0 + beta * can.sum_g() / can.weak_g);
    LpProblem {
        objective: vec![1.0; 3],
        matrix: primal_matrix(can),
        rhs: vec![source_row, e, e, e],
        sense: Sense::Minimize,
        constraint_sense: ConstraintSense::GreaterEqual,
    }
}

/// Cut-set lower bound LB: optimum of the dual cut-set LP.
pub fn lb_cutset(gains: &ChannelGains, params: &AsyncParams) -> Result<f64> {
    let can = gains.canonicalize();
    Ok(lp::solve(&lpbound_problem(&can, params))?.value)
}

/// Strengthened lower bound LB2.
pub fn lb2(gains: &ChannelGains, params: &AsyncParams) -> Result<f64> {
    let can = gains.canonicalize();
    Ok(lp::solve(&lpbound2_problem(&can, params))?.value)
}

/// Theorem lower bound: min(LB2, two-hop bound through the strong relay).
pub fn lb_theorem(gains: &ChannelGains, params: &AsyncParams) -> Result<f64> {
    let can = gains.canonicalize();
    let strong_two_hop =
        (1.0 + params.beta) * params.gamma() * (1.0 / can.strong_g + 1.0 / can.strong_h);
    Ok(lb2(gains, params)?.min(strong_two_hop))
}

/// Per-bit source-energy lower bound when both relays are synchronized:
/// gamma * (beta/weak_g + 1/(g1+g2)).
pub fn source_energy_lb(gains: &ChannelGains, params: &AsyncParams) -> f64 {
    let can = gains.canonicalize();
    params.gamma() * (params.beta / can.weak_g + 1.0 / can.sum_g())
}

/// Per-unit-cost (1:beta)-capacity of the degraded broadcast cut:
/// g2*(g1+g2) / (gamma * [beta*(g1+g2) + g2]).
pub fn c1beta_per_cost(gains: &ChannelGains, params: &AsyncParams) -> f64 {
    let can = gains.canonicalize();
    let (sg, wg) = (can.sum_g(), can.weak_g);
    wg * sg / (params.gamma() * (params.beta * sg + wg))
}

/// Result of the randomized strong-duality suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualitySummary {
    pub trials: u64,
    pub seed: u64,
    /// max over trials of |primal - dual| / max(1, |dual|), cut-set pair
    pub max_gap_cutset: f64,
    /// same for the strengthened pair
    pub max_gap_lb2: f64,
}

/// Solves both primal/dual LP pairs on seeded random diamond instances
/// (gains log-uniform in [1e-2, 1e2], beta uniform in [0, 5]) and records
/// the worst normalized duality gap.
pub fn duality_suite(trials: u64, seed: u64) -> Result<DualitySummary> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let mut max_gap_cutset = 0.0f64;
    let mut max_gap_lb2 = 0.0f64;
    for _ in 0..trials {
        let mut gain = || 10f64.powf(rng.random_range(-2.0..=2.0));
        let gains = ChannelGains::new(gain(), gain(), gain(), gain())?;
        let beta = rng.random_range(0.0..=5.0);
        let params = AsyncParams::new(1.0, beta)?;
        let can = gains.canonicalize();

        let d1 = lp::solve(&lpbound_problem(&can, &params))?;
        let p1 = lp::solve(&primallp_problem(&can, &params))?;
        max_gap_cutset = max_gap_cutset.max((p1.value - d1.value).abs() / d1.value.abs().max(1.0));

        let d2 = lp::solve(&lpbound2_problem(&can, &params))?;
        let p2 = lp::solve(&primallp2_problem(&can, &params))?;
        max_gap_lb2 = max_gap_lb2.max((p2.value - d2.value).abs() / d2.value.abs().max(1.0));
    }
    Ok(DualitySummary {
        trials,
        seed,
        max_gap_cutset,
        max_gap_lb2,
    })
}

/// All bounds plus the ratio for one parameter point. Field order is the
/// CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub ub_relay1: f64,
    pub ub_relay2: f64,
    pub ub_both: f64,
    pub ub_best: f64,
    pub lb_cutset: f64,
    pub lb2: f64,
    pub lb_theorem: f64,
    pub lb_best: f64,
    pub ratio: f64,
}

impl BoundReport {
    /// Computes every bound. `ratio_vs_lb_best` switches the ratio
    /// denominator from the theorem bound (the default) to the best lower
    /// bound.
    pub fn compute(
        gains: &ChannelGains,
        params: &AsyncParams,
        ratio_vs_lb_best: bool,
    ) -> Result<Self> {
        let ub_relay1 = ub_one_relay(gains, 1, params)?;
        let ub_relay2 = ub_one_relay(gains, 2, params)?;
        let ub_both = ub_separation_both(gains, params);
        let ub_best = ub_relay1.min(ub_relay2).min(ub_both);
        let lb_cutset = lb_cutset(gains, params)?;
        let lb2 = lb2(gains, params)?;
        let lb_theorem = lb_theorem(gains, params)?;
        let lb_best = lb_cutset.max(lb_theorem);
        let denom = if ratio_vs_lb_best {
            lb_best
        } else {
            lb_theorem
        };
        Ok(Self {
            ub_relay1,
            ub_relay2,
            ub_both,
            ub_best,
            lb_cutset,
            lb2,
            lb_theorem,
            lb_best,
            ratio: ub_best / denom,
        })
    }

    pub const CSV_HEADER: &'static str =
        "ub_relay1,ub_relay2,ub_both,ub_best,lb_cutset,lb2,lb_theorem,lb_best,ratio";

    pub fn csv_row(&self) -> String {
        [
            self.ub_relay1,
            self.ub_relay2,
            self.ub_both,
            self.ub_best,
            self.lb_cutset,
            self.lb2,
            self.lb_theorem,
            self.lb_best,
            self.ratio,
        ]
        .iter()
        .map(|v| format!("{v:.16e}"))
        .collect::<Vec<_>>()
        .join(",")
    }
}
