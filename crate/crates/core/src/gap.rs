//! Upper/lower bound ratio and the worst-case ratio sweep over the gain
//! grid {1/R, 2/R, ..., 1}^4.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::Result;
use crate::model::{AsyncParams, ChannelGains};

/// upper-bound / lower-bound at one parameter point. The denominator is
/// the theorem bound by default, or the best lower bound when
/// `vs_lb_best` is set.
pub fn ratio(gains: &ChannelGains, params: &AsyncParams, vs_lb_best: bool) -> Result<f64> {
    let ub = bounds::ub_best(gains, params);
    let lb = if vs_lb_best {
        bounds::lb_theorem(gains, params)?.max(bounds::lb_cutset(gains, params)?)
    } else {
        bounds::lb_theorem(gains, params)?
    };
    Ok(ub / lb)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioSweepResult {
    pub beta: f64,
    pub worst_ratio: f64,
    pub argmax_gains: ChannelGains,
    pub grid_resolution: u32,
    /// (1+beta)/(1/2+beta), the symmetric-first-hop factor
    pub envelope_low: f64,
    /// min(2, 1+1/beta), with the convention 2 at beta = 0
    pub envelope_high: f64,
}

impl RatioSweepResult {
    pub const CSV_HEADER: &'static str = "beta,worst_ratio,g1,g2,h1,h2,envelope_low,envelope_high";

    pub fn csv_row(&self) -> String {
        format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            self.beta,
            self.worst_ratio,
            self.argmax_gains.g1,
            self.argmax_gains.g2,
            self.argmax_gains.h1,
            self.argmax_gains.h2,
            self.envelope_low,
            self.envelope_high
        )
    }
}

fn envelope_low(beta: f64) -> f64 {
    (1.0 + beta) / (0.5 + beta)
}

fn envelope_high(beta: f64) -> f64 {
    if beta == 0.0 {
        2.0
    } else {
        2.0f64.min(1.0 + 1.0 / beta)
    }
}

type Candidate = (f64, [f64; 4]);

fn lex_less4(a: &[f64; 4], b: &[f64; 4]) -> bool {
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

/// max with lexicographically-smallest-tuple tie break, exact on floats
fn better(a: &Candidate, b: &Candidate) -> bool {
    a.0 > b.0 || (a.0 == b.0 && lex_less4(&a.1, &b.1))
}

/// Maximizes the ratio over the grid {i/R}^4. The relabeling symmetry
/// (g1,g2,h1,h2) <-> (g2,g1,h2,h1) leaves the ratio unchanged, so the
/// sweep only evaluates g1 >= g2 and considers both labelings of each
/// evaluated point when tie-breaking; this reproduces the unrestricted
/// sweep exactly.
pub fn worst_case_ratio(
    beta: f64,
    grid_resolution: u32,
    n0: f64,
    vs_lb_best: bool,
) -> Result<RatioSweepResult> {
    let params = AsyncParams::new(n0, beta)?;
    let r = grid_resolution;
    assert!(r >= 2, "grid_resolution must be >= 2");
    let grid: Vec<f64> = (1..=r).map(|i| i as f64 / r as f64).collect();

    // index pairs with g1 >= g2
    let mut first_hop: Vec<(usize, usize)> = Vec::new();
    for i1 in 0..grid.len() {
        for i2 in 0..=i1 {
            first_hop.push((i1, i2));
        }
    }

    let best = first_hop
        .par_iter()
        .map(|&(i1, i2)| {
            let (g1, g2) = (grid[i1], grid[i2]);
            let mut local: Option<Candidate> = None;
            for &h1 in &grid {
                for &h2 in &grid {
                    let gains = ChannelGains::new(g1, g2, h1, h2)?;
                    let rr = ratio(&gains, &params, vs_lb_best)?;
                    let mut tuple = [g1, g2, h1, h2];
                    if g1 != g2 {
                        // mirrored labeling has the identical ratio; keep
                        // the lexicographically smaller representative
                        let mirror = [g2, g1, h2, h1];
                        if lex_less4(&mirror, &tuple) {
                            tuple = mirror;
                        }
                    }
                    let cand = (rr, tuple);
                    if local.as_ref().map_or(true, |b| better(&cand, b)) {
                        local = Some(cand);
                    }
                }
            }
            Ok(local.expect("nonempty grid"))
        })
        .collect::<Result<Vec<Candidate>>>()?
        .into_iter()
        .reduce(|a, b| if better(&b, &a) { b } else { a })
        .expect("nonempty sweep");

    let [g1, g2, h1, h2] = best.1;
    Ok(RatioSweepResult {
        beta,
        worst_ratio: best.0,
        argmax_gains: ChannelGains::new(g1, g2, h1, h2)?,
        grid_resolution: r,
        envelope_low: envelope_low(beta),
        envelope_high: envelope_high(beta),
    })
}

/// Brute-force sweep without the symmetry reduction; only used to validate
/// the restricted sweep on tiny grids.
pub fn worst_case_ratio_unrestricted(
    beta: f64,
    grid_resolution: u32,
    n0: f64,
    vs_lb_best: bool,
) -> Result<RatioSweepResult> {
    let params = AsyncParams::new(n0, beta)?;
    let r = grid_resolution;
    let grid: Vec<f64> = (1..=r).map(|i| i as f64 / r as f64).collect();
    let mut best: Option<Candidate> = None;
    for &g1 in &grid {
        for &g2 in &grid {
            for &h1 in &grid {
                for &h2 in &grid {
                    let gains = ChannelGains::new(g1, g2, h1, h2)?;
                    let rr = ratio(&gains, &params, vs_lb_best)?;
                    let cand = (rr, [g1, g2, h1, h2]);
                    if best.as_ref().map_or(true, |b| better(&cand, b)) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    let best = best.expect("nonempty grid");
    let [g1, g2, h1, h2] = best.1;
    Ok(RatioSweepResult {
        beta,
        worst_ratio: best.0,
        argmax_gains: ChannelGains::new(g1, g2, h1, h2)?,
        grid_resolution: r,
        envelope_low: envelope_low(beta),
        envelope_high: envelope_high(beta),
    })
}
