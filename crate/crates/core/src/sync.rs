//! Monte-Carlo simulation of the pulse-based synchronization phase, with
//! exact analytic error probabilities and closed-form energy accounting as
//! cross-checks.
//!
//! The communication phase is never simulated symbol-by-symbol; its energy
//! contribution is the analytic model value and the corresponding report
//! fields carry a `_model` suffix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AsyncParams, ChannelGains};

/// PRNG / sampler identifier recorded in every report.
pub const RNG_ALGORITHM: &str = "chacha12+ziggurat";

/// Trials are simulated in fixed-size chunks, each with its own PRNG
/// stream derived from (seed, chunk index); the merged result does not
/// depend on how chunks are scheduled across workers.
const CHUNK_TRIALS: u64 = 8192;

/// Largest window for which explicit per-slot simulation is allowed.
const PER_SLOT_MAX_WINDOW: u64 = 65_536;

/// Gaussian upper-tail probability Q(x).
pub fn qtail(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SyncMode {
    /// Single link with power gain `gain`.
    P2p { gain: f64 },
    /// Source -> two relays -> destination with beamformed relay pulses.
    Diamond { gains: ChannelGains },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyncSimConfig {
    pub bits: u32,
    pub beta: f64,
    pub delta: f64,
    pub n0: f64,
    pub mode: SyncMode,
    pub trials: u64,
    pub seed: u64,
    /// cap on log2 of the arrival window
    pub max_log2_window: u32,
    /// simulate pre-pulse slots explicitly instead of the geometric
    /// shortcut (small windows only)
    pub per_slot: bool,
}

pub const DEFAULT_MAX_LOG2_WINDOW: u32 = 24;

impl SyncSimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.bits == 0 {
            return Err(Error::InvalidParameter {
                name: "bits",
                value: 0.0,
            });
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: self.beta,
            });
        }
        if !(self.delta > 0.0 && self.delta <= 4.0) {
            return Err(Error::InvalidParameter {
                name: "delta",
                value: self.delta,
            });
        }
        if !(self.n0 > 0.0) || !self.n0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "n0",
                value: self.n0,
            });
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter {
                name: "trials",
                value: 0.0,
            });
        }
        let exponent = self.beta * self.bits as f64;
        if exponent > self.max_log2_window as f64 {
            return Err(Error::WindowOverflow {
                exponent,
                cap: self.max_log2_window,
            });
        }
        match self.mode {
            SyncMode::P2p { gain } => {
                if !(gain > 0.0) || !gain.is_finite() {
                    return Err(Error::InvalidParameter {
                        name: "gain",
                        value: gain,
                    });
                }
            }
            SyncMode::Diamond { gains } => {
                // ChannelGains is validated at construction; re-check here
                // because the config can be deserialized
                ChannelGains::new(gains.g1, gains.g2, gains.h1, gains.h2)?;
            }
        }
        let window = self.window();
        if self.per_slot && window > PER_SLOT_MAX_WINDOW {
            return Err(Error::PerSlotWindowTooLarge(window));
        }
        Ok(())
    }

    /// Arrival window A = round(2^(beta * B)).
    pub fn window(&self) -> u64 {
        (self.beta * self.bits as f64).exp2().round() as u64
    }

    pub fn params(&self) -> AsyncParams {
        AsyncParams {
            n0: self.n0,
            beta: self.beta,
        }
    }
}

/// Transmit amplitude of a synchronization pulse designed for a link with
/// power gain `g`: (1+delta) * sqrt(gamma * beta * B / g).
pub fn pulse_amplitude(params: &AsyncParams, bits: u32, delta: f64, g: f64) -> Result<f64> {
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::InvalidParameter {
            name: "g",
            value: g,
        });
    }
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
        });
    }
    if bits == 0 {
        return Err(Error::InvalidParameter {
            name: "bits",
            value: 0.0,
        });
    }
    Ok((1.0 + delta) * (params.gamma() * params.beta * bits as f64 / g).sqrt())
}

/// Detection threshold on the received amplitude:
/// (1+delta/2) * sqrt(gamma * beta * B). The link gain is compensated at
/// the transmitter, so the threshold does not depend on it.
pub fn detection_threshold(params: &AsyncParams, bits: u32, delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
        });
    }
    if bits == 0 {
        return Err(Error::InvalidParameter {
            name: "bits",
            value: 0.0,
        });
    }
    Ok((1.0 + delta / 2.0) * (params.gamma() * params.beta * bits as f64).sqrt())
}

/// Point estimate with a Wilson 95% interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub rate: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub count: u64,
    pub trials: u64,
}

impl RateEstimate {
    fn from_counts(count: u64, trials: u64) -> Self {
        let n = trials as f64;
        let p = count as f64 / n;
        let z = 1.959963984540054; // 95%
        let z2 = z * z;
        let denom = 1.0 + z2 / n;
        let center = (p + z2 / (2.0 * n)) / denom;
        let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        Self {
            rate: p,
            wilson_low: (center - half).max(0.0),
            wilson_high: (center + half).min(1.0),
            count,
            trials,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SyncSimReport {
    pub config: SyncSimConfig,
    pub window: u64,
    pub empirical_miss: RateEstimate,
    pub empirical_false_alarm: RateEstimate,
    pub empirical_overall_error: RateEstimate,
    pub analytic_miss: f64,
    pub analytic_false_alarm: f64,
    /// (2^{-beta*B})^{delta + delta^2/4}, the union bound on false alarm
    pub paper_fa_bound: f64,
    pub sync_energy_per_bit: f64,
    pub comm_energy_per_bit_model: f64,
    pub total_energy_per_bit_model: f64,
    pub rng_algorithm: &'static str,
}

/// Exact average over a uniform arrival of the probability that at least
/// one of `slots_per_nu(nu)` independent per-slot trials with success
/// probability `q` fires. The slot count must be affine in nu:
/// slots = mult * nu + offset.
fn uniform_false_alarm(q: f64, window: u64, mult: u64, offset: i64) -> f64 {
    if q <= 0.0 {
        return 0.0;
    }
    debug_assert!(q < 1.0, "per-slot probability is a strict Gaussian tail");
    let a = window as f64;
    // FA = 1 - (1/A) sum_{nu=1}^{A} r^{mult*nu + offset}  with r = 1 - q
    //    = 1 - r^{mult + offset} (1 - r^{mult*A}) / (A (1 - r^mult))
    // evaluated in log space to stay exact for tiny q
    let l = (-q).ln_1p(); // ln r
    let lead = ((mult as f64 + offset as f64) * l).exp();
    let num = -(mult as f64 * a * l).exp_m1();
    let den = -(mult as f64 * l).exp_m1();
    1.0 - lead * num / (a * den)
}

/// Exact miss and false-alarm probabilities for the configured scheme.
pub fn analytic_error_probs(config: &SyncSimConfig) -> Result<(f64, f64)> {
    config.validate()?;
    let params = config.params();
    let sigma = config.n0.sqrt();
    let thr = detection_threshold(&params, config.bits, config.delta)?;
    let q = qtail(thr / sigma);
    let window = config.window();
    match config.mode {
        SyncMode::P2p { gain } => {
            let amp = pulse_amplitude(&params, config.bits, config.delta, gain)?;
            let received = gain.sqrt() * amp;
            let miss = qtail((received - thr) / sigma);
            // pre-pulse slots: nu - 1
            let fa = uniform_false_alarm(q, window, 1, -1);
            Ok((miss, fa))
        }
        SyncMode::Diamond { gains } => {
            let can = gains.canonicalize();
            let amp = pulse_amplitude(&params, config.bits, config.delta, can.weak_g)?;
            let m1 = qtail((gains.g1.sqrt() * amp - thr) / sigma);
            let m2 = qtail((gains.g2.sqrt() * amp - thr) / sigma);
            // beamformed relay pulses add coherently to (1+delta)*sqrt(gamma beta B)
            let dest_received =
                (1.0 + config.delta) * (params.gamma() * params.beta * config.bits as f64).sqrt();
            let md = qtail((dest_received - thr) / sigma);
            let miss = 1.0 - (1.0 - m1) * (1.0 - m2) * (1.0 - md);
            // each relay watches nu-1 slots, the destination nu slots
            // (its pulse arrives at nu+1): 3*nu - 2 independent slots
            let fa = uniform_false_alarm(q, window, 3, -2);
            Ok((miss, fa))
        }
    }
}

/// First-success time of a Bernoulli(q) process, sampled by inversion.
fn sample_geometric<R: Rng>(rng: &mut R, q: f64) -> u64 {
    if q <= 0.0 {
        return u64::MAX;
    }
    let u: f64 = rng.random();
    let t = ((1.0 - u).ln() / (-q).ln_1p()).floor() + 1.0;
    if !(t >= 1.0) || t >= u64::MAX as f64 {
        u64::MAX
    } else {
        t as u64
    }
}

/// First-success time by explicit per-slot sampling, capped at `max_slots`
/// (returns u64::MAX when no slot fires).
fn first_crossing_per_slot<R: Rng>(rng: &mut R, sigma: f64, thr: f64, max_slots: u64) -> u64 {
    for t in 1..=max_slots {
        let z: f64 = rng.sample(StandardNormal);
        if sigma * z >= thr {
            return t;
        }
    }
    u64::MAX
}

#[derive(Default, Clone, Copy)]
struct Counts {
    miss: u64,
    false_alarm: u64,
    error: u64,
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&chunk.to_le_bytes());
    ChaCha12Rng::from_seed(key)
}

fn simulate(config: &SyncSimConfig) -> Result<SyncSimReport> {
    config.validate()?;
    let params = config.params();
    let sigma = config.n0.sqrt();
    let thr = detection_threshold(&params, config.bits, config.delta)?;
    let q = qtail(thr / sigma);
    let window = config.window();
    let (analytic_miss, analytic_false_alarm) = analytic_error_probs(config)?;

    let chunks: Vec<(u64, u64)> = (0..config.trials.div_ceil(CHUNK_TRIALS))
        .map(|c| (c, CHUNK_TRIALS.min(config.trials - c * CHUNK_TRIALS)))
        .collect();

    let totals = chunks
        .par_iter()
        .map(|&(chunk, trials)| {
            let mut rng = chunk_rng(config.seed, chunk);
            let mut counts = Counts::default();
            for _ in 0..trials {
                let nu = rng.random_range(1..=window);
                let (fa, miss) = match config.mode {
                    SyncMode::P2p { gain } => {
                        let fa_time = if config.per_slot {
                            first_crossing_per_slot(&mut rng, sigma, thr, nu - 1)
                        } else {
                            sample_geometric(&mut rng, q)
                        };
                        let fa = fa_time < nu;
                        let amp = pulse_amplitude(&params, config.bits, config.delta, gain)?;
                        let z: f64 = rng.sample(StandardNormal);
                        let received = gain.sqrt() * amp + sigma * z;
                        (fa, received < thr)
                    }
                    SyncMode::Diamond { gains } => {
                        let can = gains.canonicalize();
                        let amp = pulse_amplitude(&params, config.bits, config.delta, can.weak_g)?;
                        let (t1, t2, td) = if config.per_slot {
                            (
                                first_crossing_per_slot(&mut rng, sigma, thr, nu - 1),
                                first_crossing_per_slot(&mut rng, sigma, thr, nu - 1),
                                first_crossing_per_slot(&mut rng, sigma, thr, nu),
                            )
                        } else {
                            (
                                sample_geometric(&mut rng, q),
                                sample_geometric(&mut rng, q),
                                sample_geometric(&mut rng, q),
                            )
                        };
                        // relays watch slots 1..nu-1; the destination's
                        // pulse only arrives at nu+1, so it watches 1..nu
                        let fa = t1 < nu || t2 < nu || td < nu + 1;
                        let z1: f64 = rng.sample(StandardNormal);
                        let z2: f64 = rng.sample(StandardNormal);
                        let miss1 = gains.g1.sqrt() * amp + sigma * z1 < thr;
                        let miss2 = gains.g2.sqrt() * amp + sigma * z2 < thr;
                        let miss = if !miss1 && !miss2 {
                            // both relays fire; beamformed amplitudes add
                            // coherently at the destination
                            let dest = (1.0 + config.delta)
                                * (params.gamma() * params.beta * config.bits as f64).sqrt();
                            let zd: f64 = rng.sample(StandardNormal);
                            dest + sigma * zd < thr
                        } else {
                            true
                        };
                        (fa, miss)
                    }
                };
                counts.false_alarm += fa as u64;
                counts.miss += miss as u64;
                counts.error += (fa || miss) as u64;
            }
            Ok::<Counts, Error>(counts)
        })
        .try_reduce(Counts::default, |a, b| {
            Ok(Counts {
                miss: a.miss + b.miss,
                false_alarm: a.false_alarm + b.false_alarm,
                error: a.error + b.error,
            })
        })?;

    let gamma = params.gamma();
    let d2 = (1.0 + config.delta) * (1.0 + config.delta);
    let (sync_e, comm_e) = match config.mode {
        SyncMode::P2p { gain } => (d2 * gamma * config.beta / gain, d2 * gamma / gain),
        SyncMode::Diamond { gains } => {
            let can = gains.canonicalize();
            let geom = 1.0 / can.weak_g + 1.0 / can.sum_h();
            (d2 * gamma * config.beta * geom, d2 * gamma * geom)
        }
    };

    Ok(SyncSimReport {
        config: *config,
        window,
        empirical_miss: RateEstimate::from_counts(totals.miss, config.trials),
        empirical_false_alarm: RateEstimate::from_counts(totals.false_alarm, config.trials),
        empirical_overall_error: RateEstimate::from_counts(totals.error, config.trials),
        analytic_miss,
        analytic_false_alarm,
        paper_fa_bound: (-config.beta * config.bits as f64)
            .exp2()
            .powf(config.delta + config.delta * config.delta / 4.0),
        sync_energy_per_bit: sync_e,
        comm_energy_per_bit_model: comm_e,
        total_energy_per_bit_model: sync_e / config.beta * (1.0 + config.beta),
        rng_algorithm: RNG_ALGORITHM,
    })
}

/// Point-to-point synchronization simulation.
pub fn simulate_p2p_sync(config: &SyncSimConfig) -> Result<SyncSimReport> {
    match config.mode {
        SyncMode::P2p { .. } => simulate(config),
        SyncMode::Diamond { .. } => Err(Error::InvalidParameter {
            name: "mode",
            value: f64::NAN,
        }),
    }
}

/// Diamond-network synchronization simulation (source pulse to both
/// relays, beamformed relay pulses to the destination).
pub fn simulate_diamond_sync(config: &SyncSimConfig) -> Result<SyncSimReport> {
    match config.mode {
        SyncMode::Diamond { .. } => simulate(config),
        SyncMode::P2p { .. } => Err(Error::InvalidParameter {
            name: "mode",
            value: f64::NAN,
        }),
    }
}
