//! Command-line front end: deterministic, machine-readable output for the
//! bound, region-map, ratio-sweep, and synchronization-simulation tools.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use diamondlab::{bounds, gap, relay, sync, AsyncParams, ChannelGains, Error, Scene};

#[derive(Parser)]
#[command(
    name = "diamondlab",
    version,
    about = "Energy-per-bit bounds and synchronization simulation for the two-relay diamond network"
)]
struct Cli {
    /// Worker threads for grid sweeps and simulations (0 = auto)
    #[arg(long, global = true, env = "DIAMONDLAB_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    P2p,
    Diamond,
}

#[derive(Subcommand)]
enum Cmd {
    /// Upper/lower bounds and relay-usage decision at one parameter point
    Bounds {
        #[arg(long)]
        g1: f64,
        #[arg(long)]
        g2: f64,
        #[arg(long)]
        h1: f64,
        #[arg(long)]
        h2: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        n0: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Use max(lb_cutset, lb_theorem) as the ratio denominator
        #[arg(long)]
        ratio_vs_lb_best: bool,
        /// Output path (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relay-usage decision map over relay-2 positions of a scene
    RegionMap {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        n0: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Worst-case upper/lower bound ratio over the gain grid, per beta
    RatioCurve {
        /// Comma-separated list of beta values
        #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.5, 0.8, 1.0])]
        betas: Vec<f64>,
        /// Grid resolution R: gains swept over {1/R, ..., R/R}
        #[arg(long, default_value_t = 30)]
        grid: u32,
        #[arg(long, default_value_t = 1.0)]
        n0: f64,
        /// Use max(lb_cutset, lb_theorem) as the ratio denominator
        #[arg(long)]
        vs_lb_best: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo simulation of the pulse synchronization scheme
    SimSync {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Message length B in bits
        #[arg(long)]
        bits: u32,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 1.0)]
        n0: f64,
        #[arg(long, default_value_t = 1.0)]
        g1: f64,
        #[arg(long, default_value_t = 1.0)]
        g2: f64,
        #[arg(long, default_value_t = 1.0)]
        h1: f64,
        #[arg(long, default_value_t = 1.0)]
        h2: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Simulate every noise slot explicitly (small windows only)
        #[arg(long)]
        per_slot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Strong-duality self-check on random LP instances
    LpCheck {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, content).map_err(Error::from),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(Error::from)
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .ok();
    }
    match cli.cmd {
        Cmd::Bounds {
            g1,
            g2,
            h1,
            h2,
            beta,
            n0,
            format,
            ratio_vs_lb_best,
            out,
        } => {
            let gains = ChannelGains::new(g1, g2, h1, h2)?;
            let params = AsyncParams::new(n0, beta)?;
            let report = bounds::BoundReport::compute(&gains, &params, ratio_vs_lb_best)?;
            let decision = relay::classify(&gains, &params)?;
            let text = match format {
                Format::Json => {
                    let v = serde_json::json!({ "report": report, "decision": decision });
                    format!("{}\n", serde_json::to_string_pretty(&v)?)
                }
                Format::Csv => format!(
                    "{},decision\n{},{}\n",
                    bounds::BoundReport::CSV_HEADER,
                    report.csv_row(),
                    decision.kind.label()
                ),
            };
            emit(&out, &text)
        }
        Cmd::RegionMap {
            scene,
            beta,
            n0,
            format,
            out,
        } => {
            let scene = Scene::load(&scene)?;
            let params = AsyncParams::new(n0, beta)?;
            let map = relay::region_map(&scene, &params)?;
            let text = match format {
                Format::Csv => {
                    let mut s = String::from(relay::RegionCell::CSV_HEADER);
                    s.push('\n');
                    for cell in &map.cells {
                        s.push_str(&cell.csv_row());
                        s.push('\n');
                    }
                    s
                }
                Format::Json => {
                    let rows: Vec<_> = map
                        .cells
                        .iter()
                        .map(|c| {
                            serde_json::json!({
                                "x": c.x,
                                "y": c.y,
                                "decision": c.decision_label(),
                                "ub_r1": c.ub_r1,
                                "ub_r2": c.ub_r2,
                                "ub_both": c.ub_both,
                                "lb2": c.lb2,
                                "lb_theorem": c.lb_theorem,
                            })
                        })
                        .collect();
                    format!("{}\n", serde_json::to_string_pretty(&rows)?)
                }
            };
            emit(&out, &text)
        }
        Cmd::RatioCurve {
            betas,
            grid,
            n0,
            vs_lb_best,
            out,
        } => {
            if betas.is_empty() {
                return Err(Error::InvalidParameter {
                    name: "betas",
                    value: f64::NAN,
                });
            }
            if grid < 2 {
                return Err(Error::InvalidParameter {
                    name: "grid",
                    value: grid as f64,
                });
            }
            let mut s = String::from(gap::RatioSweepResult::CSV_HEADER);
            s.push('\n');
            for &beta in &betas {
                let r = gap::worst_case_ratio(beta, grid, n0, vs_lb_best)?;
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            emit(&out, &s)
        }
        Cmd::SimSync {
            mode,
            bits,
            beta,
            delta,
            n0,
            g1,
            g2,
            h1,
            h2,
            trials,
            seed,
            per_slot,
            out,
        } => {
            let sync_mode = match mode {
                Mode::P2p => sync::SyncMode::P2p { gain: g1 },
                Mode::Diamond => sync::SyncMode::Diamond {
                    gains: ChannelGains::new(g1, g2, h1, h2)?,
                },
            };
            let cfg = sync::SyncSimConfig {
                bits,
                beta,
                delta,
                n0,
                mode: sync_mode,
                trials,
                seed,
                max_log2_window: sync::DEFAULT_MAX_LOG2_WINDOW,
                per_slot,
            };
            let report = match mode {
                Mode::P2p => sync::simulate_p2p_sync(&cfg)?,
                Mode::Diamond => sync::simulate_diamond_sync(&cfg)?,
            };
            emit(
                &out,
                &format!("{}\n", serde_json::to_string_pretty(&report)?),
            )
        }
        Cmd::LpCheck { trials, seed } => {
            if trials == 0 {
                return Err(Error::InvalidParameter {
                    name: "trials",
                    value: 0.0,
                });
            }
            let summary = bounds::duality_suite(trials, seed)?;
            let worst = summary.max_gap_cutset.max(summary.max_gap_lb2);
            let pass = worst <= 1e-9;
            println!("trials: {}", summary.trials);
            println!("seed: {}", summary.seed);
            println!("max_gap_cutset: {:.16e}", summary.max_gap_cutset);
            println!("max_gap_lb2: {:.16e}", summary.max_gap_lb2);
            println!("result: {}", if pass { "PASS" } else { "FAIL" });
            if pass {
                Ok(())
            } else {
                Err(Error::Infeasible)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Infeasible | Error::Unbounded { .. } | Error::LpTooLarge { .. } => {
                    ExitCode::from(1)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}
