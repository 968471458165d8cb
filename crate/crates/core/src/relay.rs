//! Classification of gain tuples into the optimal-relay-usage regimes, and
//! region maps over relay-2 positions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::Result;
use crate::model::{AsyncParams, ChannelGains, Scene};

/// Tolerance on the classification inequalities; ties go to the one-relay
/// scheme since fewer active relays is operationally cheaper.
pub const CLASSIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelayKind {
    BothRelays,
    Relay1Only,
    Relay2Only,
    Unknown,
}

impl RelayKind {
    pub fn label(&self) -> &'static str {
        match self {
            RelayKind::BothRelays => "both",
            RelayKind::Relay1Only => "relay1",
            RelayKind::Relay2Only => "relay2",
            RelayKind::Unknown => "unknown",
        }
    }
}

/// The inequality that fired, with both side values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub inequality: &'static str,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelayDecision {
    pub kind: RelayKind,
    pub certificate: Certificate,
}

/// Decides whether one relay, both relays, or neither answer applies.
///
/// After canonicalization, with S the strong-relay two-hop bound:
/// (a) S <= LB2 means the one-relay scheme meets the universal lower bound;
/// (b) otherwise the second-hop inequality decides in favor of both relays;
/// (c) otherwise the bounds do not provide an answer.
pub fn classify(gains: &ChannelGains, params: &AsyncParams) -> Result<RelayDecision> {
    let can = gains.canonicalize();
    let s = (1.0 + params.beta) * params.gamma() * (1.0 / can.strong_g + 1.0 / can.strong_h);
    let lb2 = bounds::lb2(gains, params)?;
    if s <= lb2 + CLASSIFY_TOL {
        let kind = if can.swapped {
            RelayKind::Relay2Only
        } else {
            RelayKind::Relay1Only
        };
        return Ok(RelayDecision {
            kind,
            certificate: Certificate {
                inequality: "strong_two_hop <= lb2",
                lhs: s,
                rhs: lb2,
            },
        });
    }
    let lhs = 1.0 / can.strong_g + 1.0 / can.strong_h;
    let rhs = 1.0 / can.weak_g + 1.0 / can.sum_h();
    if lhs >= rhs - CLASSIFY_TOL {
        return Ok(RelayDecision {
            kind: RelayKind::BothRelays,
            certificate: Certificate {
                inequality: "1/strong_g + 1/strong_h >= 1/weak_g + 1/(h1+h2)",
                lhs,
                rhs,
            },
        });
    }
    Ok(RelayDecision {
        kind: RelayKind::Unknown,
        certificate: Certificate {
            inequality: "no condition fired",
            lhs,
            rhs,
        },
    })
}

/// One grid cell of a region map. `decision` is None for degenerate cells
/// (relay 2 coincides with a fixed node).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionCell {
    pub x: f64,
    pub y: f64,
    pub decision: Option<RelayKind>,
    pub ub_r1: f64,
    pub ub_r2: f64,
    pub ub_both: f64,
    pub lb2: f64,
    pub lb_theorem: f64,
}

impl RegionCell {
    pub const CSV_HEADER: &'static str = "x,y,decision,ub_r1,ub_r2,ub_both,lb2,lb_theorem";

    pub fn decision_label(&self) -> &'static str {
        match &self.decision {
            Some(kind) => kind.label(),
            None => "degenerate",
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{:.16e},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            self.x,
            self.y,
            self.decision_label(),
            self.ub_r1,
            self.ub_r2,
            self.ub_both,
            self.lb2,
            self.lb_theorem
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionMap {
    pub cells: Vec<RegionCell>,
}

impl RegionMap {
    pub fn count(&self, kind: RelayKind) -> usize {
        self.cells
            .iter()
            .filter(|c| c.decision == Some(kind))
            .count()
    }
}

/// Classifies every grid cell center of the scene. Cells are independent,
/// so the map is computed with a parallel sweep.
pub fn region_map(scene: &Scene, params: &AsyncParams) -> Result<RegionMap> {
    scene.validate()?;
    let r = scene.grid_resolution;
    let cells: Result<Vec<RegionCell>> = (0..r * r)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / r, idx % r);
            let pos = scene.cell_center(i, j);
            let gains = match scene.gains_for(pos) {
                Ok(g) => g,
                Err(_) => {
                    // coincides with a fixed node: excluded from counts
                    return Ok(RegionCell {
                        x: pos[0],
                        y: pos[1],
                        decision: None,
                        ub_r1: f64::NAN,
                        ub_r2: f64::NAN,
                        ub_both: f64::NAN,
                        lb2: f64::NAN,
                        lb_theorem: f64::NAN,
                    });
                }
            };
            let decision = classify(&gains, params)?;
            Ok(RegionCell {
                x: pos[0],
                y: pos[1],
                decision: Some(decision.kind),
                ub_r1: bounds::ub_one_relay(&gains, 1, params)?,
                ub_r2: bounds::ub_one_relay(&gains, 2, params)?,
                ub_both: bounds::ub_separation_both(&gains, params),
                lb2: bounds::lb2(&gains, params)?,
                lb_theorem: bounds::lb_theorem(&gains, params)?,
            })
        })
        .collect();
    Ok(RegionMap { cells: cells? })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(beta: f64) -> AsyncParams {
        AsyncParams::new(1.0, beta).unwrap()
    }

    #[test]
    fn strong_relay_only_case() {
        let g = ChannelGains::new(1.0, 0.01, 1.0, 0.01).unwrap();
        let d = classify(&g, &params(1.0)).unwrap();
        assert_eq!(d.kind, RelayKind::Relay1Only);
        assert!(d.certificate.lhs <= d.certificate.rhs + CLASSIFY_TOL);

        let d = classify(&g.swapped(), &params(1.0)).unwrap();
        assert_eq!(d.kind, RelayKind::Relay2Only);
    }

    #[test]
    fn symmetric_case_is_both() {
        for (g, h) in [(1.0, 1.0), (0.3, 2.0), (2.5, 0.1)] {
            let gains = ChannelGains::new(g, g, h, h).unwrap();
            let d = classify(&gains, &params(0.7)).unwrap();
            // one-relay can still win on ties, but for distinct h the
            // second-hop inequality 1/h >= 1/(2h) is strict
            assert!(matches!(
                d.kind,
                RelayKind::BothRelays | RelayKind::Relay1Only
            ));
            if d.kind == RelayKind::BothRelays {
                assert!(d.certificate.lhs >= d.certificate.rhs - CLASSIFY_TOL);
            }
        }
    }

    #[test]
    fn classification_scale_invariant() {
        let p = params(0.5);
        let g = ChannelGains::new(0.9, 0.2, 1.4, 0.6).unwrap();
        let a = classify(&g, &p).unwrap();
        let b = classify(&g.scaled(37.0).unwrap(), &p).unwrap();
        assert_eq!(a.kind, b.kind);
    }

    #[test]
    fn relabeling_swaps_one_relay_kinds() {
        let p = params(0.5);
        for (g1, g2, h1, h2) in [
            (1.0, 0.02, 1.0, 0.02),
            (0.4, 1.3, 0.8, 0.9),
            (2.0, 2.0, 0.5, 1.5),
        ] {
            let g = ChannelGains::new(g1, g2, h1, h2).unwrap();
            let a = classify(&g, &p).unwrap().kind;
            let b = classify(&g.swapped(), &p).unwrap().kind;
            let expected = match a {
                RelayKind::Relay1Only => RelayKind::Relay2Only,
                RelayKind::Relay2Only => RelayKind::Relay1Only,
                other => other,
            };
            assert_eq!(b, expected);
        }
    }

    #[test]
    fn region_map_coincident_relays_both() {
        // relay 2 on top of relay 1 gives pairwise equal gains
        let scene = Scene {
            source: [0.0, 0.0],
            dest: [4.0, 0.0],
            relay1: [2.0, 1.0],
            pathloss_exponent: 3.0,
            grid_bounds: [1.5, 0.5, 2.5, 1.5],
            grid_resolution: 1,
        };
        let p = params(0.5);
        let map = region_map(&scene, &p).unwrap();
        assert_eq!(map.cells.len(), 1);
        assert_eq!(map.cells[0].decision, Some(RelayKind::BothRelays));
    }

    #[test]
    fn one_relay_cells_are_tight() {
        let scene = Scene {
            source: [0.0, 0.0],
            dest: [4.0, 0.0],
            relay1: [2.0, 0.5],
            pathloss_exponent: 3.0,
            grid_bounds: [-4.0, -4.0, 8.0, 4.0],
            grid_resolution: 12,
        };
        let p = params(0.5);
        let map = region_map(&scene, &p).unwrap();
        for cell in &map.cells {
            match cell.decision {
                Some(RelayKind::Relay1Only) | Some(RelayKind::Relay2Only) => {
                    let strong = cell.ub_r1.min(cell.ub_r2);
                    assert!(
                        (cell.lb_theorem - strong).abs() <= 1e-9 * strong.max(1.0),
                        "one-relay cell not tight"
                    );
                }
                Some(RelayKind::BothRelays) => {
                    let strong = cell.ub_r1.min(cell.ub_r2);
                    assert!(cell.ub_both <= strong + 1e-9 * strong.max(1.0));
                }
                _ => {}
            }
        }
    }
}
