//! Channel model of the two-relay diamond network: the four power gains,
//! the asynchronism parameters, the strong/weak relay relabeling and the
//! distance-based gain generation used by the region maps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gains below this are rejected at construction; they would produce
/// ill-conditioned LPs without being physically meaningful here.
pub const MIN_GAIN: f64 = 1e-12;

/// The constant 2 * n0 * ln 2, the synchronous AWGN minimum energy-per-bit
/// at unit gain.
pub fn gamma_of(n0: f64) -> Result<f64> {
    if !(n0 > 0.0) || !n0.is_finite() {
        return Err(Error::InvalidParameter {
            name: "n0",
            value: n0,
        });
    }
    Ok(2.0 * n0 * std::f64::consts::LN_2)
}

/// The four power gains of the diamond network: source->relay i is `g_i`,
/// relay i->destination is `h_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelGains {
    pub g1: f64,
    pub g2: f64,
    pub h1: f64,
    pub h2: f64,
}

impl ChannelGains {
    pub fn new(g1: f64, g2: f64, h1: f64, h2: f64) -> Result<Self> {
        for (name, value) in [("g1", g1), ("g2", g2), ("h1", h1), ("h2", h2)] {
            if !value.is_finite() || value < MIN_GAIN {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        Ok(Self { g1, g2, h1, h2 })
    }

    /// Relabels the relays so that the first-hop gains satisfy
    /// `strong_g >= weak_g`. All bound formulas are written in terms of the
    /// strong relay ("relay 1" in canonical position).
    pub fn canonicalize(&self) -> CanonicalGains {
        if self.g2 > self.g1 {
            CanonicalGains {
                strong_g: self.g2,
                strong_h: self.h2,
                weak_g: self.g1,
                weak_h: self.h1,
                swapped: true,
            }
        } else {
            // ties keep relay 1 as the strong relay
            CanonicalGains {
                strong_g: self.g1,
                strong_h: self.h1,
                weak_g: self.g2,
                weak_h: self.h2,
                swapped: false,
            }
        }
    }

    /// Uniformly scaled copy; every energy bound is homogeneous of degree -1
    /// in the gains, which makes this useful in tests and normalization.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.g1 * c, self.g2 * c, self.h1 * c, self.h2 * c)
    }

    /// Copy with the relay labels exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            g1: self.g2,
            g2: self.g1,
            h1: self.h2,
            h2: self.h1,
        }
    }
}

/// Gains after the strong/weak relabeling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalGains {
    pub strong_g: f64,
    pub strong_h: f64,
    pub weak_g: f64,
    pub weak_h: f64,
    /// true iff the relay indices were exchanged
    pub swapped: bool,
}

impl CanonicalGains {
    /// Undoes the relabeling, restoring the original index order.
    pub fn recompose(&self) -> ChannelGains {
        if self.swapped {
            ChannelGains {
                g1: self.weak_g,
                g2: self.strong_g,
                h1: self.weak_h,
                h2: self.strong_h,
            }
        } else {
            ChannelGains {
                g1: self.strong_g,
                g2: self.weak_g,
                h1: self.strong_h,
                h2: self.weak_h,
            }
        }
    }

    pub fn sum_h(&self) -> f64 {
        self.strong_h + self.weak_h
    }

    pub fn sum_g(&self) -> f64 {
        self.strong_g + self.weak_g
    }
}

/// Noise power and asynchronism exponent. The derived constant
/// gamma = 2 * n0 * ln 2 is always recomputed, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsyncParams {
    pub n0: f64,
    pub beta: f64,
}

impl AsyncParams {
    pub fn new(n0: f64, beta: f64) -> Result<Self> {
        if !(n0 > 0.0) || !n0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "n0",
                value: n0,
            });
        }
        if !(beta >= 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta,
            });
        }
        Ok(Self { n0, beta })
    }

    pub fn gamma(&self) -> f64 {
        2.0 * self.n0 * std::f64::consts::LN_2
    }
}

/// Planar geometry for the region maps: fixed source, destination and
/// relay 1, with relay 2 swept over a rectangular grid. Gains are
/// distance^(-pathloss_exponent) with unit proportionality constant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scene {
    pub source: [f64; 2],
    pub dest: [f64; 2],
    pub relay1: [f64; 2],
    #[serde(default = "default_pathloss")]
    pub pathloss_exponent: f64,
    /// [xmin, ymin, xmax, ymax] rectangle for relay-2 placement
    pub grid_bounds: [f64; 4],
    /// cells per axis
    pub grid_resolution: u32,
}

fn default_pathloss() -> f64 {
    3.0
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

impl Scene {
    pub fn validate(&self) -> Result<()> {
        if !(self.pathloss_exponent > 0.0) || !self.pathloss_exponent.is_finite() {
            return Err(Error::InvalidParameter {
                name: "pathloss_exponent",
                value: self.pathloss_exponent,
            });
        }
        if dist(self.source, self.dest) <= 0.0
            || dist(self.source, self.relay1) <= 0.0
            || dist(self.relay1, self.dest) <= 0.0
        {
            return Err(Error::DegenerateGeometry("two fixed nodes coincide"));
        }
        let [xmin, ymin, xmax, ymax] = self.grid_bounds;
        if !(xmax > xmin) || !(ymax > ymin) {
            return Err(Error::DegenerateGeometry("empty grid bounds"));
        }
        if self.grid_resolution == 0 {
            return Err(Error::InvalidParameter {
                name: "grid_resolution",
                value: 0.0,
            });
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let scene: Scene = serde_json::from_str(&text)?;
        scene.validate()?;
        Ok(scene)
    }

    fn link_gain(&self, a: [f64; 2], b: [f64; 2]) -> Result<f64> {
        let d = dist(a, b);
        if d <= 0.0 {
            return Err(Error::DegenerateGeometry("zero-length link"));
        }
        Ok(d.powf(-self.pathloss_exponent))
    }

    /// Channel gains when relay 2 sits at `relay2_pos`.
    pub fn gains_for(&self, relay2_pos: [f64; 2]) -> Result<ChannelGains> {
        let g1 = self.link_gain(self.source, self.relay1)?;
        let h1 = self.link_gain(self.relay1, self.dest)?;
        let g2 = self.link_gain(self.source, relay2_pos)?;
        let h2 = self.link_gain(relay2_pos, self.dest)?;
        ChannelGains::new(g1, g2, h1, h2)
    }

    /// Center of grid cell (i, j), with i indexing x and j indexing y.
    pub fn cell_center(&self, i: u32, j: u32) -> [f64; 2] {
        let [xmin, ymin, xmax, ymax] = self.grid_bounds;
        let r = self.grid_resolution as f64;
        [
            xmin + (xmax - xmin) * (i as f64 + 0.5) / r,
            ymin + (ymax - ymin) * (j as f64 + 0.5) / r,
        ]
    }
}
