use thiserror::Error;

/// Errors produced by the diamondlab library.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar parameter violated its domain (non-positive gain, negative
    /// noise power, out-of-range exponent, ...).
    #[error("invalid parameter `{name}`: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    /// Two nodes of a scene coincide, so a distance-based gain is undefined.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(&'static str),

    /// The linear program has no feasible vertex.
    #[error("linear program is infeasible")]
    Infeasible,

    /// The unboundedness pre-check failed: some variable with positive
    /// objective coefficient is not limited by any constraint row.
    #[error("linear program is unbounded in variable {variable}")]
    Unbounded { variable: usize },

    /// The LP exceeds the fixed dense-solver size limits.
    #[error("linear program too large: {vars} variables, {rows} rows (max 8 each)")]
    LpTooLarge { vars: usize, rows: usize },

    /// The arrival window 2^(beta*B) does not fit under the configured cap.
    #[error("window overflow: beta*bits = {exponent} exceeds cap {cap}")]
    WindowOverflow { exponent: f64, cap: u32 },

    /// Per-slot simulation requested for a window too large to loop over.
    #[error("per-slot simulation not supported for window A = {0}")]
    PerSlotWindowTooLarge(u64),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
