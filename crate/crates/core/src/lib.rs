//! Energy-per-bit bounds for the asynchronous two-relay diamond network:
//! cut-set and broadcast-cut lower bounds evaluated by exact LP vertex
//! enumeration, decode-and-forward upper bounds, optimal-relay-usage
//! classification, worst-case bound-ratio sweeps, and Monte-Carlo
//! simulation of the pulse-based synchronization scheme.

pub mod bounds;
pub mod error;
pub mod gap;
pub mod lp;
pub mod model;
pub mod relay;
pub mod sync;

pub use error::{Error, Result};
pub use model::{AsyncParams, CanonicalGains, ChannelGains, Scene};
