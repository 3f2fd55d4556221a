//! Two-ray ground-reflection millimeter-wave links with Gaussian-type
//! directional antennas, and maximum achievable rates of direct, half-duplex
//! and full-duplex amplify-and-forward relaying under a sum-power constraint.
//!
//! The crate is organized around the physical pipeline:
//!
//! - [`antenna`]: normalized directional radiation pattern;
//! - [`channel`]: two-ray channel coefficients, gains and reflection metrics;
//! - [`rates`]: capacity, optimal power allocation and time sharing;
//! - [`analysis`]: scaling/monotonicity/convexity verification checks;
//! - [`experiments`]: scenario sweeps, CSV emission and the verify runner
//!   used by the `mmrelay` command-line tool.

pub mod analysis;
pub mod antenna;
pub mod channel;
mod error;
pub mod experiments;
mod numerics;
pub mod rates;

pub use error::{Error, Result};
