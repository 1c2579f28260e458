//! Achievable secrecy rates for a four-node relay channel with an external
//! eavesdropper: a source talks to a destination with the help of a relay
//! that compresses its observation and forwards it over its own link, while
//! an eavesdropper overhears both transmissions.
//!
//! The crate has two evaluation paths that share one rate engine:
//!
//! * [`dm`] works on arbitrary finite (discrete memoryless) channels given as
//!   explicit transition tables, with grid search over input distributions
//!   and relay test channels.
//! * [`gaussian`] evaluates the closed forms for the scalar Gaussian model
//!   `Y1 = X1 + sqrt(b) X2 + Z1`, `Y2 = sqrt(a) X1 + X2 + Z2`,
//!   `Yr = sqrt(c) X1 + Zr`, including the helping-interferer baseline and
//!   joint power allocation ([`power`]).
//!
//! [`info`] supplies the underlying conditional mutual information
//! calculations (exact summation for finite alphabets, log-determinant
//! ratios for jointly Gaussian vectors); [`sweep`] drives parameter sweeps
//! and CSV output for the CLI.

pub mod dm;
mod error;
pub mod gaussian;
pub mod info;
pub mod power;
pub mod sweep;

pub use error::{Error, Result};
