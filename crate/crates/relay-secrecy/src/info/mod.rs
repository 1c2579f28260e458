//! Conditional mutual information over the six node variables of the relay
//! channel: source input `X1`, relay input `X2`, relay observation `Yr`, its
//! compressed description `Yhat`, destination output `Y1`, eavesdropper
//! output `Y2`.
//!
//! Two representations are supported:
//!
//! * [`JointPmf`]: an explicit joint probability table over a subset of the
//!   variables, with `I(A;B|C)` evaluated by exact summation
//!   (`H(A,C) + H(B,C) - H(C) - H(A,B,C)`, with `0 log 0 = 0`).
//! * [`GaussianCov`]: a joint covariance matrix for zero-mean jointly
//!   Gaussian variables, with `I(A;B|C)` evaluated as a log-determinant
//!   ratio.
//!
//! Both paths return values in bits and agree on the shared model; the tests
//! hold them against each other and against hand-derived closed forms.

mod cov;
mod pmf;

pub use cov::{build_gaussian_cov, gaussian_conditional_mi, GaussianCov};
pub use pmf::{conditional_mi, JointPmf};

/// Node variables of the relay-eavesdropper channel, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Source input.
    X1,
    /// Relay input.
    X2,
    /// Relay observation.
    Yr,
    /// Compressed description of the relay observation.
    Yhat,
    /// Destination output.
    Y1,
    /// Eavesdropper output.
    Y2,
}

impl Var {
    /// All variables in canonical order.
    pub const ALL: [Var; 6] = [Var::X1, Var::X2, Var::Yr, Var::Yhat, Var::Y1, Var::Y2];
}
