//! Power control: maximize the Gaussian secrecy rate over the rectangle
//! `[0, p1_max] x [0, p2_max]`.
//!
//! Maximum power is not always optimal — raising the source power also
//! feeds the eavesdropper, and raising relay power jams the destination in
//! the low-gain regime — so the rate is evaluated on a uniform grid with
//! exact endpoints, then refined twice around the incumbent at a tenth of
//! the step, spanning the full previous step on each side. Tie-breaks go
//! to the lexicographically smaller `(p1, p2)`, making the result
//! deterministic and schedule-independent.

use crate::gaussian::{rs_i, GaussianScenario};
use crate::{Error, Result};

/// The power rectangle.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PowerBudget {
    pub p1_max: f64,
    pub p2_max: f64,
}

impl PowerBudget {
    pub fn new(p1_max: f64, p2_max: f64) -> Result<Self> {
        for (name, v) in [("p1_max", p1_max), ("p2_max", p2_max)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::arg(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(PowerBudget { p1_max, p2_max })
    }
}

/// An optimizing power allocation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PowerSolution {
    pub p1: f64,
    pub p2: f64,
    /// Secrecy rate at `(p1, p2)`, clamped nonnegative.
    pub rate: f64,
    /// Resolution of the final refinement pass (larger axis step).
    pub grid_step: f64,
}

/// Deterministic grid-plus-refinement maximization of `f` over
/// `[0, p1_max] x [0, p2_max]`. Grid endpoints are generated exactly
/// (`i = n-1` yields `p_max` itself, not `p_max` up to rounding), so
/// structure that holds only on the boundary — e.g. an objective that is
/// identically zero precisely up to `p2 = p2_max` — is evaluated exactly.
/// Returns `(p1, p2, value, final_step)`.
pub(crate) fn maximize_rect(
    f: &dyn Fn(f64, f64) -> f64,
    p1_max: f64,
    p2_max: f64,
    resolution: usize,
) -> (f64, f64, f64, f64) {
    debug_assert!(resolution >= 2);
    let coord = |i: usize, n: usize, hi: f64| -> f64 {
        if i + 1 == n {
            hi
        } else {
            hi * i as f64 / (n - 1) as f64
        }
    };

    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    for i in 0..resolution {
        let p1 = coord(i, resolution, p1_max);
        for j in 0..resolution {
            let p2 = coord(j, resolution, p2_max);
            let v = f(p1, p2);
            if v > best.2 {
                best = (p1, p2, v);
            }
        }
    }

    let mut step1 = p1_max / (resolution - 1) as f64;
    let mut step2 = p2_max / (resolution - 1) as f64;
    for _ in 0..2 {
        step1 /= 10.0;
        step2 /= 10.0;
        let center = best;
        for di in -10..=10i64 {
            let p1 = (center.0 + di as f64 * step1).clamp(0.0, p1_max);
            for dj in -10..=10i64 {
                let p2 = (center.1 + dj as f64 * step2).clamp(0.0, p2_max);
                let v = f(p1, p2);
                if v > best.2
                    || (v == best.2 && (p1, p2) < (best.0, best.1))
                {
                    best = (p1, p2, v);
                }
            }
        }
    }

    (best.0, best.1, best.2, step1.max(step2))
}

/// Best clamped compress-and-forward rate over the power rectangle for
/// gains `(a, b, c)`. The silent-relay branch needs no separate sweep: it
/// is the `p2 = 0` grid line of the same objective, which the grid always
/// contains. The result is a grid-certified lower bound on the true
/// optimum.
pub fn optimize_powers(
    a: f64,
    b: f64,
    c: f64,
    budget: &PowerBudget,
    resolution: usize,
) -> Result<PowerSolution> {
    if resolution < 2 {
        return Err(Error::arg(format!(
            "power grid resolution must be at least 2, got {resolution}"
        )));
    }
    let gains = GaussianScenario::new(a, b, c, 0.0, 0.0)?;
    let f = move |p1: f64, p2: f64| rs_i(&gains.with_powers(p1, p2)).max(0.0);
    let (p1, p2, rate, grid_step) = maximize_rect(&f, budget.p1_max, budget.p2_max, resolution);
    Ok(PowerSolution {
        p1,
        p2,
        rate,
        grid_step,
    })
}
