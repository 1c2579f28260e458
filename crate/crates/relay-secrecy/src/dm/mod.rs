//! Rate formulas for the finite-alphabet relay-eavesdropper channel under
//! compress-and-forward relaying with randomized binning.
//!
//! For a product input law `p(x1) p(x2)` and a relay test channel
//! `p(yhat | yr, x2)`, the rate seen by receiver `t` (destination or
//! eavesdropper) when the relay forwards its compression index at rate `r2`
//! is
//!
//! ```text
//! r1(t, r2) = max{ min[ I(X1; Yhat,Yt | X2), i2(t) - r2 ], I(X1; Yt) }
//! i2(t)     = I(X1,X2; Yt) + I(Yhat; X1,Yt | X2)
//! ```
//!
//! valid whenever `r2 >= i1 = I(Yhat; Yr | X2)`. The first arm of the outer
//! max is joint decoding of the compression index and the message; the
//! second is separate decoding that treats the relay signal as noise. The
//! relay rate in excess of `i1` is spent on dummy randomization, so the
//! achieved secrecy rate is `[r1(dest, r2) - r1(eve, r2)]+` and the best
//! `r2` sits at one of finitely many breakpoints of the two piecewise-linear
//! curves.
//!
//! Disabling the test channel (`Yhat` absent) removes the compression side
//! entirely and leaves the relay acting as a pure helping interferer; the
//! same formulas then reproduce the wiretap-channel-with-helper rates.

mod bound;
pub mod fixture;
mod search;

pub use bound::BinUniformity;
pub use search::{
    classify_eavesdropping, maximize_over_policies, ClassViolation, Classification,
    EavesdropperClass, SearchConfig, SearchOutcome,
};

use crate::info::{conditional_mi, JointPmf, Var};
use crate::{Error, Result};

/// A discrete memoryless relay-eavesdropper channel
/// `p(yr, y1, y2 | x1, x2)` over finite alphabets.
#[derive(Debug, Clone)]
pub struct DmChannel {
    nx1: usize,
    nx2: usize,
    nyr: usize,
    ny1: usize,
    ny2: usize,
    /// Transition probabilities, indexed `[x1][x2][yr][y1][y2]` row-major.
    transition: Vec<f64>,
}

const SUM_TOL: f64 = 1e-12;

impl DmChannel {
    pub fn new(
        nx1: usize,
        nx2: usize,
        nyr: usize,
        ny1: usize,
        ny2: usize,
        transition: Vec<f64>,
    ) -> Result<Self> {
        for (name, n) in [
            ("x1", nx1),
            ("x2", nx2),
            ("yr", nyr),
            ("y1", ny1),
            ("y2", ny2),
        ] {
            if n == 0 {
                return Err(Error::arg(format!("alphabet {name} must not be empty")));
            }
        }
        let cells = nx1 * nx2 * nyr * ny1 * ny2;
        if transition.len() != cells {
            return Err(Error::arg(format!(
                "transition table has {} cells, expected {cells}",
                transition.len()
            )));
        }
        let ch = DmChannel {
            nx1,
            nx2,
            nyr,
            ny1,
            ny2,
            transition,
        };
        let slice = nyr * ny1 * ny2;
        for x1 in 0..nx1 {
            for x2 in 0..nx2 {
                let base = (x1 * nx2 + x2) * slice;
                let probs = &ch.transition[base..base + slice];
                if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
                    return Err(Error::arg(format!(
                        "transition slice (x1={x1}, x2={x2}) has entry {p}"
                    )));
                }
                let total: f64 = probs.iter().sum();
                if (total - 1.0).abs() > SUM_TOL {
                    return Err(Error::arg(format!(
                        "transition slice (x1={x1}, x2={x2}) sums to {total}, not 1"
                    )));
                }
            }
        }
        Ok(ch)
    }

    /// Alphabet sizes `(x1, x2, yr, y1, y2)`.
    pub fn sizes(&self) -> (usize, usize, usize, usize, usize) {
        (self.nx1, self.nx2, self.nyr, self.ny1, self.ny2)
    }

    pub fn prob(&self, x1: usize, x2: usize, yr: usize, y1: usize, y2: usize) -> f64 {
        self.transition[(((x1 * self.nx2 + x2) * self.nyr + yr) * self.ny1 + y1) * self.ny2 + y2]
    }
}

/// Relay test channel `p(yhat | yr, x2)`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TestChannel {
    nyr: usize,
    nx2: usize,
    nyhat: usize,
    /// Probabilities indexed `[yr][x2][yhat]` row-major.
    probs: Vec<f64>,
}

impl TestChannel {
    pub fn new(nyr: usize, nx2: usize, nyhat: usize, probs: Vec<f64>) -> Result<Self> {
        if nyr == 0 || nx2 == 0 || nyhat == 0 {
            return Err(Error::arg("test channel alphabets must not be empty"));
        }
        if probs.len() != nyr * nx2 * nyhat {
            return Err(Error::arg(format!(
                "test channel table has {} cells, expected {}",
                probs.len(),
                nyr * nx2 * nyhat
            )));
        }
        for yr in 0..nyr {
            for x2 in 0..nx2 {
                let base = (yr * nx2 + x2) * nyhat;
                let row = &probs[base..base + nyhat];
                if let Some(p) = row.iter().find(|p| !p.is_finite() || **p < 0.0) {
                    return Err(Error::arg(format!(
                        "test channel row (yr={yr}, x2={x2}) has entry {p}"
                    )));
                }
                let total: f64 = row.iter().sum();
                if (total - 1.0).abs() > SUM_TOL {
                    return Err(Error::arg(format!(
                        "test channel row (yr={yr}, x2={x2}) sums to {total}, not 1"
                    )));
                }
            }
        }
        Ok(TestChannel {
            nyr,
            nx2,
            nyhat,
            probs,
        })
    }

    /// Deterministic copy of the relay observation (`yhat = yr`).
    pub fn identity(nyr: usize, nx2: usize) -> Self {
        let mut probs = vec![0.0; nyr * nx2 * nyr];
        for yr in 0..nyr {
            for x2 in 0..nx2 {
                probs[(yr * nx2 + x2) * nyr + yr] = 1.0;
            }
        }
        TestChannel {
            nyr,
            nx2,
            nyhat: nyr,
            probs,
        }
    }

    pub fn yhat_size(&self) -> usize {
        self.nyhat
    }

    pub fn prob(&self, yhat: usize, yr: usize, x2: usize) -> f64 {
        self.probs[(yr * self.nx2 + x2) * self.nyhat + yhat]
    }
}

/// Input distributions and optional relay test channel.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct InputPolicy {
    pub px1: Vec<f64>,
    pub px2: Vec<f64>,
    /// `None` disables compression: the relay transmits `X2` but describes
    /// nothing, acting as a pure helping interferer.
    pub test_channel: Option<TestChannel>,
}

impl InputPolicy {
    pub fn new(px1: Vec<f64>, px2: Vec<f64>, test_channel: Option<TestChannel>) -> Result<Self> {
        for (name, p) in [("px1", &px1), ("px2", &px2)] {
            if p.is_empty() {
                return Err(Error::arg(format!("{name} must not be empty")));
            }
            if let Some(v) = p.iter().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(Error::arg(format!("{name} has entry {v}")));
            }
            let total: f64 = p.iter().sum();
            if (total - 1.0).abs() > SUM_TOL {
                return Err(Error::arg(format!("{name} sums to {total}, not 1")));
            }
        }
        Ok(InputPolicy {
            px1,
            px2,
            test_channel,
        })
    }
}

/// Receivers of the source message, by decreasing legitimacy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Receiver {
    Destination,
    Eavesdropper,
}

impl Receiver {
    pub fn index(self) -> usize {
        match self {
            Receiver::Destination => 0,
            Receiver::Eavesdropper => 1,
        }
    }
}

/// The mutual-information quantities that determine both receivers' rates.
///
/// Index 0 is the destination, index 1 the eavesdropper:
///
/// * `i1`: description rate `I(Yhat; Yr | X2)` the relay link must carry.
/// * `i2[t]`: joint-decoding sum rate `I(X1,X2; Yt) + I(Yhat; X1,Yt | X2)`.
/// * `i_joint[t]`: message rate `I(X1; Yhat,Yt | X2)` under joint decoding.
/// * `i_direct[t]`: fallback rate `I(X1; Yt)` ignoring the relay.
/// * `i3`: `I(X2; Y2 | X1) + I(Yhat; X1,Y2 | X2)`, the relay rate beyond
///   which the eavesdropper is forced down to `i_direct`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RateTerms {
    pub i1: f64,
    pub i2: [f64; 2],
    pub i_joint: [f64; 2],
    pub i_direct: [f64; 2],
    pub i3: f64,
}

/// Which arm of the rate formula is active at a receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodingMode {
    /// Compression index and message decoded together.
    Joint,
    /// Relay signal treated as noise.
    Separate,
}

/// Rates achieved at a particular relay rate `r2`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RateBreakdown {
    pub r1_dest: f64,
    pub r1_eve: f64,
    pub r2: f64,
    /// Active decoding arm at the destination and at the eavesdropper.
    pub decoding: [DecodingMode; 2],
    /// Secrecy rate `[r1_dest - r1_eve]+`.
    pub rs: f64,
}

/// Joint distribution `p(x1) p(x2) p(yr,y1,y2|x1,x2) p(yhat|yr,x2)` as an
/// explicit table. With compression disabled the `Yhat` axis is omitted.
pub fn joint_distribution(ch: &DmChannel, pol: &InputPolicy) -> Result<JointPmf> {
    if pol.px1.len() != ch.nx1 || pol.px2.len() != ch.nx2 {
        return Err(Error::arg(format!(
            "policy is over {}x{} inputs but the channel has {}x{}",
            pol.px1.len(),
            pol.px2.len(),
            ch.nx1,
            ch.nx2
        )));
    }
    match &pol.test_channel {
        Some(tc) => {
            if tc.nyr != ch.nyr || tc.nx2 != ch.nx2 {
                return Err(Error::arg(format!(
                    "test channel is over (yr={}, x2={}) but the channel has (yr={}, x2={})",
                    tc.nyr, tc.nx2, ch.nyr, ch.nx2
                )));
            }
            let sizes = vec![ch.nx1, ch.nx2, ch.nyr, tc.nyhat, ch.ny1, ch.ny2];
            let mut w = Vec::with_capacity(sizes.iter().product());
            for x1 in 0..ch.nx1 {
                for x2 in 0..ch.nx2 {
                    let pin = pol.px1[x1] * pol.px2[x2];
                    for yr in 0..ch.nyr {
                        for yhat in 0..tc.nyhat {
                            let pq = pin * tc.prob(yhat, yr, x2);
                            for y1 in 0..ch.ny1 {
                                for y2 in 0..ch.ny2 {
                                    w.push(pq * ch.prob(x1, x2, yr, y1, y2));
                                }
                            }
                        }
                    }
                }
            }
            JointPmf::from_unnormalized(
                vec![Var::X1, Var::X2, Var::Yr, Var::Yhat, Var::Y1, Var::Y2],
                sizes,
                w,
            )
        }
        None => {
            let sizes = vec![ch.nx1, ch.nx2, ch.nyr, ch.ny1, ch.ny2];
            let mut w = Vec::with_capacity(sizes.iter().product());
            for x1 in 0..ch.nx1 {
                for x2 in 0..ch.nx2 {
                    let pin = pol.px1[x1] * pol.px2[x2];
                    for yr in 0..ch.nyr {
                        for y1 in 0..ch.ny1 {
                            for y2 in 0..ch.ny2 {
                                w.push(pin * ch.prob(x1, x2, yr, y1, y2));
                            }
                        }
                    }
                }
            }
            JointPmf::from_unnormalized(vec![Var::X1, Var::X2, Var::Yr, Var::Y1, Var::Y2], sizes, w)
        }
    }
}

/// Evaluates all [`RateTerms`] for a channel and policy.
pub fn compute_terms(ch: &DmChannel, pol: &InputPolicy) -> Result<RateTerms> {
    let joint = joint_distribution(ch, pol)?;
    terms_from_joint(&joint, pol.test_channel.is_some())
}

pub(crate) fn terms_from_joint(joint: &JointPmf, compression: bool) -> Result<RateTerms> {
    use Var::*;
    let mi = |a: &[Var], b: &[Var], c: &[Var]| conditional_mi(joint, a, b, c);

    let i_direct = [mi(&[X1], &[Y1], &[])?, mi(&[X1], &[Y2], &[])?];
    let sum_rate = [mi(&[X1, X2], &[Y1], &[])?, mi(&[X1, X2], &[Y2], &[])?];

    if !compression {
        let i_joint = [mi(&[X1], &[Y1], &[X2])?, mi(&[X1], &[Y2], &[X2])?];
        let i3 = mi(&[X2], &[Y2], &[X1])?;
        return Ok(RateTerms {
            i1: 0.0,
            i2: sum_rate,
            i_joint,
            i_direct,
            i3,
        });
    }

    let i1 = mi(&[Yhat], &[Yr], &[X2])?;
    let i_joint = [mi(&[X1], &[Yhat, Y1], &[X2])?, mi(&[X1], &[Yhat, Y2], &[X2])?];
    let desc = [mi(&[Yhat], &[X1, Y1], &[X2])?, mi(&[Yhat], &[X1, Y2], &[X2])?];
    let i2 = [sum_rate[0] + desc[0], sum_rate[1] + desc[1]];
    let i3 = mi(&[X2], &[Y2], &[X1])? + desc[1];

    // i2 - i1 must equal I(X1,X2;Y1) - I(Yhat;Yr|X1,X2,Y1): the description
    // rate splits into what the destination resolves and a residual.
    debug_assert!({
        let residual = mi(&[Yhat], &[Yr], &[X1, X2, Y1])?;
        ((i2[0] - i1) - (sum_rate[0] - residual)).abs() < 1e-9
    });

    Ok(RateTerms {
        i1,
        i2,
        i_joint,
        i_direct,
        i3,
    })
}

/// Receiver-`rx` rate at relay rate `r2`:
/// `max{ min[ i_joint, i2 - r2 ], i_direct }`.
pub fn r1_of_r2(terms: &RateTerms, rx: Receiver, r2: f64) -> f64 {
    debug_assert!(r2 >= 0.0);
    let t = rx.index();
    terms.i_joint[t].min(terms.i2[t] - r2).max(terms.i_direct[t])
}

fn decoding_mode(terms: &RateTerms, t: usize, r2: f64) -> DecodingMode {
    if terms.i_joint[t].min(terms.i2[t] - r2) > terms.i_direct[t] {
        DecodingMode::Joint
    } else {
        DecodingMode::Separate
    }
}

/// Maximizes the secrecy rate `[r1(dest, r2) - r1(eve, r2)]+` over the
/// admissible relay rates `r2 >= i1`.
///
/// Both receiver curves are piecewise linear in `r2` with slopes in
/// `{0, -1}` and become constant past their last breakpoint, so it suffices
/// to evaluate the difference at `i1` and at every breakpoint at or above
/// `i1`; the flat tail (both receivers at `i_direct`) is covered by the
/// largest of these. Ties are broken toward the smallest `r2`.
pub fn optimize_r2(terms: &RateTerms) -> RateBreakdown {
    let mut cands = vec![terms.i1];
    for t in 0..2 {
        for bp in [
            terms.i2[t] - terms.i_joint[t],
            terms.i2[t] - terms.i_direct[t],
        ] {
            if bp > terms.i1 {
                cands.push(bp);
            }
        }
    }
    if terms.i3 > terms.i1 {
        cands.push(terms.i3);
    }
    cands.sort_by(f64::total_cmp);

    let mut best_r2 = cands[0];
    let mut best = f64::NEG_INFINITY;
    for &r2 in &cands {
        let diff = r1_of_r2(terms, Receiver::Destination, r2)
            - r1_of_r2(terms, Receiver::Eavesdropper, r2);
        if diff > best {
            best = diff;
            best_r2 = r2;
        }
    }

    breakdown_at(terms, best_r2)
}

/// [`RateBreakdown`] at an explicit relay rate.
pub fn breakdown_at(terms: &RateTerms, r2: f64) -> RateBreakdown {
    let r1_dest = r1_of_r2(terms, Receiver::Destination, r2);
    let r1_eve = r1_of_r2(terms, Receiver::Eavesdropper, r2);
    RateBreakdown {
        r1_dest,
        r1_eve,
        r2,
        decoding: [decoding_mode(terms, 0, r2), decoding_mode(terms, 1, r2)],
        rs: (r1_dest - r1_eve).max(0.0),
    }
}

/// Best secrecy rate for one channel and policy (terms plus relay-rate
/// optimization).
pub fn secrecy_rate(ch: &DmChannel, pol: &InputPolicy) -> Result<RateBreakdown> {
    Ok(optimize_r2(&compute_terms(ch, pol)?))
}

/// Secrecy rate when the relay only interferes (no compression): the
/// wiretap channel with a helping interferer.
pub fn wt_hi_rate(ch: &DmChannel, px1: &[f64], px2: &[f64]) -> Result<RateBreakdown> {
    let pol = InputPolicy::new(px1.to_vec(), px2.to_vec(), None)?;
    secrecy_rate(ch, &pol)
}

/// Secrecy rate guaranteed under very strong eavesdropping, where the
/// eavesdropper can always decode the source message directly:
///
/// ```text
/// ( min[ i_joint(dest) - I(X1;Y2),
///        i2(dest) - i2(eve),
///        i2(dest) - i1 - I(X1;Y2) ] )+
/// ```
///
/// This is the secrecy rate of [`optimize_r2`] restricted to joint decoding
/// at the destination and `r2 = max{i1, i3}`, so it never exceeds the
/// optimized value.
pub fn very_strong_lower_bound(terms: &RateTerms) -> f64 {
    let eve_direct = terms.i_direct[1];
    let t1 = terms.i_joint[0] - eve_direct;
    let t2 = terms.i2[0] - terms.i2[1];
    let t3 = terms.i2[0] - terms.i1 - eve_direct;
    t1.min(t2).min(t3).max(0.0)
}
