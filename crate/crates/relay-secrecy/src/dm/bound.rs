//! Finite-blocklength bound on how far the relay's transmitted bin index
//! can deviate from uniform.
//!
//! Secrecy of the randomized binning rests on the bin index looking
//! uniform to the eavesdropper. For block length `n`, relay rate `r2`,
//! description rate `i1` and typicality slack `(eps_prime, delta_eps)`,
//! the deviation probability is at most
//!
//! ```text
//! 2^{-n(r2 - 2d)} * ( 2/(1-e') + exp{ -[ (1-e') 2^{n(r2 - i1 - d) - 3}
//!                                        - n(r2 - 2d) ln 2 ] } )
//! ```
//!
//! with `d = delta_eps`, `e' = eps_prime`. When `r2 > i1 + d` the bracket
//! grows doubly exponentially, the parenthesized excess factor tends to
//! `2/(1-e')`, and the bound decays as `2^{-n(r2 - 2d)}`.
//!
//! The direct product underflows `f64` near `n ≈ 2000` for typical rates,
//! so [`BinUniformity::log2_bound`] evaluates the exact base-2 logarithm
//! instead; [`BinUniformity::bound`] computes the algebraically identical
//! distributed form `2/(1-e') · 2^{-n(r2-2d)} + exp{-(1-e') 2^{n(r2-i1-d)-3}}`,
//! which avoids `0 · ∞` when one factor saturates.

use crate::{Error, Result};

/// Inputs of the bin-index uniformity bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinUniformity {
    /// Block length.
    pub n: u64,
    /// Relay code rate in bits.
    pub r2: f64,
    /// Description rate `I(Yhat; Yr | X2)` in bits.
    pub i1: f64,
    /// Typicality slack in `(0, 1)`.
    pub eps_prime: f64,
    /// Rate slack `d(eps_prime) >= 0` in bits.
    pub delta_eps: f64,
}

impl BinUniformity {
    pub fn new(n: u64, r2: f64, i1: f64, eps_prime: f64, delta_eps: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("block length must be at least 1"));
        }
        for (name, v) in [("r2", r2), ("i1", i1), ("delta_eps", delta_eps)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::arg(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        if !(eps_prime > 0.0 && eps_prime < 1.0) {
            return Err(Error::arg(format!(
                "eps_prime must lie strictly in (0, 1), got {eps_prime}"
            )));
        }
        Ok(BinUniformity {
            n,
            r2,
            i1,
            eps_prime,
            delta_eps,
        })
    }

    /// `n (r2 - 2 delta_eps)`, the decay exponent of the leading term.
    fn decay(&self) -> f64 {
        self.n as f64 * (self.r2 - 2.0 * self.delta_eps)
    }

    /// `(1 - e') 2^{n(r2 - i1 - d) - 3}`, the doubly-exponential bracket.
    fn bracket(&self) -> f64 {
        let expo = self.n as f64 * (self.r2 - self.i1 - self.delta_eps) - 3.0;
        (1.0 - self.eps_prime) * expo.exp2()
    }

    /// The deviation-probability bound itself.
    ///
    /// Evaluated as `2/(1-e') · 2^{-n(r2-2d)} + exp{-bracket}`, the
    /// distributed (algebraically identical) form of the product in the
    /// module docs: it stays finite for every valid input, where the
    /// literal product can hit `0 · ∞`.
    pub fn bound(&self) -> f64 {
        2.0 / (1.0 - self.eps_prime) * (-self.decay()).exp2() + (-self.bracket()).exp()
    }

    /// Exact `log2` of [`Self::bound`], usable far past the point where
    /// the bound itself underflows `f64` (`n ≳ 2000` at ordinary rates).
    pub fn log2_bound(&self) -> f64 {
        let lead = (2.0 / (1.0 - self.eps_prime)).log2() - self.decay();
        let tail = -self.bracket() / std::f64::consts::LN_2;
        // log2(2^lead + 2^tail) without forming either power.
        let (hi, lo) = if lead >= tail { (lead, tail) } else { (tail, lead) };
        if lo == f64::NEG_INFINITY {
            return hi;
        }
        hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
    }

    /// The excess factor `bound · 2^{n(r2 - 2d)}`, i.e. the parenthesized
    /// term of the product form. Converges to `2/(1-e')` as `n` grows
    /// whenever `r2 > i1 + delta_eps`.
    pub fn excess(&self) -> f64 {
        2.0 / (1.0 - self.eps_prime)
            + (self.decay() * std::f64::consts::LN_2 - self.bracket()).exp()
    }
}
