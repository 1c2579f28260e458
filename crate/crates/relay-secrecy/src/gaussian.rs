//! Closed-form secrecy rates for the Gaussian instance of the channel:
//!
//! ```text
//! Y1 = X1 + sqrt(b) X2 + Z1      (destination)
//! Y2 = sqrt(a) X1 + X2 + Z2      (eavesdropper)
//! Yr = sqrt(c) X1 + Zr           (relay observation)
//! Yhat = Yr + Zc                 (quantization, Var Zc = delta_c)
//! ```
//!
//! with unit-variance noises and powers `E X1^2 = p1`, `E X2^2 = p2`. All
//! mutual-information terms of the finite-alphabet engine have elementary
//! closed forms here, built from `cap(x) = 1/2 log2(1+x)`; the resulting
//! [`RateTerms`] feed the same relay-rate optimizer as the discrete path.
//!
//! Alongside the generic terms, this module provides the fixed-scheme
//! secrecy rate `rs_fixed = max(rs_i, rs_ii)`, where [`rs_i`] is a
//! three-regime closed form in the relay-destination gain `b` (with the
//! reference quantization noise [`quantization_choice`]) and [`rs_ii`] is
//! the direct wiretap rate with a silent relay; and the helper-interferer
//! baseline [`gaussian_wt_hi`], which drops the quantization path
//! entirely. Every closed form can be cross-checked against the
//! independent covariance log-det oracle via [`covariance_terms`].

use crate::dm::{optimize_r2, r1_of_r2, RateBreakdown, RateTerms, Receiver};
use crate::info::{build_gaussian_cov, gaussian_conditional_mi, Var};
use crate::{Error, Result};

/// Channel gains and transmit powers of the Gaussian model.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GaussianScenario {
    /// Source-to-eavesdropper gain.
    pub a: f64,
    /// Relay-to-destination gain.
    pub b: f64,
    /// Source-to-relay gain.
    pub c: f64,
    /// Source power.
    pub p1: f64,
    /// Relay power.
    pub p2: f64,
}

impl GaussianScenario {
    pub fn new(a: f64, b: f64, c: f64, p1: f64, p2: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c), ("p1", p1), ("p2", p2)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::arg(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(GaussianScenario { a, b, c, p1, p2 })
    }

    /// Same gains with different powers.
    pub fn with_powers(&self, p1: f64, p2: f64) -> Self {
        GaussianScenario { p1, p2, ..*self }
    }
}

/// Quantization-noise variance and relay code rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompressionConfig {
    /// Variance of the quantization noise; `None` disables compression
    /// (the relay interferes but describes nothing).
    pub delta_c: Option<f64>,
    /// Relay code rate in bits.
    pub r2: f64,
}

impl CompressionConfig {
    pub fn new(delta_c: Option<f64>, r2: f64) -> Result<Self> {
        if let Some(d) = delta_c {
            if !d.is_finite() || d < 0.0 {
                return Err(Error::arg(format!(
                    "delta_c must be finite and nonnegative, got {d}"
                )));
            }
        }
        if !r2.is_finite() || r2 < 0.0 {
            return Err(Error::arg(format!(
                "r2 must be finite and nonnegative, got {r2}"
            )));
        }
        Ok(CompressionConfig { delta_c, r2 })
    }
}

/// `1/2 log2(1 + x)`, the Gaussian channel rate function.
pub fn cap(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::arg(format!("cap requires x >= 0, got {x}")));
    }
    Ok(cap_nn(x))
}

/// Infallible [`cap`] for arguments known nonnegative by construction.
pub(crate) fn cap_nn(x: f64) -> f64 {
    debug_assert!(x >= 0.0 || x.is_nan());
    0.5 * x.ln_1p() / std::f64::consts::LN_2
}

/// All rate terms of the Gaussian model in closed form. With `delta_c`
/// disabled the quantization path vanishes: the terms become those of the
/// helper-interferer reduction. `delta_c = 0` yields an infinite
/// description rate `i1` (lossless quantization of a continuous signal),
/// which the relay-rate optimizer handles by forcing both receivers onto
/// their direct-decoding floors.
pub fn rate_terms(s: &GaussianScenario, delta_c: Option<f64>) -> RateTerms {
    let &GaussianScenario { a, b, c, p1, p2 } = s;
    // The jammed eavesdropper SNR is written effective-gain-first: at the
    // very-strong boundary a = 1 + p2 the factor is exactly 1, so the floor
    // compares bitwise against the helper-conditional rate cap(p1) and a
    // mathematically zero baseline rate computes as exactly zero.
    let i_direct = [cap_nn(p1 / (1.0 + b * p2)), cap_nn(a / (1.0 + p2) * p1)];
    match delta_c {
        Some(d) => {
            // Residual relay SNR after quantization noise.
            let g = c * p1 / (1.0 + d);
            RateTerms {
                i1: cap_nn((1.0 + c * p1) / d),
                i2: [cap_nn(p1 + b * p2) + cap_nn(g), cap_nn(a * p1 + p2) + cap_nn(g)],
                i_joint: [cap_nn(p1 + g), cap_nn(a * p1 + g)],
                i_direct,
                i3: cap_nn(p2) + cap_nn(g),
            }
        }
        None => RateTerms {
            i1: 0.0,
            i2: [cap_nn(p1 + b * p2), cap_nn(a * p1 + p2)],
            i_joint: [cap_nn(p1), cap_nn(a * p1)],
            i_direct,
            i3: cap_nn(p2),
        },
    }
}

/// The same [`RateTerms`] via the covariance log-det oracle instead of the
/// closed forms — an independent route used to validate [`rate_terms`].
pub fn covariance_terms(s: &GaussianScenario, delta_c: Option<f64>) -> Result<RateTerms> {
    use Var::*;
    let cov = build_gaussian_cov(s.a, s.b, s.c, s.p1, s.p2, delta_c)?;
    let mi = |a: &[Var], b: &[Var], c: &[Var]| gaussian_conditional_mi(&cov, a, b, c);

    let i_direct = [mi(&[X1], &[Y1], &[])?, mi(&[X1], &[Y2], &[])?];
    let sum_rate = [mi(&[X1, X2], &[Y1], &[])?, mi(&[X1, X2], &[Y2], &[])?];
    if delta_c.is_none() {
        return Ok(RateTerms {
            i1: 0.0,
            i2: sum_rate,
            i_joint: [mi(&[X1], &[Y1], &[X2])?, mi(&[X1], &[Y2], &[X2])?],
            i_direct,
            i3: mi(&[X2], &[Y2], &[X1])?,
        });
    }
    let desc = [mi(&[Yhat], &[X1, Y1], &[X2])?, mi(&[Yhat], &[X1, Y2], &[X2])?];
    Ok(RateTerms {
        i1: mi(&[Yhat], &[Yr], &[X2])?,
        i2: [sum_rate[0] + desc[0], sum_rate[1] + desc[1]],
        i_joint: [mi(&[X1], &[Yhat, Y1], &[X2])?, mi(&[X1], &[Yhat, Y2], &[X2])?],
        i_direct,
        i3: mi(&[X2], &[Y2], &[X1])? + desc[1],
    })
}

/// Receiver rate at a given compression configuration: the piecewise
/// formula `max{min[i_joint, i2 - r2], i_direct}` on the closed-form
/// terms. Requires an enabled quantization path.
pub fn r1_gaussian(s: &GaussianScenario, cfg: &CompressionConfig, rx: Receiver) -> Result<f64> {
    if cfg.delta_c.is_none() {
        return Err(Error::arg(
            "r1_gaussian requires an enabled quantization path; use the \
             helper-interferer rate for the disabled case",
        ));
    }
    Ok(r1_of_r2(&rate_terms(s, cfg.delta_c), rx, cfg.r2))
}

/// The reference quantization design: noise variance
/// `delta = (1 + (1+c) p1) / (b p2)` — quantization noise scaled so the
/// destination can absorb the description — and the matching relay rate
/// `r2 = max{ i1, i3 }` evaluated in closed form. Degenerate when
/// `b p2 = 0` (nothing can be delivered): compression is disabled and the
/// relay rate is zero.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QuantizationChoice {
    pub delta_c: Option<f64>,
    pub r2: f64,
    pub degenerate: bool,
}

pub fn quantization_choice(s: &GaussianScenario) -> QuantizationChoice {
    let &GaussianScenario { b, c, p1, p2, .. } = s;
    if b * p2 == 0.0 {
        return QuantizationChoice {
            delta_c: None,
            r2: 0.0,
            degenerate: true,
        };
    }
    let delta = (1.0 + (1.0 + c) * p1) / (b * p2);
    let r2 = cap_nn((1.0 + c * p1) / delta).max(cap_nn(p2) + cap_nn(c * p1 / (1.0 + delta)));
    QuantizationChoice {
        delta_c: Some(delta),
        r2,
        degenerate: false,
    }
}

/// Relay-destination gain regimes of the fixed-power closed form, split at
/// `b = 1` and `b = 1 + (1+c) p1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `b >= 1 + (1+c) p1`: the relay link carries the full description.
    HighGain,
    /// `1 <= b < 1 + (1+c) p1`: destination decodes the relay codeword.
    MidGain,
    /// `b < 1`: relay signal treated as noise at the destination.
    LowGain,
}

impl Regime {
    /// 1-based index in decreasing gain order, for compact reporting.
    pub fn index(self) -> u8 {
        match self {
            Regime::HighGain => 1,
            Regime::MidGain => 2,
            Regime::LowGain => 3,
        }
    }
}

pub fn regime(s: &GaussianScenario) -> Regime {
    if s.b >= 1.0 + (1.0 + s.c) * s.p1 {
        Regime::HighGain
    } else if s.b >= 1.0 {
        Regime::MidGain
    } else {
        Regime::LowGain
    }
}

/// Compress-and-forward secrecy rate at fixed powers, by regime. Returned
/// unclamped: a negative value carries sign information for diagnostics,
/// and [`rs_fixed`] restores the clamp through [`rs_ii`] `>= 0`.
pub fn rs_i(s: &GaussianScenario) -> f64 {
    let &GaussianScenario { a, b, c, p1, p2 } = s;
    // Same effective-gain-first form as in `rate_terms`.
    let eve_direct = cap_nn(a / (1.0 + p2) * p1);
    match regime(s) {
        Regime::HighGain => {
            cap_nn(p1 + b * c * p1 * p2 / (1.0 + (1.0 + c) * p1 + b * p2)) - eve_direct
        }
        Regime::MidGain => cap_nn(p1 + b * p2) - cap_nn(a * p1 + p2),
        Regime::LowGain => cap_nn(p1 / (1.0 + b * p2)) - eve_direct,
    }
}

/// Direct wiretap rate with a silent relay: `[cap(p1) - cap(a p1)]+`.
pub fn rs_ii(s: &GaussianScenario) -> f64 {
    (cap_nn(s.p1) - cap_nn(s.a * s.p1)).max(0.0)
}

/// Fixed-power secrecy rate of the full scheme: best of the
/// compress-and-forward and silent-relay branches, never negative.
pub fn rs_fixed(s: &GaussianScenario) -> f64 {
    rs_i(s).max(rs_ii(s))
}

/// Helper-interferer baseline: the relay transmits an independent
/// codeword but describes nothing. Full breakdown of the optimized point.
pub fn gaussian_wt_hi_breakdown(s: &GaussianScenario) -> RateBreakdown {
    optimize_r2(&rate_terms(s, None))
}

/// Secrecy rate of the helper-interferer baseline.
pub fn gaussian_wt_hi(s: &GaussianScenario) -> f64 {
    gaussian_wt_hi_breakdown(s).rs
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const EPS: f64 = 1e-9;

    fn scen(a: f64, b: f64, c: f64, p1: f64, p2: f64) -> GaussianScenario {
        GaussianScenario::new(a, b, c, p1, p2).unwrap()
    }

    #[test]
    fn cap_known_values() {
        assert_eq!(cap(0.0).unwrap(), 0.0);
        assert!((cap(15.0).unwrap() - 2.0).abs() < 1e-15);
        // Independent direct evaluation of 1/2 log2(11).
        assert!((cap(10.0).unwrap() - 0.5 * 11f64.log2()).abs() < 1e-15);
        assert!(cap(-0.5).is_err());
        assert!(cap(f64::NAN).is_err());
    }

    #[test]
    fn closed_form_terms_match_covariance_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let s = scen(
                rng.random::<f64>() * 20.0,
                rng.random::<f64>() * 20.0,
                rng.random::<f64>() * 20.0,
                rng.random::<f64>() * 10.0,
                rng.random::<f64>() * 10.0,
            );
            for delta in [Some(0.01 + rng.random::<f64>() * 50.0), None] {
                let cf = rate_terms(&s, delta);
                let or = covariance_terms(&s, delta).unwrap();
                assert!((cf.i1 - or.i1).abs() < EPS, "i1: {} vs {}", cf.i1, or.i1);
                for t in 0..2 {
                    assert!((cf.i2[t] - or.i2[t]).abs() < EPS);
                    assert!((cf.i_joint[t] - or.i_joint[t]).abs() < EPS);
                    assert!((cf.i_direct[t] - or.i_direct[t]).abs() < EPS);
                }
                assert!((cf.i3 - or.i3).abs() < EPS, "i3: {} vs {}", cf.i3, or.i3);
            }
        }
    }

    #[test]
    fn reference_quantization_plugin_value() {
        // b p2 = 10, numerator 1 + 1.8 * 5 = 10: delta = 1 exactly.
        let q = quantization_choice(&scen(1.0, 2.0, 0.8, 5.0, 5.0));
        assert!(!q.degenerate);
        assert_eq!(q.delta_c, Some(1.0));
        let expect = cap_nn(5.0).max(cap_nn(5.0) + cap_nn(2.0));
        assert!((q.r2 - expect).abs() < 1e-15);
    }

    #[test]
    fn reference_quantization_degenerates_without_relay_link() {
        for s in [scen(1.0, 0.0, 0.8, 5.0, 5.0), scen(1.0, 2.0, 0.8, 5.0, 0.0)] {
            let q = quantization_choice(&s);
            assert!(q.degenerate);
            assert_eq!(q.delta_c, None);
            assert_eq!(q.r2, 0.0);
        }
    }

    #[test]
    fn huge_relay_gain_affords_near_lossless_quantization() {
        let q = quantization_choice(&scen(1.0, 1e9, 0.8, 5.0, 5.0));
        assert!(q.delta_c.unwrap() < 1e-6);
    }

    #[test]
    fn deaf_relay_quantization_rate() {
        let s = scen(1.0, 2.0, 0.0, 5.0, 5.0);
        let q = quantization_choice(&s);
        let d = q.delta_c.unwrap();
        assert!((d - 0.6).abs() < 1e-15); // (1 + 5) / 10
        let expect = cap_nn(1.0 / d).max(cap_nn(5.0));
        assert!((q.r2 - expect).abs() < 1e-15);
    }

    #[test]
    fn regime_thresholds_are_closed_on_the_high_side() {
        let thr = 1.0 + 1.8 * 5.0; // = 10
        assert_eq!(regime(&scen(1.0, thr, 0.8, 5.0, 5.0)), Regime::HighGain);
        assert_eq!(regime(&scen(1.0, thr - 1e-9, 0.8, 5.0, 5.0)), Regime::MidGain);
        assert_eq!(regime(&scen(1.0, 1.0, 0.8, 5.0, 5.0)), Regime::MidGain);
        assert_eq!(regime(&scen(1.0, 1.0 - 1e-9, 0.8, 5.0, 5.0)), Regime::LowGain);
        assert_eq!(regime(&scen(1.0, 0.0, 0.8, 5.0, 5.0)), Regime::LowGain);
    }

    #[test]
    fn mid_gain_point_value() {
        let v = rs_i(&scen(1.0, 2.0, 0.8, 5.0, 5.0));
        let exact = 2.0 - 0.5 * 11f64.log2(); // cap(15) - cap(10)
        assert!((v - exact).abs() < 1e-12);
        assert!((v - 0.2703).abs() < 1e-3);
    }

    #[test]
    fn high_gain_point_value() {
        let v = rs_i(&scen(1.0, 12.0, 0.8, 5.0, 5.0));
        // cap(5 + 240/70) - cap(5/6), evaluated independently.
        let exact = 0.5 * (1.0 + 5.0 + 240.0 / 70.0_f64).log2() - 0.5 * (11.0 / 6.0_f64).log2();
        assert!((v - exact).abs() < 1e-12);
        assert!(v > 0.0);
    }

    #[test]
    fn low_gain_point_value() {
        let v = rs_i(&scen(1.0, 0.5, 0.8, 5.0, 5.0));
        let exact = 0.5 * (1.0 + 5.0 / 3.5_f64).log2() - 0.5 * (11.0 / 6.0_f64).log2();
        assert!((v - exact).abs() < 1e-12);
        assert!((v - 0.2028).abs() < 1e-3);
    }

    #[test]
    fn regime_boundaries_are_continuous() {
        for (a, c, p1, p2) in [(1.0, 0.8, 5.0, 5.0), (0.3, 2.0, 3.0, 7.0), (6.0, 0.8, 5.0, 5.0)] {
            let thr_hi = 1.0 + (1.0 + c) * p1;
            for thr in [1.0, thr_hi] {
                let h = 1e-9;
                let lo = rs_i(&scen(a, thr - h, c, p1, p2));
                let hi = rs_i(&scen(a, thr + h, c, p1, p2));
                let at = rs_i(&scen(a, thr, c, p1, p2));
                assert!((lo - hi).abs() < 1e-6, "jump at b={thr}: {lo} vs {hi}");
                assert!((at - hi).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn silent_relay_rate_values() {
        assert_eq!(rs_ii(&scen(1.0, 2.0, 0.8, 5.0, 5.0)), 0.0);
        assert!((rs_ii(&scen(0.0, 2.0, 0.8, 15.0, 5.0)) - 2.0).abs() < 1e-15);
        assert_eq!(rs_ii(&scen(6.0, 2.0, 0.8, 5.0, 5.0)), 0.0);
    }

    #[test]
    fn zero_relay_power_collapses_to_silent_relay_exactly() {
        for i in 0..50 {
            let p1 = 0.2 * (i + 1) as f64;
            for (a, b, c) in [(0.5, 2.0, 0.8), (2.0, 0.3, 1.0), (1.0, 12.0, 0.0)] {
                let s = scen(a, b, c, p1, 0.0);
                assert_eq!(rs_fixed(&s), rs_ii(&s));
            }
        }
    }

    #[test]
    fn dominated_scenario_clamps_to_zero() {
        let s = scen(6.0, 0.5, 0.8, 5.0, 5.0);
        assert!(rs_i(&s) < 0.0, "sign information must be preserved");
        assert_eq!(rs_fixed(&s), 0.0);
    }

    #[test]
    fn receiver_rate_formula_matches_generic_curve_machinery() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let s = scen(
                rng.random::<f64>() * 10.0,
                rng.random::<f64>() * 10.0,
                rng.random::<f64>() * 10.0,
                rng.random::<f64>() * 8.0,
                rng.random::<f64>() * 8.0,
            );
            let cfg = CompressionConfig::new(
                Some(0.05 + rng.random::<f64>() * 20.0),
                rng.random::<f64>() * 3.0,
            )
            .unwrap();
            let terms = covariance_terms(&s, cfg.delta_c).unwrap();
            for rx in [Receiver::Destination, Receiver::Eavesdropper] {
                let direct = r1_gaussian(&s, &cfg, rx).unwrap();
                let generic = r1_of_r2(&terms, rx, cfg.r2);
                assert!(
                    (direct - generic).abs() < EPS,
                    "rx {rx:?}: {direct} vs {generic}"
                );
            }
        }
    }

    #[test]
    fn r1_gaussian_rejects_disabled_compression() {
        let cfg = CompressionConfig::new(None, 1.0).unwrap();
        assert!(r1_gaussian(&scen(1.0, 2.0, 0.8, 5.0, 5.0), &cfg, Receiver::Destination).is_err());
    }

    #[test]
    fn fixed_scheme_reconstructs_from_reference_quantization() {
        // rs_i must equal the destination rate at the reference
        // quantization minus the eavesdropper's direct rate.
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..60 {
            let p1 = 0.2 + rng.random::<f64>() * 8.0;
            let c = rng.random::<f64>() * 5.0;
            let thr = 1.0 + (1.0 + c) * p1;
            // Stratify across the three regimes.
            let b = match rng.random_range(0..3) {
                0 => thr + rng.random::<f64>() * 10.0,
                1 => 1.0 + rng.random::<f64>() * (thr - 1.0),
                _ => 1e-6 + rng.random::<f64>() * 0.998,
            };
            let s = scen(
                rng.random::<f64>() * 8.0,
                b,
                c,
                p1,
                0.2 + rng.random::<f64>() * 8.0,
            );
            let q = quantization_choice(&s);
            let cfg = CompressionConfig::new(q.delta_c, q.r2).unwrap();
            let dest = r1_gaussian(&s, &cfg, Receiver::Destination).unwrap();
            let eve_direct = cap_nn(s.a * s.p1 / (1.0 + s.p2));
            assert!(
                (rs_i(&s) - (dest - eve_direct)).abs() < EPS,
                "scenario {s:?}"
            );
        }
    }

    #[test]
    fn weak_relay_link_baseline_equality_and_strong_link_gap() {
        // b within the destination's decoding reach: both schemes coincide.
        let s_eq = scen(1.0, 2.0, 0.8, 5.0, 5.0);
        assert!((rs_fixed(&s_eq) - gaussian_wt_hi(&s_eq)).abs() < EPS);
        // b beyond it: compression wins strictly.
        let s_gap = scen(1.0, 12.0, 0.8, 5.0, 5.0);
        assert!(gaussian_wt_hi(&s_gap) > 0.01);
        assert!(rs_fixed(&s_gap) > gaussian_wt_hi(&s_gap) + 0.05);
    }

    #[test]
    fn disabled_terms_and_zero_relay_rate_give_silent_relay_difference() {
        let s = scen(0.4, 2.0, 0.8, 5.0, 5.0);
        let t = rate_terms(&s, None);
        let diff = r1_of_r2(&t, Receiver::Destination, 0.0)
            - r1_of_r2(&t, Receiver::Eavesdropper, 0.0);
        assert!((diff - (cap_nn(5.0) - cap_nn(2.0))).abs() < 1e-12);
        assert!((diff.max(0.0) - rs_ii(&s)).abs() < 1e-12);
    }
}
