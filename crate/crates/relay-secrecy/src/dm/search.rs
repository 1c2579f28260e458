//! Search over the class of admissible input policies
//! `p(x1) p(x2) p(yhat | yr, x2)`.
//!
//! The class is a product of probability simplices: one for each input
//! distribution and one per `(yr, x2)` row of the test channel. The search
//! enumerates the lattice of compositions with denominator `resolution` on
//! every simplex (deterministic, lexicographic), optionally adds seeded
//! random restarts, and finishes with local moves that shift mass between
//! two coordinates of one simplex at step `1/(2 resolution)`, halved three
//! times. The result is a certified lower bound on the true supremum, not
//! the supremum itself; the same holds for the classifier, whose universal
//! quantifier over policies is checked on the enumerated grid only.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{secrecy_rate, DmChannel, InputPolicy, RateBreakdown, TestChannel};
use crate::info::{conditional_mi, Var};
use crate::{Error, Result};

/// Configuration of the policy search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Quantization alphabet size; `None` selects `|Yr| + 1` (one spare
    /// symbol beyond a copy of the relay observation).
    pub yhat_size: Option<usize>,
    /// Composition denominator per simplex: each searched probability is a
    /// multiple of `1/resolution`.
    pub resolution: usize,
    /// Random interior starting points refined alongside the grid optimum.
    pub restarts: usize,
    /// Seed for the restart sampler.
    pub seed: u64,
    /// Enumeration is refused (before any work) past this many grid cells.
    pub cell_budget: u128,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            yhat_size: None,
            resolution: 3,
            restarts: 8,
            seed: 0,
            cell_budget: 10_000_000,
        }
    }
}

/// Result of [`maximize_over_policies`]: the best policy found and its
/// rates. A lower bound on the supremum over the full policy class.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SearchOutcome {
    pub policy: InputPolicy,
    pub breakdown: RateBreakdown,
    /// Grid cells enumerated (excluding restart/refinement evaluations).
    pub cells: u128,
}

/// Eavesdropper strength classes, strongest last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EavesdropperClass {
    /// Some searched policy gives the destination a conditional advantage.
    Normal,
    /// `I(X1;Y2) >= I(X1;Y1|X2)` at every searched policy: without the
    /// relay's compression the secrecy rate is zero.
    VeryStrong,
    /// `I(X1;Y2) >= min{ I(X1;Yhat,Y1|X2), i2_dest - i1 }` at every
    /// searched policy: even with compression the secrecy rate is zero.
    ExtremelyStrong,
}

/// A searched policy at which a class inequality failed.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ClassViolation {
    pub class: EavesdropperClass,
    pub policy: InputPolicy,
    /// Eavesdropper side `I(X1;Y2)` at the violating policy.
    pub lhs: f64,
    /// Destination side of the violated inequality.
    pub rhs: f64,
}

/// Outcome of [`classify_eavesdropping`]. `class` is the strongest class
/// whose inequality held at all `policies_checked` grid points — a
/// grid-approximate statement, not a proof over the continuum.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Classification {
    pub class: EavesdropperClass,
    pub policies_checked: u64,
    /// First violating policy for each class that failed somewhere.
    pub violations: Vec<ClassViolation>,
}

const CLASS_TOL: f64 = 1e-9;

/// All `k`-part compositions of `resolution`, as probability vectors in
/// lexicographic order (first coordinate decreasing from 1).
fn simplex_grid(k: usize, resolution: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut parts = vec![0usize; k];
    fn rec(parts: &mut Vec<usize>, pos: usize, left: usize, res: usize, out: &mut Vec<Vec<f64>>) {
        if pos + 1 == parts.len() {
            parts[pos] = left;
            out.push(parts.iter().map(|&c| c as f64 / res as f64).collect());
            return;
        }
        for c in (0..=left).rev() {
            parts[pos] = c;
            rec(parts, pos + 1, left - c, res, out);
        }
    }
    rec(&mut parts, 0, resolution, resolution, &mut out);
    out
}

/// `C(m + k - 1, k - 1)` in u128, saturating.
fn composition_count(m: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 1..k {
        acc = match acc.checked_mul(m + i) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
    }
    acc
}

/// Shape of the policy as a list of simplices: `(px1, px2, tc rows...)`.
struct PolicyShape {
    nx1: usize,
    nx2: usize,
    nyr: usize,
    nyhat: usize,
}

impl PolicyShape {
    fn simplex_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.nx1, self.nx2];
        dims.extend(std::iter::repeat_n(self.nyhat, self.nyr * self.nx2));
        dims
    }

    /// Assembles an [`InputPolicy`] from per-simplex probability vectors.
    fn assemble(&self, simplices: &[Vec<f64>]) -> Result<InputPolicy> {
        let mut probs = Vec::with_capacity(self.nyr * self.nx2 * self.nyhat);
        for row in &simplices[2..] {
            probs.extend_from_slice(row);
        }
        let tc = TestChannel::new(self.nyr, self.nx2, self.nyhat, probs)?;
        InputPolicy::new(simplices[0].clone(), simplices[1].clone(), Some(tc))
    }
}

fn shape_for(ch: &DmChannel, search: &SearchConfig) -> Result<PolicyShape> {
    let (nx1, nx2, nyr, _, _) = ch.sizes();
    let nyhat = search.yhat_size.unwrap_or(nyr + 1);
    if nyhat == 0 {
        return Err(Error::arg("quantization alphabet must not be empty"));
    }
    if search.resolution == 0 {
        return Err(Error::arg("search resolution must be at least 1"));
    }
    Ok(PolicyShape {
        nx1,
        nx2,
        nyr,
        nyhat,
    })
}

fn check_budget(dims: &[usize], search: &SearchConfig) -> Result<u128> {
    let mut cells: u128 = 1;
    for &k in dims {
        let n = composition_count(search.resolution as u128, k as u128);
        cells = cells.saturating_mul(n);
    }
    if cells > search.cell_budget {
        return Err(Error::BudgetExceeded {
            cells,
            budget: search.cell_budget,
        });
    }
    Ok(cells)
}

/// Visits every cell of the product grid in lexicographic order.
fn for_each_cell<F: FnMut(&[Vec<f64>]) -> Result<()>>(
    grids: &[Vec<Vec<f64>>],
    mut f: F,
) -> Result<()> {
    let mut idx = vec![0usize; grids.len()];
    let mut current: Vec<Vec<f64>> = grids.iter().map(|g| g[0].clone()).collect();
    loop {
        f(&current)?;
        // Odometer increment, last simplex fastest.
        let mut pos = grids.len();
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < grids[pos].len() {
                current[pos] = grids[pos][idx[pos]].clone();
                break;
            }
            idx[pos] = 0;
            current[pos] = grids[pos][0].clone();
        }
    }
}

/// Moves mass `step` from coordinate `j` to coordinate `i` of one simplex,
/// renormalizing to keep the vector on the simplex exactly.
fn shifted(v: &[f64], i: usize, j: usize, step: f64) -> Option<Vec<f64>> {
    if v[j] < step * 0.5 {
        return None;
    }
    let mut w = v.to_vec();
    let moved = w[j].min(step);
    w[j] -= moved;
    w[i] += moved;
    let total: f64 = w.iter().sum();
    for x in &mut w {
        *x /= total;
    }
    Some(w)
}

/// Hill-climbs from `simplices` with pairwise mass shifts at `step`,
/// halved `halvings` times; mutates in place. Deterministic: the best
/// strictly-improving move (first in scan order on ties) is applied until
/// none exists at the current step.
fn refine<F: FnMut(&[Vec<f64>]) -> Result<f64>>(
    simplices: &mut [Vec<f64>],
    mut best: f64,
    step0: f64,
    halvings: u32,
    eval: &mut F,
) -> Result<f64> {
    let mut step = step0;
    for _ in 0..halvings {
        loop {
            let mut improved: Option<(usize, Vec<f64>, f64)> = None;
            for (s, v) in simplices.iter().enumerate() {
                for i in 0..v.len() {
                    for j in 0..v.len() {
                        if i == j {
                            continue;
                        }
                        let Some(w) = shifted(v, i, j, step) else {
                            continue;
                        };
                        let mut trial = simplices.to_vec();
                        trial[s] = w.clone();
                        let val = eval(&trial)?;
                        let cur = improved.as_ref().map_or(best, |t| t.2);
                        if val > cur {
                            improved = Some((s, w, val));
                        }
                    }
                }
            }
            match improved {
                Some((s, w, val)) => {
                    simplices[s] = w;
                    best = val;
                }
                None => break,
            }
        }
        step *= 0.5;
    }
    Ok(best)
}

/// Best policy over the searched class: full lattice enumeration, seeded
/// random restarts, then local refinement of the incumbent. Returns a
/// lower bound on the supremum of the secrecy rate over all policies.
pub fn maximize_over_policies(ch: &DmChannel, search: &SearchConfig) -> Result<SearchOutcome> {
    let shape = shape_for(ch, search)?;
    let dims = shape.simplex_dims();
    let cells = check_budget(&dims, search)?;
    let grids: Vec<Vec<Vec<f64>>> = dims
        .iter()
        .map(|&k| simplex_grid(k, search.resolution))
        .collect();

    let mut eval = |simplices: &[Vec<f64>]| -> Result<f64> {
        let pol = shape.assemble(simplices)?;
        Ok(secrecy_rate(ch, &pol)?.rs)
    };

    // Lattice pass; strict `>` keeps the lexicographically first argmax.
    let mut best_simplices: Option<Vec<Vec<f64>>> = None;
    let mut best = f64::NEG_INFINITY;
    for_each_cell(&grids, |simplices| {
        let val = eval(simplices)?;
        if val > best {
            best = val;
            best_simplices = Some(simplices.to_vec());
        }
        Ok(())
    })?;
    let mut best_simplices = best_simplices.expect("grids are never empty");

    // Seeded interior restarts, each refined before comparison.
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let step0 = 0.5 / search.resolution as f64;
    for _ in 0..search.restarts {
        let mut simplices: Vec<Vec<f64>> = dims
            .iter()
            .map(|&k| {
                // Exponential spacings normalize to a uniform simplex draw.
                let raw: Vec<f64> = (0..k)
                    .map(|_| -(1.0 - rng.random::<f64>()).ln())
                    .collect();
                let total: f64 = raw.iter().sum();
                raw.iter().map(|x| x / total).collect()
            })
            .collect();
        let start = eval(&simplices)?;
        let val = refine(&mut simplices, start, step0, 3, &mut eval)?;
        if val > best {
            best = val;
            best_simplices = simplices;
        }
    }

    let final_best = refine(&mut best_simplices, best, step0, 3, &mut eval)?;
    debug_assert!(final_best >= best);

    let policy = shape.assemble(&best_simplices)?;
    let breakdown = secrecy_rate(ch, &policy)?;
    Ok(SearchOutcome {
        policy,
        breakdown,
        cells,
    })
}

/// Classifies eavesdropper strength by checking the defining inequalities
/// at every lattice policy (no restarts or refinement): a universal claim
/// over the grid only, reported with the first counterexample per class.
pub fn classify_eavesdropping(ch: &DmChannel, search: &SearchConfig) -> Result<Classification> {
    use Var::*;
    let shape = shape_for(ch, search)?;
    let dims = shape.simplex_dims();
    check_budget(&dims, search)?;
    let grids: Vec<Vec<Vec<f64>>> = dims
        .iter()
        .map(|&k| simplex_grid(k, search.resolution))
        .collect();

    let mut checked: u64 = 0;
    let mut very_strong_violation: Option<ClassViolation> = None;
    let mut extremely_strong_violation: Option<ClassViolation> = None;
    for_each_cell(&grids, |simplices| {
        let pol = shape.assemble(simplices)?;
        let joint = super::joint_distribution(ch, &pol)?;
        let terms = super::terms_from_joint(&joint, true)?;
        checked += 1;
        let eve = terms.i_direct[1];
        if very_strong_violation.is_none() {
            let cond = conditional_mi(&joint, &[X1], &[Y1], &[X2])?;
            if eve < cond - CLASS_TOL {
                very_strong_violation = Some(ClassViolation {
                    class: EavesdropperClass::VeryStrong,
                    policy: pol.clone(),
                    lhs: eve,
                    rhs: cond,
                });
            }
        }
        if extremely_strong_violation.is_none() {
            let cap = terms.i_joint[0].min(terms.i2[0] - terms.i1);
            if eve < cap - CLASS_TOL {
                extremely_strong_violation = Some(ClassViolation {
                    class: EavesdropperClass::ExtremelyStrong,
                    policy: pol,
                    lhs: eve,
                    rhs: cap,
                });
            }
        }
        Ok(())
    })?;

    let class = if extremely_strong_violation.is_none() {
        EavesdropperClass::ExtremelyStrong
    } else if very_strong_violation.is_none() {
        EavesdropperClass::VeryStrong
    } else {
        EavesdropperClass::Normal
    };
    let violations = [very_strong_violation, extremely_strong_violation]
        .into_iter()
        .flatten()
        .collect();
    Ok(Classification {
        class,
        policies_checked: checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_grid_enumerates_all_compositions() {
        let g = simplex_grid(3, 4);
        assert_eq!(g.len(), 15); // C(6,2)
        assert_eq!(g[0], vec![1.0, 0.0, 0.0]);
        assert_eq!(g[14], vec![0.0, 0.0, 1.0]);
        for v in &g {
            let s: f64 = v.iter().sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
        // Lexicographically strictly decreasing in the raw vectors.
        for w in g.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn composition_count_matches_enumeration() {
        for k in 1..=4usize {
            for m in 1..=5usize {
                let n = simplex_grid(k, m).len() as u128;
                assert_eq!(composition_count(m as u128, k as u128), n, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn budget_is_enforced_before_work() {
        let ch = binary_noise_channel();
        let cfg = SearchConfig {
            cell_budget: 10,
            ..SearchConfig::default()
        };
        match maximize_over_policies(&ch, &cfg) {
            Err(crate::Error::BudgetExceeded { cells, budget }) => {
                assert!(cells > budget);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    /// Channel where nothing depends on anything: all outputs fair coins.
    fn binary_noise_channel() -> DmChannel {
        let p = vec![0.125; 2 * 2 * 2 * 2 * 2];
        DmChannel::new(2, 2, 2, 2, 2, p).unwrap()
    }

    /// Y1 = BSC(flip) of X1; Y2 and Yr pure noise; X2 ignored.
    fn main_link_only(flip: f64) -> DmChannel {
        let mut p = vec![0.0; 32];
        for x1 in 0..2 {
            for x2 in 0..2 {
                for yr in 0..2 {
                    for y1 in 0..2 {
                        for y2 in 0..2 {
                            let py1 = if y1 == x1 { 1.0 - flip } else { flip };
                            p[(((x1 * 2 + x2) * 2 + yr) * 2 + y1) * 2 + y2] = 0.25 * py1;
                        }
                    }
                }
            }
        }
        DmChannel::new(2, 2, 2, 2, 2, p).unwrap()
    }

    #[test]
    fn degenerate_channel_searches_to_zero() {
        let ch = binary_noise_channel();
        let cfg = SearchConfig {
            resolution: 2,
            restarts: 2,
            ..SearchConfig::default()
        };
        let out = maximize_over_policies(&ch, &cfg).unwrap();
        assert!(out.breakdown.rs.abs() < 1e-12);
    }

    #[test]
    fn clean_main_link_reaches_its_capacity() {
        // Eavesdropper and relay see noise, so the best secrecy rate is
        // the main-link mutual information, maximized at uniform p(x1).
        let flip = 0.1;
        let ch = main_link_only(flip);
        let cfg = SearchConfig {
            resolution: 2,
            restarts: 2,
            seed: 11,
            ..SearchConfig::default()
        };
        let out = maximize_over_policies(&ch, &cfg).unwrap();
        let h = |p: f64| -> f64 {
            if p == 0.0 || p == 1.0 {
                0.0
            } else {
                -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
            }
        };
        let capacity = 1.0 - h(flip);
        assert!(
            (out.breakdown.rs - capacity).abs() < 5e-3,
            "found {} vs capacity {capacity}",
            out.breakdown.rs
        );
        assert!(out.breakdown.rs <= capacity + 1e-9);
    }

    #[test]
    fn search_is_deterministic() {
        let ch = main_link_only(0.2);
        let cfg = SearchConfig {
            resolution: 2,
            restarts: 3,
            seed: 42,
            ..SearchConfig::default()
        };
        let a = maximize_over_policies(&ch, &cfg).unwrap();
        let b = maximize_over_policies(&ch, &cfg).unwrap();
        assert_eq!(a.policy, b.policy);
        assert_eq!(a.breakdown, b.breakdown);
    }

    #[test]
    fn noise_eavesdropper_classifies_normal() {
        let ch = main_link_only(0.05);
        let cfg = SearchConfig {
            resolution: 2,
            restarts: 0,
            ..SearchConfig::default()
        };
        let c = classify_eavesdropping(&ch, &cfg).unwrap();
        assert_eq!(c.class, EavesdropperClass::Normal);
        assert!(!c.violations.is_empty());
        let v = &c.violations[0];
        assert!(v.lhs < v.rhs);
    }

    /// Y2 has the same conditional law as Y1 (both BSC(flip) of X1);
    /// relay observation is a fair coin.
    fn symmetric_receivers(flip: f64) -> DmChannel {
        let mut p = vec![0.0; 32];
        for x1 in 0..2 {
            for x2 in 0..2 {
                for yr in 0..2 {
                    for y1 in 0..2 {
                        for y2 in 0..2 {
                            let py1 = if y1 == x1 { 1.0 - flip } else { flip };
                            let py2 = if y2 == x1 { 1.0 - flip } else { flip };
                            p[(((x1 * 2 + x2) * 2 + yr) * 2 + y1) * 2 + y2] =
                                0.5 * py1 * py2;
                        }
                    }
                }
            }
        }
        DmChannel::new(2, 2, 2, 2, 2, p).unwrap()
    }

    #[test]
    fn symmetric_receivers_with_deaf_relay_are_at_least_very_strong() {
        // I(X1;Y2) = I(X1;Y1) = I(X1;Y1|X2) (X2 affects nothing), so the
        // very-strong inequality holds with equality at every policy.
        let ch = symmetric_receivers(0.1);
        let cfg = SearchConfig {
            resolution: 2,
            restarts: 0,
            ..SearchConfig::default()
        };
        let c = classify_eavesdropping(&ch, &cfg).unwrap();
        assert!(c.class >= EavesdropperClass::VeryStrong, "got {:?}", c.class);
        // Zero secrecy rate on the grid confirms the classification.
        let out = maximize_over_policies(
            &ch,
            &SearchConfig {
                resolution: 2,
                restarts: 2,
                ..SearchConfig::default()
            },
        )
        .unwrap();
        assert!(out.breakdown.rs < 1e-9);
    }
}
