use crate::{Error, Result};

use super::Var;

/// Joint probability mass function over an ordered subset of the node
/// variables.
///
/// Cells are stored row-major with the first variable slowest. Entries are
/// nonnegative and sum to one within `1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    vars: Vec<Var>,
    sizes: Vec<usize>,
    probs: Vec<f64>,
}

const SUM_TOL: f64 = 1e-12;

impl JointPmf {
    /// Builds a pmf from an explicit cell table, validating shape,
    /// nonnegativity, and normalization.
    pub fn new(vars: Vec<Var>, sizes: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        check_distinct(&vars)?;
        if sizes.len() != vars.len() {
            return Err(Error::arg(format!(
                "pmf has {} variables but {} sizes",
                vars.len(),
                sizes.len()
            )));
        }
        if sizes.contains(&0) {
            return Err(Error::arg("pmf alphabet sizes must be positive"));
        }
        let cells: usize = sizes.iter().product();
        if probs.len() != cells {
            return Err(Error::arg(format!(
                "pmf table has {} cells, expected {}",
                probs.len(),
                cells
            )));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::arg(format!("pmf cell {p} is not a probability")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::arg(format!("pmf cells sum to {total}, not 1")));
        }
        Ok(JointPmf { vars, sizes, probs })
    }

    /// Builds a pmf from nonnegative weights, dividing by their sum.
    pub fn from_unnormalized(vars: Vec<Var>, sizes: Vec<usize>, weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !total.is_finite() || total <= 0.0 {
            return Err(Error::arg(format!("pmf weights sum to {total}")));
        }
        let probs = weights.iter().map(|w| w / total).collect();
        JointPmf::new(vars, sizes, probs)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Alphabet size of `v`.
    pub fn size_of(&self, v: Var) -> Result<usize> {
        Ok(self.sizes[self.position(v)?])
    }

    fn position(&self, v: Var) -> Result<usize> {
        self.vars
            .iter()
            .position(|&u| u == v)
            .ok_or_else(|| Error::arg(format!("variable {v:?} is not part of this pmf")))
    }

    /// Marginal over `keep`, in this pmf's variable order. `keep` may be
    /// empty, which yields the trivial pmf with a single unit cell.
    pub fn marginal(&self, keep: &[Var]) -> Result<JointPmf> {
        check_distinct(keep)?;
        let mut kept: Vec<usize> = Vec::with_capacity(keep.len());
        for &v in keep {
            kept.push(self.position(v)?);
        }
        kept.sort_unstable();

        let out_vars: Vec<Var> = kept.iter().map(|&i| self.vars[i]).collect();
        let out_sizes: Vec<usize> = kept.iter().map(|&i| self.sizes[i]).collect();
        let out_cells: usize = out_sizes.iter().product();

        // Stride of each kept variable in the output table; 0 for dropped ones.
        let mut out_stride = vec![0usize; self.vars.len()];
        let mut acc = 1usize;
        for &i in kept.iter().rev() {
            out_stride[i] = acc;
            acc *= self.sizes[i];
        }

        let mut in_stride = vec![0usize; self.vars.len()];
        let mut acc = 1usize;
        for i in (0..self.vars.len()).rev() {
            in_stride[i] = acc;
            acc *= self.sizes[i];
        }

        let mut out = vec![0.0f64; out_cells];
        for (flat, &p) in self.probs.iter().enumerate() {
            let mut idx = 0usize;
            for i in &kept {
                let digit = (flat / in_stride[*i]) % self.sizes[*i];
                idx += digit * out_stride[*i];
            }
            out[idx] += p;
        }
        Ok(JointPmf {
            vars: out_vars,
            sizes: out_sizes,
            probs: out,
        })
    }

    /// Shannon entropy in bits, with `0 log 0 = 0`.
    pub fn entropy(&self) -> f64 {
        self.probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum()
    }
}

/// Conditional mutual information `I(A;B|C)` in bits, by exact summation
/// over the joint table.
///
/// `a`, `b`, and `c` must be disjoint subsets of the pmf's variables; `c`
/// may be empty (plain mutual information). Conditioning outcomes with zero
/// probability contribute zero. The result is clamped at zero to absorb
/// cancellation error.
pub fn conditional_mi(pmf: &JointPmf, a: &[Var], b: &[Var], c: &[Var]) -> Result<f64> {
    check_disjoint(a, b, c)?;
    let ac = union(a, c);
    let bc = union(b, c);
    let abc = union(&union(a, b), c);
    let h_ac = pmf.marginal(&ac)?.entropy();
    let h_bc = pmf.marginal(&bc)?.entropy();
    let h_c = pmf.marginal(c)?.entropy();
    let h_abc = pmf.marginal(&abc)?.entropy();
    Ok((h_ac + h_bc - h_c - h_abc).max(0.0))
}

fn union(x: &[Var], y: &[Var]) -> Vec<Var> {
    let mut out = x.to_vec();
    out.extend(y.iter().copied());
    out
}

fn check_distinct(vars: &[Var]) -> Result<()> {
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(Error::arg(format!("variable {v:?} listed twice")));
        }
    }
    Ok(())
}

pub(crate) fn check_disjoint(a: &[Var], b: &[Var], c: &[Var]) -> Result<()> {
    let mut all = a.to_vec();
    all.extend(b.iter().copied());
    all.extend(c.iter().copied());
    for (i, v) in all.iter().enumerate() {
        if all[..i].contains(v) {
            return Err(Error::arg(format!(
                "variable {v:?} appears in more than one of the argument sets"
            )));
        }
    }
    Ok(())
}
