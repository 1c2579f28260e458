use nalgebra::DMatrix;

use crate::{Error, Result};

use super::pmf::check_disjoint;
use super::Var;

/// Joint covariance of zero-mean jointly Gaussian node variables.
#[derive(Debug, Clone)]
pub struct GaussianCov {
    vars: Vec<Var>,
    mat: DMatrix<f64>,
}

/// Diagonal jitter added to every block before factorization, so that
/// degenerate but valid models (zero powers, deterministic links) stay
/// factorizable.
const JITTER: f64 = 1e-12;

impl GaussianCov {
    /// Builds a covariance from an explicit matrix, validating shape,
    /// symmetry (within `1e-12`), and positive semidefiniteness (smallest
    /// eigenvalue at least `-1e-9`).
    pub fn new(vars: Vec<Var>, mat: DMatrix<f64>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::arg(format!("variable {v:?} listed twice")));
            }
        }
        if mat.nrows() != vars.len() || mat.ncols() != vars.len() {
            return Err(Error::arg(format!(
                "covariance is {}x{} but there are {} variables",
                mat.nrows(),
                mat.ncols(),
                vars.len()
            )));
        }
        if mat.iter().any(|x| !x.is_finite()) {
            return Err(Error::arg("covariance entries must be finite"));
        }
        for i in 0..mat.nrows() {
            for j in 0..i {
                if (mat[(i, j)] - mat[(j, i)]).abs() > 1e-12 {
                    return Err(Error::arg(format!(
                        "covariance is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        if !vars.is_empty() {
            let sym = nalgebra::SymmetricEigen::new(mat.clone());
            let min = sym.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
            if min < -1e-9 {
                return Err(Error::Numeric {
                    msg: format!("covariance has eigenvalue {min}"),
                    vars,
                });
            }
        }
        Ok(GaussianCov { vars, mat })
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn entry(&self, row: Var, col: Var) -> Result<f64> {
        Ok(self.mat[(self.position(row)?, self.position(col)?)])
    }

    fn position(&self, v: Var) -> Result<usize> {
        self.vars
            .iter()
            .position(|&u| u == v)
            .ok_or_else(|| Error::arg(format!("variable {v:?} is not part of this covariance")))
    }

    /// `ln det` of the sub-covariance on `subset` after jitter; 0 for the
    /// empty subset.
    fn log_det(&self, subset: &[Var]) -> Result<f64> {
        if subset.is_empty() {
            return Ok(0.0);
        }
        let idx: Vec<usize> = subset
            .iter()
            .map(|&v| self.position(v))
            .collect::<Result<_>>()?;
        let n = idx.len();
        let mut block = DMatrix::zeros(n, n);
        for (r, &i) in idx.iter().enumerate() {
            for (s, &j) in idx.iter().enumerate() {
                block[(r, s)] = self.mat[(i, j)];
            }
            block[(r, r)] += JITTER;
        }
        let chol = nalgebra::Cholesky::new(block).ok_or_else(|| Error::Numeric {
            msg: "sub-covariance is not positive definite after jitter".into(),
            vars: subset.to_vec(),
        })?;
        Ok(2.0 * chol.l_dirty().diagonal().iter().map(|d| d.ln()).sum::<f64>())
    }
}

/// Conditional mutual information `I(A;B|C)` in bits for jointly Gaussian
/// variables:
///
/// ```text
/// I(A;B|C) = 1/2 log2( det S_AC * det S_BC / (det S_C * det S_ABC) )
/// ```
///
/// with `det` of the empty block taken as 1. `a`, `b`, and `c` must be
/// disjoint subsets of the covariance's variables. The result is clamped at
/// zero.
pub fn gaussian_conditional_mi(cov: &GaussianCov, a: &[Var], b: &[Var], c: &[Var]) -> Result<f64> {
    check_disjoint(a, b, c)?;
    let mut ac = a.to_vec();
    ac.extend_from_slice(c);
    let mut bc = b.to_vec();
    bc.extend_from_slice(c);
    let mut abc = a.to_vec();
    abc.extend_from_slice(b);
    abc.extend_from_slice(c);
    let nats = cov.log_det(&ac)? + cov.log_det(&bc)? - cov.log_det(c)? - cov.log_det(&abc)?;
    Ok((nats / (2.0 * std::f64::consts::LN_2)).max(0.0))
}

/// Covariance of the scalar Gaussian relay-eavesdropper model
///
/// ```text
/// Y1 = X1 + sqrt(b) X2 + Z1
/// Y2 = sqrt(a) X1 + X2 + Z2
/// Yr = sqrt(c) X1 + Zr
/// Yhat = Yr + Zc,  Var(Zc) = delta_c
/// ```
///
/// with independent `X1 ~ N(0, p1)`, `X2 ~ N(0, p2)` and unit-variance
/// noises. `delta_c = None` omits the `Yhat` row and column (compression
/// disabled). Variables are ordered `X1, X2, Yr[, Yhat], Y1, Y2`.
pub fn build_gaussian_cov(
    a: f64,
    b: f64,
    c: f64,
    p1: f64,
    p2: f64,
    delta_c: Option<f64>,
) -> Result<GaussianCov> {
    for (name, v) in [("a", a), ("b", b), ("c", c), ("p1", p1), ("p2", p2)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::arg(format!("{name} = {v} must be finite and >= 0")));
        }
    }
    if let Some(d) = delta_c {
        if !d.is_finite() || d < 0.0 {
            return Err(Error::arg(format!("delta_c = {d} must be finite and >= 0")));
        }
    }

    let (ra, rb, rc) = (a.sqrt(), b.sqrt(), c.sqrt());
    let vars = match delta_c {
        Some(_) => vec![Var::X1, Var::X2, Var::Yr, Var::Yhat, Var::Y1, Var::Y2],
        None => vec![Var::X1, Var::X2, Var::Yr, Var::Y1, Var::Y2],
    };
    let n = vars.len();
    let mut mat = DMatrix::zeros(n, n);
    let set = |m: &mut DMatrix<f64>, u: Var, v: Var, val: f64| {
        let i = vars.iter().position(|&w| w == u).unwrap();
        let j = vars.iter().position(|&w| w == v).unwrap();
        m[(i, j)] = val;
        m[(j, i)] = val;
    };

    set(&mut mat, Var::X1, Var::X1, p1);
    set(&mut mat, Var::X2, Var::X2, p2);
    set(&mut mat, Var::Yr, Var::Yr, c * p1 + 1.0);
    set(&mut mat, Var::Y1, Var::Y1, p1 + b * p2 + 1.0);
    set(&mut mat, Var::Y2, Var::Y2, a * p1 + p2 + 1.0);

    set(&mut mat, Var::X1, Var::Yr, rc * p1);
    set(&mut mat, Var::X1, Var::Y1, p1);
    set(&mut mat, Var::X1, Var::Y2, ra * p1);
    set(&mut mat, Var::X2, Var::Y1, rb * p2);
    set(&mut mat, Var::X2, Var::Y2, p2);
    set(&mut mat, Var::Yr, Var::Y1, rc * p1);
    set(&mut mat, Var::Yr, Var::Y2, ra * rc * p1);
    set(&mut mat, Var::Y1, Var::Y2, ra * p1 + rb * p2);

    if let Some(d) = delta_c {
        set(&mut mat, Var::Yhat, Var::Yhat, c * p1 + 1.0 + d);
        set(&mut mat, Var::Yhat, Var::X1, rc * p1);
        set(&mut mat, Var::Yhat, Var::Yr, c * p1 + 1.0);
        set(&mut mat, Var::Yhat, Var::Y1, rc * p1);
        set(&mut mat, Var::Yhat, Var::Y2, ra * rc * p1);
    }
    GaussianCov::new(vars, mat)
}
