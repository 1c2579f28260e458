//! Sweeps of the secrecy-rate schemes over the relay-destination gain `b`,
//! with CSV emission and round-trip parsing.
//!
//! Each row evaluates the requested schemes at one `b`: the full scheme
//! (compress-and-forward with the silent-relay fallback), the
//! helper-interferer baseline, and the direct wiretap rate. With power
//! control enabled, every scheme is maximized over the power rectangle by
//! its own grid search (the same machinery as the power module), and the
//! optimizing allocation is reported per scheme.
//!
//! All emitted numbers are rounded to 12 significant digits *at storage
//! time* and printed with the shortest round-trip decimal representation,
//! so parsing an emitted file reproduces the in-memory rows bit for bit.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::gaussian::{gaussian_wt_hi, rs_fixed, rs_i, rs_ii, GaussianScenario};
use crate::power::{maximize_rect, PowerBudget};
use crate::{Error, Result};

/// The comparable schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Compress-and-forward with silent-relay fallback.
    Proposed,
    /// Helper interferer: relay jams but describes nothing.
    WtHi,
    /// Silent relay: plain wiretap difference.
    Direct,
}

impl Scheme {
    pub fn column_name(self) -> &'static str {
        match self {
            Scheme::Proposed => "proposed",
            Scheme::WtHi => "wt_hi",
            Scheme::Direct => "direct",
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "proposed" => Ok(Scheme::Proposed),
            "wt_hi" => Ok(Scheme::WtHi),
            "direct" => Ok(Scheme::Direct),
            other => Err(Error::arg(format!(
                "unknown scheme {other:?}; expected proposed, wt_hi or direct"
            ))),
        }
    }
}

/// Specification of one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub a: f64,
    pub c: f64,
    pub b_min: f64,
    pub b_max: f64,
    /// Number of grid points, endpoints included (`1` emits `b_min` only).
    pub steps: usize,
    pub budget: PowerBudget,
    pub power_control: bool,
    pub schemes: Vec<Scheme>,
    /// Power-grid resolution per axis when `power_control` is set.
    pub resolution: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("a", self.a),
            ("c", self.c),
            ("b_min", self.b_min),
            ("b_max", self.b_max),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::arg(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        if self.b_min > self.b_max {
            return Err(Error::arg(format!(
                "b_min = {} exceeds b_max = {}",
                self.b_min, self.b_max
            )));
        }
        if self.steps == 0 {
            return Err(Error::arg("steps must be at least 1"));
        }
        if self.schemes.is_empty() {
            return Err(Error::arg("at least one scheme must be requested"));
        }
        if self.power_control && self.resolution < 2 {
            return Err(Error::arg(format!(
                "power grid resolution must be at least 2, got {}",
                self.resolution
            )));
        }
        Ok(())
    }
}

/// One scheme's result at one sweep point.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SchemeCell {
    pub scheme: Scheme,
    pub rate: f64,
    /// Optimizing `(p1, p2)`, present only under power control.
    pub powers: Option<(f64, f64)>,
}

/// One sweep point: the gain and one cell per requested scheme, in the
/// requested order.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SweepRow {
    pub b: f64,
    pub cells: Vec<SchemeCell>,
}

/// Rounds to 12 significant decimal digits. Applied to every stored
/// number so the emitted decimal text re-parses to the stored bits.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float reparses")
}

fn grid_value(i: usize, n: usize, lo: f64, hi: f64) -> f64 {
    if n == 1 || i == 0 {
        lo
    } else if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

fn cell_for(spec: &SweepSpec, scheme: Scheme, b: f64) -> SchemeCell {
    let gains = GaussianScenario {
        a: spec.a,
        b,
        c: spec.c,
        p1: 0.0,
        p2: 0.0,
    };
    if !spec.power_control {
        let s = gains.with_powers(spec.budget.p1_max, spec.budget.p2_max);
        let rate = match scheme {
            Scheme::Proposed => rs_fixed(&s),
            Scheme::WtHi => gaussian_wt_hi(&s),
            Scheme::Direct => rs_ii(&s),
        };
        return SchemeCell {
            scheme,
            rate: round_sig12(rate),
            powers: None,
        };
    }
    let (p1_max, p2_max) = match scheme {
        // The silent relay has no use for relay power: search its line.
        Scheme::Direct => (spec.budget.p1_max, 0.0),
        _ => (spec.budget.p1_max, spec.budget.p2_max),
    };
    let f: Box<dyn Fn(f64, f64) -> f64> = match scheme {
        Scheme::Proposed => Box::new(move |p1, p2| rs_i(&gains.with_powers(p1, p2)).max(0.0)),
        Scheme::WtHi => Box::new(move |p1, p2| gaussian_wt_hi(&gains.with_powers(p1, p2))),
        Scheme::Direct => Box::new(move |p1, _| rs_ii(&gains.with_powers(p1, 0.0))),
    };
    let (p1, p2, rate, _) = maximize_rect(&f, p1_max, p2_max, spec.resolution);
    SchemeCell {
        scheme,
        rate: round_sig12(rate),
        powers: Some((round_sig12(p1), round_sig12(p2))),
    }
}

/// Evaluates the sweep. Rows come back in `b` order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.steps);
    for i in 0..spec.steps {
        let b = round_sig12(grid_value(i, spec.steps, spec.b_min, spec.b_max));
        let cells = spec
            .schemes
            .iter()
            .map(|&scheme| cell_for(spec, scheme, b))
            .collect();
        rows.push(SweepRow { b, cells });
    }
    Ok(rows)
}

/// Renders rows as CSV: header `b`, one rate column per scheme in row
/// order, then `<scheme>_p1,<scheme>_p2` pairs when powers are present.
/// UTF-8, comma-separated, LF line endings.
pub fn csv_string(rows: &[SweepRow]) -> Result<String> {
    let first = rows
        .first()
        .ok_or_else(|| Error::arg("cannot emit CSV for an empty sweep"))?;
    let mut out = String::from("b");
    for cell in &first.cells {
        out.push(',');
        out.push_str(cell.scheme.column_name());
    }
    let with_powers = first.cells.iter().any(|c| c.powers.is_some());
    if with_powers {
        for cell in &first.cells {
            let name = cell.scheme.column_name();
            write!(out, ",{name}_p1,{name}_p2").expect("string write");
        }
    }
    out.push('\n');
    for row in rows {
        if row.cells.len() != first.cells.len()
            || row
                .cells
                .iter()
                .zip(&first.cells)
                .any(|(a, b)| a.scheme != b.scheme || a.powers.is_some() != b.powers.is_some())
        {
            return Err(Error::arg("inconsistent scheme layout across sweep rows"));
        }
        write!(out, "{}", row.b).expect("string write");
        for cell in &row.cells {
            write!(out, ",{}", cell.rate).expect("string write");
        }
        if with_powers {
            for cell in &row.cells {
                let (p1, p2) = cell.powers.expect("layout checked above");
                write!(out, ",{p1},{p2}").expect("string write");
            }
        }
        out.push('\n');
    }
    Ok(out)
}

/// Parses CSV emitted by [`csv_string`] back into rows.
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::arg("empty CSV"))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.first() != Some(&"b") {
        return Err(Error::arg(format!(
            "CSV header must start with 'b', got {header:?}"
        )));
    }
    let mut schemes = Vec::new();
    let mut idx = 1;
    while idx < cols.len() && !cols[idx].ends_with("_p1") {
        schemes.push(Scheme::from_str(cols[idx])?);
        idx += 1;
    }
    let with_powers = idx < cols.len();
    if with_powers {
        let mut expect = Vec::new();
        for s in &schemes {
            expect.push(format!("{}_p1", s.column_name()));
            expect.push(format!("{}_p2", s.column_name()));
        }
        if cols[idx..] != expect {
            return Err(Error::arg(format!(
                "power columns {:?} do not match schemes {:?}",
                &cols[idx..],
                expect
            )));
        }
    }
    let ncols = 1 + schemes.len() * if with_powers { 3 } else { 1 };

    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != ncols {
            return Err(Error::arg(format!(
                "row {} has {} fields, expected {ncols}",
                lineno + 2,
                fields.len()
            )));
        }
        let num = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::arg(format!("row {}: bad number {s:?}", lineno + 2)))
        };
        let b = num(fields[0])?;
        let mut cells = Vec::with_capacity(schemes.len());
        for (k, &scheme) in schemes.iter().enumerate() {
            let rate = num(fields[1 + k])?;
            let powers = if with_powers {
                let base = 1 + schemes.len() + 2 * k;
                Some((num(fields[base])?, num(fields[base + 1])?))
            } else {
                None
            };
            cells.push(SchemeCell {
                scheme,
                rate,
                powers,
            });
        }
        rows.push(SweepRow { b, cells });
    }
    Ok(rows)
}
