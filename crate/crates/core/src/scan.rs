//! Two-parameter sweeps of the self-force model.
//!
//! Grid points are exact rationals `min + j·(max − min)/(steps − 1)`. Cells are
//! evaluated independently (optionally on a rayon pool) and collected in index
//! order, so the CSV and PGM bytes never depend on the worker count.

use std::fmt::{self, Write as _};

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::gaussian::{format_rational, Rational};
use crate::selfforce::{classify_params, ModelError, SelfForceParams, PARAMETER_NAMES};
use crate::spectral::{Tolerances, Verdict};

pub const CSV_HEADER: &str = "axis1,axis2,verdict,predicate,agreement,min_im_xi,min_re_xi";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScanError {
    #[error("invalid scan: {0}")]
    InvalidSpec(String),
    #[error("no value for parameter `{0}`")]
    IncompleteBinding(String),
    #[error("cell ({i1}, {i2}): {source}")]
    Cell { i1: usize, i2: usize, source: ModelError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    pub name: String,
    pub min: Rational,
    pub max: Rational,
    pub steps: usize,
}

impl Axis {
    pub fn new(name: impl Into<String>, min: Rational, max: Rational, steps: usize) -> Self {
        Axis { name: name.into(), min, max, steps }
    }

    /// Parses `name:min:max:steps`, with `min`/`max` as integers, fractions or decimals.
    pub fn parse(text: &str) -> Result<Self, ScanError> {
        let bad = || ScanError::InvalidSpec(format!("axis `{text}` is not name:min:max:steps"));
        let parts: Vec<&str> = text.split(':').collect();
        let [name, min, max, steps] = parts[..] else {
            return Err(bad());
        };
        let min = crate::gaussian::parse_rational(min).ok_or_else(bad)?;
        let max = crate::gaussian::parse_rational(max).ok_or_else(bad)?;
        let steps = steps.trim().parse().map_err(|_| bad())?;
        Ok(Axis::new(name.trim(), min, max, steps))
    }

    pub fn value(&self, j: usize) -> Rational {
        let span = &self.max - &self.min;
        &self.min + span * Rational::from_integer(j.into()) / Rational::from_integer((self.steps - 1).into())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub axis1: Axis,
    pub axis2: Axis,
    /// Values for the three parameters not on an axis.
    pub fixed: Vec<(String, Rational)>,
    pub tolerances: Tolerances,
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), ScanError> {
        let invalid = |msg: String| Err(ScanError::InvalidSpec(msg));
        for axis in [&self.axis1, &self.axis2] {
            if axis.steps < 2 {
                return invalid(format!("axis `{}` needs at least 2 steps", axis.name));
            }
            if axis.min >= axis.max {
                return invalid(format!("axis `{}` needs min < max", axis.name));
            }
            if matches!(axis.name.as_str(), "m" | "tau") && !axis.min.is_positive() {
                return invalid(format!("axis `{}` must stay positive", axis.name));
            }
        }
        if self.axis1.name == self.axis2.name {
            return invalid(format!("both axes scan `{}`", self.axis1.name));
        }
        let names = self.fixed.iter().map(|(n, _)| n).chain([&self.axis1.name, &self.axis2.name]);
        let mut seen = Vec::new();
        for name in names {
            if !PARAMETER_NAMES.contains(&name.as_str()) {
                return invalid(format!("unknown parameter `{name}` (expected one of m, tau, k, A, B)"));
            }
            if seen.contains(&name) {
                return invalid(format!("parameter `{name}` is given more than once"));
            }
            seen.push(name);
        }
        if let Some(missing) = PARAMETER_NAMES.iter().find(|n| !seen.iter().any(|s| s == *n)) {
            return Err(ScanError::IncompleteBinding(missing.to_string()));
        }
        if !(self.tolerances.tol_im > 0.0 && self.tolerances.tol_boundary > 0.0) {
            return invalid("tolerances must be positive".into());
        }
        Ok(())
    }

    fn params_at(&self, v1: &Rational, v2: &Rational) -> Result<SelfForceParams, ModelError> {
        let lookup = |name: &str| -> Rational {
            if name == self.axis1.name {
                v1.clone()
            } else if name == self.axis2.name {
                v2.clone()
            } else {
                self.fixed.iter().find(|(n, _)| n == name).map(|(_, v)| v.clone()).expect("validated")
            }
        };
        SelfForceParams::new(lookup("m"), lookup("tau"), lookup("k"), lookup("A"), lookup("B"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub axis1: Rational,
    pub axis2: Rational,
    pub verdict: Verdict,
    pub predicate: bool,
    pub agreement: bool,
    /// `min |Im ξ|`.
    pub min_im_xi: f64,
    /// `min Re ξ`.
    pub min_re_xi: f64,
}

/// Cells in row-major order: `cells[i2 * steps1 + i1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionGrid {
    pub spec: GridSpec,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub unbroken: usize,
    pub broken: usize,
    pub boundary: usize,
    pub disagreements: usize,
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cells={} unbroken={} broken={} boundary={} disagreements={}",
            self.unbroken + self.broken + self.boundary,
            self.unbroken,
            self.broken,
            self.boundary,
            self.disagreements
        )
    }
}

fn evaluate(spec: &GridSpec, index: usize) -> Result<Cell, ScanError> {
    let steps1 = spec.axis1.steps;
    let (i1, i2) = (index % steps1, index / steps1);
    let (v1, v2) = (spec.axis1.value(i1), spec.axis2.value(i2));
    let report = spec
        .params_at(&v1, &v2)
        .and_then(|p| classify_params(&p, spec.tolerances))
        .map_err(|source| ScanError::Cell { i1, i2, source })?;
    let xis = &report.classification.xis;
    Ok(Cell {
        axis1: v1,
        axis2: v2,
        verdict: report.verdict(),
        predicate: report.predicate,
        agreement: report.agreement,
        min_im_xi: xis.iter().map(|x| x.im.abs()).fold(f64::INFINITY, f64::min),
        min_re_xi: xis.iter().map(|x| x.re).fold(f64::INFINITY, f64::min),
    })
}

/// Evaluates every cell; `workers` threads (1 runs inline).
pub fn scan(spec: &GridSpec, workers: usize) -> Result<RegionGrid, ScanError> {
    spec.validate()?;
    if workers == 0 {
        return Err(ScanError::InvalidSpec("worker count must be at least 1".into()));
    }
    let total = spec.axis1.steps * spec.axis2.steps;
    let cells = if workers == 1 {
        (0..total).map(|i| evaluate(spec, i)).collect::<Result<Vec<_>, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| ScanError::InvalidSpec(format!("cannot start worker pool: {e}")))?;
        pool.install(|| (0..total).into_par_iter().map(|i| evaluate(spec, i)).collect::<Result<Vec<_>, _>>())?
    };
    Ok(RegionGrid { spec: spec.clone(), cells })
}

/// Nine significant digits.
pub fn format_float(v: f64) -> String {
    format!("{v:.8e}")
}

impl RegionGrid {
    pub fn cell(&self, i1: usize, i2: usize) -> &Cell {
        &self.cells[i2 * self.spec.axis1.steps + i1]
    }

    pub fn summary(&self) -> ScanSummary {
        let mut s = ScanSummary::default();
        for c in &self.cells {
            match c.verdict {
                Verdict::Unbroken => s.unbroken += 1,
                Verdict::Broken => s.broken += 1,
                Verdict::Boundary => s.boundary += 1,
            }
            if !c.agreement {
                s.disagreements += 1;
            }
        }
        s
    }

    /// Header plus one LF-terminated row per cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.cells.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for c in &self.cells {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                format_float(c.axis1.to_f64().unwrap_or(f64::NAN)),
                format_float(c.axis2.to_f64().unwrap_or(f64::NAN)),
                c.verdict.as_str(),
                c.predicate,
                c.agreement,
                format_float(c.min_im_xi),
                format_float(c.min_re_xi),
            )
            .expect("writing to a String cannot fail");
        }
        out
    }

    /// Binary PGM, `steps1` wide and `steps2` tall, top row = largest axis2.
    pub fn to_pgm(&self) -> Vec<u8> {
        let (w, h) = (self.spec.axis1.steps, self.spec.axis2.steps);
        let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
        for i2 in (0..h).rev() {
            for i1 in 0..w {
                out.push(match self.cell(i1, i2).verdict {
                    Verdict::Unbroken => 255,
                    Verdict::Boundary => 128,
                    Verdict::Broken => 0,
                });
            }
        }
        out
    }

    /// Exact axis values of a cell, for messages.
    pub fn describe_cell(&self, c: &Cell) -> String {
        format!(
            "{}={}, {}={}",
            self.spec.axis1.name,
            format_rational(&c.axis1),
            self.spec.axis2.name,
            format_rational(&c.axis2)
        )
    }
}
