//! JSON report documents. Exact values are carried as rational strings next
//! to floating-point approximations.

use adjoint_spectra::gaussian::{format_rational, GaussianRational, Rational};
use adjoint_spectra::matrix::ExactMatrix;
use adjoint_spectra::selfforce::ModelReport;
use adjoint_spectra::spectral::{SpectrumClassification, Tolerances, Verdict};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Serialize)]
pub struct ExactComplex {
    pub re: String,
    pub im: String,
    pub approx: [f64; 2],
}

impl From<&GaussianRational> for ExactComplex {
    fn from(z: &GaussianRational) -> Self {
        let c = z.to_complex64();
        ExactComplex { re: format_rational(&z.re), im: format_rational(&z.im), approx: [c.re, c.im] }
    }
}

#[derive(Serialize)]
pub struct ExactReal {
    pub exact: String,
    pub approx: f64,
}

impl From<&Rational> for ExactReal {
    fn from(r: &Rational) -> Self {
        ExactReal { exact: format_rational(r), approx: GaussianRational::real(r.clone()).to_complex64().re }
    }
}

#[derive(Serialize)]
pub struct Spectrum {
    pub verdict: Verdict,
    pub xis: Vec<[f64; 2]>,
    pub lambdas: Vec<[f64; 2]>,
    pub repeated: Vec<Vec<usize>>,
    pub tolerances: Tolerances,
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

impl From<&SpectrumClassification> for Spectrum {
    fn from(c: &SpectrumClassification) -> Self {
        Spectrum {
            verdict: c.verdict,
            xis: pairs(&c.xis),
            lambdas: pairs(&c.lambdas),
            repeated: c.repeated.clone(),
            tolerances: c.tolerances,
        }
    }
}

pub fn exact_matrix(m: &ExactMatrix) -> Vec<Vec<ExactComplex>> {
    m.rows().map(|row| row.iter().map(ExactComplex::from).collect()).collect()
}

pub fn exact_list(v: &[GaussianRational]) -> Vec<ExactComplex> {
    v.iter().map(ExactComplex::from).collect()
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub basis: Vec<String>,
    pub parameters: Vec<(String, String)>,
    pub hamiltonian: String,
    pub adjoint_matrix: Vec<Vec<ExactComplex>>,
    /// Ascending powers of λ.
    pub characteristic_polynomial: Vec<ExactComplex>,
    /// Ascending powers of ξ = λ².
    pub xi_polynomial: Vec<ExactComplex>,
    pub spectrum: Spectrum,
}

#[derive(Serialize)]
pub struct SelfForceReport {
    pub params: Vec<(String, String)>,
    pub xi_linear: ExactReal,
    /// Highest degree first.
    pub cubic: Vec<ExactReal>,
    pub adjoint_matrix: Vec<Vec<ExactComplex>>,
    pub characteristic_polynomial: Vec<ExactComplex>,
    pub xi_polynomial: Vec<ExactComplex>,
    pub spectrum: Spectrum,
    pub predicate: bool,
    pub agreement: bool,
}

impl SelfForceReport {
    pub fn new(report: &ModelReport, adjoint: &ExactMatrix) -> Self {
        let p = &report.params;
        SelfForceReport {
            params: [("m", p.m()), ("tau", p.tau()), ("k", p.k()), ("A", p.a()), ("B", p.b())]
                .into_iter()
                .map(|(n, v)| (n.to_string(), format_rational(v)))
                .collect(),
            xi_linear: ExactReal::from(&report.xi_linear),
            cubic: report.cubic.iter().map(ExactReal::from).collect(),
            adjoint_matrix: exact_matrix(adjoint),
            characteristic_polynomial: exact_list(report.characteristic.lambda_coeffs()),
            xi_polynomial: exact_list(&report.xi_coeffs),
            spectrum: Spectrum::from(&report.classification),
            predicate: report.predicate,
            agreement: report.agreement,
        }
    }
}
