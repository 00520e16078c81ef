//! Characteristic polynomials, roots, and spectrum classification.
//!
//! Coefficients stay exact up to the root finder; floating point only
//! enters in [`polynomial_roots`].

mod charpoly;
mod classify;
mod roots;

use num_complex::Complex64;

pub use charpoly::{characteristic_polynomial, reduce_to_xi, CharacteristicPolynomial};
pub use classify::{
    classify_spectrum, find_repeated, SpectrumClassification, Tolerances, Verdict, DEFAULT_TOL_BOUNDARY,
    DEFAULT_TOL_IM, MERGE_DISTANCE,
};
pub use roots::{polynomial_roots, ScaledPolynomial, RESIDUAL_TOLERANCE};

use crate::gaussian::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error("characteristic polynomial has a nonzero odd coefficient at λ^{index}")]
    OddTermPresent { index: usize },
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("polynomial must have degree at least 1")]
    DegreeTooLow,
    #[error("polynomial has a non-finite coefficient")]
    NonFiniteCoefficient,
    #[error("companion-matrix eigenvalue iteration did not converge")]
    RootFindingFailed,
}

pub fn to_complex(coeffs: &[GaussianRational]) -> Vec<Complex64> {
    coeffs.iter().map(GaussianRational::to_complex64).collect()
}

/// Characteristic polynomial → ξ polynomial → roots → verdict.
pub fn analyze_adjoint(
    m: &crate::algebra::AdjointMatrix,
    tolerances: Tolerances,
) -> Result<(CharacteristicPolynomial, Vec<GaussianRational>, SpectrumClassification), SpectralError> {
    let cp = characteristic_polynomial(m);
    let xi = cp.reduce_to_xi()?;
    let roots = polynomial_roots(&to_complex(&xi))?;
    let cls = classify_spectrum(&roots, tolerances);
    Ok((cp, xi, cls))
}
