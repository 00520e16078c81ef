//! The four-mode self-force model with its two stabilizing terms:
//!
//! ```text
//! H = B(w p_z − z p_w)/(mτ) + 2 p_z p_w/(mτ²) + (p_x p_w − p_y p_z)/(mτ)
//!     − m z w/2 + (w p_y + z p_x)/2 + k x y + A(x² + y²)/2
//! ```
//!
//! With `A = B = 0` this is the bare model, whose spectrum is complex for every
//! `m, τ, k`. The squared frequencies `ξ = λ²` are the linear root
//! `(B² − m²)/(m²τ²)` plus the roots of
//! `m²τ²ξ³ + (m² − B²)ξ² + 2(AB − km)ξ − A² + k²`.
//!
//! [`classify_params`] runs the generic pipeline on the model and compares
//! its verdict with the sign conditions `B² > m²`, `A² > k²`, `AB > km`.
//! The conditions are necessary for a real spectrum but not sufficient: at
//! `(m, τ, k, A, B) = (1, 1, 1/2, 1, 2)` they all hold while the cubic has a
//! complex pair. Such points are reported with `agreement = false`.
//!
//! No explicit P and T actions come with the model. Candidate maps can be
//! tested with [`crate::algebra::check_linear_symmetry`]. One that works at
//! every real parameter point is the reflection `x → −y, y → −x, z ↔ w`
//! (momenta transformed alike) followed by antilinear time reversal
//! `p → −p`. Flipping all four coordinates under time reversal does not.

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{adjoint_matrix, AdjointMatrix, AlgebraError, CanonicalPolynomial, Monomial, PhaseSpace};
use crate::gaussian::{ratio, GaussianRational, Rational};
use crate::matrix::ExactMatrix;
use crate::spectral::{
    characteristic_polynomial, classify_spectrum, polynomial_roots, to_complex, CharacteristicPolynomial,
    SpectralError, SpectrumClassification, Tolerances, Verdict,
};

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
pub const W: usize = 3;
pub const PX: usize = 4;
pub const PY: usize = 5;
pub const PZ: usize = 6;
pub const PW: usize = 7;

/// Parameter names as used by model files and the scanner.
pub const PARAMETER_NAMES: [&str; 5] = ["m", "tau", "k", "A", "B"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("degenerate parameter: `{name}` must be nonzero")]
    DegenerateParameter { name: &'static str },
    #[error("parameter `{name}` must be positive")]
    NegativeParameter { name: &'static str },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("characteristic polynomial is not divisible by the linear factor")]
    FactorizationMismatch,
}

/// Mass `m`, time constant `tau`, coupling `k`, and the strengths `a`, `b`
/// of the two added terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfForceParams {
    m: Rational,
    tau: Rational,
    k: Rational,
    a: Rational,
    b: Rational,
}

impl SelfForceParams {
    pub fn new(m: Rational, tau: Rational, k: Rational, a: Rational, b: Rational) -> Result<Self, ModelError> {
        for (name, v) in [("m", &m), ("tau", &tau)] {
            if v.is_zero() {
                return Err(ModelError::DegenerateParameter { name });
            }
            if v.is_negative() {
                return Err(ModelError::NegativeParameter { name });
            }
        }
        Ok(SelfForceParams { m, tau, k, a, b })
    }

    /// Small-integer convenience constructor: each argument is `(num, den)`.
    pub fn from_ratios(
        m: (i64, i64),
        tau: (i64, i64),
        k: (i64, i64),
        a: (i64, i64),
        b: (i64, i64),
    ) -> Result<Self, ModelError> {
        let r = |(n, d): (i64, i64)| ratio(n, d);
        Self::new(r(m), r(tau), r(k), r(a), r(b))
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }
    pub fn tau(&self) -> &Rational {
        &self.tau
    }
    pub fn k(&self) -> &Rational {
        &self.k
    }
    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Value by name, using [`PARAMETER_NAMES`].
    pub fn get(&self, name: &str) -> Option<&Rational> {
        match name {
            "m" => Some(&self.m),
            "tau" => Some(&self.tau),
            "k" => Some(&self.k),
            "A" => Some(&self.a),
            "B" => Some(&self.b),
            _ => None,
        }
    }
}

/// Basis `x, y, z, w, p_x, p_y, p_z, p_w`.
pub fn self_force_space() -> Arc<PhaseSpace> {
    static SPACE: OnceLock<Arc<PhaseSpace>> = OnceLock::new();
    SPACE
        .get_or_init(|| {
            Arc::new(
                PhaseSpace::from_pairs([("x", "p_x"), ("y", "p_y"), ("z", "p_z"), ("w", "p_w")]).expect("valid basis"),
            )
        })
        .clone()
}

/// Model file text for the same Hamiltonian, with the five parameters unbound.
pub const MODEL_FILE: &str = "\
# four-mode self-force model
pairs: x/p_x, y/p_y, z/p_z, w/p_w
params: m, tau, k, A, B
H = B*(w*p_z - z*p_w)/(m*tau) + 2*p_z*p_w/(m*tau^2) + (p_x*p_w - p_y*p_z)/(m*tau)
    - m*z*w/2 + (w*p_y + z*p_x)/2 + k*x*y + A*(x^2 + y^2)/2
";

fn pair(i: usize, j: usize) -> Monomial {
    let mut e = vec![0; 8];
    e[i] += 1;
    e[j] += 1;
    Monomial::from_exponents(e)
}

/// Term map of the model Hamiltonian, written out directly.
pub fn build_hamiltonian(p: &SelfForceParams) -> CanonicalPolynomial {
    let m_tau = &p.m * &p.tau;
    let m_tau2 = &m_tau * &p.tau;
    let half = ratio(1, 2);
    let terms = [
        (pair(W, PZ), &p.b / &m_tau),
        (pair(Z, PW), -&p.b / &m_tau),
        (pair(PZ, PW), Rational::from_integer(2.into()) / &m_tau2),
        (pair(PX, PW), Rational::one() / &m_tau),
        (pair(PY, PZ), -Rational::one() / &m_tau),
        (pair(Z, W), -&p.m * &half),
        (pair(W, PY), half.clone()),
        (pair(Z, PX), half.clone()),
        (pair(X, Y), p.k.clone()),
        (pair(X, X), &p.a * &half),
        (pair(Y, Y), &p.a * &half),
    ];
    CanonicalPolynomial::from_terms(self_force_space(), terms.into_iter().map(|(m, c)| (m, GaussianRational::real(c))))
}

/// The 8×8 adjoint matrix in closed form, rows and columns ordered
/// `x, y, z, w, p_x, p_y, p_z, p_w`.
pub fn adjoint_closed_form(p: &SelfForceParams) -> AdjointMatrix {
    let i = |r: Rational| GaussianRational::imag(r);
    let m_tau = &p.m * &p.tau;
    let inv_mt = Rational::one() / &m_tau;
    let two_inv_mt2 = Rational::from_integer(2.into()) / (&m_tau * &p.tau);
    let b_mt = &p.b / &m_tau;
    let half = ratio(1, 2);
    let half_m = &p.m * &half;

    let mut e = ExactMatrix::zeros(8);
    e[(X, PX)] = i(p.a.clone());
    e[(X, PY)] = i(p.k.clone());
    e[(Y, PX)] = i(p.k.clone());
    e[(Y, PY)] = i(p.a.clone());
    e[(Z, X)] = i(-&half);
    e[(Z, W)] = i(b_mt.clone());
    e[(Z, PW)] = i(-&half_m);
    e[(W, Y)] = i(-&half);
    e[(W, Z)] = i(-&b_mt);
    e[(W, PZ)] = i(-&half_m);
    e[(PX, W)] = i(-&inv_mt);
    e[(PX, PZ)] = i(half.clone());
    e[(PY, Z)] = i(inv_mt.clone());
    e[(PY, PW)] = i(half.clone());
    e[(PZ, Y)] = i(inv_mt.clone());
    e[(PZ, W)] = i(-&two_inv_mt2);
    e[(PZ, PW)] = i(b_mt.clone());
    e[(PW, X)] = i(-&inv_mt);
    e[(PW, Z)] = i(-&two_inv_mt2);
    e[(PW, PZ)] = i(-&b_mt);
    AdjointMatrix::from_matrix(self_force_space(), e)
}

/// The root `ξ = (B² − m²)/(m²τ²)` of the linear factor.
pub fn xi_linear_root(p: &SelfForceParams) -> Rational {
    let m2 = &p.m * &p.m;
    (&p.b * &p.b - &m2) / (&m2 * &p.tau * &p.tau)
}

/// `[m²τ², m² − B², 2(AB − km), k² − A²]`, highest degree first.
pub fn cubic_coefficients(p: &SelfForceParams) -> [Rational; 4] {
    let m2 = &p.m * &p.m;
    let two = Rational::from_integer(2.into());
    [&m2 * &p.tau * &p.tau, &m2 - &p.b * &p.b, two * (&p.a * &p.b - &p.k * &p.m), &p.k * &p.k - &p.a * &p.a]
}

/// `B² > m² ∧ A² > k² ∧ AB > km`, compared exactly.
pub fn analytic_predicate(p: &SelfForceParams) -> bool {
    &p.b * &p.b > &p.m * &p.m && &p.a * &p.a > &p.k * &p.k && &p.a * &p.b > &p.k * &p.m
}

#[derive(Clone, Debug)]
pub struct ModelReport {
    pub params: SelfForceParams,
    pub xi_linear: Rational,
    /// Highest degree first.
    pub cubic: [Rational; 4],
    pub characteristic: CharacteristicPolynomial,
    /// Ascending coefficients of the quartic in ξ.
    pub xi_coeffs: Vec<GaussianRational>,
    /// Linear root first, then the three cubic roots.
    pub classification: SpectrumClassification,
    pub predicate: bool,
    /// `predicate ⟺ verdict == Unbroken`.
    pub agreement: bool,
}

impl ModelReport {
    pub fn verdict(&self) -> Verdict {
        self.classification.verdict
    }
}

/// Divides ascending `coeffs` by `(ξ − root)`; `None` unless the remainder is zero.
fn deflate(coeffs: &[GaussianRational], root: &GaussianRational) -> Option<Vec<GaussianRational>> {
    let n = coeffs.len() - 1;
    let mut quotient = vec![GaussianRational::zero(); n];
    let mut carry = GaussianRational::zero();
    for k in (0..=n).rev() {
        let value = &coeffs[k] + &(&carry * root);
        if k == 0 {
            return value.is_zero().then_some(quotient);
        }
        quotient[k - 1] = value.clone();
        carry = value;
    }
    unreachable!()
}

/// Builds `H`, takes its adjoint and exact characteristic polynomial, splits
/// off the linear root, finds the cubic roots numerically, and classifies.
pub fn classify_params(p: &SelfForceParams, tolerances: Tolerances) -> Result<ModelReport, ModelError> {
    let h = build_hamiltonian(p);
    let adjoint = adjoint_matrix(&h)?;
    let characteristic = characteristic_polynomial(&adjoint);
    let xi_coeffs = characteristic.reduce_to_xi()?;
    let xi_linear = xi_linear_root(p);
    let quotient =
        deflate(&xi_coeffs, &GaussianRational::real(xi_linear.clone())).ok_or(ModelError::FactorizationMismatch)?;
    let mut xis = vec![Complex64::new(xi_linear.to_f64().unwrap_or(f64::NAN), 0.0)];
    xis.extend(polynomial_roots(&to_complex(&quotient))?);
    let classification = classify_spectrum(&xis, tolerances);
    let predicate = analytic_predicate(p);
    let agreement = predicate == (classification.verdict == Verdict::Unbroken);
    Ok(ModelReport {
        params: p.clone(),
        xi_linear,
        cubic: cubic_coefficients(p),
        characteristic,
        xi_coeffs,
        classification,
        predicate,
        agreement,
    })
}
