use std::sync::Arc;

use num_traits::Zero;

use super::{AlgebraError, CanonicalPolynomial, Monomial, PhaseSpace};
use crate::gaussian::{ratio, GaussianRational};
use crate::matrix::ExactMatrix;

/// Commutator coefficients of a quadratic `H` over the basis:
/// `[H, O_i] = Σ_j M[j][i] · O_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointMatrix {
    space: Arc<PhaseSpace>,
    matrix: ExactMatrix,
}

impl AdjointMatrix {
    /// Wraps a hand-built matrix; panics if its size does not match the basis.
    pub fn from_matrix(space: Arc<PhaseSpace>, matrix: ExactMatrix) -> Self {
        assert_eq!(space.dim(), matrix.dim(), "adjoint matrix must be 2n x 2n");
        AdjointMatrix { space, matrix }
    }

    pub fn space(&self) -> &Arc<PhaseSpace> {
        &self.space
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.matrix
    }

    pub fn trace(&self) -> GaussianRational {
        self.matrix.trace()
    }
}

/// `S` with `H₂ = ½ Σ_jk S[j][k] O_j O_k` up to an additive scalar; `S = Sᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricCoefficientMatrix {
    space: Arc<PhaseSpace>,
    matrix: ExactMatrix,
}

impl SymmetricCoefficientMatrix {
    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn space(&self) -> &Arc<PhaseSpace> {
        &self.space
    }

    /// Normal-ordered `½ zᵀ S z`.
    pub fn reconstruct(&self) -> CanonicalPolynomial {
        let dim = self.space.dim();
        let half = GaussianRational::real(ratio(1, 2));
        let mut acc = CanonicalPolynomial::zero(self.space.clone());
        for j in 0..dim {
            for k in 0..dim {
                let s = &self.matrix[(j, k)];
                if s.is_zero() {
                    continue;
                }
                let oj = CanonicalPolynomial::operator(self.space.clone(), j);
                let ok = CanonicalPolynomial::operator(self.space.clone(), k);
                let term = oj.multiply(&ok).expect("same space").scale(&(s * &half));
                acc = acc.add(&term).expect("same space");
            }
        }
        acc
    }

    /// `i · S · J`, the adjoint matrix predicted by the symplectic form.
    pub fn symplectic_adjoint(&self) -> ExactMatrix {
        self.matrix.mul(&self.space.symplectic_form()).scale(&GaussianRational::i())
    }
}

fn require_degree_at_most_two(h: &CanonicalPolynomial) -> Result<(), AlgebraError> {
    if let Some((m, _)) = h.terms().iter().find(|(m, _)| m.degree() > 2) {
        return Err(AlgebraError::NotQuadratic { monomial: m.display(h.space()).to_string() });
    }
    Ok(())
}

/// Column `i` holds the expansion of `[H, O_i]` over the basis.
///
/// Scalar terms of `H` are ignored. Linear terms are rejected, since their
/// commutators leave the operator basis.
pub fn adjoint_matrix(h: &CanonicalPolynomial) -> Result<AdjointMatrix, AlgebraError> {
    require_degree_at_most_two(h)?;
    let space = h.space().clone();
    if let Some((m, _)) = h.terms().iter().find(|(m, _)| m.degree() == 1) {
        return Err(AlgebraError::UnsupportedLinearTerm { operator: m.display(&space).to_string() });
    }
    if h.homogeneous_part(2).is_zero() {
        return Err(AlgebraError::NoQuadraticPart);
    }
    let dim = space.dim();
    let mut matrix = ExactMatrix::zeros(dim);
    for i in 0..dim {
        let basis = CanonicalPolynomial::operator(space.clone(), i);
        let comm = h.commutator(&basis)?;
        for (m, c) in comm.terms() {
            // a quadratic H maps the basis onto itself
            let j = m.as_basis().expect("commutator of a quadratic form is linear");
            matrix[(j, i)] = c.clone();
        }
    }
    Ok(AdjointMatrix { space, matrix })
}

/// Symmetric coefficient matrix of the quadratic part of `H`.
pub fn symmetrized_coefficients(h: &CanonicalPolynomial) -> Result<SymmetricCoefficientMatrix, AlgebraError> {
    require_degree_at_most_two(h)?;
    let space = h.space().clone();
    let mut matrix = ExactMatrix::zeros(space.dim());
    for (m, c) in h.terms().iter().filter(|(m, _)| m.degree() == 2) {
        let f = m.factors();
        let (j, k) = (f[0], f[1]);
        if j == k {
            matrix[(j, j)] += &(c + c);
        } else {
            matrix[(j, k)] += c;
            matrix[(k, j)] += c;
        }
    }
    Ok(SymmetricCoefficientMatrix { space, matrix })
}

/// Scalar term of `H` once every `q_a p_a` is rewritten as `(q_a p_a + p_a q_a)/2 + i/2`.
pub(crate) fn symmetrized_scalar(h: &CanonicalPolynomial) -> GaussianRational {
    let space = h.space();
    let n = space.pairs();
    let half_i = GaussianRational::imag(ratio(1, 2));
    let mut scalar = h.scalar_part();
    for a in 0..n {
        let mut e = vec![0; 2 * n];
        e[a] = 1;
        e[n + a] = 1;
        let c = h.coefficient(&Monomial::from_exponents(e));
        scalar += &(&c * &half_i);
    }
    scalar
}
