//! Exact algebra of polynomials in canonical coordinates and momenta.
//!
//! Products are kept in normal order (coordinates left of momenta) using
//! `[q_a, p_a] = i`, which makes the term map of a polynomial canonical.
//! From a quadratic Hamiltonian this module builds the adjoint matrix, the
//! symmetric coefficient matrix `S` (so that the adjoint equals `i·S·J`), and
//! symmetry checks on the coefficients.

mod adjoint;
mod polynomial;
mod space;
mod symmetry;

pub use adjoint::{adjoint_matrix, symmetrized_coefficients, AdjointMatrix, SymmetricCoefficientMatrix};
pub use polynomial::{CanonicalPolynomial, Monomial};
pub use space::PhaseSpace;
pub use symmetry::{check_linear_symmetry, is_formally_symmetric, transform, SignedPermutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("operands live in different phase spaces")]
    PhaseSpaceMismatch,
    #[error("invalid phase space: {0}")]
    InvalidPhaseSpace(String),
    #[error("Hamiltonian is not quadratic: monomial `{monomial}` has degree > 2")]
    NotQuadratic { monomial: String },
    #[error("Hamiltonian has a linear term in `{operator}`; only homogeneous quadratic forms are supported")]
    UnsupportedLinearTerm { operator: String },
    #[error("Hamiltonian has no quadratic part")]
    NoQuadraticPart,
    #[error("not a signed permutation of the basis: {0}")]
    NotSignedPermutation(String),
}
