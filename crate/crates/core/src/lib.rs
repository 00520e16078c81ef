//! Exact spectral analysis of quadratic Hamiltonians.
//!
//! A Hamiltonian quadratic in canonical coordinates and momenta acts on the
//! operator basis `(q_1..q_n, p_1..p_n)` through its commutator, giving the
//! adjoint matrix `[H, O_i] = Σ_j M[j][i] O_j`. Its eigenvalues are the mode
//! frequencies, and the spectrum is real exactly when every `ξ = λ²` is real
//! and positive.
//!
//! * [`algebra`]: normal-ordered operator polynomials, commutators, the
//!   adjoint matrix and symmetry checks.
//! * [`parser`]: the plain-text model format.
//! * [`spectral`]: exact characteristic polynomials, root finding and the
//!   Unbroken / Broken / Boundary verdict.
//! * [`selfforce`]: the built-in four-mode self-force model.
//! * [`scan`]: two-parameter region maps of that model.

pub mod algebra;
pub mod gaussian;
pub mod matrix;
pub mod parser;
pub mod scan;
pub mod selfforce;
pub mod spectral;
