use num_traits::Zero;

use super::adjoint::{symmetrized_coefficients, symmetrized_scalar};
use super::{AlgebraError, CanonicalPolynomial};
use crate::gaussian::GaussianRational;

/// A map `O_i → ±O_{π(i)}` on the operator basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    images: Vec<(usize, bool)>,
}

impl SignedPermutation {
    /// `images[i] = (target, negate)`; fails unless the targets form a permutation.
    pub fn new(images: Vec<(usize, bool)>) -> Result<Self, AlgebraError> {
        let dim = images.len();
        let mut hit = vec![false; dim];
        for &(t, _) in &images {
            if t >= dim || hit[t] {
                return Err(AlgebraError::NotSignedPermutation(format!("target {t} is out of range or repeated")));
            }
            hit[t] = true;
        }
        Ok(SignedPermutation { images })
    }

    pub fn identity(dim: usize) -> Self {
        SignedPermutation { images: (0..dim).map(|i| (i, false)).collect() }
    }

    /// Negates the listed basis indices and fixes the rest.
    pub fn sign_flip(dim: usize, negated: &[usize]) -> Self {
        SignedPermutation { images: (0..dim).map(|i| (i, negated.contains(&i))).collect() }
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, index: usize) -> (usize, bool) {
        self.images[index]
    }
}

/// True when every symmetrized coefficient is real, so `⟨f|H|g⟩ = ⟨g|H|f⟩*`.
///
/// The scalar is taken after symmetrizing `q_a p_a` products: `qp` itself is
/// not symmetric because `(qp)† = qp − i`.
pub fn is_formally_symmetric(h: &CanonicalPolynomial) -> Result<bool, AlgebraError> {
    let sym = symmetrized_coefficients(h)?;
    let quadratic_real = sym.matrix().iter().all(GaussianRational::is_real);
    let linear_real = h.terms().iter().filter(|(m, _)| m.degree() == 1).all(|(_, c)| c.is_real());
    Ok(quadratic_real && linear_real && symmetrized_scalar(h).is_real())
}

/// Applies the substitution `O_i → ±O_{π(i)}` factor by factor, conjugating
/// coefficients first when `antilinear`.
pub fn transform(
    h: &CanonicalPolynomial,
    map: &SignedPermutation,
    antilinear: bool,
) -> Result<CanonicalPolynomial, AlgebraError> {
    let space = h.space().clone();
    if map.dim() != space.dim() {
        return Err(AlgebraError::NotSignedPermutation(format!(
            "map covers {} operators but the basis has {}",
            map.dim(),
            space.dim()
        )));
    }
    let images: Vec<CanonicalPolynomial> = (0..space.dim())
        .map(|i| {
            let (t, neg) = map.image(i);
            let op = CanonicalPolynomial::operator(space.clone(), t);
            if neg {
                op.neg()
            } else {
                op
            }
        })
        .collect();
    let mut out = CanonicalPolynomial::zero(space.clone());
    for (m, c) in h.terms() {
        let coeff = if antilinear { c.conj() } else { c.clone() };
        let mut term = CanonicalPolynomial::scalar(space.clone(), coeff);
        for f in m.factors() {
            term = term.multiply(&images[f])?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Whether `H` is invariant under the given (anti)linear signed permutation.
pub fn check_linear_symmetry(
    h: &CanonicalPolynomial,
    map: &SignedPermutation,
    antilinear: bool,
) -> Result<bool, AlgebraError> {
    let image = transform(h, map, antilinear)?;
    Ok(image.sub(h)?.terms().values().all(Zero::is_zero))
}
