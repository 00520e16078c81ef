use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgebraError, PhaseSpace};
use crate::gaussian::{GaussianRational, Rational};

/// Exponents over the basis `(q_1..q_n, p_1..p_n)`, read in normal order:
/// every coordinate factor sits to the left of every momentum factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn scalar(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    /// The single basis operator `O_index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut e = vec![0; dim];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_scalar(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Index of the operator when this monomial is a single basis element.
    pub fn as_basis(&self) -> Option<usize> {
        if self.degree() != 1 {
            return None;
        }
        self.0.iter().position(|&e| e == 1)
    }

    /// Factor indices in normal order, repeated by multiplicity.
    pub fn factors(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
    }

    pub fn display<'a>(&'a self, space: &'a PhaseSpace) -> impl fmt::Display + 'a {
        MonomialDisplay { mono: self, space }
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    space: &'a PhaseSpace,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_scalar() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.space.basis_name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in the canonical operators, normal-ordered under `[q_a, p_a] = i`.
///
/// The term map never stores a zero coefficient, so two operator expressions
/// that are equal under the commutation relations compare equal.
#[derive(Clone, Debug)]
pub struct CanonicalPolynomial {
    space: Arc<PhaseSpace>,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl PartialEq for CanonicalPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_space(other) && self.terms == other.terms
    }
}

impl Eq for CanonicalPolynomial {}

/// `(-i)^k`.
/// `(−i)^k · z`.
fn rotate_minus_i(z: &GaussianRational, k: u32) -> GaussianRational {
    let (re, im) = (z.re.clone(), z.im.clone());
    match k % 4 {
        0 => GaussianRational::new(re, im),
        1 => GaussianRational::new(im, -re),
        2 => GaussianRational::new(-re, -im),
        _ => GaussianRational::new(-im, re),
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

impl CanonicalPolynomial {
    pub fn zero(space: Arc<PhaseSpace>) -> Self {
        CanonicalPolynomial { space, terms: BTreeMap::new() }
    }

    pub fn scalar(space: Arc<PhaseSpace>, value: GaussianRational) -> Self {
        let dim = space.dim();
        Self::monomial(space, Monomial::scalar(dim), value)
    }

    /// The basis operator `O_index` with unit coefficient.
    pub fn operator(space: Arc<PhaseSpace>, index: usize) -> Self {
        let dim = space.dim();
        Self::monomial(space, Monomial::basis(dim, index), GaussianRational::one())
    }

    pub fn monomial(space: Arc<PhaseSpace>, mono: Monomial, coeff: GaussianRational) -> Self {
        assert_eq!(mono.0.len(), space.dim(), "monomial length must match the basis");
        let mut p = Self::zero(space);
        p.add_term(mono, &coeff);
        p
    }

    /// Builds from already normal-ordered terms; repeated monomials accumulate.
    pub fn from_terms(space: Arc<PhaseSpace>, terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut p = Self::zero(space);
        for (m, c) in terms {
            assert_eq!(m.0.len(), p.space.dim(), "monomial length must match the basis");
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, coeff: &GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn space(&self) -> &Arc<PhaseSpace> {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, GaussianRational> {
        &self.terms
    }

    pub fn coefficient(&self, mono: &Monomial) -> GaussianRational {
        self.terms.get(mono).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest monomial degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn scalar_part(&self) -> GaussianRational {
        self.coefficient(&Monomial::scalar(self.space.dim()))
    }

    /// Terms of exactly the given degree.
    pub fn homogeneous_part(&self, degree: u32) -> CanonicalPolynomial {
        CanonicalPolynomial {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn same_space(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space
    }

    fn check_space(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.same_space(other) {
            Ok(())
        } else {
            Err(AlgebraError::PhaseSpaceMismatch)
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_space(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussianRational::one())
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = Self::zero(self.space.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &(c * s));
        }
        out
    }

    pub fn scale_rational(&self, s: &Rational) -> Self {
        self.scale(&GaussianRational::real(s.clone()))
    }

    /// Complex-conjugates every coefficient (the operators are left alone).
    pub fn conjugate_coefficients(&self) -> Self {
        CanonicalPolynomial {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    /// Operator product `self · rhs`, rewritten to normal order.
    pub fn multiply(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_space(rhs)?;
        let mut out = Self::zero(self.space.clone());
        for (ml, cl) in &self.terms {
            for (mr, cr) in &rhs.terms {
                let coeff = if cr.is_one() {
                    cl.clone()
                } else if cl.is_one() {
                    cr.clone()
                } else {
                    cl * cr
                };
                for (m, turns, weight) in self.monomial_product(ml, mr) {
                    let mut c = rotate_minus_i(&coeff, turns);
                    if !weight.is_one() {
                        c = c.scale(&Rational::from_integer(weight));
                    }
                    out.add_term(m, &c);
                }
            }
        }
        Ok(out)
    }

    /// Normal-ordered expansion of `left · right` as `(monomial, k, w)`
    /// meaning `w·(−i)^k·monomial`.
    ///
    /// Modes commute with each other, so per mode only `p^b q^c` needs
    /// reordering: `p^b q^c = Σ_k k! C(b,k) C(c,k) (-i)^k q^(c-k) p^(b-k)`.
    fn monomial_product(&self, left: &Monomial, right: &Monomial) -> Vec<(Monomial, u32, BigInt)> {
        let n = self.space.pairs();
        let mut acc: Vec<(Vec<u32>, u32, BigInt)> = vec![(vec![0; 2 * n], 0, BigInt::one())];
        for a in 0..n {
            let (qa, pa) = (left.0[a], left.0[n + a]);
            let (qb, pb) = (right.0[a], right.0[n + a]);
            let kmax = pa.min(qb);
            let mut next = Vec::with_capacity(acc.len() * (kmax as usize + 1));
            for k in 0..=kmax {
                let weight = binomial(pa, k) * binomial(qb, k) * factorial(k);
                for (exps, turns, w) in &acc {
                    let mut e = exps.clone();
                    e[a] = qa + qb - k;
                    e[n + a] = pa + pb - k;
                    next.push((e, turns + k, w * &weight));
                }
            }
            acc = next;
        }
        acc.into_iter().map(|(e, k, w)| (Monomial(e), k, w)).collect()
    }

    /// `[self, rhs] = self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.multiply(rhs)?.sub(&rhs.multiply(self)?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::scalar(self.space.clone(), GaussianRational::one());
        for _ in 0..exp {
            acc = acc.multiply(self).expect("same space");
        }
        acc
    }
}

impl fmt::Display for CanonicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if m.is_scalar() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", m.display(&self.space))?;
            }
        }
        Ok(())
    }
}
