use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::SpectralError;
use crate::algebra::AdjointMatrix;
use crate::gaussian::{GaussianRational, Rational};
use crate::matrix::ExactMatrix;

/// Exact `det(λI − M)` with coefficients in ascending powers of `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicPolynomial {
    lambda_coeffs: Vec<GaussianRational>,
    xi_coeffs: Option<Vec<GaussianRational>>,
}

impl CharacteristicPolynomial {
    /// Wraps monic ascending coefficients; panics if the leading one is not 1.
    pub fn from_lambda_coeffs(lambda_coeffs: Vec<GaussianRational>) -> Self {
        assert!(lambda_coeffs.last().is_some_and(One::is_one), "characteristic polynomial must be monic");
        let xi_coeffs = reduce_coeffs(&lambda_coeffs).ok();
        CharacteristicPolynomial { lambda_coeffs, xi_coeffs }
    }

    /// `c_0..c_{2n}`; `c_{2n} = 1`.
    pub fn lambda_coeffs(&self) -> &[GaussianRational] {
        &self.lambda_coeffs
    }

    /// Coefficients of the polynomial in `ξ = λ²`, present when every odd
    /// `λ` coefficient vanishes.
    pub fn xi_coeffs(&self) -> Option<&[GaussianRational]> {
        self.xi_coeffs.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.lambda_coeffs.len() - 1
    }

    pub fn reduce_to_xi(&self) -> Result<Vec<GaussianRational>, SpectralError> {
        reduce_coeffs(&self.lambda_coeffs)
    }
}

fn reduce_coeffs(coeffs: &[GaussianRational]) -> Result<Vec<GaussianRational>, SpectralError> {
    if let Some(index) = (1..coeffs.len()).step_by(2).rev().find(|&k| !coeffs[k].is_zero()) {
        return Err(SpectralError::OddTermPresent { index });
    }
    Ok(coeffs.iter().step_by(2).cloned().collect())
}

/// Substitutes `ξ = λ²`: the `ξ^j` coefficient is the `λ^{2j}` coefficient.
/// Fails with the largest nonzero odd index.
pub fn reduce_to_xi(p: &CharacteristicPolynomial) -> Result<Vec<GaussianRational>, SpectralError> {
    p.reduce_to_xi()
}

/// Faddeev–LeVerrier recurrence, exact:
/// `M_k = A·M_{k−1} + c_{n−k+1}·I`, `c_{n−k} = −tr(A·M_k)/k`.
pub fn characteristic_polynomial(m: &AdjointMatrix) -> CharacteristicPolynomial {
    CharacteristicPolynomial::from_lambda_coeffs(faddeev_leverrier(m.matrix()))
}

pub(crate) fn faddeev_leverrier(a: &ExactMatrix) -> Vec<GaussianRational> {
    // Scale to a Gaussian-integer matrix N = D·A so the recurrence runs
    // without gcd reductions; every division by k is then exact.
    let n = a.dim();
    let denom = a.iter().flat_map(|z| [z.re.denom(), z.im.denom()]).fold(BigInt::one(), |acc, d| acc.lcm(d));
    let scaled: Vec<GaussInt> = a
        .iter()
        .map(|z| GaussInt { re: z.re.numer() * (&denom / z.re.denom()), im: z.im.numer() * (&denom / z.im.denom()) })
        .collect();
    let at = |r: usize, c: usize| &scaled[r * n + c];

    let mut ints = vec![GaussInt::zero(); n + 1];
    ints[n] = GaussInt::from(BigInt::one());
    let mut mk = vec![GaussInt::zero(); n * n];
    for k in 1..=n {
        let mut next = vec![GaussInt::zero(); n * n];
        for r in 0..n {
            for j in 0..n {
                let x = at(r, j);
                if x.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let y = &mk[j * n + c];
                    if !y.is_zero() {
                        next[r * n + c].add_product(x, y);
                    }
                }
            }
            let d = &mut next[r * n + r];
            d.re += &ints[n - k + 1].re;
            d.im += &ints[n - k + 1].im;
        }
        let mut trace = GaussInt::zero();
        for r in 0..n {
            for c in 0..n {
                trace.add_product(at(r, c), &next[c * n + r]);
            }
        }
        let kk = BigInt::from(k);
        debug_assert!((&trace.re % &kk).is_zero() && (&trace.im % &kk).is_zero());
        ints[n - k] = GaussInt { re: -(trace.re / &kk), im: -(trace.im / &kk) };
        mk = next;
    }

    // det(λ − N/D) = D^{−n}·det(Dλ − N), so c_j = c'_j / D^{n−j}.
    let mut power = Rational::one();
    let mut coeffs = vec![GaussianRational::zero(); n + 1];
    for j in (0..=n).rev() {
        let g = &ints[j];
        coeffs[j] = GaussianRational::new(
            Rational::from_integer(g.re.clone()) / &power,
            Rational::from_integer(g.im.clone()) / &power,
        );
        power *= Rational::from_integer(denom.clone());
    }
    coeffs
}

#[derive(Clone, Debug)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `self += x·y`.
    fn add_product(&mut self, x: &GaussInt, y: &GaussInt) {
        self.re += &x.re * &y.re - &x.im * &y.im;
        self.im += &x.re * &y.im + &x.im * &y.re;
    }
}

impl From<BigInt> for GaussInt {
    fn from(re: BigInt) -> Self {
        GaussInt { re, im: BigInt::zero() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{int, ratio};

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn two_by_two_rotation() {
        let i = GaussianRational::i();
        let m = ExactMatrix::from_rows(vec![vec![g(0), i.clone()], vec![-i, g(0)]]);
        assert_eq!(faddeev_leverrier(&m), vec![g(-1), g(0), g(1)]);
        let p = CharacteristicPolynomial::from_lambda_coeffs(faddeev_leverrier(&m));
        assert_eq!(p.xi_coeffs().unwrap(), &[g(-1), g(1)]);
    }

    #[test]
    fn triangular_matrix_has_product_of_factors() {
        // det(λ − M) = (λ − 2)(λ + 1/2)(λ − 3i)
        let mut m = ExactMatrix::zeros(3);
        m[(0, 0)] = g(2);
        m[(1, 1)] = GaussianRational::real(ratio(-1, 2));
        m[(2, 2)] = GaussianRational::imag(int(3));
        m[(0, 2)] = g(7);
        m[(0, 1)] = g(-5);
        let got = faddeev_leverrier(&m);
        let roots = [g(2), GaussianRational::real(ratio(-1, 2)), GaussianRational::imag(int(3))];
        let mut expected = vec![g(1)];
        for r in &roots {
            let mut next = vec![GaussianRational::zero(); expected.len() + 1];
            for (k, c) in expected.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= &(c * r);
            }
            expected = next;
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn odd_terms_are_reported() {
        let cubic = vec![g(0), g(0), g(0), g(1)];
        assert_eq!(reduce_coeffs(&cubic), Err(SpectralError::OddTermPresent { index: 3 }));
        let mixed = vec![g(1), g(2), g(0), g(5), g(1)];
        assert_eq!(reduce_coeffs(&mixed), Err(SpectralError::OddTermPresent { index: 3 }));
        assert_eq!(reduce_coeffs(&[g(-1), g(0), g(1)]).unwrap(), vec![g(-1), g(1)]);
    }
}
