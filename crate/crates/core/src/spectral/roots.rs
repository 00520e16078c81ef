//! Complex polynomial roots.
//!
//! The polynomial is made monic and its variable rescaled by the Cauchy
//! bound `R`, the positive root of `xⁿ − Σ|a_k/a_n| xᵏ`. Every root then has
//! modulus at most one and the lower scaled coefficients sum to one in modulus. Degrees 1 and 2 use closed forms, 3 and 4 Cardano and Ferrari
//! (falling back to the companion matrix when the residual is poor), and
//! higher degrees go straight to companion-matrix eigenvalues. Each root gets
//! one Newton step before being scaled back.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::SpectralError;

/// Residual bound relative to the largest scaled coefficient.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

/// Monic, Cauchy-scaled form of a polynomial.
#[derive(Clone, Debug)]
pub struct ScaledPolynomial {
    /// Ascending coefficients in `y = x / scale`; the last one is 1.
    pub coeffs: Vec<Complex64>,
    pub scale: f64,
}

impl ScaledPolynomial {
    pub fn new(coeffs: &[Complex64]) -> Result<Self, SpectralError> {
        let degree = coeffs.len().checked_sub(1).filter(|&d| d >= 1).ok_or(SpectralError::DegreeTooLow)?;
        let lead = coeffs[degree];
        if lead == Complex64::new(0.0, 0.0) {
            return Err(SpectralError::ZeroLeadingCoefficient);
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(SpectralError::NonFiniteCoefficient);
        }
        let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
        let scale = cauchy_radius(&monic);
        let scaled = monic.iter().enumerate().map(|(k, c)| c / scale.powi((degree - k) as i32)).collect();
        Ok(ScaledPolynomial { coeffs: scaled, scale })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `|p(x)|` in the scaled variable, for a root `x` of the original polynomial.
    pub fn residual(&self, x: Complex64) -> f64 {
        eval(&self.coeffs, x / self.scale).norm()
    }

    /// Whether `x` meets the residual contract.
    pub fn accepts(&self, x: Complex64) -> bool {
        self.residual(x) <= RESIDUAL_TOLERANCE * self.max_coeff()
    }
}

/// Unique positive root of `xⁿ − Σ_{k<n} |c_k| xᵏ`, an upper bound on every
/// root modulus. Tighter than `1 + max |c_k|`, which leaves the scaled
/// coefficients spread over many orders of magnitude.
fn cauchy_radius(monic: &[Complex64]) -> f64 {
    let n = monic.len() - 1;
    let abs: Vec<f64> = monic[..n].iter().map(|c| c.norm()).collect();
    if abs.iter().all(|&a| a == 0.0) {
        return 1.0;
    }
    // g(x) = 1 − Σ |c_k| x^(k−n) increases monotonically on (0, ∞)
    let g = |x: f64| 1.0 - abs.iter().enumerate().map(|(k, a)| a * x.powi(k as i32 - n as i32)).sum::<f64>();
    let (mut lo, mut hi) = (0.0, 1.0 + abs.iter().cloned().fold(0.0, f64::max));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

fn eval(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}

fn eval_with_derivative(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    coeffs.iter().rev().fold((zero, zero), |(p, dp), c| (p * x + c, dp * x + p))
}

/// All roots of `Σ coeffs[k]·x^k`, with multiplicity.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, SpectralError> {
    let poly = ScaledPolynomial::new(coeffs)?;
    let b = &poly.coeffs;
    let tol = RESIDUAL_TOLERANCE * poly.max_coeff();
    let good = |roots: &[Complex64]| roots.iter().all(|&y| eval(b, y).norm() <= tol);
    let mut roots = match poly.degree() {
        1 => vec![-b[0]],
        2 => quadratic(b[1], b[0]).to_vec(),
        3 => {
            let r = cubic(b[2], b[1], b[0]).to_vec();
            if good(&r) {
                r
            } else {
                companion_roots(b)?
            }
        }
        4 => {
            let r = quartic(b[3], b[2], b[1], b[0]).to_vec();
            if good(&r) {
                r
            } else {
                companion_roots(b)?
            }
        }
        _ => companion_roots(b)?,
    };
    for y in &mut roots {
        *y = newton_step(b, *y);
    }
    Ok(roots.into_iter().map(|y| y * poly.scale).collect())
}

/// One Newton step, kept only if it lowers the residual.
fn newton_step(coeffs: &[Complex64], y: Complex64) -> Complex64 {
    let (p, dp) = eval_with_derivative(coeffs, y);
    if dp.norm() == 0.0 {
        return y;
    }
    let next = y - p / dp;
    if next.re.is_finite() && next.im.is_finite() && eval(coeffs, next).norm() < p.norm() {
        next
    } else {
        y
    }
}

/// Roots of `y² + b y + c`.
fn quadratic(b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = (b * b - 4.0 * c).sqrt();
    // pick the sign that avoids cancellation
    let s = if (b + disc).norm() >= (b - disc).norm() { b + disc } else { b - disc };
    let q = -0.5 * s;
    if q.norm() == 0.0 {
        return [q, q];
    }
    [q, c / q]
}

/// Roots of `y³ + a y² + b y + c` by Cardano.
fn cubic(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 3] {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let u3 = {
        let plus = -q / 2.0 + disc;
        let minus = -q / 2.0 - disc;
        if plus.norm() >= minus.norm() {
            plus
        } else {
            minus
        }
    };
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    if u3.norm() == 0.0 {
        return [-shift; 3];
    }
    let u = u3.powf(1.0 / 3.0);
    let v = -p / (3.0 * u);
    let mut out = [Complex64::new(0.0, 0.0); 3];
    let mut w = Complex64::new(1.0, 0.0);
    for root in &mut out {
        *root = u * w + v / w - shift;
        w *= omega;
    }
    out
}

/// Roots of `y⁴ + a y³ + b y² + c y + d` by Ferrari.
fn quartic(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> [Complex64; 4] {
    let shift = a / 4.0;
    let a2 = a * a;
    let p = b - 3.0 * a2 / 8.0;
    let q = c - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    // (t² + s t + α)(t² − s t + β) with u = s² solving the resolvent cubic
    let resolvent = cubic(2.0 * p, p * p - 4.0 * r, -q * q);
    let u =
        resolvent.into_iter().fold(Complex64::new(0.0, 0.0), |best, z| if z.norm() > best.norm() { z } else { best });
    let scale = 1.0 + p.norm() + q.norm().sqrt() + r.norm().sqrt().sqrt();
    let roots = if u.norm() <= 1e-14 * scale * scale {
        // biquadratic: t⁴ + p t² + r
        let [z1, z2] = quadratic(p, r);
        let (s1, s2) = (z1.sqrt(), z2.sqrt());
        [s1, -s1, s2, -s2]
    } else {
        let s = u.sqrt();
        let d1 = (-u - 2.0 * p + 2.0 * q / s).sqrt();
        let d2 = (-u - 2.0 * p - 2.0 * q / s).sqrt();
        [(-s + d1) / 2.0, (-s - d1) / 2.0, (s + d2) / 2.0, (s - d2) / 2.0]
    };
    roots.map(|t| t - shift)
}

/// Eigenvalues of the companion matrix of a monic polynomial.
fn companion_roots(monic: &[Complex64]) -> Result<Vec<Complex64>, SpectralError> {
    let n = monic.len() - 1;
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -monic[i];
    }
    let schur = nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 10_000).ok_or(SpectralError::RootFindingFailed)?;
    let eig = schur.eigenvalues().ok_or(SpectralError::RootFindingFailed)?;
    Ok(eig.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Greedy nearest matching; the expected sets here are well separated.
    fn assert_close(got: Vec<Complex64>, want: Vec<Complex64>, tol: f64) {
        assert_eq!(got.len(), want.len());
        let mut left = got.clone();
        for w in &want {
            let (idx, d) = left
                .iter()
                .enumerate()
                .map(|(i, g)| (i, (g - w).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            assert!(d <= tol, "got {got:?}, want {want:?}");
            left.remove(idx);
        }
    }

    #[test]
    fn rejects_degenerate_input() {
        assert_eq!(polynomial_roots(&[c(1.0), c(0.0)]), Err(SpectralError::ZeroLeadingCoefficient));
        assert_eq!(polynomial_roots(&[c(1.0)]), Err(SpectralError::DegreeTooLow));
        assert_eq!(polynomial_roots(&[]), Err(SpectralError::DegreeTooLow));
    }

    #[test]
    fn cubic_with_integer_roots() {
        let roots = polynomial_roots(&[c(-6.0), c(11.0), c(-6.0), c(1.0)]).unwrap();
        assert_close(roots, vec![c(1.0), c(2.0), c(3.0)], 1e-12);
    }

    #[test]
    fn cubic_with_complex_pair() {
        // (ξ − 1)³ = −1/4
        let roots = polynomial_roots(&[c(-0.75), c(3.0), c(-3.0), c(1.0)]).unwrap();
        let r = 0.25f64.cbrt();
        let h = r * 3f64.sqrt() / 2.0;
        let want = vec![c(1.0 - r), Complex64::new(1.0 + r / 2.0, h), Complex64::new(1.0 + r / 2.0, -h)];
        assert_close(roots.clone(), want, 1e-12);
        assert_close(
            roots,
            vec![c(0.370039), Complex64::new(1.314980, 0.545562), Complex64::new(1.314980, -0.545562)],
            1e-6,
        );
    }

    #[test]
    fn cubic_deflating_to_quadratic() {
        // (ξ − 3)(ξ² − 5ξ + 3)
        let roots = polynomial_roots(&[c(-9.0), c(18.0), c(-8.0), c(1.0)]).unwrap();
        let s = 13f64.sqrt();
        assert_close(roots, vec![c(3.0), c((5.0 + s) / 2.0), c((5.0 - s) / 2.0)], 1e-12);
    }

    #[test]
    fn quartic_and_quintic() {
        // (x² + 1)(x − 2)(x + 3)
        let roots = polynomial_roots(&[c(-6.0), c(1.0), c(-5.0), c(1.0), c(1.0)]).unwrap();
        let i = Complex64::new(0.0, 1.0);
        assert_close(roots, vec![i, -i, c(2.0), c(-3.0)], 1e-10);
        // biquadratic x⁴ − 5x² + 4
        let roots = polynomial_roots(&[c(4.0), c(0.0), c(-5.0), c(0.0), c(1.0)]).unwrap();
        assert_close(roots, vec![c(-2.0), c(-1.0), c(1.0), c(2.0)], 1e-10);
        // (x − 1)(x − 2)(x − 3)(x − 4)(x − 5)
        let roots = polynomial_roots(&[c(-120.0), c(274.0), c(-225.0), c(85.0), c(-15.0), c(1.0)]).unwrap();
        assert_close(roots, (1..=5).map(|k| c(k as f64)).collect(), 1e-8);
    }

    #[test]
    fn complex_coefficients() {
        // (x − i)(x − 2 + i) = x² − 2x + 1 + 2i
        let roots = polynomial_roots(&[Complex64::new(1.0, 2.0), c(-2.0), c(1.0)]).unwrap();
        assert_close(roots, vec![Complex64::new(0.0, 1.0), Complex64::new(2.0, -1.0)], 1e-12);
    }

    #[test]
    fn residual_contract_on_wide_magnitudes() {
        let coeffs = [c(1e-6), c(-3e4), c(2.5), c(7e3), c(1.0)];
        let poly = ScaledPolynomial::new(&coeffs).unwrap();
        for r in polynomial_roots(&coeffs).unwrap() {
            assert!(poly.accepts(r), "residual {} too large", poly.residual(r));
        }
    }

    #[test]
    fn triple_root_stays_close() {
        let roots = polynomial_roots(&[c(-1.0), c(3.0), c(-3.0), c(1.0)]).unwrap();
        for r in roots {
            assert!((r - c(1.0)).norm() < 1e-4);
        }
    }
}
