//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints its own PASS/FAIL line; exits nonzero if any fails.

use std::cell::OnceCell;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use adjoint_spectra::algebra::{adjoint_matrix, CanonicalPolynomial, PhaseSpace};
use adjoint_spectra::gaussian::{int, ratio, GaussianRational, Rational};
use adjoint_spectra::matrix::ExactMatrix;
use adjoint_spectra::parser::{bind_and_expand, parse_model, ParameterBinding};
use adjoint_spectra::scan::{scan, Axis, GridSpec, RegionGrid};
use adjoint_spectra::selfforce::{
    adjoint_closed_form, build_hamiltonian, classify_params, SelfForceParams, MODEL_FILE,
};
use adjoint_spectra::spectral::{analyze_adjoint, characteristic_polynomial, polynomial_roots, Tolerances, Verdict};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::Arc;

type Outcome = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn small_rational(rng: &mut StdRng, positive: bool) -> Rational {
    let num: i64 = if positive { rng.gen_range(1..=9) } else { rng.gen_range(-9..=9) };
    let den: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let r = ratio(num, den);
    if positive {
        num_traits::Signed::abs(&r)
    } else {
        r
    }
}

fn random_params(rng: &mut StdRng) -> SelfForceParams {
    SelfForceParams::new(
        small_rational(rng, true),
        small_rational(rng, true),
        small_rational(rng, false),
        small_rational(rng, false),
        small_rational(rng, false),
    )
    .expect("positive m and tau")
}

fn point(m: Rational, tau: Rational, k: Rational, a: Rational, b: Rational) -> SelfForceParams {
    SelfForceParams::new(m, tau, k, a, b).expect("valid point")
}

fn close_multiset(got: &[Complex64], want: &[Complex64], tol: impl Fn(Complex64) -> f64) -> Outcome {
    ensure!(got.len() == want.len(), "expected {} roots, got {}", want.len(), got.len());
    let mut used = vec![false; got.len()];
    for w in want {
        let best = (0..got.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| (got[a] - w).norm().total_cmp(&(got[b] - w).norm()))
            .unwrap();
        ensure!((got[best] - w).norm() <= tol(*w), "no root near {w}; got {got:?}");
        used[best] = true;
    }
    Ok(())
}

fn c1_closed_form_adjoint() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let generic = adjoint_matrix(&build_hamiltonian(&p)).map_err(|e| e.to_string())?;
        let closed = adjoint_closed_form(&p);
        ensure!(generic.matrix() == closed.matrix(), "adjoint mismatch at {p:?}");
    }
    Ok(())
}

/// Product of ascending rational polynomials.
fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn c2_factorization() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let (m, tau, k, a, b) = (p.m(), p.tau(), p.k(), p.a(), p.b());
        let m2t2 = m * m * tau * tau;
        let linear = [m * m - b * b, m2t2.clone()];
        let cubic = [k * k - a * a, int(2) * (a * b - k * m), m * m - b * b, m2t2];
        let product = convolve(&linear, &cubic);
        let lead = product.last().unwrap().clone();
        let mut expected = vec![GaussianRational::zero(); 9];
        for (j, c) in product.iter().enumerate() {
            expected[2 * j] = GaussianRational::real(c / &lead);
        }
        let cp = characteristic_polynomial(&adjoint_matrix(&build_hamiltonian(&p)).map_err(|e| e.to_string())?);
        ensure!(cp.lambda_coeffs() == expected.as_slice(), "characteristic polynomial mismatch at {p:?}");
    }
    Ok(())
}

fn random_gaussian(rng: &mut StdRng) -> GaussianRational {
    let mut part = || ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9));
    GaussianRational::new(part(), part())
}

fn c3_symplectic_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    for trial in 0..200 {
        let n = 1 + trial % 5;
        let coords: Vec<String> = (0..n).map(|a| format!("q{a}")).collect();
        let momenta: Vec<String> = (0..n).map(|a| format!("p{a}")).collect();
        let space = Arc::new(PhaseSpace::new(coords, momenta).map_err(|e| e.to_string())?);
        let dim = 2 * n;
        let op = |i| CanonicalPolynomial::operator(space.clone(), i);

        // H = Σ_{j≤k} c_jk O_j O_k, each product in a random order; then
        // S_jk = S_kj = c_jk off the diagonal and S_jj = 2 c_jj.
        let mut h = CanonicalPolynomial::zero(space.clone());
        let mut s = ExactMatrix::zeros(dim);
        for j in 0..dim {
            for k in j..dim {
                if rng.gen_bool(0.4) {
                    continue;
                }
                let c = random_gaussian(&mut rng);
                let prod = if rng.gen_bool(0.5) { op(j).multiply(&op(k)) } else { op(k).multiply(&op(j)) };
                h = h.add(&prod.map_err(|e| e.to_string())?.scale(&c)).map_err(|e| e.to_string())?;
                if j == k {
                    s[(j, j)] = &c + &c;
                } else {
                    s[(j, k)] = c.clone();
                    s[(k, j)] = c;
                }
            }
        }
        if h.homogeneous_part(2).is_zero() {
            continue;
        }
        let mut jmat = ExactMatrix::zeros(dim);
        for a in 0..n {
            jmat[(a, n + a)] = GaussianRational::one();
            jmat[(n + a, a)] = -GaussianRational::one();
        }
        let expected = s.mul(&jmat).scale(&GaussianRational::i());
        let m = adjoint_matrix(&h).map_err(|e| e.to_string())?;
        ensure!(m.matrix() == &expected, "adjoint differs from i·S·J for n = {n}");
        ensure!(m.trace().is_zero(), "nonzero trace for n = {n}");
    }
    Ok(())
}

fn oscillator_lambdas(omega: Rational) -> Result<Vec<Complex64>, String> {
    let text = "pairs: q/p\nparams: w\nH = p^2/2 + w^2*q^2/2\n";
    let def = parse_model(text).map_err(|e| e.to_string())?;
    let h = bind_and_expand(&def, &ParameterBinding::new().with("w", omega)).map_err(|e| e.to_string())?;
    let m = adjoint_matrix(&h).map_err(|e| e.to_string())?;
    let (_, _, cls) = analyze_adjoint(&m, Tolerances::default()).map_err(|e| e.to_string())?;
    ensure!(cls.verdict == Verdict::Unbroken, "oscillator verdict {:?}", cls.verdict);
    Ok(cls.lambdas)
}

fn c4_oscillators() -> Outcome {
    let unit = oscillator_lambdas(Rational::one())?;
    close_multiset(&unit, &[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)], |_| 1e-12)?;
    for (num, den) in [(1, 2), (2, 1), (7, 3)] {
        let w = num as f64 / den as f64;
        let got = oscillator_lambdas(ratio(num, den))?;
        close_multiset(&got, &[Complex64::new(w, 0.0), Complex64::new(-w, 0.0)], |_| 1e-10)?;
    }
    Ok(())
}

fn c5_broken_bare_model() -> Outcome {
    let r = classify_params(&point(int(1), int(1), int(1), int(0), int(0)), Tolerances::default())
        .map_err(|e| e.to_string())?;
    ensure!(r.verdict() == Verdict::Broken, "verdict {:?}", r.verdict());
    ensure!(r.xi_linear == int(-1), "linear root {}", r.xi_linear);
    ensure!(r.cubic == [int(1), int(1), int(-2), int(1)], "cubic {:?}", r.cubic);
    let cubic_roots = &r.classification.xis[1..];
    let real: Vec<_> = cubic_roots.iter().filter(|z| z.im.abs() < 1e-9).collect();
    ensure!(real.len() == 1 && real[0].re < 0.0, "expected one negative real cubic root: {cubic_roots:?}");
    ensure!(cubic_roots.iter().filter(|z| z.im.abs() > 1e-3).count() == 2, "expected a complex pair");
    Ok(())
}

fn c6_unbroken_point() -> Outcome {
    let r = classify_params(&point(int(1), int(1), int(0), int(3), int(3)), Tolerances::default())
        .map_err(|e| e.to_string())?;
    ensure!(r.verdict() == Verdict::Unbroken, "verdict {:?}", r.verdict());
    ensure!(r.predicate && r.agreement, "predicate {} agreement {}", r.predicate, r.agreement);
    let s13 = 13f64.sqrt();
    let want = [8.0, 3.0, (5.0 + s13) / 2.0, (5.0 - s13) / 2.0].map(|x| Complex64::new(x, 0.0));
    close_multiset(&r.classification.xis, &want, |w| 1e-9 * w.norm())
}

fn c7_predicate_insufficiency() -> Outcome {
    let p = point(int(1), int(1), ratio(1, 2), int(1), int(2));
    let r = classify_params(&p, Tolerances::default()).map_err(|e| e.to_string())?;
    ensure!(r.predicate, "predicate should hold");
    ensure!(r.verdict() == Verdict::Broken, "verdict {:?}", r.verdict());
    ensure!(!r.agreement, "agreement should be false");
    let want = [Complex64::new(0.370039, 0.0), Complex64::new(1.314980, 0.545562), Complex64::new(1.314980, -0.545562)];
    let cubic: Vec<Complex64> =
        r.cubic.iter().rev().map(|c| GaussianRational::real(c.clone()).to_complex64()).collect();
    close_multiset(&polynomial_roots(&cubic).map_err(|e| e.to_string())?, &want, |_| 1e-6)?;
    close_multiset(&r.classification.xis[1..], &want, |_| 1e-6)?;

    // A 3×3 patch with A ∈ {0, 1, 2}, B ∈ {1, 2, 3} has the probe at its centre.
    let spec = GridSpec {
        axis1: Axis::new("A", int(0), int(2), 3),
        axis2: Axis::new("B", int(1), int(3), 3),
        fixed: vec![("m".into(), int(1)), ("tau".into(), int(1)), ("k".into(), ratio(1, 2))],
        tolerances: Tolerances::default(),
    };
    let grid = scan(&spec, 1).map_err(|e| e.to_string())?;
    let centre = grid.cell(1, 1);
    ensure!(centre.axis1 == int(1) && centre.axis2 == int(2), "patch centre misplaced");
    ensure!(centre.predicate && !centre.agreement, "scanner missed the disagreement");
    ensure!(grid.summary().disagreements >= 1, "summary {}", grid.summary());
    Ok(())
}

fn necessity_spec() -> GridSpec {
    GridSpec {
        axis1: Axis::new("A", int(-4), int(4), 41),
        axis2: Axis::new("B", int(-4), int(4), 41),
        fixed: vec![("m".into(), int(1)), ("tau".into(), int(1)), ("k".into(), ratio(1, 2))],
        tolerances: Tolerances::default(),
    }
}

fn c8_predicate_necessity(grid: &RegionGrid) -> Outcome {
    ensure!(grid.cells.len() == 41 * 41, "cell count {}", grid.cells.len());
    if let Some(c) = grid.cells.iter().find(|c| c.verdict == Verdict::Unbroken && !c.predicate) {
        return Err(format!("unbroken without predicate at A = {}, B = {}", c.axis1, c.axis2));
    }
    println!("      {}", grid.summary());
    Ok(())
}

fn c9_model_file_round_trip() -> Outcome {
    let def = parse_model(MODEL_FILE).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..20 {
        let p = random_params(&mut rng);
        let binding: ParameterBinding =
            ["m", "tau", "k", "A", "B"].into_iter().map(|n| (n.to_string(), p.get(n).unwrap().clone())).collect();
        let h = bind_and_expand(&def, &binding).map_err(|e| e.to_string())?;
        let m = adjoint_matrix(&h).map_err(|e| e.to_string())?;
        ensure!(m.matrix() == adjoint_closed_form(&p).matrix(), "model file adjoint mismatch at {p:?}");
    }
    Ok(())
}

fn c10_determinism(first: &RegionGrid) -> Outcome {
    let spec = necessity_spec();
    let (csv, pgm) = (first.to_csv(), first.to_pgm());
    for workers in [1, 4] {
        let again = scan(&spec, workers).map_err(|e| e.to_string())?;
        ensure!(again.to_csv() == csv, "CSV differs with {workers} worker(s)");
        ensure!(again.to_pgm() == pgm, "PGM differs with {workers} worker(s)");
    }
    Ok(())
}

fn main() -> ExitCode {
    // The 41×41 grid is built by criterion 8 and reused by criterion 10.
    let grid = OnceCell::new();
    let with_grid = |f: fn(&RegionGrid) -> Outcome| -> Outcome {
        match grid.get_or_init(|| scan(&necessity_spec(), 1)) {
            Ok(g) => f(g),
            Err(e) => Err(e.to_string()),
        }
    };
    let criteria: Vec<Criterion> = vec![
        ("closed-form adjoint at 100 random points", Box::new(c1_closed_form_adjoint)),
        ("characteristic polynomial factorization", Box::new(c2_factorization)),
        ("adjoint equals i·S·J for 200 random quadratics", Box::new(c3_symplectic_oracle)),
        ("oscillator frequencies", Box::new(c4_oscillators)),
        ("bare model is broken", Box::new(c5_broken_bare_model)),
        ("unbroken point (1, 1, 0, 3, 3)", Box::new(c6_unbroken_point)),
        ("predicate holds but spectrum is complex", Box::new(c7_predicate_insufficiency)),
        ("predicate is necessary on a 41×41 scan", Box::new(|| with_grid(c8_predicate_necessity))),
        ("model file matches the closed form", Box::new(c9_model_file_round_trip)),
        ("scan output is deterministic", Box::new(|| with_grid(c10_determinism))),
    ];

    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  {:>2}  {name} ({secs:.2} s)", n + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL  {:>2}  {name} ({secs:.2} s): {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
