use std::collections::BTreeMap;
use std::sync::Arc;

use adjoint_spectra::algebra::{
    adjoint_matrix, is_formally_symmetric, symmetrized_coefficients, CanonicalPolynomial, Monomial, PhaseSpace,
};
use adjoint_spectra::gaussian::{ratio, GaussianRational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn space(n: usize) -> Arc<PhaseSpace> {
    let coords: Vec<String> = (0..n).map(|a| format!("q{a}")).collect();
    let momenta: Vec<String> = (0..n).map(|a| format!("p{a}")).collect();
    Arc::new(PhaseSpace::new(coords, momenta).unwrap())
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=9, -9i64..=9, 1i64..=9).prop_map(|(a, b, c, d)| GaussianRational::new(ratio(a, b), ratio(c, d)))
}

fn real() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=9).prop_map(|(a, b)| GaussianRational::real(ratio(a, b)))
}

/// Normal ordering by adjacent swaps on operator words: `p_a q_a → q_a p_a − i`,
/// every other out-of-order pair commutes.
fn rewrite_oracle(n: usize, word: &[usize]) -> BTreeMap<Vec<u32>, GaussianRational> {
    let mut pending = vec![(word.to_vec(), GaussianRational::one())];
    let mut done: BTreeMap<Vec<u32>, GaussianRational> = BTreeMap::new();
    while let Some((w, c)) = pending.pop() {
        match (1..w.len()).find(|&i| w[i - 1] > w[i]) {
            None => {
                let mut e = vec![0u32; 2 * n];
                for &o in &w {
                    e[o] += 1;
                }
                let slot = done.entry(e).or_insert_with(GaussianRational::zero);
                *slot += &c;
            }
            Some(i) => {
                let (x, y) = (w[i - 1], w[i]);
                let mut swapped = w.clone();
                swapped.swap(i - 1, i);
                pending.push((swapped, c.clone()));
                if x == y + n {
                    let mut shorter = w[..i - 1].to_vec();
                    shorter.extend_from_slice(&w[i + 1..]);
                    pending.push((shorter, &c * &-GaussianRational::i()));
                }
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}

fn word_product(s: &Arc<PhaseSpace>, word: &[usize]) -> CanonicalPolynomial {
    word.iter().fold(CanonicalPolynomial::scalar(s.clone(), GaussianRational::one()), |acc, &o| {
        acc.multiply(&CanonicalPolynomial::operator(s.clone(), o)).unwrap()
    })
}

fn as_map(p: &CanonicalPolynomial) -> BTreeMap<Vec<u32>, GaussianRational> {
    p.terms().iter().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect()
}

/// A random polynomial of degree ≤ 2 over two modes.
fn small_polynomial() -> impl Strategy<Value = CanonicalPolynomial> {
    prop::collection::vec((prop::collection::vec(0usize..4, 0..=2), gaussian()), 1..5).prop_map(|terms| {
        let s = space(2);
        terms.into_iter().fold(CanonicalPolynomial::zero(s.clone()), |acc, (word, c)| {
            acc.add(&word_product(&s, &word).scale(&c)).unwrap()
        })
    })
}

/// `H = Σ_{j≤k} c_jk O_j O_k`, each product taken in a random order.
fn quadratic(n: usize, coeff: BoxedStrategy<GaussianRational>) -> impl Strategy<Value = CanonicalPolynomial> {
    let pairs: Vec<(usize, usize)> = (0..2 * n).flat_map(|j| (j..2 * n).map(move |k| (j, k))).collect();
    let len = pairs.len();
    prop::collection::vec((coeff, any::<bool>()), len).prop_map(move |cs| {
        let s = space(n);
        let mut h = CanonicalPolynomial::zero(s.clone());
        for (&(j, k), (c, flip)) in pairs.iter().zip(cs) {
            let word = if flip { [k, j] } else { [j, k] };
            h = h.add(&word_product(&s, &word).scale(&c)).unwrap();
        }
        h
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_order_matches_word_rewriting(word in prop::collection::vec(0usize..4, 0..=6)) {
        let s = space(2);
        prop_assert_eq!(as_map(&word_product(&s, &word)), rewrite_oracle(2, &word));
    }

    #[test]
    fn product_is_associative(
        a in prop::collection::vec(0usize..4, 0..=3),
        b in prop::collection::vec(0usize..4, 0..=3),
        c in prop::collection::vec(0usize..4, 0..=3),
    ) {
        let s = space(2);
        let (pa, pb, pc) = (word_product(&s, &a), word_product(&s, &b), word_product(&s, &c));
        let left = pa.multiply(&pb).unwrap().multiply(&pc).unwrap();
        let right = pa.multiply(&pb.multiply(&pc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutator_is_antisymmetric(a in small_polynomial(), b in small_polynomial()) {
        let ab = a.commutator(&b).unwrap();
        let ba = b.commutator(&a).unwrap();
        prop_assert!(ab.add(&ba).unwrap().is_zero());
    }

    #[test]
    fn jacobi_identity(a in small_polynomial(), b in small_polynomial(), c in small_polynomial()) {
        let t1 = a.commutator(&b.commutator(&c).unwrap()).unwrap();
        let t2 = b.commutator(&c.commutator(&a).unwrap()).unwrap();
        let t3 = c.commutator(&a.commutator(&b).unwrap()).unwrap();
        prop_assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
    }

    #[test]
    fn adjoint_is_i_s_j_with_zero_trace(
        h in (1usize..=5).prop_flat_map(|n| quadratic(n, gaussian().boxed()))
    ) {
        prop_assume!(!h.homogeneous_part(2).is_zero());
        let m = adjoint_matrix(&h).unwrap();
        let s = symmetrized_coefficients(&h).unwrap();
        prop_assert_eq!(m.matrix(), &s.symplectic_adjoint());
        prop_assert!(m.trace().is_zero());
    }

    #[test]
    fn reconstruction_recovers_the_quadratic_part(h in (1usize..=3).prop_flat_map(|n| quadratic(n, gaussian().boxed()))) {
        let s = symmetrized_coefficients(&h).unwrap();
        prop_assert_eq!(s.reconstruct().homogeneous_part(2), h.homogeneous_part(2));
    }

    #[test]
    fn real_symmetric_hamiltonians_have_imaginary_adjoints(
        h in (1usize..=4).prop_flat_map(|n| quadratic(n, real().boxed()))
    ) {
        prop_assume!(!h.homogeneous_part(2).is_zero());
        // symmetric ordering removes the −i from p·q, which random word order may have left
        let sym = symmetrized_coefficients(&h).unwrap().reconstruct();
        prop_assert!(is_formally_symmetric(&sym).unwrap());
        let m = adjoint_matrix(&sym).unwrap();
        prop_assert!(m.matrix().iter().all(GaussianRational::is_imaginary));
    }
}

#[test]
fn canonical_form_is_independent_of_construction_order() {
    let s = space(1);
    // p q  and  q p − i
    let pq = word_product(&s, &[1, 0]);
    let qp_minus_i =
        word_product(&s, &[0, 1]).add(&CanonicalPolynomial::scalar(s.clone(), -GaussianRational::i())).unwrap();
    assert_eq!(pq, qp_minus_i);
    let mut e = vec![1, 1];
    assert_eq!(pq.coefficient(&Monomial::from_exponents(e.clone())), GaussianRational::one());
    e = vec![0, 0];
    assert_eq!(pq.coefficient(&Monomial::from_exponents(e)), -GaussianRational::i());
}
