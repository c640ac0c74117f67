mod common;

use std::sync::Arc;

use common::*;
use locaug::coeff::{CoeffRing, MatrixRing, Rationals};
use locaug::kgroup::{
    c_generator, commutator_as_c_generator, cyc_log, endo_class_invariant, exact_sequence_additivity_check,
    vaserstein_transform, Flavor,
};
use locaug::matops::SeriesMatrix;
use locaug::random;
use locaug::tps::{SeriesRing, TwistedSeries};
use proptest::prelude::*;
use rand::Rng;

fn generators_vanish<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64) -> Result<(), String> {
    let mut g = random::rng(seed);
    for flavor in Flavor::ALL {
        let c = random::c_generator(ring, flavor, &mut g).map_err(|e| e.to_string())?;
        let v = cyc_log(&c.in_kernel().unwrap()).unwrap();
        if !v.is_zero() {
            return Err(format!("{flavor}: {:?} {:?} -> {:?}", c.a(), c.b(), v));
        }
    }
    Ok(())
}

fn additive<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64) -> bool {
    let mut g = random::rng(seed);
    let u = random::unipotent(ring, &mut g);
    let v = random::unipotent(ring, &mut g);
    cyc_log(&(&u * &v)).unwrap() == cyc_log(&u).unwrap().try_add(&cyc_log(&v).unwrap()).unwrap()
}

fn d_multiplicative_mod_c<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64) -> bool {
    let mut g = random::rng(seed);
    let n = g.gen_range(2..=3);
    let a = random::unipotent_matrix(ring, n, &mut g);
    let b = random::unipotent_matrix(ring, n, &mut g);
    let lhs = cyc_log(&a.try_mul(&b).unwrap().dieudonne_det().unwrap()).unwrap();
    let rhs = cyc_log(&a.dieudonne_det().unwrap()).unwrap().try_add(&cyc_log(&b.dieudonne_det().unwrap()).unwrap());
    lhs == rhs.unwrap()
}

fn any_matrix<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, rows: usize, cols: usize, g: &mut impl rand::RngCore) -> SeriesMatrix<R> {
    let entries = (0..rows).map(|_| (0..cols).map(|_| random::any_series(ring, g)).collect()).collect();
    SeriesMatrix::new(ring, entries).unwrap()
}

fn d_cyclic<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64) -> bool {
    let mut g = random::rng(seed);
    let (n, m) = (g.gen_range(1..=3), g.gen_range(1..=2));
    let a = random::augmentation_zero_matrix(ring, n, m, &mut g);
    let b = any_matrix(ring, m, n, &mut g);
    let ab = SeriesMatrix::identity(ring, n).try_add(&a.try_mul(&b).unwrap()).unwrap();
    let ba = SeriesMatrix::identity(ring, m).try_add(&b.try_mul(&a).unwrap()).unwrap();
    cyc_log(&ab.dieudonne_det().unwrap()).unwrap() == cyc_log(&ba.dieudonne_det().unwrap()).unwrap()
}

fn commutators_vanish<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64) -> bool {
    let mut g = random::rng(seed);
    let u = random::unipotent(ring, &mut g);
    let v = random::unipotent(ring, &mut g);
    let w = commutator_as_c_generator(&u, &v).unwrap();
    let general = random::unit(ring, &mut g);
    let w2 = commutator_as_c_generator(&general, &v).unwrap();
    w.verified
        && w2.verified
        && cyc_log(&w.commutator).unwrap().is_zero()
        && cyc_log(&w2.commutator).unwrap().is_zero()
}

fn vaserstein<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64) -> bool {
    let mut g = random::rng(seed);
    loop {
        let a = random::any_series(ring, &mut g);
        let b = random::any_series(ring, &mut g);
        // central: a rational polynomial in x, or a polynomial in a
        let c = if g.gen_bool(0.5) {
            let k = g.gen_range(1..=ring.order());
            let c0 = g.gen_range(-2i64..=2);
            let c1 = g.gen_range(-2i64..=2);
            s(ring, &format!("{c0} + {c1}*{}", "x".repeat(k)))
        } else {
            &a * &s(ring, &format!("{}", g.gen_range(-2i64..=2)))
        };
        match vaserstein_transform(&a, &b, &c) {
            Ok((_, ok)) => return ok,
            Err(locaug::Error::NotInvertible(_)) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_flavor_dies_under_cyc_log(seed in any::<u64>()) {
        generators_vanish(&free(4), seed).map_err(TestCaseError::fail)?;
        generators_vanish(&m2(4), seed).map_err(TestCaseError::fail)?;
        generators_vanish(&swap(4), seed).map_err(TestCaseError::fail)?;
        generators_vanish(&c3_twisted(3), seed).map_err(TestCaseError::fail)?;
        generators_vanish(&s3_twisted(3), seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn cyc_log_is_a_homomorphism(seed in any::<u64>()) {
        prop_assert!(additive(&free(4), seed));
        prop_assert!(additive(&m2(4), seed));
        prop_assert!(additive(&rationals_xy(4), seed));
        prop_assert!(additive(&c3_twisted(3), seed));
    }

    #[test]
    fn determinant_is_multiplicative_mod_c(seed in any::<u64>()) {
        prop_assert!(d_multiplicative_mod_c(&free(3), seed));
        prop_assert!(d_multiplicative_mod_c(&m2(3), seed));
        prop_assert!(d_multiplicative_mod_c(&swap(3), seed));
    }

    #[test]
    fn determinant_has_cyclic_symmetry(seed in any::<u64>()) {
        prop_assert!(d_cyclic(&free(3), seed));
        prop_assert!(d_cyclic(&m2(3), seed));
    }

    #[test]
    fn commutators_lie_in_c(seed in any::<u64>()) {
        prop_assert!(commutators_vanish(&free(4), seed));
        prop_assert!(commutators_vanish(&m2(4), seed));
    }

    #[test]
    fn vaserstein_identity(seed in any::<u64>()) {
        prop_assert!(vaserstein(&free(4), seed));
        prop_assert!(vaserstein(&m2(3), seed));
        prop_assert!(vaserstein(&rationals(4), seed));
    }

    #[test]
    fn endomorphism_classes_add_over_extensions(seed in any::<u64>()) {
        let mut g = random::rng(seed);
        let m2 = MatrixRing::new(2).unwrap();
        let (p, q) = (g.gen_range(1..=2), g.gen_range(1..=2));
        let a = random::coeff_matrix(&m2, p, &mut g);
        let b = random::coeff_matrix(&m2, q, &mut g);
        let c: Vec<Vec<_>> = (0..p).map(|_| (0..q).map(|_| m2.random_elem(&mut g)).collect()).collect();
        prop_assert!(exact_sequence_additivity_check(&m2, &a, &b, &c, 4).unwrap());
    }

    #[test]
    fn rational_endomorphism_class_is_the_characteristic_polynomial(seed in any::<u64>()) {
        let mut g = random::rng(seed);
        let n = g.gen_range(1..=4);
        let a = random::coeff_matrix(&Rationals, n, &mut g);
        let r = rationals(4);
        let one_minus: Vec<Vec<Poly>> = a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, x)| {
                        let mut p = vec![q(0, 1); 5];
                        if i == j {
                            p[0] = q(1, 1);
                        }
                        p[1] = -x.clone();
                        p
                    })
                    .collect()
            })
            .collect();
        let d = endo_class_invariant(&Rationals, &a, 4).unwrap();
        prop_assert_eq!(poly_of(&TwistedSeries::from_terms(&r, d.terms().clone())), leibniz_det(&one_minus));
    }
}

#[test]
fn generator_examples_match_hand_expansion() {
    let r = free(4);
    let g = c_generator(&s(&r, "[y]"), &s(&r, "[z]*x")).unwrap();
    // (1 + yz x)(1 + zy x)⁻¹ = Σ_k (yz - zy)(-zy)^{k-1}... computed termwise
    let c = r.coeff();
    let yz = c.parse_elem("yz").unwrap();
    let zy = c.parse_elem("zy").unwrap();
    let mut expected = TwistedSeries::one(&r);
    let mut pow = c.one();
    for k in 1..=4 {
        // coefficient of x^k is (-1)^{k-1} (yz - zy)(zy)^{k-1}
        let mut coeff = c.mul(&c.sub(&yz, &zy), &pow);
        if k % 2 == 0 {
            coeff = c.neg(&coeff);
        }
        expected = &expected + &TwistedSeries::monomial(&r, coeff, x_pow(k));
        pow = c.mul(&pow, &zy);
    }
    assert_eq!(g, expected);
}
