use std::sync::Arc;

use super::*;
use crate::coeff::{FreeAlgebra, MatrixRing, Rationals};
use crate::random;
use crate::tps::parse_series;

fn q_ring(order: usize) -> Arc<SeriesRing<Rationals>> {
    SeriesRing::new(Rationals, "x", order).unwrap().shared()
}

fn free_ring(order: usize) -> Arc<SeriesRing<FreeAlgebra>> {
    SeriesRing::new(FreeAlgebra::new("yz", order).unwrap(), "x", order).unwrap().shared()
}

fn s<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, text: &str) -> TwistedSeries<R> {
    parse_series(ring, text).unwrap()
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn x_word(n: usize) -> Word {
    Word::from_indices(vec![0; n])
}

#[test]
fn generator_of_zero_is_one() {
    let r = free_ring(3);
    assert!(c_generator(&TwistedSeries::zero(&r), &s(&r, "[z] + x")).unwrap().is_one());
}

#[test]
fn generator_degree_one_terms() {
    let r = free_ring(4);
    let g = c_generator(&s(&r, "[y]"), &s(&r, "[z]*x")).unwrap();
    assert_eq!(g.coeff(&Word::empty()), r.coeff().one());
    assert_eq!(g.coeff(&x_word(1)), r.coeff().parse_elem("yz - zy").unwrap());
    let g = c_generator(&s(&r, "[z]*x"), &s(&r, "[y]")).unwrap();
    assert_eq!(g.coeff(&x_word(1)), r.coeff().parse_elem("zy - yz").unwrap());
}

#[test]
fn generator_needs_unit() {
    let r = q_ring(3);
    assert!(matches!(c_generator(&s(&r, "1"), &s(&r, "-1 + x")), Err(Error::NotInvertible(_))));
    assert!(matches!(
        CGenerator::new(s(&r, "1"), s(&r, "x"), Flavor::AugAZero),
        Err(Error::FlavorViolated(_))
    ));
    assert!(CGenerator::new(s(&r, "1"), s(&r, "x"), Flavor::AugBaZero).is_ok());
}

#[test]
fn in_kernel_has_trivial_augmentation() {
    let r = free_ring(3);
    let g = CGenerator::new(s(&r, "[y] + x"), s(&r, "[z]"), Flavor::OnePlusBaUnit).unwrap();
    assert!(!r.coeff().is_one(&g.value().unwrap().augment()));
    assert!(r.coeff().is_one(&g.in_kernel().unwrap().augment()));
    assert!(cyc_log(&g.in_kernel().unwrap()).unwrap().is_zero());
}

#[test]
fn vaserstein_examples() {
    let r = q_ring(4);
    let (b2, ok) = vaserstein_transform(&s(&r, "x"), &s(&r, "x"), &TwistedSeries::zero(&r)).unwrap();
    assert_eq!(b2, s(&r, "x"));
    assert!(ok);
    let (b2, ok) = vaserstein_transform(&s(&r, "x"), &s(&r, "x"), &s(&r, "1")).unwrap();
    assert_eq!(b2, s(&r, "1 + x + xx"));
    assert!(ok);

    let r = free_ring(4);
    let (_, ok) = vaserstein_transform(&s(&r, "[y]*x"), &s(&r, "[z]"), &s(&r, "2")).unwrap();
    assert!(ok);
    assert_eq!(
        vaserstein_transform(&s(&r, "[y]*x"), &s(&r, "[z]"), &s(&r, "[z]")),
        Err(Error::CommutationFailed)
    );
}

#[test]
fn commutator_examples() {
    let r = free_ring(4);
    let one = TwistedSeries::one(&r);
    let w = commutator_as_c_generator(&one, &one).unwrap();
    assert!(w.a.is_zero());
    assert!(w.b.is_one());
    assert!(w.commutator.is_one());
    assert!(w.verified);

    let w = commutator_as_c_generator(&s(&r, "1 + [y]*x"), &s(&r, "1 + [z]*x")).unwrap();
    assert!(w.verified);

    let a0 = r.coeff().parse_elem("1 + y").unwrap();
    let b = r.coeff().parse_elem("z").unwrap();
    let alpha = TwistedSeries::lift(&r, a0.clone());
    let beta = s(&r, "1 + [z]*x");
    let w = commutator_as_c_generator(&alpha, &beta).unwrap();
    assert!(w.verified);
    let c = r.coeff();
    let expected = c.sub(&c.mul(&c.mul(&a0, &b), &c.invert(&a0).unwrap()), &b);
    assert_eq!(w.commutator.coeff(&x_word(1)), expected);
    assert!(cyc_log(&w.commutator).unwrap().is_zero());
}

#[test]
fn cyc_log_examples() {
    let r = q_ring(3);
    assert!(cyc_log(&TwistedSeries::one(&r)).unwrap().is_empty());
    let v = cyc_log(&s(&r, "1 + x")).unwrap();
    assert_eq!(v.get(&x_word(1), ""), q(1, 1));
    assert_eq!(v.get(&x_word(2), ""), q(-1, 2));
    assert_eq!(v.get(&x_word(3), ""), q(1, 3));
    assert_eq!(v.len(), 3);
    assert_eq!(v.to_json().to_string(), r#"{"x":"1","xx":"-1/2","xxx":"1/3"}"#);

    let r = free_ring(4);
    let g = c_generator(&s(&r, "[y]"), &s(&r, "[z]*x")).unwrap();
    assert!(cyc_log(&g).unwrap().is_zero());
}

#[test]
fn cyc_log_errors() {
    let r = q_ring(3);
    assert_eq!(cyc_log(&s(&r, "2 + x")), Err(Error::AugmentationNotOne));
    let z = SeriesRing::new(crate::coeff::ZMod::new(5).unwrap(), "x", 2).unwrap().shared();
    assert!(matches!(cyc_log(&TwistedSeries::one(&z)), Err(Error::NeedsTrace(_)) | Err(Error::NeedsRationalCoefficients)));
}

#[test]
fn cyclic_words_share_a_bucket() {
    let r = SeriesRing::new(Rationals, "xy", 3).unwrap().shared();
    let u = s(&r, "1 + xy - yx");
    assert!(cyc_log(&u).unwrap().is_zero());
    let v = cyc_log(&s(&r, "1 + 2*yx")).unwrap();
    assert_eq!(v.get(&Word::parse("xy", r.letters()).unwrap(), ""), q(2, 1));
}

#[test]
fn coset_examples() {
    let r = free_ring(3);
    let u = s(&r, "1 + [yz]*x");
    assert_eq!(coset_probably_equal(&u, &u).unwrap(), Verdict::Indistinguishable);
    assert_eq!(coset_probably_equal(&u, &s(&r, "1 + [zy]*x")).unwrap(), Verdict::Indistinguishable);
    assert_eq!(coset_probably_equal(&s(&r, "1 + [y]*x"), &TwistedSeries::one(&r)).unwrap(), Verdict::Distinct);
}

#[test]
fn endo_class_examples() {
    let z = || q(0, 1);
    let one = || q(1, 1);
    assert!(endo_class_invariant(&Rationals, &[vec![z()]], 4).unwrap().is_one());
    let rot = vec![vec![z(), -one()], vec![one(), z()]];
    assert_eq!(endo_class_invariant(&Rationals, &rot, 4).unwrap().to_literal(), "1 + w(\"xx\")");
    let nil = vec![vec![z(), one()], vec![z(), z()]];
    assert!(endo_class_invariant(&Rationals, &nil, 4).unwrap().is_one());
}

#[test]
fn additivity_examples() {
    let one = || vec![vec![q(1, 1)]];
    assert!(exact_sequence_additivity_check(&Rationals, &one(), &one(), &[vec![q(0, 1)]], 4).unwrap());
    assert!(exact_sequence_additivity_check(&Rationals, &one(), &one(), &one(), 4).unwrap());
    let whole = vec![vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(1, 1)]];
    assert_eq!(endo_class_invariant(&Rationals, &whole, 4).unwrap().to_literal(), "1 - 2*w(\"x\") + w(\"xx\")");

    let m2 = MatrixRing::new(2).unwrap();
    let mut g = random::rng(7);
    for _ in 0..5 {
        let a = random::coeff_matrix(&m2, 2, &mut g);
        let b = random::coeff_matrix(&m2, 1, &mut g);
        let c = vec![vec![m2.random_elem(&mut g)], vec![m2.random_elem(&mut g)]];
        assert!(exact_sequence_additivity_check(&m2, &a, &b, &c, 4).unwrap());
    }
    assert!(matches!(
        exact_sequence_additivity_check(&Rationals, &one(), &one(), &[vec![]], 4),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn random_generators_die_under_cyc_log() {
    let r = free_ring(3);
    let m = SeriesRing::new(MatrixRing::new(2).unwrap(), "x", 3).unwrap().shared();
    let mut g = random::rng(11);
    for flavor in Flavor::ALL {
        for _ in 0..10 {
            let c = random::c_generator(&r, flavor, &mut g).unwrap();
            assert!(cyc_log(&c.in_kernel().unwrap()).unwrap().is_zero(), "{flavor}: {c:?}");
            let c = random::c_generator(&m, flavor, &mut g).unwrap();
            assert!(cyc_log(&c.in_kernel().unwrap()).unwrap().is_zero(), "{flavor}: {c:?}");
        }
    }
}

#[test]
fn cyc_log_is_additive() {
    let r = free_ring(3);
    let mut g = random::rng(3);
    for _ in 0..10 {
        let u = random::unipotent(&r, &mut g);
        let v = random::unipotent(&r, &mut g);
        assert_eq!(cyc_log(&(&u * &v)).unwrap(), cyc_log(&u).unwrap().try_add(&cyc_log(&v).unwrap()).unwrap());
    }
}

fn check_twisted_invariance<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64, count: usize) {
    let mut g = random::rng(seed);
    for flavor in Flavor::ALL {
        for _ in 0..count {
            let c = random::c_generator(ring, flavor, &mut g).unwrap();
            let v = cyc_log(&c.in_kernel().unwrap()).unwrap();
            assert!(v.is_zero(), "{flavor}: {c:?} -> {v:?}");
        }
    }
    for _ in 0..count {
        let u = random::unipotent(ring, &mut g);
        let v = random::unipotent(ring, &mut g);
        assert_eq!(cyc_log(&(&u * &v)).unwrap(), cyc_log(&u).unwrap().try_add(&cyc_log(&v).unwrap()).unwrap());
    }
}

#[test]
fn twisted_cyc_log_is_c_invariant() {
    use crate::coeff::{GroupAlgebra, GroupTable, ProductRing};
    let swap = ProductRing::new(2).unwrap().with_automorphism("swap", vec![1, 0]).unwrap();
    let r = SeriesRing::new(swap, "xy", 4).unwrap().with_twist('x', "swap").unwrap().shared();
    check_twisted_invariance(&r, 1, 6);

    let c3 = GroupAlgebra::new(GroupTable::cyclic(3)).with_automorphism("inv", vec![0, 2, 1]).unwrap();
    let r = SeriesRing::new(c3, "xy", 4).unwrap().with_twist('y', "inv").unwrap().shared();
    check_twisted_invariance(&r, 2, 6);

    let s3 = GroupAlgebra::new(GroupTable::symmetric3());
    let inner = s3.group().inner_automorphism(4);
    let s3 = s3.with_automorphism("conj", inner).unwrap();
    let r = SeriesRing::new(s3, "xy", 3).unwrap().with_twist('x', "conj").unwrap().with_twist('y', "conj").unwrap().shared();
    check_twisted_invariance(&r, 3, 4);

    let m2 = MatrixRing::new(2).unwrap().with_automorphism("c", vec![vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(1, 1)]]).unwrap();
    let r = SeriesRing::new(m2, "x", 4).unwrap().with_twist('x', "c").unwrap().shared();
    check_twisted_invariance(&r, 4, 6);

    let free = FreeAlgebra::new("yz", 3).unwrap().with_automorphism("flip", &[(q(1, 1), 'z'), (q(1, 1), 'y')]).unwrap();
    let r = SeriesRing::new(free, "x", 3).unwrap().with_twist('x', "flip").unwrap().shared();
    check_twisted_invariance(&r, 5, 4);
}
