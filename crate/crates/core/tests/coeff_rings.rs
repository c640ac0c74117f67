mod common;

use common::q;
use locaug::coeff::{
    ring_axiom_check, CoeffRing, FreeAlgebra, GroupAlgebra, GroupTable, MatrixRing, ProductRing, Rationals, ZMod,
};
use locaug::{linalg, random, Error};
use proptest::prelude::*;

fn assert_axioms<R: CoeffRing>(ring: &R, commutative: bool) {
    let report = ring_axiom_check(ring, 100, 7);
    let failed: Vec<_> = report.outcomes.iter().filter(|o| !o.passed).collect();
    assert!(failed.is_empty(), "{}: {failed:?}", ring.name());
    assert_eq!(report.commutative, commutative, "{}", ring.name());
}

#[test]
fn axioms_hold_for_every_instance() {
    assert_axioms(&Rationals, true);
    assert_axioms(&ZMod::new(6).unwrap(), true);
    assert_axioms(&MatrixRing::new(2).unwrap(), false);
    assert_axioms(&GroupAlgebra::new(GroupTable::cyclic(3)), true);
    assert_axioms(&FreeAlgebra::new("yz", 3).unwrap(), false);
    assert_axioms(&ProductRing::new(2).unwrap(), true);
}

#[test]
fn axioms_hold_with_automorphisms() {
    let m = MatrixRing::new(2)
        .unwrap()
        .with_automorphism("c", vec![vec![q(1, 1), q(2, 1)], vec![q(0, 1), q(1, 1)]])
        .unwrap();
    assert_axioms(&m, false);
    let g = GroupAlgebra::new(GroupTable::cyclic(5)).with_automorphism("sq", vec![0, 2, 4, 1, 3]).unwrap();
    assert_axioms(&g, true);
    let s3 = GroupAlgebra::new(GroupTable::symmetric3());
    let inner = s3.group().inner_automorphism(4);
    assert_axioms(&s3.with_automorphism("conj", inner).unwrap(), false);
    let f = FreeAlgebra::new("yz", 3).unwrap().with_automorphism("f", &[(q(2, 1), 'z'), (q(-1, 3), 'y')]).unwrap();
    assert_axioms(&f, false);
    let p = ProductRing::new(3).unwrap().with_automorphism("cyc", vec![1, 2, 0]).unwrap();
    assert_axioms(&p, true);
}

#[test]
fn axiom_report_is_deterministic() {
    let m = MatrixRing::new(2).unwrap();
    assert_eq!(ring_axiom_check(&m, 20, 3), ring_axiom_check(&m, 20, 3));
}

#[test]
fn invert_examples() {
    assert_eq!(Rationals.invert(&q(4, 3)).unwrap(), q(3, 4));
    assert!(matches!(Rationals.invert(&q(0, 1)), Err(Error::NotAUnit(_))));

    let m = MatrixRing::new(2).unwrap();
    let a = m.parse_elem("[1,1;0,1]").unwrap();
    assert_eq!(m.format_elem(&m.invert(&a).unwrap()), "[1,-1;0,1]");
    assert!(matches!(m.invert(&m.parse_elem("[1,2;2,4]").unwrap()), Err(Error::NotAUnit(_))));

    let f = FreeAlgebra::new("yz", 2).unwrap();
    let inv = f.invert(&f.parse_elem("1 + y").unwrap()).unwrap();
    assert_eq!(f.format_elem(&inv), "1 - y + yy");
    assert!(f.is_one(&f.mul(&inv, &f.parse_elem("1 + y").unwrap())));
    assert!(matches!(f.invert(&f.parse_elem("y").unwrap()), Err(Error::NotAUnit(_))));

    let z = ZMod::new(6).unwrap();
    assert_eq!(z.invert(&5).unwrap(), 5);
    assert!(matches!(z.invert(&2), Err(Error::NotAUnit(_))));
}

#[test]
fn matrix_units_match_determinant() {
    let m = MatrixRing::new(3).unwrap();
    let mut g = random::rng(17);
    for _ in 0..50 {
        let a = m.random_elem(&mut g);
        let det = linalg::det(&a);
        assert_eq!(m.is_unit(&a), det != q(0, 1));
    }
}

#[test]
fn group_algebra_units() {
    let c2 = GroupAlgebra::new(GroupTable::cyclic(2));
    // (1 + g)(1 - g) = 0, so neither is a unit
    assert!(!c2.is_unit(&c2.parse_elem("1 + g").unwrap()));
    let u = c2.parse_elem("2 + g").unwrap();
    let inv = c2.invert(&u).unwrap();
    assert_eq!(c2.format_elem(&inv), "2/3 - 1/3*g");
}

#[test]
fn free_augmentation_ideal_is_nilpotent() {
    let d = 3;
    let f = FreeAlgebra::new("yz", d).unwrap();
    let mut g = random::rng(23);
    for _ in 0..20 {
        let mut acc = f.one();
        for _ in 0..=d {
            let mut x = f.random_elem(&mut g);
            x.remove(&locaug::word::Word::empty());
            acc = f.mul(&acc, &x);
        }
        assert!(f.is_zero(&acc));
    }
}

#[test]
fn trace_is_invariant_under_group_automorphisms() {
    let c5 = GroupAlgebra::new(GroupTable::cyclic(5)).with_automorphism("sq", vec![0, 2, 4, 1, 3]).unwrap();
    let s3 = GroupAlgebra::new(GroupTable::symmetric3());
    let inner = s3.group().inner_automorphism(3);
    let s3 = s3.with_automorphism("conj", inner).unwrap();
    let mut g = random::rng(29);
    for _ in 0..30 {
        let sigma = c5.automorphism("sq").unwrap();
        let a = c5.random_elem(&mut g);
        assert_eq!(c5.trace(&a).unwrap(), c5.trace(&c5.aut_apply(&sigma, &a)).unwrap());
        let sigma = s3.automorphism("conj").unwrap();
        let a = s3.random_elem(&mut g);
        assert_eq!(s3.trace(&a).unwrap(), s3.trace(&s3.aut_apply(&sigma, &a)).unwrap());
    }
}

fn double_inverse<R: CoeffRing>(ring: &R, seed: u64) -> bool {
    let mut g = random::rng(seed);
    let a = ring.random_unit(&mut g);
    let inv = ring.invert(&a).unwrap();
    ring.is_one(&ring.mul(&a, &inv)) && ring.is_one(&ring.mul(&inv, &a)) && ring.invert(&inv).unwrap() == a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_of_inverse(seed in any::<u64>()) {
        prop_assert!(double_inverse(&Rationals, seed));
        prop_assert!(double_inverse(&ZMod::new(12).unwrap(), seed));
        prop_assert!(double_inverse(&MatrixRing::new(2).unwrap(), seed));
        prop_assert!(double_inverse(&GroupAlgebra::new(GroupTable::symmetric3()), seed));
        prop_assert!(double_inverse(&FreeAlgebra::new("yz", 3).unwrap(), seed));
        prop_assert!(double_inverse(&ProductRing::new(3).unwrap(), seed));
    }

    #[test]
    fn matrix_trace_is_cyclic(seed in any::<u64>()) {
        let m = MatrixRing::new(3).unwrap();
        let mut g = random::rng(seed);
        let (a, b) = (m.random_elem(&mut g), m.random_elem(&mut g));
        prop_assert_eq!(m.trace(&m.mul(&a, &b)).unwrap(), m.trace(&m.mul(&b, &a)).unwrap());
    }
}
