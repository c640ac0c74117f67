mod common;

use std::sync::Arc;

use common::*;
use locaug::coeff::{CoeffRing, GroupAlgebra, GroupTable, ProductRing};
use locaug::kgroup::c_generator;
use locaug::novikov::{twisted_partition_check, w1_invariant, NovikovRing, NovikovSeries};
use locaug::random;
use locaug::tps::SeriesRing;
use proptest::prelude::*;

fn c2_swap_ring(order: usize) -> Arc<NovikovRing<ProductRing>> {
    let a = ProductRing::new(2).unwrap().with_automorphism("swap", vec![1, 0]).unwrap();
    NovikovRing::new(SeriesRing::new(a, "z", order).unwrap().with_twist('z', "swap").unwrap().shared(), 5).unwrap()
}

fn c4_ring(order: usize) -> Arc<NovikovRing<GroupAlgebra>> {
    let a = GroupAlgebra::new(GroupTable::cyclic(4)).with_automorphism("inv", vec![0, 3, 2, 1]).unwrap();
    NovikovRing::new(SeriesRing::new(a, "z", order).unwrap().with_twist('z', "inv").unwrap().shared(), 5).unwrap()
}

fn untwisted(order: usize) -> Arc<NovikovRing<GroupAlgebra>> {
    let a = GroupAlgebra::new(GroupTable::symmetric3());
    NovikovRing::new(SeriesRing::new(a, "z", order).unwrap().shared(), 5).unwrap()
}

fn w1_checks<R: CoeffRing>(ring: &Arc<NovikovRing<R>>, seed: u64) -> bool {
    let mut g = random::rng(seed);
    let z = ring.z_ring();
    let u = NovikovSeries::from_series(ring, &random::unipotent(z, &mut g)).unwrap();
    let v = NovikovSeries::from_series(ring, &random::unipotent(z, &mut g)).unwrap();
    let additive = w1_invariant(&u.try_mul(&v).unwrap()).unwrap()
        == w1_invariant(&u).unwrap().try_add(&w1_invariant(&v).unwrap()).unwrap();
    let a = random::augmentation_zero(z, &mut g);
    let b = random::any_series(z, &mut g);
    let gen = c_generator(&a, &b).unwrap();
    let dies = w1_invariant(&NovikovSeries::from_series(ring, &gen).unwrap()).unwrap().is_empty();
    additive && dies
}

fn inverse_checks<R: CoeffRing>(ring: &Arc<NovikovRing<R>>, seed: u64) -> bool {
    use rand::Rng;
    let mut g = random::rng(seed);
    let z = ring.z_ring();
    let shift = g.gen_range(0..=2);
    let base = random::unit(z, &mut g);
    let u = NovikovSeries::new(ring, &base, shift).unwrap();
    let inv = u.invert().unwrap();
    let one = NovikovSeries::one(ring);
    let left = u.try_mul(&inv).unwrap();
    let right = inv.try_mul(&u).unwrap();
    left.terms() == one.terms() && right.terms() == one.terms()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn w1_is_additive_and_kills_c(seed in any::<u64>()) {
        prop_assert!(w1_checks(&c2_swap_ring(5), seed));
        prop_assert!(w1_checks(&c4_ring(4), seed));
        prop_assert!(w1_checks(&untwisted(4), seed));
    }

    #[test]
    fn novikov_inverse_multiplies_back(seed in any::<u64>()) {
        prop_assert!(inverse_checks(&c2_swap_ring(5), seed));
        prop_assert!(inverse_checks(&c4_ring(4), seed));
    }
}

#[test]
fn twisted_classes_partition_the_group() {
    let s3 = GroupTable::symmetric3();
    let c6 = GroupTable::cyclic(6);
    for group in [s3, c6] {
        let n = group.order();
        let id: Vec<usize> = (0..n).collect();
        let mut auts = vec![id.clone()];
        for g in 0..n {
            auts.push(group.inner_automorphism(g));
        }
        if group.is_abelian() {
            auts.push((0..n).map(|g| group.inverse(g)).collect());
        }
        for phi in &auts {
            for sigma in &auts {
                let commute = (0..n).all(|g| phi[sigma[g]] == sigma[phi[g]]);
                if commute {
                    assert!(twisted_partition_check(&group, phi, sigma));
                }
            }
        }
    }
}

#[test]
fn precision_shrinks_with_shift() {
    let r = c4_ring(4);
    let base = s(r.z_ring(), "1 + [g]*z");
    let u = NovikovSeries::new(&r, &base, 1).unwrap();
    assert_eq!(u.precision(), 3);
    assert_eq!(u.try_mul(&u).unwrap().precision(), 2);
}
