mod common;

use std::sync::Arc;

use common::*;
use locaug::coeff::{CoeffRing, Rationals};
use locaug::kgroup::cyc_log;
use locaug::matops::{rearrange_inverses_check, whitehead_identity_check, SeriesMatrix};
use locaug::random;
use locaug::tps::{SeriesRing, TwistedSeries};
use proptest::prelude::*;
use rand::Rng;

fn ldu_round_trip<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64) -> bool {
    let mut g = random::rng(seed);
    let n = g.gen_range(2..=3);
    let m = random::unipotent_matrix(ring, n, &mut g);
    let f = m.ldu_decompose().unwrap();
    let back = f.recompose().unwrap();
    f.satisfies_augmentation_conditions() && back == m && back.ldu_decompose().unwrap() == f
}

fn inverse_round_trip<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64) -> bool {
    let mut g = random::rng(seed);
    let n = g.gen_range(1..=3);
    let c = ring.coeff();
    let constant = loop {
        let m = random::coeff_matrix(c, n, &mut g);
        if c.invert_matrix(&m).is_some() {
            break m;
        }
    };
    let m = SeriesMatrix::lift(ring, &constant).unwrap().try_mul(&random::unipotent_matrix(ring, n, &mut g)).unwrap();
    let inv = m.invert().unwrap();
    let id = SeriesMatrix::identity(ring, n);
    m.try_mul(&inv).unwrap() == id && inv.try_mul(&m).unwrap() == id
}

fn block_triangular<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64) -> bool {
    let mut g = random::rng(seed);
    let (p, q) = (g.gen_range(1..=2), g.gen_range(1..=2));
    let a = random::unipotent_matrix(ring, p, &mut g);
    let d = random::unipotent_matrix(ring, q, &mut g);
    let b = random::augmentation_zero_matrix(ring, p, q, &mut g);
    let whole = SeriesMatrix::from_blocks(&a, &b, &SeriesMatrix::zeros(ring, q, p), &d).unwrap();
    whole.dieudonne_det().unwrap() == &a.dieudonne_det().unwrap() * &d.dieudonne_det().unwrap()
}

fn stabilization<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64) -> bool {
    let mut g = random::rng(seed);
    let n = g.gen_range(1..=3);
    let m = random::unipotent_matrix(ring, n, &mut g);
    let k = g.gen_range(0..=2);
    m.det_stabilize(k).unwrap() == m.dieudonne_det().unwrap()
}

fn identities<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64) -> bool {
    let mut g = random::rng(seed);
    let (n, m) = (g.gen_range(1..=3), g.gen_range(1..=2));
    let a = random::augmentation_zero_matrix(ring, n, m, &mut g);
    let b = random::augmentation_zero_matrix(ring, m, n, &mut g);
    rearrange_inverses_check(&a, &b).unwrap() && whitehead_identity_check(&a, &b).unwrap()
}

fn conjugation_invariant_mod_c<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, seed: u64) -> bool {
    let mut g = random::rng(seed);
    let n = g.gen_range(2..=3);
    let c = ring.coeff();
    let c0 = loop {
        let m = random::coeff_matrix(c, n, &mut g);
        if c.invert_matrix(&m).is_some() {
            break m;
        }
    };
    let conj = SeriesMatrix::lift(ring, &c0).unwrap();
    let m = random::unipotent_matrix(ring, n, &mut g);
    let moved = conj.try_mul(&m).unwrap().try_mul(&conj.invert().unwrap()).unwrap();
    cyc_log(&moved.dieudonne_det().unwrap()).unwrap() == cyc_log(&m.dieudonne_det().unwrap()).unwrap()
}

fn to_polys(m: &SeriesMatrix<Rationals>) -> Vec<Vec<Poly>> {
    m.entries().iter().map(|r| r.iter().map(poly_of).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ldu_recomposes_and_is_unique(seed in any::<u64>()) {
        prop_assert!(ldu_round_trip(&rationals(3), seed));
        prop_assert!(ldu_round_trip(&free(3), seed));
        prop_assert!(ldu_round_trip(&m2(3), seed));
        prop_assert!(ldu_round_trip(&swap(3), seed));
        prop_assert!(ldu_round_trip(&c3_twisted(3), seed));
    }

    #[test]
    fn matrix_inverse_is_two_sided(seed in any::<u64>()) {
        prop_assert!(inverse_round_trip(&rationals(3), seed));
        prop_assert!(inverse_round_trip(&free(3), seed));
        prop_assert!(inverse_round_trip(&m2(3), seed));
        prop_assert!(inverse_round_trip(&swap(3), seed));
        prop_assert!(inverse_round_trip(&zmod(3), seed));
    }

    #[test]
    fn dieudonne_matches_leibniz_for_rationals(seed in any::<u64>()) {
        let r = rationals(4);
        let mut g = random::rng(seed);
        let n = g.gen_range(1..=4);
        let m = random::unipotent_matrix(&r, n, &mut g);
        prop_assert_eq!(poly_of(&m.dieudonne_det().unwrap()), leibniz_det(&to_polys(&m)));
    }

    #[test]
    fn commutative_determinant_is_multiplicative_and_conjugation_invariant(seed in any::<u64>()) {
        let r = rationals(4);
        let mut g = random::rng(seed);
        let n = g.gen_range(2..=3);
        let a = random::unipotent_matrix(&r, n, &mut g);
        let b = random::unipotent_matrix(&r, n, &mut g);
        prop_assert_eq!(
            a.try_mul(&b).unwrap().dieudonne_det().unwrap(),
            &a.dieudonne_det().unwrap() * &b.dieudonne_det().unwrap()
        );
        let c0 = loop {
            let m = random::coeff_matrix(&Rationals, n, &mut g);
            if Rationals.invert_matrix(&m).is_some() {
                break m;
            }
        };
        let c = SeriesMatrix::lift(&r, &c0).unwrap();
        let moved = c.try_mul(&a).unwrap().try_mul(&c.invert().unwrap()).unwrap();
        prop_assert_eq!(moved.dieudonne_det().unwrap(), a.dieudonne_det().unwrap());
    }

    #[test]
    fn block_triangular_determinants_split(seed in any::<u64>()) {
        prop_assert!(block_triangular(&free(3), seed));
        prop_assert!(block_triangular(&m2(3), seed));
        prop_assert!(block_triangular(&c3_twisted(3), seed));
    }

    #[test]
    fn stabilization_is_exact(seed in any::<u64>()) {
        prop_assert!(stabilization(&free(3), seed));
        prop_assert!(stabilization(&swap(3), seed));
    }

    #[test]
    fn whitehead_and_rearrangement_identities(seed in any::<u64>()) {
        prop_assert!(identities(&free(3), seed));
        prop_assert!(identities(&m2(3), seed));
        prop_assert!(identities(&swap(3), seed));
    }

    #[test]
    fn noncommutative_conjugation_is_invisible_to_cyc_log(seed in any::<u64>()) {
        prop_assert!(conjugation_invariant_mod_c(&free(3), seed));
        prop_assert!(conjugation_invariant_mod_c(&m2(3), seed));
    }
}

#[test]
fn leibniz_oracle_sanity() {
    let r = rationals(3);
    let m = SeriesMatrix::new(&r, vec![vec![s(&r, "1"), s(&r, "x")], vec![s(&r, "x"), s(&r, "1")]]).unwrap();
    assert_eq!(leibniz_det(&to_polys(&m)), vec![q(1, 1), q(0, 1), q(-1, 1), q(0, 1)]);
    let one = TwistedSeries::one(&r);
    assert_eq!(poly_of(&one), vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
}
