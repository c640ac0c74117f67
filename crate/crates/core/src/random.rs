//! Seeded random ensembles of series, matrices and generators.

use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::CoeffRing;
use crate::kgroup::{CGenerator, Flavor};
use crate::matops::SeriesMatrix;
use crate::tps::{SeriesRing, TwistedSeries};
use crate::word::Word;
use crate::Result;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A series with constant term `constant` and a handful of random terms of
/// positive length.
pub fn series_with_constant<R: CoeffRing>(
    ring: &Arc<SeriesRing<R>>,
    constant: R::Elem,
    rng: &mut dyn RngCore,
) -> TwistedSeries<R> {
    let k = ring.letters().len();
    let n = ring.order();
    let mut terms = vec![(Word::empty(), constant)];
    if k > 0 && n > 0 {
        for _ in 0..rng.gen_range(1..=3) {
            let len = rng.gen_range(1..=n);
            let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..k) as u8).collect();
            terms.push((Word::from_indices(w), ring.coeff().random_elem(rng)));
        }
    }
    TwistedSeries::from_terms(ring, terms)
}

/// `ε(s) = 0`.
pub fn augmentation_zero<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, rng: &mut dyn RngCore) -> TwistedSeries<R> {
    series_with_constant(ring, ring.coeff().zero(), rng)
}

/// `ε(u) = 1`.
pub fn unipotent<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, rng: &mut dyn RngCore) -> TwistedSeries<R> {
    series_with_constant(ring, ring.coeff().one(), rng)
}

pub fn unit<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, rng: &mut dyn RngCore) -> TwistedSeries<R> {
    let c = ring.coeff().random_unit(rng);
    series_with_constant(ring, c, rng)
}

pub fn any_series<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, rng: &mut dyn RngCore) -> TwistedSeries<R> {
    let c = ring.coeff().random_elem(rng);
    series_with_constant(ring, c, rng)
}

/// `rows × cols` with every entry of augmentation zero.
pub fn augmentation_zero_matrix<R: CoeffRing>(
    ring: &Arc<SeriesRing<R>>,
    rows: usize,
    cols: usize,
    rng: &mut dyn RngCore,
) -> SeriesMatrix<R> {
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| sparse_zero_aug(ring, rng)).collect())
        .collect();
    SeriesMatrix::new(ring, entries).expect("entries share the ring")
}

/// `ε(M) = I`.
pub fn unipotent_matrix<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, n: usize, rng: &mut dyn RngCore) -> SeriesMatrix<R> {
    let m = augmentation_zero_matrix(ring, n, n, rng);
    SeriesMatrix::identity(ring, n).try_add(&m).expect("same shape")
}

fn sparse_zero_aug<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, rng: &mut dyn RngCore) -> TwistedSeries<R> {
    if rng.gen_bool(0.3) {
        TwistedSeries::zero(ring)
    } else {
        augmentation_zero(ring, rng)
    }
}

/// Square matrix over the coefficients.
pub fn coeff_matrix<R: CoeffRing>(coeff: &R, n: usize, rng: &mut dyn RngCore) -> Vec<Vec<R::Elem>> {
    (0..n).map(|_| (0..n).map(|_| coeff.random_elem(rng)).collect()).collect()
}

/// A random generator of the requested flavor. Constant terms satisfying
/// the flavor's condition are found by rejection sampling, falling back to
/// a zero constant on the appropriate side.
pub fn c_generator<R: CoeffRing>(
    ring: &Arc<SeriesRing<R>>,
    flavor: Flavor,
    rng: &mut dyn RngCore,
) -> Result<CGenerator<R>> {
    let c = ring.coeff();
    for _ in 0..64 {
        let (a0, b0) = match flavor {
            Flavor::AugAZero => (c.zero(), c.random_elem(rng)),
            Flavor::BUnit => (c.random_elem(rng), c.random_unit(rng)),
            _ => (c.random_elem(rng), c.random_elem(rng)),
        };
        let a = series_with_constant(ring, a0, rng);
        let b = series_with_constant(ring, b0, rng);
        if let Ok(g) = CGenerator::new(a, b, flavor) {
            return Ok(g);
        }
    }
    let a = series_with_constant(ring, c.zero(), rng);
    let b = series_with_constant(ring, c.random_unit(rng), rng);
    CGenerator::new(a, b, flavor)
}
