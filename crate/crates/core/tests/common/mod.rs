#![allow(dead_code)]

use std::sync::Arc;

use locaug::coeff::{CoeffRing, FreeAlgebra, GroupAlgebra, GroupTable, MatrixRing, ProductRing, Rationals, ZMod};
use locaug::tps::{parse_series, SeriesRing, TwistedSeries};
use locaug::word::Word;
use locaug::Q;
use num_traits::{One, Zero};

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn rationals(order: usize) -> Arc<SeriesRing<Rationals>> {
    SeriesRing::new(Rationals, "x", order).unwrap().shared()
}

pub fn rationals_xy(order: usize) -> Arc<SeriesRing<Rationals>> {
    SeriesRing::new(Rationals, "xy", order).unwrap().shared()
}

/// ℚ⟨y,z⟩ truncated at the series order, one untwisted letter `x`.
pub fn free(order: usize) -> Arc<SeriesRing<FreeAlgebra>> {
    SeriesRing::new(FreeAlgebra::new("yz", order).unwrap(), "x", order).unwrap().shared()
}

pub fn m2(order: usize) -> Arc<SeriesRing<MatrixRing>> {
    SeriesRing::new(MatrixRing::new(2).unwrap(), "x", order).unwrap().shared()
}

/// ℚ×ℚ with `ξ_x` the swap.
pub fn swap(order: usize) -> Arc<SeriesRing<ProductRing>> {
    let a = ProductRing::new(2).unwrap().with_automorphism("swap", vec![1, 0]).unwrap();
    SeriesRing::new(a, "x", order).unwrap().with_twist('x', "swap").unwrap().shared()
}

/// ℚ[C₃] with `ξ_x: g ↦ g⁻¹`, second letter `y` untwisted.
pub fn c3_twisted(order: usize) -> Arc<SeriesRing<GroupAlgebra>> {
    let a = GroupAlgebra::new(GroupTable::cyclic(3)).with_automorphism("inv", vec![0, 2, 1]).unwrap();
    SeriesRing::new(a, "xy", order).unwrap().with_twist('x', "inv").unwrap().shared()
}

/// ℚ[S₃] with `ξ_x` conjugation by a transposition.
pub fn s3_twisted(order: usize) -> Arc<SeriesRing<GroupAlgebra>> {
    let a = GroupAlgebra::new(GroupTable::symmetric3());
    let inner = a.group().inner_automorphism(1);
    let a = a.with_automorphism("conj", inner).unwrap();
    SeriesRing::new(a, "x", order).unwrap().with_twist('x', "conj").unwrap().shared()
}

pub fn zmod(order: usize) -> Arc<SeriesRing<ZMod>> {
    SeriesRing::new(ZMod::new(6).unwrap(), "x", order).unwrap().shared()
}

pub fn s<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, text: &str) -> TwistedSeries<R> {
    parse_series(ring, text).unwrap()
}

pub fn x_pow(k: usize) -> Word {
    Word::from_indices(vec![0; k])
}

/// Truncated polynomial in one variable, coefficient `k` at index `k`.
pub type Poly = Vec<Q>;

pub fn poly_of(s: &TwistedSeries<Rationals>) -> Poly {
    let n = s.ring().order();
    (0..=n).map(|k| s.coeff(&x_pow(k))).collect()
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let n = a.len();
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting the largest element at `pos` adds `len - pos` inversions
            let parity = (p.len() - pos) % 2 == 0;
            out.push((q, even == parity));
        }
    }
    out
}

/// Leibniz determinant of a matrix of truncated polynomials.
pub fn leibniz_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let len = m[0][0].len();
    let mut total = vec![Q::zero(); len];
    for (perm, even) in permutations(n) {
        let mut term = vec![Q::zero(); len];
        term[0] = Q::one();
        for (i, &j) in perm.iter().enumerate() {
            term = poly_mul(&term, &m[i][j]);
        }
        for (t, x) in total.iter_mut().zip(term) {
            if even {
                *t += x;
            } else {
                *t -= x;
            }
        }
    }
    total
}
