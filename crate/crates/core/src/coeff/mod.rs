//! Exact coefficient rings.
//!
//! A [`CoeffRing`] is a ring *object*: it carries its parameters (modulus,
//! matrix size, group table, truncation degree) and a registry of named
//! automorphisms, while elements are plain values of the associated `Elem`
//! type. Every operation is a pure function of its arguments.

mod axioms;
mod free;
mod group;
mod lincomb;
mod matrix;
mod product;
mod rationals;
mod spec;
mod zmod;

use std::collections::BTreeMap;
use std::fmt;

use rand::RngCore;

use crate::{Error, Result, Q};

pub use axioms::{ring_axiom_check, AxiomOutcome, AxiomReport};
pub use free::FreeAlgebra;
pub use group::{GroupAlgebra, GroupTable};
pub use matrix::{InnerAut, MatrixRing};
pub use product::ProductRing;
pub use rationals::Rationals;
pub use spec::{parse_ring_description, AnyRing, RingDescription};
pub use zmod::ZMod;

/// Rational-valued trace, keyed by a label naming the trace component
/// (empty for scalar traces).
pub type TraceVector = BTreeMap<String, Q>;

pub trait CoeffRing: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;
    type Aut: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// Two-sided inverse, `NotAUnit` otherwise.
    fn invert(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn is_commutative(&self) -> bool;

    fn from_integer(&self, n: i64) -> Self::Elem;

    /// Image of a rational; fails with `NeedsRationalCoefficients` when the
    /// ring does not contain Q.
    fn from_rational(&self, q: &Q) -> Result<Self::Elem>;

    fn contains_rationals(&self) -> bool;

    /// Rational-valued functional with `trace(ab) = trace(ba)`.
    fn trace(&self, _a: &Self::Elem) -> Result<TraceVector> {
        Err(Error::NeedsTrace(self.name()))
    }

    /// Trace on the quotient of A by the span of `x·y - y·λ(x)`, where λ
    /// moves coefficients leftward past a word. With λ the identity this is
    /// the cyclic trace used to read off commutator-invariant data.
    fn twisted_trace(&self, a: &Self::Elem, lambda: &Self::Aut) -> Result<TraceVector> {
        if self.aut_is_identity(lambda) {
            self.trace(a)
        } else {
            Err(Error::UnsupportedTwist(self.name()))
        }
    }

    /// Twisted trace that is also invariant under `σ`, an automorphism
    /// commuting with λ: the quotient by `x·y - y·λ(x)` and `x - σ(x)`.
    fn coinvariant_trace(&self, a: &Self::Elem, lambda: &Self::Aut, sigma: &Self::Aut) -> Result<TraceVector> {
        if self.aut_is_identity(sigma) {
            self.twisted_trace(a, lambda)
        } else {
            Err(Error::UnsupportedTwist(self.name()))
        }
    }

    fn aut_identity(&self) -> Self::Aut;
    fn aut_apply(&self, s: &Self::Aut, a: &Self::Elem) -> Self::Elem;
    /// `f ∘ g`, i.e. apply `g` first.
    fn aut_compose(&self, f: &Self::Aut, g: &Self::Aut) -> Self::Aut;
    fn aut_inverse(&self, f: &Self::Aut) -> Self::Aut;
    fn aut_is_identity(&self, f: &Self::Aut) -> bool;

    /// Looks up a registered automorphism; `"id"` always resolves.
    fn automorphism(&self, name: &str) -> Option<Self::Aut>;
    fn automorphism_names(&self) -> Vec<String>;

    /// Inverse of a square matrix over A, `None` if it is not invertible.
    fn invert_matrix(&self, m: &[Vec<Self::Elem>]) -> Option<Vec<Vec<Self::Elem>>>;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn random_unit(&self, rng: &mut dyn RngCore) -> Self::Elem {
        loop {
            let a = self.random_elem(rng);
            if self.is_unit(&a) {
                return a;
            }
        }
    }

    fn pow(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn scale(&self, q: &Q, a: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(&self.from_rational(q)?, a))
    }
}

/// Small random rational: numerator in [-3, 3], denominator 1 or 2.
pub(crate) fn random_small_rational(rng: &mut dyn RngCore) -> Q {
    use rand::Rng;
    let num: i64 = rng.gen_range(-3..=3);
    let den: i64 = if rng.gen_bool(0.25) { 2 } else { 1 };
    Q::new(num.into(), den.into())
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let t = s.trim();
    t.parse::<Q>()
        .map_err(|_| Error::Parse(format!("not a rational number: {t:?}")))
}

/// Matrix product over an arbitrary coefficient ring.
pub fn matrix_mul<R: CoeffRing>(
    ring: &R,
    a: &[Vec<R::Elem>],
    b: &[Vec<R::Elem>],
) -> Vec<Vec<R::Elem>> {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(ring.zero(), |acc, (x, brow)| ring.add(&acc, &ring.mul(x, &brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn matrix_identity<R: CoeffRing>(ring: &R, n: usize) -> Vec<Vec<R::Elem>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect()
}
