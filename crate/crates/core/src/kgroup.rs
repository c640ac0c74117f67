//! The commutator subgroup `C` of `ε⁻¹(1)`, its generators and identities,
//! and the cyclic-word logarithm used to tell `C`-cosets apart.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{Map, Value};

use crate::coeff::CoeffRing;
use crate::matops::SeriesMatrix;
use crate::tps::{SeriesRing, TwistedSeries};
use crate::word::Word;
use crate::{Error, Result, Q};

/// Which defining set a pair `(a, b)` is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// `ε(a) = 0`
    AugAZero,
    /// `ε(ab) = ε(ba) = 0`
    AugProductsZero,
    /// `ε(ba) = 0`
    AugBaZero,
    /// `1 + ba` a unit
    OnePlusBaUnit,
    /// `b` and `1 + ba` units
    BUnit,
}

impl Flavor {
    pub const ALL: [Flavor; 5] =
        [Flavor::AugAZero, Flavor::AugProductsZero, Flavor::AugBaZero, Flavor::OnePlusBaUnit, Flavor::BUnit];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::AugAZero => "aug-a-zero",
            Flavor::AugProductsZero => "aug-products-zero",
            Flavor::AugBaZero => "aug-ba-zero",
            Flavor::OnePlusBaUnit => "unit",
            Flavor::BUnit => "b-unit",
        }
    }

    pub fn from_name(s: &str) -> Option<Flavor> {
        Flavor::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Whether `(a, b)` satisfies the side condition (the unit condition on
    /// `1 + ba` is checked separately).
    pub fn holds<R: CoeffRing>(self, a: &TwistedSeries<R>, b: &TwistedSeries<R>) -> bool {
        let c = a.ring().coeff();
        let (a0, b0) = (a.augment(), b.augment());
        match self {
            Flavor::AugAZero => c.is_zero(&a0),
            Flavor::AugProductsZero => c.is_zero(&c.mul(&a0, &b0)) && c.is_zero(&c.mul(&b0, &a0)),
            Flavor::AugBaZero => c.is_zero(&c.mul(&b0, &a0)),
            Flavor::OnePlusBaUnit => true,
            Flavor::BUnit => c.is_unit(&b0),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated pair `(a, b)` with `1 + ba` invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct CGenerator<R: CoeffRing> {
    a: TwistedSeries<R>,
    b: TwistedSeries<R>,
    flavor: Flavor,
}

impl<R: CoeffRing> CGenerator<R> {
    pub fn new(a: TwistedSeries<R>, b: TwistedSeries<R>, flavor: Flavor) -> Result<Self> {
        let one = TwistedSeries::one(a.ring());
        let ba = b.try_mul(&a)?;
        if !a.ring().coeff().is_unit(&one.try_add(&ba)?.augment()) {
            return Err(Error::NotInvertible("1 + ba is not a unit".into()));
        }
        if !flavor.holds(&a, &b) {
            return Err(Error::FlavorViolated(flavor.name().into()));
        }
        Ok(CGenerator { a, b, flavor })
    }

    pub fn a(&self) -> &TwistedSeries<R> {
        &self.a
    }

    pub fn b(&self) -> &TwistedSeries<R> {
        &self.b
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// `(1 + ab)(1 + ba)⁻¹`.
    pub fn value(&self) -> Result<TwistedSeries<R>> {
        c_generator(&self.a, &self.b)
    }

    /// The generator times the inverse of its constant counterpart
    /// `(1 + ε(a)ε(b))(1 + ε(b)ε(a))⁻¹`; this always lies in `ε⁻¹(1)` and
    /// agrees with [`value`](Self::value) whenever `ε(ab) = ε(ba)`.
    pub fn in_kernel(&self) -> Result<TwistedSeries<R>> {
        let ring = self.a.ring();
        let a0 = TwistedSeries::lift(ring, self.a.augment());
        let b0 = TwistedSeries::lift(ring, self.b.augment());
        let constant = c_generator(&a0, &b0)?;
        Ok(&self.value()? * &constant.invert()?)
    }
}

/// `(1 + ab)(1 + ba)⁻¹`.
pub fn c_generator<R: CoeffRing>(a: &TwistedSeries<R>, b: &TwistedSeries<R>) -> Result<TwistedSeries<R>> {
    let one = TwistedSeries::one(a.ring());
    let left = one.try_add(&a.try_mul(b)?)?;
    let right = one
        .try_add(&b.try_mul(a)?)?
        .invert()
        .map_err(|_| Error::NotInvertible("1 + ba is not a unit".into()))?;
    Ok(&left * &right)
}

/// Replaces `b` by `b' = b + c + bac` for `c` commuting with `a`. Returns `b'`
/// and whether both pairs give the same generator.
pub fn vaserstein_transform<R: CoeffRing>(
    a: &TwistedSeries<R>,
    b: &TwistedSeries<R>,
    c: &TwistedSeries<R>,
) -> Result<(TwistedSeries<R>, bool)> {
    if a.try_mul(c)? != c * a {
        return Err(Error::CommutationFailed);
    }
    let coeff = a.ring().coeff();
    let one = TwistedSeries::one(a.ring());
    if !coeff.is_unit(&(&one + &(a * c)).augment()) {
        return Err(Error::NotInvertible("1 + ac is not a unit".into()));
    }
    let b2 = &(b + c) + &(&(b * a) * c);
    let check = c_generator(a, b)? == c_generator(a, &b2)?;
    Ok((b2, check))
}

/// A commutator `αβα⁻¹β⁻¹` written as a generator.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorWitness<R: CoeffRing> {
    pub a: TwistedSeries<R>,
    pub b: TwistedSeries<R>,
    pub commutator: TwistedSeries<R>,
    pub verified: bool,
}

/// `a = αβ − α`, `b = α⁻¹`, so that `(1 + ab)(1 + ba)⁻¹ = αβα⁻¹β⁻¹`.
pub fn commutator_as_c_generator<R: CoeffRing>(
    alpha: &TwistedSeries<R>,
    beta: &TwistedSeries<R>,
) -> Result<CommutatorWitness<R>> {
    let not_unit = |_| Error::NotInvertible("argument is not a unit".into());
    let alpha_inv = alpha.invert().map_err(not_unit)?;
    let beta_inv = beta.invert().map_err(not_unit)?;
    let a = alpha.try_mul(beta)?.try_sub(alpha)?;
    let commutator = &(&(alpha * beta) * &alpha_inv) * &beta_inv;
    let verified = c_generator(&a, &alpha_inv)? == commutator;
    Ok(CommutatorWitness { a, b: alpha_inv, commutator, verified })
}

/// Traced, cyclically symmetrized logarithm: one rational per
/// (coefficient trace class, cyclic class of words).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycLogVector {
    entries: BTreeMap<(Word, String), Q>,
    alphabet: Vec<char>,
    order: usize,
}

impl CycLogVector {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry for a cyclic word (any rotation) and trace label.
    pub fn get(&self, word: &Word, label: &str) -> Q {
        let key = (word.least_rotation().0, label.to_string());
        self.entries.get(&key).cloned().unwrap_or_else(Q::zero)
    }

    /// Iterates `(least rotation, trace label, value)` in graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &str, &Q)> {
        self.entries.iter().map(|((w, l), q)| (w, l.as_str(), q))
    }

    fn add(&mut self, word: Word, label: String, q: Q) {
        let slot = self.entries.entry((word, label)).or_insert_with(Q::zero);
        *slot += q;
    }

    fn prune(mut self) -> Self {
        self.entries.retain(|_, q| !q.is_zero());
        self
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.alphabet != other.alphabet || self.order != other.order {
            return Err(Error::RingMismatch);
        }
        let mut out = self.clone();
        for ((w, l), q) in &other.entries {
            out.add(w.clone(), l.clone(), q.clone());
        }
        Ok(out.prune())
    }

    pub fn key(&self, word: &Word, label: &str) -> String {
        let w = word.render(&self.alphabet);
        if label.is_empty() {
            w
        } else {
            format!("{label}|{w}")
        }
    }

    /// `{key: "p/q"}` in graded-lex order of the cyclic words.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for ((w, l), q) in &self.entries {
            map.insert(self.key(w, l), Value::String(q.to_string()));
        }
        Value::Object(map)
    }
}

/// `log(u)` pushed through the coefficient trace and the cyclic projection of
/// words. A term `a·w` with `w = p·s` and least rotation `r = s·p`
/// contributes the trace of `ξ_p(a)` on the quotient of `A` by
/// `x·y - y·λ_r(x)` and `x - ξ_t(x)`, where `r = t^m` with `t` primitive.
pub fn cyc_log<R: CoeffRing>(u: &TwistedSeries<R>) -> Result<CycLogVector> {
    let ring = u.ring();
    let coeff = ring.coeff();
    if !coeff.is_one(&u.augment()) {
        return Err(Error::AugmentationNotOne);
    }
    coeff.trace(&coeff.one())?;
    let log = u.log()?;
    let mut out = CycLogVector { entries: BTreeMap::new(), alphabet: ring.letters().to_vec(), order: ring.order() };
    for (w, a) in log.terms() {
        if w.is_empty() {
            continue;
        }
        let (r, k) = w.least_rotation();
        let prefix = Word::from_indices(w.letters()[..k].to_vec());
        let adjusted = ring.move_right(&prefix, a);
        let lambda = ring.left_mover(&r);
        let sigma = ring.right_mover(&primitive_root(&r));
        for (label, q) in coeff.coinvariant_trace(&adjusted, &lambda, &sigma)? {
            out.add(r.clone(), label, q);
        }
    }
    Ok(out.prune())
}

/// Shortest `t` with `w = t^m`.
fn primitive_root(w: &Word) -> Word {
    let n = w.len();
    for d in 1..n {
        if n.is_multiple_of(d) && w.rotate(d) == *w {
            return Word::from_indices(w.letters()[..d].to_vec());
        }
    }
    w.clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Certified to lie in different `C`-cosets.
    Distinct,
    /// No difference detected; not a proof of equality.
    Indistinguishable,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Distinct => "distinct",
            Verdict::Indistinguishable => "indistinguishable",
        }
    }
}

pub fn coset_probably_equal<R: CoeffRing>(u: &TwistedSeries<R>, v: &TwistedSeries<R>) -> Result<Verdict> {
    if !same_shape(u.ring(), v.ring()) {
        return Err(Error::RingMismatch);
    }
    Ok(if cyc_log(u)? == cyc_log(v)? { Verdict::Indistinguishable } else { Verdict::Distinct })
}

fn same_shape<R: CoeffRing>(a: &Arc<SeriesRing<R>>, b: &Arc<SeriesRing<R>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `D(1 − αx)` in the untwisted one-letter ring over the coefficients of `α`.
pub fn endo_class_invariant<R: CoeffRing>(coeff: &R, alpha: &[Vec<R::Elem>], order: usize) -> Result<TwistedSeries<R>> {
    let ring = SeriesRing::new(coeff.clone(), "x", order)?.shared();
    if alpha.is_empty() {
        return Ok(TwistedSeries::one(&ring));
    }
    one_minus_alpha_x(&ring, alpha)?.dieudonne_det()
}

fn one_minus_alpha_x<R: CoeffRing>(ring: &Arc<SeriesRing<R>>, alpha: &[Vec<R::Elem>]) -> Result<SeriesMatrix<R>> {
    let n = alpha.len();
    if alpha.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("endomorphism matrix must be square".into()));
    }
    let x = Word::letter(0);
    let entries = alpha
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, a)| {
                    let t = TwistedSeries::monomial(ring, ring.coeff().neg(a), x.clone());
                    if i == j {
                        &TwistedSeries::one(ring) + &t
                    } else {
                        t
                    }
                })
                .collect()
        })
        .collect();
    SeriesMatrix::new(ring, entries)
}

/// Whether `D(1 − α'x) = D(1 − αx)·D(1 − α''x)` for
/// `α' = [[α, coupling], [0, α'']]`.
pub fn exact_sequence_additivity_check<R: CoeffRing>(
    coeff: &R,
    alpha: &[Vec<R::Elem>],
    alpha2: &[Vec<R::Elem>],
    coupling: &[Vec<R::Elem>],
    order: usize,
) -> Result<bool> {
    let (n, m) = (alpha.len(), alpha2.len());
    if coupling.len() != n || coupling.iter().any(|r| r.len() != m) {
        return Err(Error::DimensionMismatch(format!("coupling must be {n}×{m}")));
    }
    let mut whole = Vec::with_capacity(n + m);
    for (row, extra) in alpha.iter().zip(coupling) {
        whole.push(row.iter().chain(extra).cloned().collect::<Vec<_>>());
    }
    for row in alpha2 {
        whole.push(std::iter::repeat_n(coeff.zero(), n).chain(row.iter().cloned()).collect());
    }
    let lhs = endo_class_invariant(coeff, &whole, order)?;
    let rhs = &endo_class_invariant(coeff, alpha, order)? * &endo_class_invariant(coeff, alpha2, order)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests;
