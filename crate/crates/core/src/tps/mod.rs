//! Truncated twisted power series `A_ξ⟨⟨X⟩⟩`.
//!
//! Elements are finite sums `Σ a_w·w` over words `w` in the alphabet `X` with
//! coefficients written on the left. Letters and coefficients satisfy
//! `a·x = x·ξ_x(a)`, equivalently `x·a = ξ_x⁻¹(a)·x`. Words longer than the
//! ring's order are dropped, which is truncation modulo the n-th power of the
//! augmentation ideal.

mod syntax;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::coeff::{CoeffRing, RingDescription};
use crate::word::Word;
use crate::{Error, Result, Q};

pub use syntax::{parse_series, parse_series_value, series_to_json};

/// The ring `A_ξ⟨⟨X⟩⟩ / (words of length > order)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesRing<R: CoeffRing> {
    coeff: R,
    letters: Vec<char>,
    twist_names: Vec<String>,
    twist: Vec<R::Aut>,
    twist_inv: Vec<R::Aut>,
    trivial: Vec<bool>,
    order: usize,
    commuting: bool,
}

impl<R: CoeffRing> SeriesRing<R> {
    /// Untwisted series ring over `coeff` in the given letters.
    pub fn new(coeff: R, letters: &str, order: usize) -> Result<Self> {
        let letters: Vec<char> = letters.chars().collect();
        if letters.len() > u8::MAX as usize {
            return Err(Error::InvalidRing("too many letters".into()));
        }
        for (i, c) in letters.iter().enumerate() {
            if !c.is_alphabetic() || letters[..i].contains(c) {
                return Err(Error::InvalidRing(format!("bad letter {c:?}")));
            }
        }
        let id = coeff.aut_identity();
        let k = letters.len();
        Ok(SeriesRing {
            twist_names: vec!["id".into(); k],
            twist: vec![id.clone(); k],
            twist_inv: vec![id; k],
            trivial: vec![true; k],
            coeff,
            letters,
            order,
            commuting: false,
        })
    }

    /// Sets `ξ_letter` to the named automorphism of the coefficients.
    pub fn with_twist(mut self, letter: char, aut: &str) -> Result<Self> {
        let i = self.letter_index(letter)?;
        let s = self
            .coeff
            .automorphism(aut)
            .ok_or_else(|| Error::InvalidRing(format!("unknown automorphism {aut:?}")))?;
        if self.commuting && !self.coeff.aut_is_identity(&s) {
            return Err(Error::InvalidRing("commuting letters require trivial twists".into()));
        }
        self.twist_inv[i] = self.coeff.aut_inverse(&s);
        self.trivial[i] = self.coeff.aut_is_identity(&s);
        self.twist[i] = s;
        self.twist_names[i] = aut.to_string();
        Ok(self)
    }

    /// Quotients by the ideal making letters commute pairwise. Only allowed
    /// when every twist is trivial.
    pub fn with_commuting_letters(mut self) -> Result<Self> {
        if self.trivial.iter().any(|t| !t) {
            return Err(Error::InvalidRing("commuting letters require trivial twists".into()));
        }
        self.commuting = true;
        Ok(self)
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    /// Same ring truncated at a different order.
    pub fn with_order(&self, order: usize) -> Arc<Self> {
        Arc::new(SeriesRing { order, ..self.clone() })
    }

    pub fn coeff(&self) -> &R {
        &self.coeff
    }
    pub fn letters(&self) -> &[char] {
        &self.letters
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn is_commuting(&self) -> bool {
        self.commuting
    }
    pub fn twist_name(&self, letter: char) -> Option<&str> {
        self.letters.iter().position(|&c| c == letter).map(|i| self.twist_names[i].as_str())
    }
    pub fn is_twisted(&self) -> bool {
        self.trivial.iter().any(|t| !t)
    }

    pub fn letter_index(&self, letter: char) -> Result<usize> {
        self.letters
            .iter()
            .position(|&c| c == letter)
            .ok_or_else(|| Error::Parse(format!("{letter:?} is not a letter of the series ring")))
    }

    /// `ξ_x` for the letter with index `i`.
    pub fn twist_of(&self, i: usize) -> &R::Aut {
        &self.twist[i]
    }

    pub(crate) fn normalize(&self, w: Word) -> Word {
        if self.commuting {
            w.sorted()
        } else {
            w
        }
    }

    /// `λ_v(b)` with `v·b = λ_v(b)·v`: the inverse twists of the letters of
    /// `v`, applied right to left.
    pub fn move_left(&self, v: &Word, b: &R::Elem) -> R::Elem {
        let mut out = b.clone();
        for &i in v.letters().iter().rev() {
            if !self.trivial[i as usize] {
                out = self.coeff.aut_apply(&self.twist_inv[i as usize], &out);
            }
        }
        out
    }

    /// `ξ_v(a)` with `a·v = v·ξ_v(a)`: the twists of the letters of `v`,
    /// applied left to right.
    pub fn move_right(&self, v: &Word, a: &R::Elem) -> R::Elem {
        let mut out = a.clone();
        for &i in v.letters() {
            if !self.trivial[i as usize] {
                out = self.coeff.aut_apply(&self.twist[i as usize], &out);
            }
        }
        out
    }

    /// `λ_v` as an automorphism.
    pub fn left_mover(&self, v: &Word) -> R::Aut {
        let mut acc = self.coeff.aut_identity();
        for &i in v.letters() {
            acc = self.coeff.aut_compose(&acc, &self.twist_inv[i as usize]);
        }
        acc
    }

    /// `ξ_v` as an automorphism.
    pub fn right_mover(&self, v: &Word) -> R::Aut {
        let mut acc = self.coeff.aut_identity();
        for &i in v.letters() {
            acc = self.coeff.aut_compose(&self.twist[i as usize], &acc);
        }
        acc
    }
}


/// Builds the series ring described by a ring document, for a concrete
/// coefficient ring `coeff` extracted from it.
pub fn series_ring_from_description<R: CoeffRing>(
    coeff: R,
    desc: &RingDescription,
    order: usize,
) -> Result<Arc<SeriesRing<R>>> {
    let letters: String = desc.alphabet.iter().collect();
    let mut ring = SeriesRing::new(coeff, &letters, order)?;
    for (c, name) in &desc.twist {
        ring = ring.with_twist(*c, name)?;
    }
    if desc.commuting {
        ring = ring.with_commuting_letters()?;
    }
    Ok(ring.shared())
}

/// An element of a [`SeriesRing`].
#[derive(Clone)]
pub struct TwistedSeries<R: CoeffRing> {
    ring: Arc<SeriesRing<R>>,
    terms: BTreeMap<Word, R::Elem>,
}

impl<R: CoeffRing> PartialEq for TwistedSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<R: CoeffRing> fmt::Debug for TwistedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedSeries({})", self.to_literal())
    }
}

impl<R: CoeffRing> fmt::Display for TwistedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

pub(crate) fn same_ring<R: CoeffRing>(a: &Arc<SeriesRing<R>>, b: &Arc<SeriesRing<R>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn accumulate<R: CoeffRing>(ring: &R, terms: &mut BTreeMap<Word, R::Elem>, w: Word, c: R::Elem) {
    match terms.entry(w) {
        Entry::Vacant(e) => {
            if !ring.is_zero(&c) {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let sum = ring.add(e.get(), &c);
            if ring.is_zero(&sum) {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

impl<R: CoeffRing> TwistedSeries<R> {
    pub fn zero(ring: &Arc<SeriesRing<R>>) -> Self {
        TwistedSeries { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<SeriesRing<R>>) -> Self {
        Self::lift(ring, ring.coeff.one())
    }

    /// The splitting `j`: a coefficient as a constant series.
    pub fn lift(ring: &Arc<SeriesRing<R>>, a: R::Elem) -> Self {
        Self::monomial(ring, a, Word::empty())
    }

    /// `a·w`, or zero when `w` is longer than the order.
    pub fn monomial(ring: &Arc<SeriesRing<R>>, a: R::Elem, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        if w.len() <= ring.order && !ring.coeff.is_zero(&a) {
            terms.insert(ring.normalize(w), a);
        }
        TwistedSeries { ring: ring.clone(), terms }
    }

    /// The series consisting of a single letter.
    pub fn letter(ring: &Arc<SeriesRing<R>>, c: char) -> Result<Self> {
        let i = ring.letter_index(c)?;
        Ok(Self::monomial(ring, ring.coeff.one(), Word::letter(i as u8)))
    }

    /// Sums the given terms, dropping words longer than the order.
    pub fn from_terms(ring: &Arc<SeriesRing<R>>, terms: impl IntoIterator<Item = (Word, R::Elem)>) -> Self {
        let mut out = BTreeMap::new();
        for (w, a) in terms {
            if w.len() <= ring.order {
                accumulate(&ring.coeff, &mut out, ring.normalize(w), a);
            }
        }
        TwistedSeries { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<SeriesRing<R>> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Word, R::Elem> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> R::Elem {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ring.coeff.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.ring.coeff.is_one(&self.augment())
    }

    /// The augmentation `ε`: coefficient of the empty word.
    pub fn augment(&self) -> R::Elem {
        self.coeff(&Word::empty())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (w, a) in &other.terms {
            accumulate(&self.ring.coeff, &mut terms, w.clone(), a.clone());
        }
        Ok(TwistedSeries { ring: self.ring.clone(), terms })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Product `(a·v)(b·w) = (a·λ_v(b))·vw`, truncated.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let ring = &self.ring;
        let r = &ring.coeff;
        let mut terms = BTreeMap::new();
        for (v, a) in &self.terms {
            let room = ring.order - v.len();
            for (w, b) in &other.terms {
                // terms are graded, so every later word is at least as long
                if w.len() > room {
                    break;
                }
                let c = r.mul(a, &ring.move_left(v, b));
                accumulate(r, &mut terms, ring.normalize(v.concat(w)), c);
            }
        }
        Ok(TwistedSeries { ring: ring.clone(), terms })
    }

    /// Left multiplication by a coefficient.
    pub fn scale_left(&self, a: &R::Elem) -> Self {
        let r = &self.ring.coeff;
        let mut terms = BTreeMap::new();
        for (w, b) in &self.terms {
            accumulate(r, &mut terms, w.clone(), r.mul(a, b));
        }
        TwistedSeries { ring: self.ring.clone(), terms }
    }

    pub fn scale_rational(&self, q: &Q) -> Result<Self> {
        Ok(self.scale_left(&self.ring.coeff.from_rational(q)?))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Two-sided inverse `(Σ_{k≤N} (-α₀)^k)·ε(s)⁻¹` with `α₀ = ε(s)⁻¹s − 1`.
    pub fn invert(&self) -> Result<Self> {
        let r = &self.ring.coeff;
        let e = self.augment();
        let e_inv = r.invert(&e).map_err(|_| Error::AugmentationNotUnit)?;
        let mut alpha0 = self.scale_left(&e_inv);
        alpha0.terms.remove(&Word::empty());
        let minus = -&alpha0;
        let one = Self::one(&self.ring);
        let mut geo = one.clone();
        for _ in 0..self.ring.order {
            geo = &one + &(&minus * &geo);
        }
        Ok(&geo * &Self::lift(&self.ring, e_inv))
    }

    /// `log(u) = Σ_{k=1}^{N} (−1)^{k+1} θ^k / k` for `u = 1 + θ`.
    pub fn log(&self) -> Result<Self> {
        let r = &self.ring.coeff;
        if !r.contains_rationals() {
            return Err(Error::NeedsRationalCoefficients);
        }
        if !r.is_one(&self.augment()) {
            return Err(Error::AugmentationNotOne);
        }
        let mut theta = self.clone();
        theta.terms.remove(&Word::empty());
        let mut power = theta.clone();
        let mut out = Self::zero(&self.ring);
        for k in 1..=self.ring.order {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = &out + &power.scale_rational(&Q::new(sign.into(), (k as i64).into()))?;
            power = &power * &theta;
            if power.is_zero() {
                break;
            }
        }
        Ok(out)
    }

    /// `exp(θ) = Σ_{k=0}^{N} θ^k / k!` for `ε(θ) = 0`.
    pub fn exp(&self) -> Result<Self> {
        let r = &self.ring.coeff;
        if !r.contains_rationals() {
            return Err(Error::NeedsRationalCoefficients);
        }
        if !r.is_zero(&self.augment()) {
            return Err(Error::AugmentationNotZero);
        }
        let mut out = Self::one(&self.ring);
        let mut term = Self::one(&self.ring);
        for k in 1..=self.ring.order {
            term = (&term * self).scale_rational(&Q::new(1.into(), (k as i64).into()))?;
            if term.is_zero() {
                break;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Reinterprets in a ring of lower (or equal) order with otherwise
    /// identical structure, dropping longer words.
    pub fn truncate_to(&self, target: &Arc<SeriesRing<R>>) -> Result<Self> {
        let same_shape = SeriesRing { order: target.order, ..(*self.ring).clone() } == **target;
        if !same_shape || target.order > self.ring.order {
            return Err(Error::RingMismatch);
        }
        Ok(TwistedSeries {
            ring: target.clone(),
            terms: self.terms.iter().filter(|(w, _)| w.len() <= target.order).map(|(w, a)| (w.clone(), a.clone())).collect(),
        })
    }

    /// Canonical literal, terms in graded-lex order.
    pub fn to_literal(&self) -> String {
        syntax::format_series(self)
    }

    /// Largest word length carrying a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }
}

impl<R: CoeffRing> Add for &TwistedSeries<R> {
    type Output = TwistedSeries<R>;
    /// Panics on ring mismatch; use [`TwistedSeries::try_add`] to get an error.
    fn add(self, rhs: Self) -> TwistedSeries<R> {
        self.try_add(rhs).expect("series from different rings")
    }
}

impl<R: CoeffRing> Sub for &TwistedSeries<R> {
    type Output = TwistedSeries<R>;
    fn sub(self, rhs: Self) -> TwistedSeries<R> {
        self.try_sub(rhs).expect("series from different rings")
    }
}

impl<R: CoeffRing> Mul for &TwistedSeries<R> {
    type Output = TwistedSeries<R>;
    fn mul(self, rhs: Self) -> TwistedSeries<R> {
        self.try_mul(rhs).expect("series from different rings")
    }
}

impl<R: CoeffRing> Neg for &TwistedSeries<R> {
    type Output = TwistedSeries<R>;
    fn neg(self) -> TwistedSeries<R> {
        let r = &self.ring.coeff;
        TwistedSeries {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(w, a)| (w.clone(), r.neg(a))).collect(),
        }
    }
}
