//! Truncated twisted Novikov series `A_ξ((z))`, the `W₁` invariant and
//! closed-orbit style class counts.
//!
//! An element is a finite sum `Σ a_k z^k` (coefficients on the left) known
//! exactly for every degree up to its `precision`. The commutation rule is
//! `a·z = z·ξ(a)`, so `(a z^k)(b z^l) = a·ξ^{-k}(b)·z^{k+l}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{Map, Value};

use crate::coeff::{CoeffRing, GroupAlgebra, GroupTable};
use crate::kgroup::{cyc_log, CycLogVector};
use crate::tps::{SeriesRing, TwistedSeries};
use crate::word::Word;
use crate::{Error, Result, Q};

const EXACT: i64 = i64::MAX / 4;

#[derive(Clone, Debug, PartialEq)]
pub struct NovikovRing<R: CoeffRing> {
    z_ring: Arc<SeriesRing<R>>,
    max_shift: usize,
}

impl<R: CoeffRing> NovikovRing<R> {
    /// `z_ring` must have exactly one letter; its twist is `ξ` and its order
    /// is the default precision.
    pub fn new(z_ring: Arc<SeriesRing<R>>, max_shift: usize) -> Result<Arc<Self>> {
        if z_ring.letters().len() != 1 {
            return Err(Error::InvalidRing("a Novikov ring needs exactly one letter".into()));
        }
        Ok(Arc::new(NovikovRing { z_ring, max_shift }))
    }

    pub fn z_ring(&self) -> &Arc<SeriesRing<R>> {
        &self.z_ring
    }

    pub fn coeff(&self) -> &R {
        self.z_ring.coeff()
    }

    pub fn order(&self) -> usize {
        self.z_ring.order()
    }

    pub fn max_shift(&self) -> usize {
        self.max_shift
    }

    fn letter(&self) -> char {
        self.z_ring.letters()[0]
    }

    /// `ξ^m` for any integer `m`.
    pub fn twist_pow(&self, m: i64) -> R::Aut {
        let c = self.coeff();
        let step = if m >= 0 {
            self.z_ring.twist_of(0).clone()
        } else {
            c.aut_inverse(self.z_ring.twist_of(0))
        };
        let mut acc = c.aut_identity();
        for _ in 0..m.unsigned_abs() {
            acc = c.aut_compose(&step, &acc);
        }
        acc
    }
}

#[derive(Clone)]
pub struct NovikovSeries<R: CoeffRing> {
    ring: Arc<NovikovRing<R>>,
    terms: BTreeMap<i64, R::Elem>,
    precision: i64,
}

impl<R: CoeffRing> PartialEq for NovikovSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms && self.precision == other.precision
    }
}

impl<R: CoeffRing> fmt::Debug for NovikovSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.to_literal(), self.ring.letter(), self.precision + 1)
    }
}

impl<R: CoeffRing> NovikovSeries<R> {
    /// `base·z^{-shift}` for a power series `base` in the ring's letter.
    pub fn new(ring: &Arc<NovikovRing<R>>, base: &TwistedSeries<R>, shift: usize) -> Result<Self> {
        if **base.ring() != *ring.z_ring {
            return Err(Error::RingMismatch);
        }
        if shift > ring.max_shift {
            return Err(Error::WindowUnderflow { needed: shift, max: ring.max_shift });
        }
        let shift = shift as i64;
        let terms = base.terms().iter().map(|(w, a)| (w.len() as i64 - shift, a.clone())).collect();
        Ok(NovikovSeries { ring: ring.clone(), terms, precision: ring.order() as i64 - shift })
    }

    pub fn from_series(ring: &Arc<NovikovRing<R>>, base: &TwistedSeries<R>) -> Result<Self> {
        Self::new(ring, base, 0)
    }

    /// The exact monomial `a·z^k`.
    pub fn monomial(ring: &Arc<NovikovRing<R>>, a: R::Elem, k: i64) -> Result<Self> {
        if k < -(ring.max_shift as i64) {
            return Err(Error::WindowUnderflow { needed: k.unsigned_abs() as usize, max: ring.max_shift });
        }
        let mut terms = BTreeMap::new();
        if !ring.coeff().is_zero(&a) {
            terms.insert(k, a);
        }
        Ok(NovikovSeries { ring: ring.clone(), terms, precision: EXACT })
    }

    pub fn one(ring: &Arc<NovikovRing<R>>) -> Self {
        Self::monomial(ring, ring.coeff().one(), 0).expect("degree 0 fits")
    }

    pub fn ring(&self) -> &Arc<NovikovRing<R>> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<i64, R::Elem> {
        &self.terms
    }

    pub fn coeff(&self, k: i64) -> R::Elem {
        self.terms.get(&k).cloned().unwrap_or_else(|| self.ring.coeff().zero())
    }

    /// Largest degree known exactly. Exact monomials report the ring order.
    pub fn precision(&self) -> i64 {
        if self.precision >= EXACT / 2 {
            self.ring.order() as i64
        } else {
            self.precision
        }
    }

    fn valuation(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(self.precision.saturating_add(1))
    }

    /// Number of negative powers carried, `max(0, −lowest degree)`.
    pub fn shift(&self) -> usize {
        self.terms.keys().next().map_or(0, |&k| if k < 0 { k.unsigned_abs() as usize } else { 0 })
    }

    /// `self·z^{shift}` as a power series truncated at its precision.
    pub fn base(&self) -> TwistedSeries<R> {
        let shift = self.shift() as i64;
        let top = self.precision() + shift;
        let ring = self.ring.z_ring.with_order(top.max(0) as usize);
        TwistedSeries::from_terms(
            &ring,
            self.terms.iter().filter(|(k, _)| **k + shift <= top).map(|(k, a)| (z_word(*k + shift), a.clone())),
        )
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.ring.coeff().is_one(&self.coeff(0))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        let c = self.ring.coeff();
        let precision = self.precision.min(other.precision);
        let mut terms = BTreeMap::new();
        for (k, a) in self.terms.iter().chain(&other.terms) {
            if *k > precision {
                continue;
            }
            let slot = terms.entry(*k).or_insert_with(|| c.zero());
            *slot = c.add(slot, a);
        }
        terms.retain(|_, a| !c.is_zero(a));
        Ok(NovikovSeries { ring: self.ring.clone(), terms, precision })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        let c = self.ring.coeff();
        let (v1, v2) = (self.valuation(), other.valuation());
        let mut precision = self.precision.saturating_add(v2).min(other.precision.saturating_add(v1));
        if precision >= EXACT / 2 {
            precision = EXACT;
        }
        let mut terms: BTreeMap<i64, R::Elem> = BTreeMap::new();
        for (k, a) in &self.terms {
            let mover = self.ring.twist_pow(-k);
            for (l, b) in &other.terms {
                let d = k + l;
                if d > precision {
                    break;
                }
                let p = c.mul(a, &c.aut_apply(&mover, b));
                let slot = terms.entry(d).or_insert_with(|| c.zero());
                *slot = c.add(slot, &p);
            }
        }
        terms.retain(|_, a| !c.is_zero(a));
        let out = NovikovSeries { ring: self.ring.clone(), terms, precision };
        out.check_window()?;
        Ok(out)
    }

    fn check_window(&self) -> Result<()> {
        let needed = self.shift();
        if needed > self.ring.max_shift {
            return Err(Error::WindowUnderflow { needed, max: self.ring.max_shift });
        }
        Ok(())
    }

    /// Inverse when the lowest-degree coefficient is a unit of `A`.
    pub fn invert(&self) -> Result<Self> {
        let c = self.ring.coeff();
        let (&v, lead) = self.terms.iter().next().ok_or(Error::LeadingCoeffNotUnit)?;
        let lead_inv = c.invert(lead).map_err(|_| Error::LeadingCoeffNotUnit)?;
        // (a z^v)⁻¹ = ξ^v(a⁻¹) z^{-v}
        let m = Self::monomial(&self.ring, c.aut_apply(&self.ring.twist_pow(v), &lead_inv), -v)?;
        let w = m.try_mul(self)?;
        let w_inv = if w.is_one() {
            w
        } else if w.precision < 0 {
            NovikovSeries { ring: self.ring.clone(), terms: BTreeMap::new(), precision: w.precision }
        } else {
            Self::from_series_at(&self.ring, &w.base().invert()?)
        };
        w_inv.try_mul(&m)
    }

    fn from_series_at(ring: &Arc<NovikovRing<R>>, s: &TwistedSeries<R>) -> Self {
        let terms = s.terms().iter().map(|(w, a)| (w.len() as i64, a.clone())).collect();
        NovikovSeries { ring: ring.clone(), terms, precision: s.ring().order() as i64 }
    }

    /// Terms joined as `a*z^k`, lowest degree first.
    pub fn to_literal(&self) -> String {
        let c = self.ring.coeff();
        let z = self.ring.letter();
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (k, a)) in self.terms.iter().enumerate() {
            let text = c.format_elem(a);
            let simple = !text[1..].contains([' ', '+', '-']);
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            let power = match k {
                0 => String::new(),
                1 => z.to_string(),
                _ => format!("{z}^{k}"),
            };
            let term = if power.is_empty() {
                if simple { body } else { format!("[{body}]") }
            } else if body == "1" {
                power
            } else if simple {
                format!("{body}*{power}")
            } else {
                format!("[{body}]*{power}")
            };
            match (i, neg) {
                (0, true) => out.push_str(&format!("-{term}")),
                (0, false) => out.push_str(&term),
                (_, true) => out.push_str(&format!(" - {term}")),
                (_, false) => out.push_str(&format!(" + {term}")),
            }
        }
        out
    }
}

fn z_word(k: i64) -> Word {
    Word::from_indices(vec![0; k as usize])
}

/// The `W₁` representative of `u ∈ 1 + A_ξ[[z]]z`: its cyclic logarithm.
pub fn w1_invariant<R: CoeffRing>(u: &NovikovSeries<R>) -> Result<CycLogVector> {
    let c = u.ring.coeff();
    if u.terms.keys().any(|k| *k < 0) || !c.is_one(&u.coeff(0)) || u.precision() < 0 {
        return Err(Error::NotInWOne);
    }
    cyc_log(&u.base())
}

/// Signed class counts at each `z`-degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OrbitCountReport {
    pub entries: BTreeMap<(usize, String), Q>,
}

impl OrbitCountReport {
    pub fn get(&self, n: usize, class: &str) -> Q {
        self.entries.get(&(n, class.to_string())).cloned().unwrap_or_else(Q::zero)
    }

    /// `{"n": {"class": "p/q"}}` with degrees ascending.
    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        for ((n, class), q) in &self.entries {
            let slot = out.entry(n.to_string()).or_insert_with(|| Value::Object(Map::new()));
            slot.as_object_mut().unwrap().insert(class.clone(), Value::String(q.to_string()));
        }
        Value::Object(out)
    }
}

/// Brute-force classes of `g ~ k·σ^j(g)·φ(k)⁻¹` for σ commuting with φ,
/// each sorted, listed by least member. At `z`-degree `n` with `φ = ξ^{-n}`
/// and `σ = ξ` these index the conjugacy classes of `G ⋊ ℤ` over `n`.
pub fn twisted_classes(group: &GroupTable, phi: &[usize], sigma: &[usize]) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for g in 0..n {
        let mut powers = vec![g];
        let mut h = sigma[g];
        while h != g {
            powers.push(h);
            h = sigma[h];
        }
        let rep = powers
            .iter()
            .flat_map(|&h| (0..n).map(move |k| group.mul(group.mul(k, h), group.inverse(phi[k]))))
            .min()
            .unwrap();
        classes.entry(rep).or_default().push(g);
    }
    classes.into_values().collect()
}

/// Whether the classes are pairwise disjoint, cover `G`, and are closed
/// under twisted conjugation and σ.
pub fn twisted_partition_check(group: &GroupTable, phi: &[usize], sigma: &[usize]) -> bool {
    let classes = twisted_classes(group, phi, sigma);
    let mut seen = vec![0usize; group.order()];
    for class in &classes {
        for &g in class {
            seen[g] += 1;
            let conj = (0..group.order()).map(|k| group.mul(group.mul(k, g), group.inverse(phi[k])));
            if conj.chain([sigma[g]]).any(|h| !class.contains(&h)) {
                return false;
            }
        }
    }
    seen.iter().all(|&c| c == 1)
}

/// Log coefficients of `u ∈ 1 + ℚ[G]_ξ[[z]]z` summed over the classes of
/// [`twisted_classes`] at each degree `n`. With
/// `lefschetz`, degree `n` entries are multiplied by `n`.
pub fn orbit_counts(u: &NovikovSeries<GroupAlgebra>, lefschetz: bool) -> Result<OrbitCountReport> {
    w1_invariant(u)?;
    let log = u.base().log()?;
    let group = u.ring.coeff().group();
    let mut report = OrbitCountReport::default();
    for (w, a) in log.terms() {
        let n = w.len();
        if n == 0 {
            continue;
        }
        let phi = u.ring.twist_pow(-(n as i64));
        let sigma = u.ring.twist_pow(1);
        let scale = if lefschetz { Q::from_integer((n as i64).into()) } else { Q::from_integer(1.into()) };
        for class in twisted_classes(group, &phi, &sigma) {
            let total: Q = class.iter().map(|&g| a[g].clone()).sum();
            if !total.is_zero() {
                report.entries.insert((n, group.name(class[0]).to_string()), total * &scale);
            }
        }
    }
    Ok(report)
}
