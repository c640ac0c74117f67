use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use super::{lincomb, random_small_rational, CoeffRing, TraceVector};
use crate::linalg;
use crate::word::Word;
use crate::{Error, Result, Q};

/// Automorphism sending generator `i` to `scale[i] · generator[target[i]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialAut {
    target: Vec<usize>,
    scale: Vec<Q>,
}

/// The free associative algebra over Q on finitely many generators,
/// truncated above a fixed total degree.
///
/// The augmentation ideal (no constant term) is nilpotent, so an element is
/// a unit exactly when its constant term is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeAlgebra {
    gens: Vec<char>,
    degree: usize,
    auts: BTreeMap<String, MonomialAut>,
}

pub type FreeElem = BTreeMap<Word, Q>;

impl FreeAlgebra {
    pub fn new(gens: &str, degree: usize) -> Result<Self> {
        let gens: Vec<char> = gens.chars().collect();
        if gens.is_empty() || gens.len() > 26 {
            return Err(Error::InvalidRing("free algebra needs 1 to 26 generators".into()));
        }
        for (i, c) in gens.iter().enumerate() {
            if !c.is_alphabetic() || gens[..i].contains(c) {
                return Err(Error::InvalidRing(format!("bad generator name {c:?}")));
            }
        }
        Ok(FreeAlgebra { gens, degree, auts: BTreeMap::new() })
    }

    pub fn generators(&self) -> &[char] {
        &self.gens
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Registers the automorphism sending each generator to a scaled generator.
    pub fn with_automorphism(mut self, name: &str, images: &[(Q, char)]) -> Result<Self> {
        if name == "id" {
            return Err(Error::InvalidRing("\"id\" is reserved".into()));
        }
        if images.len() != self.gens.len() {
            return Err(Error::InvalidRing(format!("{name}: one image per generator required")));
        }
        let mut target = Vec::new();
        let mut scale = Vec::new();
        for (c, g) in images {
            let t = self
                .gens
                .iter()
                .position(|x| x == g)
                .ok_or_else(|| Error::InvalidRing(format!("{name}: unknown generator {g:?}")))?;
            if c.is_zero() || target.contains(&t) {
                return Err(Error::InvalidRing(format!("{name} is not invertible")));
            }
            target.push(t);
            scale.push(c.clone());
        }
        self.auts.insert(name.to_string(), MonomialAut { target, scale });
        Ok(self)
    }

    /// The element given by a single generator.
    pub fn generator(&self, g: char) -> Option<FreeElem> {
        let i = self.gens.iter().position(|&x| x == g)?;
        if self.degree == 0 {
            return Some(FreeElem::new());
        }
        Some(FreeElem::from([(Word::letter(i as u8), Q::one())]))
    }

    fn constant(&self, a: &FreeElem) -> Q {
        a.get(&Word::empty()).cloned().unwrap_or_else(Q::zero)
    }

    fn monomial_image(&self, f: &MonomialAut, w: &Word) -> (Word, Q) {
        let mut coeff = Q::one();
        let letters = w
            .letters()
            .iter()
            .map(|&i| {
                coeff *= &f.scale[i as usize];
                f.target[i as usize] as u8
            })
            .collect();
        (Word::from_indices(letters), coeff)
    }

    /// Least word `r` and scalar `s` with `[w] = s·[r]`, or `None` when the
    /// class of `w` is forced to vanish.
    fn twisted_class(&self, w: &Word, lambda: &MonomialAut, sigma: &MonomialAut) -> Option<(Word, Q)> {
        let mut seen: BTreeMap<Word, Q> = BTreeMap::new();
        let mut stack = vec![(w.clone(), Q::one())];
        let mut consistent = true;
        while let Some((x, s)) = stack.pop() {
            if let Some(prev) = seen.get(&x) {
                consistent &= *prev == s;
                continue;
            }
            seen.insert(x.clone(), s.clone());
            let (head, sc) = self.monomial_image(lambda, &Word::from_indices(x.letters()[..1].to_vec()));
            let rotated = Word::from_indices(x.letters()[1..].to_vec()).concat(&head);
            stack.push((rotated, &s * sc));
            let (image, ss) = self.monomial_image(sigma, &x);
            stack.push((image, &s * ss));
        }
        if !consistent {
            return None;
        }
        seen.into_iter().next()
    }

    fn scalar(&self, q: Q) -> FreeElem {
        let mut m = FreeElem::new();
        if !q.is_zero() {
            m.insert(Word::empty(), q);
        }
        m
    }

    fn accumulate(m: &mut FreeElem, w: Word, c: Q) {
        use std::collections::btree_map::Entry;
        match m.entry(w) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl CoeffRing for FreeAlgebra {
    type Elem = FreeElem;
    type Aut = MonomialAut;

    fn name(&self) -> String {
        let g: String = self.gens.iter().collect();
        format!("Q<{g}>/(deg > {})", self.degree)
    }
    fn zero(&self) -> FreeElem {
        FreeElem::new()
    }
    fn one(&self) -> FreeElem {
        self.scalar(Q::one())
    }
    fn add(&self, a: &FreeElem, b: &FreeElem) -> FreeElem {
        let mut out = a.clone();
        for (w, c) in b {
            Self::accumulate(&mut out, w.clone(), c.clone());
        }
        out
    }
    fn neg(&self, a: &FreeElem) -> FreeElem {
        a.iter().map(|(w, c)| (w.clone(), -c)).collect()
    }
    fn mul(&self, a: &FreeElem, b: &FreeElem) -> FreeElem {
        let mut out = FreeElem::new();
        for (v, x) in a {
            for (w, y) in b {
                if v.len() + w.len() <= self.degree {
                    Self::accumulate(&mut out, v.concat(w), x * y);
                }
            }
        }
        out
    }
    fn is_zero(&self, a: &FreeElem) -> bool {
        a.is_empty()
    }
    fn is_unit(&self, a: &FreeElem) -> bool {
        !self.constant(a).is_zero()
    }

    /// `a = c(1 + n)` with n nilpotent, so `a⁻¹ = (1 - n + n² - …) c⁻¹`.
    fn invert(&self, a: &FreeElem) -> Result<FreeElem> {
        let c = self.constant(a);
        if c.is_zero() {
            return Err(Error::NotAUnit(self.format_elem(a)));
        }
        let c_inv = c.recip();
        let mut nil = self.mul(&self.scalar(c_inv.clone()), a);
        nil.remove(&Word::empty());
        let minus_nil = self.neg(&nil);
        let mut geo = self.one();
        for _ in 0..self.degree {
            geo = self.add(&self.one(), &self.mul(&minus_nil, &geo));
        }
        Ok(self.mul(&geo, &self.scalar(c_inv)))
    }
    fn is_commutative(&self) -> bool {
        self.gens.len() == 1 || self.degree <= 1
    }
    fn from_integer(&self, n: i64) -> FreeElem {
        self.scalar(Q::from_integer(n.into()))
    }
    fn from_rational(&self, q: &Q) -> Result<FreeElem> {
        Ok(self.scalar(q.clone()))
    }
    fn contains_rationals(&self) -> bool {
        true
    }

    /// Projection onto cyclic classes of monomials, labelled by the least
    /// rotation (`"1"` for the constant term).
    fn trace(&self, a: &FreeElem) -> Result<TraceVector> {
        let mut t = TraceVector::new();
        for (w, c) in a {
            let label = if w.is_empty() { "1".to_string() } else { w.least_rotation().0.render(&self.gens) };
            *t.entry(label).or_insert_with(Q::zero) += c;
        }
        t.retain(|_, v| !v.is_zero());
        Ok(t)
    }

    fn twisted_trace(&self, a: &FreeElem, lambda: &MonomialAut) -> Result<TraceVector> {
        self.coinvariant_trace(a, lambda, &self.aut_identity())
    }

    /// Monomials are identified along `c·v ~ v·λ(c)` and `w ~ σ(w)`, keeping
    /// track of scalars; a class whose scalars disagree around a cycle is
    /// zero. Labels are the least word of each class.
    fn coinvariant_trace(&self, a: &FreeElem, lambda: &MonomialAut, sigma: &MonomialAut) -> Result<TraceVector> {
        let mut t = TraceVector::new();
        for (w, c) in a {
            if w.is_empty() {
                *t.entry("1".to_string()).or_insert_with(Q::zero) += c;
            } else if let Some((rep, s)) = self.twisted_class(w, lambda, sigma) {
                *t.entry(rep.render(&self.gens)).or_insert_with(Q::zero) += c * s;
            }
        }
        t.retain(|_, v| !v.is_zero());
        Ok(t)
    }

    fn aut_identity(&self) -> MonomialAut {
        MonomialAut { target: (0..self.gens.len()).collect(), scale: vec![Q::one(); self.gens.len()] }
    }
    fn aut_apply(&self, s: &MonomialAut, a: &FreeElem) -> FreeElem {
        if self.aut_is_identity(s) {
            return a.clone();
        }
        let mut out = FreeElem::new();
        for (w, c) in a {
            let mut coeff = c.clone();
            let letters: Vec<u8> = w
                .letters()
                .iter()
                .map(|&i| {
                    coeff *= &s.scale[i as usize];
                    s.target[i as usize] as u8
                })
                .collect();
            Self::accumulate(&mut out, Word::from_indices(letters), coeff);
        }
        out
    }
    fn aut_compose(&self, f: &MonomialAut, g: &MonomialAut) -> MonomialAut {
        let target = g.target.iter().map(|&t| f.target[t]).collect();
        let scale = g.scale.iter().zip(&g.target).map(|(c, &t)| c * &f.scale[t]).collect();
        MonomialAut { target, scale }
    }
    fn aut_inverse(&self, f: &MonomialAut) -> MonomialAut {
        let n = f.target.len();
        let mut target = vec![0; n];
        let mut scale = vec![Q::one(); n];
        for i in 0..n {
            target[f.target[i]] = i;
            scale[f.target[i]] = f.scale[i].recip();
        }
        MonomialAut { target, scale }
    }
    fn aut_is_identity(&self, f: &MonomialAut) -> bool {
        f.target.iter().enumerate().all(|(i, &t)| i == t) && f.scale.iter().all(One::is_one)
    }
    fn automorphism(&self, name: &str) -> Option<MonomialAut> {
        if name == "id" {
            return Some(self.aut_identity());
        }
        self.auts.get(name).cloned()
    }
    fn automorphism_names(&self) -> Vec<String> {
        std::iter::once("id".to_string()).chain(self.auts.keys().cloned()).collect()
    }

    /// Splits M = M₀ + N into scalar and nilpotent parts; invertible iff M₀ is.
    fn invert_matrix(&self, m: &[Vec<FreeElem>]) -> Option<Vec<Vec<FreeElem>>> {
        let scalar_part: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|a| self.constant(a)).collect()).collect();
        let m0_inv = linalg::inverse(&scalar_part)?;
        let m0_inv: Vec<Vec<FreeElem>> =
            m0_inv.into_iter().map(|r| r.into_iter().map(|q| self.scalar(q)).collect()).collect();
        // K = M₀⁻¹M − I has entries in the augmentation ideal
        let mut k = super::matrix_mul(self, &m0_inv, m);
        for (i, row) in k.iter_mut().enumerate() {
            row[i] = self.sub(&row[i], &self.one());
        }
        let minus_k: Vec<Vec<FreeElem>> = k.iter().map(|r| r.iter().map(|a| self.neg(a)).collect()).collect();
        let n = m.len();
        let mut geo = super::matrix_identity(self, n);
        for _ in 0..self.degree {
            let next = super::matrix_mul(self, &minus_k, &geo);
            geo = next
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, a)| if i == j { self.add(a, &self.one()) } else { a.clone() })
                        .collect()
                })
                .collect();
        }
        Some(super::matrix_mul(self, &geo, &m0_inv))
    }

    fn format_elem(&self, a: &FreeElem) -> String {
        lincomb::format(
            a.iter().map(|(w, c)| (if w.is_empty() { "1".to_string() } else { w.render(&self.gens) }, c)),
            "1",
        )
    }

    fn parse_elem(&self, s: &str) -> Result<FreeElem> {
        let mut out = FreeElem::new();
        for (c, name) in lincomb::parse(s)? {
            let w = match name {
                None => Word::empty(),
                Some(n) => Word::parse(&n, &self.gens)
                    .ok_or_else(|| Error::Parse(format!("{n:?} is not a word in the generators")))?,
            };
            if w.len() <= self.degree {
                Self::accumulate(&mut out, w, c);
            }
        }
        Ok(out)
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> FreeElem {
        let mut out = self.scalar(random_small_rational(rng));
        let terms = rng.gen_range(0..=3);
        for _ in 0..terms {
            let len = rng.gen_range(1..=self.degree.max(1)).min(self.degree);
            if len == 0 {
                break;
            }
            let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..self.gens.len()) as u8).collect();
            Self::accumulate(&mut out, Word::from_indices(w), random_small_rational(rng));
        }
        out
    }
}
