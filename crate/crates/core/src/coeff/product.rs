use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::RngCore;

use super::{random_small_rational, CoeffRing, TraceVector};
use crate::linalg;
use crate::{Error, Result, Q};

/// The product ring Q^k with coordinatewise operations. Automorphisms
/// permute the factors: `σ(a)[π(i)] = a[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductRing {
    k: usize,
    auts: BTreeMap<String, Vec<usize>>,
}

impl ProductRing {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidRing("product needs at least one factor".into()));
        }
        Ok(ProductRing { k, auts: BTreeMap::new() })
    }

    pub fn factors(&self) -> usize {
        self.k
    }

    pub fn with_automorphism(mut self, name: &str, perm: Vec<usize>) -> Result<Self> {
        if name == "id" {
            return Err(Error::InvalidRing("\"id\" is reserved".into()));
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..self.k).collect::<Vec<_>>() {
            return Err(Error::InvalidRing(format!("{name} is not a permutation of the factors")));
        }
        self.auts.insert(name.to_string(), perm);
        Ok(self)
    }

    pub fn elem(&self, xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from_integer(x.into())).collect()
    }
}

impl CoeffRing for ProductRing {
    type Elem = Vec<Q>;
    type Aut = Vec<usize>;

    fn name(&self) -> String {
        format!("Q^{}", self.k)
    }
    fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.k]
    }
    fn one(&self) -> Vec<Q> {
        vec![Q::one(); self.k]
    }
    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Vec<Q>) -> Vec<Q> {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }
    fn is_unit(&self, a: &Vec<Q>) -> bool {
        a.iter().all(|x| !x.is_zero())
    }
    fn invert(&self, a: &Vec<Q>) -> Result<Vec<Q>> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit(self.format_elem(a)));
        }
        Ok(a.iter().map(Q::recip).collect())
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn from_integer(&self, n: i64) -> Vec<Q> {
        vec![Q::from_integer(n.into()); self.k]
    }
    fn from_rational(&self, q: &Q) -> Result<Vec<Q>> {
        Ok(vec![q.clone(); self.k])
    }
    fn contains_rationals(&self) -> bool {
        true
    }
    fn trace(&self, a: &Vec<Q>) -> Result<TraceVector> {
        Ok(a.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (format!("e{i}"), x.clone()))
            .collect())
    }

    /// Only factors fixed by λ survive the twisted commutator quotient.
    fn twisted_trace(&self, a: &Vec<Q>, lambda: &Vec<usize>) -> Result<TraceVector> {
        self.coinvariant_trace(a, lambda, &self.aut_identity())
    }

    /// Fixed factors, merged along the orbits of σ.
    fn coinvariant_trace(&self, a: &Vec<Q>, lambda: &Vec<usize>, sigma: &Vec<usize>) -> Result<TraceVector> {
        let mut t = TraceVector::new();
        for (i, x) in a.iter().enumerate() {
            if lambda[i] != i || x.is_zero() {
                continue;
            }
            let mut rep = i;
            let mut j = sigma[i];
            while j != i {
                rep = rep.min(j);
                j = sigma[j];
            }
            *t.entry(format!("e{rep}")).or_insert_with(Q::zero) += x;
        }
        t.retain(|_, v| !v.is_zero());
        Ok(t)
    }

    fn aut_identity(&self) -> Vec<usize> {
        (0..self.k).collect()
    }
    fn aut_apply(&self, s: &Vec<usize>, a: &Vec<Q>) -> Vec<Q> {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            out[s[i]] = x.clone();
        }
        out
    }
    fn aut_compose(&self, f: &Vec<usize>, g: &Vec<usize>) -> Vec<usize> {
        g.iter().map(|&x| f[x]).collect()
    }
    fn aut_inverse(&self, f: &Vec<usize>) -> Vec<usize> {
        let mut inv = vec![0; f.len()];
        for (i, &x) in f.iter().enumerate() {
            inv[x] = i;
        }
        inv
    }
    fn aut_is_identity(&self, f: &Vec<usize>) -> bool {
        f.iter().enumerate().all(|(i, &x)| i == x)
    }
    fn automorphism(&self, name: &str) -> Option<Vec<usize>> {
        if name == "id" {
            return Some(self.aut_identity());
        }
        self.auts.get(name).cloned()
    }
    fn automorphism_names(&self) -> Vec<String> {
        std::iter::once("id".to_string()).chain(self.auts.keys().cloned()).collect()
    }

    fn invert_matrix(&self, m: &[Vec<Vec<Q>>]) -> Option<Vec<Vec<Vec<Q>>>> {
        let n = m.len();
        let comps: Vec<Vec<Vec<Q>>> = (0..self.k)
            .map(|c| linalg::inverse(&m.iter().map(|r| r.iter().map(|a| a[c].clone()).collect()).collect::<Vec<_>>()))
            .collect::<Option<_>>()?;
        Some((0..n).map(|i| (0..n).map(|j| comps.iter().map(|inv| inv[i][j].clone()).collect()).collect()).collect())
    }

    fn format_elem(&self, a: &Vec<Q>) -> String {
        format!("({})", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
    fn parse_elem(&self, s: &str) -> Result<Vec<Q>> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("product literal must look like (a,b): {t:?}")))?;
        let v: Vec<Q> = inner.split(',').map(super::parse_rational).collect::<Result<_>>()?;
        if v.len() != self.k {
            return Err(Error::Parse(format!("expected {} components: {t:?}", self.k)));
        }
        Ok(v)
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> Vec<Q> {
        (0..self.k).map(|_| random_small_rational(rng)).collect()
    }
}
