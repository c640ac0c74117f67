use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, RngCore};

use super::{random_small_rational, CoeffRing, TraceVector};
use crate::linalg::{self, QMatrix};
use crate::{Error, Result, Q};

/// Inner automorphism `a ↦ P·a·P⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerAut {
    p: QMatrix,
    p_inv: QMatrix,
}

impl InnerAut {
    pub fn new(p: QMatrix) -> Result<Self> {
        let p_inv = linalg::inverse(&p).ok_or_else(|| Error::NotAUnit("conjugator is singular".into()))?;
        Ok(InnerAut { p, p_inv })
    }

    pub fn conjugator(&self) -> &QMatrix {
        &self.p
    }
}

/// The full matrix ring M_k(Q).
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRing {
    k: usize,
    auts: BTreeMap<String, InnerAut>,
}

impl MatrixRing {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidRing("matrix size must be positive".into()));
        }
        Ok(MatrixRing { k, auts: BTreeMap::new() })
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn with_automorphism(mut self, name: &str, conjugator: QMatrix) -> Result<Self> {
        if conjugator.len() != self.k || conjugator.iter().any(|r| r.len() != self.k) {
            return Err(Error::InvalidRing(format!("conjugator {name} must be {0}x{0}", self.k)));
        }
        if name == "id" {
            return Err(Error::InvalidRing("\"id\" is reserved".into()));
        }
        self.auts.insert(name.to_string(), InnerAut::new(conjugator)?);
        Ok(self)
    }

    fn is_scalar(&self, m: &QMatrix) -> bool {
        let c = &m[0][0];
        (0..self.k).all(|i| (0..self.k).all(|j| if i == j { m[i][j] == *c } else { m[i][j].is_zero() }))
    }
}

impl CoeffRing for MatrixRing {
    type Elem = QMatrix;
    type Aut = InnerAut;

    fn name(&self) -> String {
        format!("M_{}(Q)", self.k)
    }
    fn zero(&self) -> QMatrix {
        vec![vec![Q::zero(); self.k]; self.k]
    }
    fn one(&self) -> QMatrix {
        linalg::identity(self.k)
    }
    fn add(&self, a: &QMatrix, b: &QMatrix) -> QMatrix {
        a.iter()
            .zip(b)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
            .collect()
    }
    fn neg(&self, a: &QMatrix) -> QMatrix {
        a.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
    }
    fn mul(&self, a: &QMatrix, b: &QMatrix) -> QMatrix {
        linalg::mul(a, b)
    }
    fn is_zero(&self, a: &QMatrix) -> bool {
        a.iter().all(|r| r.iter().all(Zero::is_zero))
    }
    fn is_unit(&self, a: &QMatrix) -> bool {
        !linalg::det(a).is_zero()
    }
    fn invert(&self, a: &QMatrix) -> Result<QMatrix> {
        linalg::inverse(a).ok_or_else(|| Error::NotAUnit(self.format_elem(a)))
    }
    fn is_commutative(&self) -> bool {
        self.k == 1
    }
    fn from_integer(&self, n: i64) -> QMatrix {
        self.from_rational(&Q::from_integer(n.into())).unwrap()
    }
    fn from_rational(&self, q: &Q) -> Result<QMatrix> {
        let mut m = self.zero();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = q.clone();
        }
        Ok(m)
    }
    fn contains_rationals(&self) -> bool {
        true
    }
    fn trace(&self, a: &QMatrix) -> Result<TraceVector> {
        let t: Q = (0..self.k).map(|i| a[i][i].clone()).sum();
        let mut v = TraceVector::new();
        if !t.is_zero() {
            v.insert(String::new(), t);
        }
        Ok(v)
    }

    /// For λ = conjugation by Q the functional is `a ↦ tr(a·Q)`.
    fn twisted_trace(&self, a: &QMatrix, lambda: &InnerAut) -> Result<TraceVector> {
        if self.aut_is_identity(lambda) {
            return self.trace(a);
        }
        self.trace(&linalg::mul(a, &lambda.p))
    }

    /// `tr(a·Q)` is already σ-invariant when the conjugator of σ commutes
    /// with Q.
    fn coinvariant_trace(&self, a: &QMatrix, lambda: &InnerAut, sigma: &InnerAut) -> Result<TraceVector> {
        let moved = linalg::mul(&linalg::mul(&sigma.p_inv, &lambda.p), &sigma.p);
        if moved != lambda.p {
            return Err(Error::UnsupportedTwist(self.name()));
        }
        self.twisted_trace(a, lambda)
    }

    fn aut_identity(&self) -> InnerAut {
        InnerAut { p: self.one(), p_inv: self.one() }
    }
    fn aut_apply(&self, s: &InnerAut, a: &QMatrix) -> QMatrix {
        if self.is_scalar(&s.p) {
            return a.clone();
        }
        linalg::mul(&linalg::mul(&s.p, a), &s.p_inv)
    }
    fn aut_compose(&self, f: &InnerAut, g: &InnerAut) -> InnerAut {
        InnerAut { p: linalg::mul(&f.p, &g.p), p_inv: linalg::mul(&g.p_inv, &f.p_inv) }
    }
    fn aut_inverse(&self, f: &InnerAut) -> InnerAut {
        InnerAut { p: f.p_inv.clone(), p_inv: f.p.clone() }
    }
    fn aut_is_identity(&self, f: &InnerAut) -> bool {
        self.is_scalar(&f.p)
    }
    fn automorphism(&self, name: &str) -> Option<InnerAut> {
        if name == "id" {
            return Some(self.aut_identity());
        }
        self.auts.get(name).cloned()
    }
    fn automorphism_names(&self) -> Vec<String> {
        std::iter::once("id".to_string()).chain(self.auts.keys().cloned()).collect()
    }

    /// Flattens an n×n matrix of k×k blocks to an nk×nk rational matrix.
    fn invert_matrix(&self, m: &[Vec<QMatrix>]) -> Option<Vec<Vec<QMatrix>>> {
        let n = m.len();
        let k = self.k;
        let mut flat = vec![vec![Q::zero(); n * k]; n * k];
        for (bi, row) in m.iter().enumerate() {
            for (bj, block) in row.iter().enumerate() {
                for i in 0..k {
                    for j in 0..k {
                        flat[bi * k + i][bj * k + j] = block[i][j].clone();
                    }
                }
            }
        }
        let inv = linalg::inverse(&flat)?;
        Some(
            (0..n)
                .map(|bi| {
                    (0..n)
                        .map(|bj| {
                            (0..k)
                                .map(|i| (0..k).map(|j| inv[bi * k + i][bj * k + j].clone()).collect())
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        )
    }

    fn format_elem(&self, a: &QMatrix) -> String {
        let rows: Vec<String> = a
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        format!("[{}]", rows.join(";"))
    }

    fn parse_elem(&self, s: &str) -> Result<QMatrix> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("matrix literal must look like [a,b;c,d]: {t:?}")))?;
        let m: QMatrix = inner
            .split(';')
            .map(|row| row.split(',').map(super::parse_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        if m.len() != self.k || m.iter().any(|r| r.len() != self.k) {
            return Err(Error::Parse(format!("expected a {0}x{0} matrix: {t:?}", self.k)));
        }
        Ok(m)
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> QMatrix {
        (0..self.k)
            .map(|_| {
                (0..self.k)
                    .map(|_| if rng.gen_bool(0.6) { random_small_rational(rng) } else { Q::zero() })
                    .collect()
            })
            .collect()
    }
}
