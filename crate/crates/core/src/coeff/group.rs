use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use super::{lincomb, random_small_rational, CoeffRing, TraceVector};
use crate::linalg;
use crate::{Error, Result, Q};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl GroupTable {
    /// Validates closure, associativity, identity and inverses by brute force.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        let bad = |m: &str| Err(Error::InvalidRing(format!("group table: {m}")));
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table must be a square array of element indices");
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || !a.chars().next().unwrap().is_alphabetic() || !a.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return bad(&format!("invalid element name {a:?}"));
            }
            if names[..i].contains(a) {
                return bad(&format!("duplicate element name {a:?}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(&format!("not associative at ({}, {}, {})", names[a], names[b], names[c]));
                    }
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) else {
            return bad("no identity element");
        };
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverses.push(h),
                None => return bad(&format!("{} has no inverse", names[g])),
            }
        }
        Ok(GroupTable { names, table, identity, inverses })
    }

    /// Cyclic group of order n with elements `e, g, g2, …`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        GroupTable::new(names, table).expect("cyclic table is valid")
    }

    /// Symmetric group on three points; elements are permutations in
    /// one-line notation, composed right to left.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let names = ["e", "s01", "s12", "s02", "r", "r2"].iter().map(|s| s.to_string()).collect();
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        GroupTable::new(names, table).expect("S3 table is valid")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }
    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Checks that `perm` is a bijective homomorphism.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.order();
        if perm.len() != n || perm.iter().any(|&x| x >= n) {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if std::mem::replace(&mut seen[p], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| perm[self.table[a][b]] == self.table[perm[a]][perm[b]]))
    }

    pub fn inner_automorphism(&self, g: usize) -> Vec<usize> {
        (0..self.order())
            .map(|h| self.mul(self.mul(g, h), self.inverse(g)))
            .collect()
    }

    /// Class index of every element under `g ~ k·g·φ(k)⁻¹`, labelled by the
    /// least element index in the class.
    pub fn twisted_class_of(&self, phi: &[usize]) -> Vec<usize> {
        let id: Vec<usize> = (0..self.order()).collect();
        self.twisted_class_of_with(phi, &id)
    }

    /// As [`twisted_class_of`](Self::twisted_class_of), additionally merging
    /// `g ~ σ(g)`.
    pub fn twisted_class_of_with(&self, phi: &[usize], sigma: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut class = vec![usize::MAX; n];
        for g in 0..n {
            if class[g] != usize::MAX {
                continue;
            }
            // orbit of g under the twisted conjugation action
            let mut stack = vec![g];
            let mut members = vec![g];
            let mut seen = vec![false; n];
            seen[g] = true;
            while let Some(x) = stack.pop() {
                let images = (0..n).map(|k| self.mul(self.mul(k, x), self.inverse(phi[k])));
                for y in images.chain([sigma[x]]) {
                    if !seen[y] {
                        seen[y] = true;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            let rep = *members.iter().min().unwrap();
            for m in members {
                class[m] = rep;
            }
        }
        class
    }
}

/// The group algebra Q[G] of a finite group.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebra {
    group: GroupTable,
    auts: BTreeMap<String, Vec<usize>>,
}

impl GroupAlgebra {
    pub fn new(group: GroupTable) -> Self {
        GroupAlgebra { group, auts: BTreeMap::new() }
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    /// Registers the automorphism induced by a group automorphism, given as
    /// the image index of each element.
    pub fn with_automorphism(mut self, name: &str, images: Vec<usize>) -> Result<Self> {
        if name == "id" {
            return Err(Error::InvalidRing("\"id\" is reserved".into()));
        }
        if !self.group.is_automorphism(&images) {
            return Err(Error::InvalidRing(format!("{name} is not a group automorphism")));
        }
        self.auts.insert(name.to_string(), images);
        Ok(self)
    }

    /// Basis element of a group element.
    pub fn basis(&self, g: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.group.order()];
        v[g] = Q::one();
        v
    }

    fn regular_block(&self, a: &[Q], out: &mut [Vec<Q>], row0: usize, col0: usize) {
        for (g, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for h in 0..self.group.order() {
                out[row0 + self.group.mul(g, h)][col0 + h] += c;
            }
        }
    }

    fn regular(&self, a: &[Q]) -> Vec<Vec<Q>> {
        let n = self.group.order();
        let mut m = vec![vec![Q::zero(); n]; n];
        self.regular_block(a, &mut m, 0, 0);
        m
    }
}

impl CoeffRing for GroupAlgebra {
    type Elem = Vec<Q>;
    type Aut = Vec<usize>;

    fn name(&self) -> String {
        format!("Q[G], |G| = {}", self.group.order())
    }
    fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.group.order()]
    }
    fn one(&self) -> Vec<Q> {
        self.basis(self.group.identity())
    }
    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Vec<Q>) -> Vec<Q> {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        let mut out = self.zero();
        for (g, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (h, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[self.group.mul(g, h)] += x * y;
                }
            }
        }
        out
    }
    fn is_zero(&self, a: &Vec<Q>) -> bool {
        a.iter().all(Zero::is_zero)
    }
    fn is_unit(&self, a: &Vec<Q>) -> bool {
        !linalg::det(&self.regular(a)).is_zero()
    }
    fn invert(&self, a: &Vec<Q>) -> Result<Vec<Q>> {
        let inv = linalg::inverse(&self.regular(a)).ok_or_else(|| Error::NotAUnit(self.format_elem(a)))?;
        let e = self.group.identity();
        Ok(inv.iter().map(|row| row[e].clone()).collect())
    }
    fn is_commutative(&self) -> bool {
        self.group.is_abelian()
    }
    fn from_integer(&self, n: i64) -> Vec<Q> {
        self.from_rational(&Q::from_integer(n.into())).unwrap()
    }
    fn from_rational(&self, q: &Q) -> Result<Vec<Q>> {
        let mut v = self.zero();
        v[self.group.identity()] = q.clone();
        Ok(v)
    }
    fn contains_rationals(&self) -> bool {
        true
    }

    /// Coefficient of the identity element.
    fn trace(&self, a: &Vec<Q>) -> Result<TraceVector> {
        let mut t = TraceVector::new();
        let c = &a[self.group.identity()];
        if !c.is_zero() {
            t.insert(String::new(), c.clone());
        }
        Ok(t)
    }

    /// Sums of coefficients over the λ-twisted conjugacy classes
    /// `g ~ k·g·λ(k)⁻¹`, keyed by the name of each class representative.
    fn twisted_trace(&self, a: &Vec<Q>, lambda: &Vec<usize>) -> Result<TraceVector> {
        self.coinvariant_trace(a, lambda, &self.aut_identity())
    }

    fn coinvariant_trace(&self, a: &Vec<Q>, lambda: &Vec<usize>, sigma: &Vec<usize>) -> Result<TraceVector> {
        let class = self.group.twisted_class_of_with(lambda, sigma);
        let mut t = TraceVector::new();
        for (g, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            *t.entry(self.group.name(class[g]).to_string()).or_insert_with(Q::zero) += c;
        }
        t.retain(|_, v| !v.is_zero());
        Ok(t)
    }

    fn aut_identity(&self) -> Vec<usize> {
        (0..self.group.order()).collect()
    }
    fn aut_apply(&self, s: &Vec<usize>, a: &Vec<Q>) -> Vec<Q> {
        let mut out = self.zero();
        for (g, c) in a.iter().enumerate() {
            out[s[g]] = c.clone();
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

    /// Inverts through the left regular representation, block by block.
    fn invert_matrix(&self, m: &[Vec<Vec<Q>>]) -> Option<Vec<Vec<Vec<Q>>>> {
        let n = m.len();
        let g = self.group.order();
        let mut flat = vec![vec![Q::zero(); n * g]; n * g];
        for (bi, row) in m.iter().enumerate() {
            for (bj, a) in row.iter().enumerate() {
                self.regular_block(a, &mut flat, bi * g, bj * g);
            }
        }
        let inv = linalg::inverse(&flat)?;
        let e = self.group.identity();
        Some(
            (0..n)
                .map(|bi| (0..n).map(|bj| (0..g).map(|x| inv[bi * g + x][bj * g + e].clone()).collect()).collect())
                .collect(),
        )
    }

    fn format_elem(&self, a: &Vec<Q>) -> String {
        let e = self.group.identity();
        let unit = self.group.name(e).to_string();
        lincomb::format(
            a.iter().enumerate().map(|(g, c)| (self.group.name(g).to_string(), c)),
            &unit,
        )
    }

    fn parse_elem(&self, s: &str) -> Result<Vec<Q>> {
        let mut v = self.zero();
        for (c, name) in lincomb::parse(s)? {
            let g = match name {
                None => self.group.identity(),
                Some(n) => self
                    .group
                    .index_of(&n)
                    .ok_or_else(|| Error::Parse(format!("unknown group element {n:?}")))?,
            };
            v[g] += c;
        }
        Ok(v)
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> Vec<Q> {
        (0..self.group.order())
            .map(|_| if rng.gen_bool(0.5) { random_small_rational(rng) } else { Q::zero() })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c3_units_and_inverse() {
        let r = GroupAlgebra::new(GroupTable::cyclic(3));
        let a = r.parse_elem("1 + g").unwrap();
        assert!(r.is_unit(&a));
        let inv = r.invert(&a).unwrap();
        assert_eq!(r.mul(&a, &inv), r.one());
        // 1 + g + g² is a zero divisor
        assert!(!r.is_unit(&r.parse_elem("1 + g + g2").unwrap()));
    }

    #[test]
    fn format_round_trip() {
        let r = GroupAlgebra::new(GroupTable::cyclic(2));
        let a = r.parse_elem("3/2 - 2*g").unwrap();
        assert_eq!(r.format_elem(&a), "3/2 - 2*g");
    }

    #[test]
    fn s3_conjugacy_classes() {
        let g = GroupTable::symmetric3();
        let id: Vec<usize> = (0..6).collect();
        let class = g.twisted_class_of(&id);
        let mut reps: Vec<usize> = class.clone();
        reps.sort();
        reps.dedup();
        assert_eq!(reps.len(), 3);
        assert!(!g.is_abelian());
    }

    #[test]
    fn rejects_non_automorphism() {
        let r = GroupAlgebra::new(GroupTable::cyclic(3));
        assert!(r.clone().with_automorphism("inv", vec![0, 2, 1]).is_ok());
        assert!(r.with_automorphism("bad", vec![1, 0, 2]).is_err());
    }
}
