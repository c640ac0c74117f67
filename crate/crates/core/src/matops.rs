//! Matrices over a series ring: local invertibility, the unique LDU
//! factorization of ε-unipotent matrices, and the pivoting determinant D.
//!
//! D of an n×n matrix with identity augmentation is `α₁₁·D(α₂₂ − α₂₁α₁₁⁻¹α₁₂)`,
//! always pivoting on the (1,1) entry (a unit, since its augmentation is 1).
//! The returned series is one representative of a coset of the commutator
//! subgroup; see [`crate::kgroup`] for comparing representatives.

use std::fmt;
use std::sync::Arc;

use crate::coeff::CoeffRing;
use crate::tps::{same_ring, SeriesRing, TwistedSeries};
use crate::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct SeriesMatrix<R: CoeffRing> {
    ring: Arc<SeriesRing<R>>,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<TwistedSeries<R>>>,
}

impl<R: CoeffRing> fmt::Debug for SeriesMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries.iter().map(|r| r.iter().map(|s| s.to_literal()).collect::<Vec<_>>()))
            .finish()
    }
}

impl<R: CoeffRing> SeriesMatrix<R> {
    /// Checks the shape and that all entries share `ring`.
    pub fn new(ring: &Arc<SeriesRing<R>>, entries: Vec<Vec<TwistedSeries<R>>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        if entries.iter().flatten().any(|s| !same_ring(s.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(SeriesMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn zeros(ring: &Arc<SeriesRing<R>>, rows: usize, cols: usize) -> Self {
        let z = TwistedSeries::zero(ring);
        SeriesMatrix { ring: ring.clone(), rows, cols, entries: vec![vec![z; cols]; rows] }
    }

    pub fn identity(ring: &Arc<SeriesRing<R>>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i][i] = TwistedSeries::one(ring);
        }
        m
    }

    /// Entrywise lift `j` of a matrix over the coefficients.
    pub fn lift(ring: &Arc<SeriesRing<R>>, m: &[Vec<R::Elem>]) -> Result<Self> {
        Self::new(ring, m.iter().map(|r| r.iter().map(|a| TwistedSeries::lift(ring, a.clone())).collect()).collect())
    }

    pub fn ring(&self) -> &Arc<SeriesRing<R>> {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn entry(&self, i: usize, j: usize) -> &TwistedSeries<R> {
        &self.entries[i][j]
    }
    pub fn entries(&self) -> &[Vec<TwistedSeries<R>>] {
        &self.entries
    }
    pub fn set(&mut self, i: usize, j: usize, s: TwistedSeries<R>) {
        self.entries[i][j] = s;
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
            .collect();
        Ok(SeriesMatrix { entries, ..self.clone() })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SeriesMatrix {
            entries: self.entries.iter().map(|r| r.iter().map(|a| -a).collect()).collect(),
            ..self.clone()
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = TwistedSeries::zero(&self.ring);
                for k in 0..self.cols {
                    if self.entries[i][k].is_zero() || other.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    /// Entrywise augmentation, a matrix over the coefficient ring.
    pub fn augment(&self) -> Vec<Vec<R::Elem>> {
        self.entries.iter().map(|r| r.iter().map(TwistedSeries::augment).collect()).collect()
    }

    pub fn is_augmentation_identity(&self) -> bool {
        let c = self.ring.coeff();
        self.is_square()
            && self.entries.iter().enumerate().all(|(i, r)| {
                r.iter().enumerate().all(|(j, s)| {
                    let e = s.augment();
                    if i == j {
                        c.is_one(&e)
                    } else {
                        c.is_zero(&e)
                    }
                })
            })
    }

    /// Invertible exactly when its augmentation is invertible over A.
    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.ring.coeff().invert_matrix(&self.augment()).is_some()
    }

    /// `α⁻¹ = (1 − α₀ + α₀² − ⋯)·ε(α)⁻¹` with `α₀ = ε(α)⁻¹α − 1`.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotInvertible(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let aug_inv = self
            .ring
            .coeff()
            .invert_matrix(&self.augment())
            .ok_or_else(|| Error::NotInvertible("augmentation is singular".into()))?;
        let e_inv = Self::lift(&self.ring, &aug_inv)?;
        let n = self.rows;
        let id = Self::identity(&self.ring, n);
        let alpha0 = e_inv.try_mul(self)?.try_sub(&id)?;
        let minus = alpha0.neg();
        let mut geo = id.clone();
        for _ in 0..self.ring.order() {
            geo = id.try_add(&minus.try_mul(&geo)?)?;
        }
        geo.try_mul(&e_inv)
    }

    /// `self ⊕ other` as a block diagonal matrix.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for (i, r) in self.entries.iter().enumerate() {
            for (j, s) in r.iter().enumerate() {
                out.entries[i][j] = s.clone();
            }
        }
        for (i, r) in other.entries.iter().enumerate() {
            for (j, s) in r.iter().enumerate() {
                out.entries[self.rows + i][self.cols + j] = s.clone();
            }
        }
        Ok(out)
    }

    /// Assembles `[[a, b], [c, d]]` from blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch("incompatible block shapes".into()));
        }
        for m in [b, c, d] {
            a.check_same(m)?;
        }
        let mut out = Self::zeros(&a.ring, a.rows + c.rows, a.cols + b.cols);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    out.entries[r0 + i][c0 + j] = blk.entries[i][j].clone();
                }
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let entries: Vec<Vec<_>> = self.entries[rows].iter().map(|r| r[cols.clone()].to_vec()).collect();
        SeriesMatrix {
            ring: self.ring.clone(),
            rows: entries.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Unique factorization `α = (1 0; l 1)(d₁ 0; 0 d₂)(1 u; 0 1)` of an n×n
    /// matrix with n ≥ 2 and identity augmentation.
    pub fn ldu_decompose(&self) -> Result<LduFactors<R>> {
        if !self.is_square() || self.rows < 2 {
            return Err(Error::DimensionMismatch(format!(
                "LDU needs a square matrix of size at least 2, got {}x{}",
                self.rows, self.cols
            )));
        }
        if !self.is_augmentation_identity() {
            return Err(Error::AugmentationNotIdentity);
        }
        let n = self.rows;
        let d1 = self.entries[0][0].clone();
        let d1_inv = d1.invert().map_err(|_| Error::NotInvertible("pivot is not a unit".into()))?;
        let l: Vec<_> = (1..n).map(|i| &self.entries[i][0] * &d1_inv).collect();
        let u: Vec<_> = (1..n).map(|j| &d1_inv * &self.entries[0][j]).collect();
        let mut d2 = self.submatrix(1..n, 1..n);
        for i in 0..n - 1 {
            if l[i].is_zero() {
                continue;
            }
            for j in 0..n - 1 {
                let correction = &l[i] * &self.entries[0][j + 1];
                d2.entries[i][j] = &d2.entries[i][j] - &correction;
            }
        }
        Ok(LduFactors { l, d1, d2, u })
    }

    /// The pivoting determinant. Requires identity augmentation.
    pub fn dieudonne_det(&self) -> Result<TwistedSeries<R>> {
        if !self.is_square() || self.rows == 0 {
            return Err(Error::DimensionMismatch("determinant needs a nonempty square matrix".into()));
        }
        if !self.is_augmentation_identity() {
            return Err(Error::AugmentationNotIdentity);
        }
        let mut acc = TwistedSeries::one(&self.ring);
        let mut current = self.clone();
        while current.rows >= 2 {
            let f = current.ldu_decompose()?;
            acc = &acc * &f.d1;
            current = f.d2;
        }
        Ok(&acc * &current.entries[0][0])
    }

    /// `D(self ⊕ I_k)`.
    pub fn det_stabilize(&self, k: usize) -> Result<TwistedSeries<R>> {
        self.direct_sum(&Self::identity(&self.ring, k))?.dieudonne_det()
    }

    /// Splits `α = j(ε(α))·α̃` with `ε(α̃) = 1`.
    pub fn split_augmentation(&self) -> Result<(Vec<Vec<R::Elem>>, Self)> {
        let c = self.augment();
        let c_inv = self
            .ring
            .coeff()
            .invert_matrix(&c)
            .ok_or_else(|| Error::NotInvertible("augmentation is singular".into()))?;
        let reduced = Self::lift(&self.ring, &c_inv)?.try_mul(self)?;
        Ok((c, reduced))
    }

    /// Determinant by Laplace expansion along the first row. Only meaningful
    /// for commutative coefficient rings with untwisted letters.
    pub fn cofactor_det(&self) -> Result<TwistedSeries<R>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("cofactor expansion needs a square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(TwistedSeries::one(&self.ring));
        }
        if n == 1 {
            return Ok(self.entries[0][0].clone());
        }
        let mut acc = TwistedSeries::zero(&self.ring);
        for j in 0..n {
            if self.entries[0][j].is_zero() {
                continue;
            }
            let minor_rows: Vec<Vec<_>> = self.entries[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, s)| s.clone()).collect())
                .collect();
            let minor = SeriesMatrix { ring: self.ring.clone(), rows: n - 1, cols: n - 1, entries: minor_rows };
            let term = &self.entries[0][j] * &minor.cofactor_det()?;
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        Ok(acc)
    }
}

/// Factors `l` (column), `d₁`, `d₂`, `u` (row) of the LDU form.
#[derive(Clone, Debug, PartialEq)]
pub struct LduFactors<R: CoeffRing> {
    pub l: Vec<TwistedSeries<R>>,
    pub d1: TwistedSeries<R>,
    pub d2: SeriesMatrix<R>,
    pub u: Vec<TwistedSeries<R>>,
}

impl<R: CoeffRing> LduFactors<R> {
    /// `ε(d₁) = 1`, `ε(d₂) = 1`, `ε(u) = 0`, `ε(l) = 0`.
    pub fn satisfies_augmentation_conditions(&self) -> bool {
        let c = self.d2.ring.coeff();
        c.is_one(&self.d1.augment())
            && self.d2.is_augmentation_identity()
            && self.l.iter().chain(&self.u).all(|s| c.is_zero(&s.augment()))
    }

    /// Multiplies the three factors back together.
    pub fn recompose(&self) -> Result<SeriesMatrix<R>> {
        let ring = self.d2.ring.clone();
        let m = self.d2.rows;
        if self.l.len() != m || self.u.len() != m {
            return Err(Error::DimensionMismatch("factor sizes disagree".into()));
        }
        let n = m + 1;
        let mut lower = SeriesMatrix::identity(&ring, n);
        let mut diag = SeriesMatrix::identity(&ring, n);
        let mut upper = SeriesMatrix::identity(&ring, n);
        diag.entries[0][0] = self.d1.clone();
        for i in 0..m {
            lower.entries[i + 1][0] = self.l[i].clone();
            upper.entries[0][i + 1] = self.u[i].clone();
            for j in 0..m {
                diag.entries[i + 1][j + 1] = self.d2.entries[i][j].clone();
            }
        }
        lower.try_mul(&diag)?.try_mul(&upper)
    }
}

/// Checks `1 − b(1 + ab)⁻¹a = (1 + ba)⁻¹` for `a` n×m and `b` m×n.
pub fn rearrange_inverses_check<R: CoeffRing>(a: &SeriesMatrix<R>, b: &SeriesMatrix<R>) -> Result<bool> {
    if a.cols != b.rows || a.rows != b.cols {
        return Err(Error::DimensionMismatch("need a: n×m and b: m×n".into()));
    }
    let ring = a.ring.clone();
    let one_n = SeriesMatrix::identity(&ring, a.rows);
    let one_m = SeriesMatrix::identity(&ring, a.cols);
    let ab_inv = one_n.try_add(&a.try_mul(b)?)?.invert()?;
    let ba_inv = one_m.try_add(&b.try_mul(a)?)?.invert()?;
    let lhs = one_m.try_sub(&b.try_mul(&ab_inv)?.try_mul(a)?)?;
    Ok(lhs == ba_inv)
}

/// Checks the block identity
/// `(1 −a; 0 1)(1+ab 0; 0 1)(1 0; b 1) = (1 0; b 1)(1 0; 0 1+ba)(1 −a; 0 1)`
/// for `a` n×m and `b` m×n.
pub fn whitehead_identity_check<R: CoeffRing>(a: &SeriesMatrix<R>, b: &SeriesMatrix<R>) -> Result<bool> {
    if a.cols != b.rows || a.rows != b.cols {
        return Err(Error::DimensionMismatch("need a: n×m and b: m×n".into()));
    }
    let ring = a.ring.clone();
    let (n, m) = (a.rows, a.cols);
    let one_n = SeriesMatrix::identity(&ring, n);
    let one_m = SeriesMatrix::identity(&ring, m);
    let z_nm = SeriesMatrix::zeros(&ring, n, m);
    let z_mn = SeriesMatrix::zeros(&ring, m, n);
    let upper = SeriesMatrix::from_blocks(&one_n, &a.neg(), &z_mn, &one_m)?;
    let lower = SeriesMatrix::from_blocks(&one_n, &z_nm, b, &one_m)?;
    let left_diag = SeriesMatrix::from_blocks(&one_n.try_add(&a.try_mul(b)?)?, &z_nm, &z_mn, &one_m)?;
    let right_diag = SeriesMatrix::from_blocks(&one_n, &z_nm, &z_mn, &one_m.try_add(&b.try_mul(a)?)?)?;
    let lhs = upper.try_mul(&left_diag)?.try_mul(&lower)?;
    let rhs = lower.try_mul(&right_diag)?.try_mul(&upper)?;
    Ok(lhs == rhs)
}
