use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use super::CoeffRing;
use crate::{linalg, Error, Result, Q};

/// Integers modulo `m`. Elements are canonical residues in `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMod {
    modulus: u64,
}

impl ZMod {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidRing(format!("modulus must be at least 2, got {modulus}")));
        }
        Ok(ZMod { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        n.mod_floor(&m).to_u64().expect("residue fits in u64")
    }
}

impl CoeffRing for ZMod {
    type Elem = u64;
    type Aut = ();

    fn name(&self) -> String {
        format!("Z/{}", self.modulus)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn is_unit(&self, a: &u64) -> bool {
        a.gcd(&self.modulus) == 1
    }
    fn invert(&self, a: &u64) -> Result<u64> {
        let e = (*a as i128).extended_gcd(&(self.modulus as i128));
        if e.gcd != 1 {
            return Err(Error::NotAUnit(a.to_string()));
        }
        Ok(e.x.rem_euclid(self.modulus as i128) as u64)
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn from_integer(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.modulus as i128) as u64
    }
    fn from_rational(&self, _q: &Q) -> Result<u64> {
        Err(Error::NeedsRationalCoefficients)
    }
    fn contains_rationals(&self) -> bool {
        false
    }

    fn aut_identity(&self) {}
    fn aut_apply(&self, _: &(), a: &u64) -> u64 {
        *a
    }
    fn aut_compose(&self, _: &(), _: &()) {}
    fn aut_inverse(&self, _: &()) {}
    fn aut_is_identity(&self, _: &()) -> bool {
        true
    }
    fn automorphism(&self, name: &str) -> Option<()> {
        (name == "id").then_some(())
    }
    fn automorphism_names(&self) -> Vec<String> {
        vec!["id".into()]
    }

    /// Adjugate over the integers, reduced mod m and scaled by det⁻¹.
    fn invert_matrix(&self, m: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
        let lifted: Vec<Vec<Q>> = m
            .iter()
            .map(|row| row.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect())
            .collect();
        let det = linalg::det(&lifted);
        let det_inv = self.invert(&self.reduce_big(&det.to_integer())).ok()?;
        let inv = linalg::inverse(&lifted)?;
        let out = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let adj = x * &det;
                        debug_assert!(adj.is_integer());
                        self.mul(&self.reduce_big(&adj.to_integer()), &det_inv)
                    })
                    .collect()
            })
            .collect();
        Some(out)
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<u64> {
        let t = s.trim();
        let n: BigInt = t
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))?;
        Ok(self.reduce_big(&n))
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_mod_twelve() {
        let r = ZMod::new(12).unwrap();
        assert!(r.is_unit(&5));
        assert!(!r.is_unit(&4));
        assert_eq!(r.invert(&5).unwrap(), 5);
        assert_eq!(r.invert(&7).unwrap(), 7);
        assert!(r.invert(&6).is_err());
        assert_eq!(r.parse_elem("-1").unwrap(), 11);
    }

    #[test]
    fn matrix_inverse_mod_m() {
        let r = ZMod::new(10).unwrap();
        let m = vec![vec![1, 2], vec![3, 7]];
        let inv = r.invert_matrix(&m).unwrap();
        assert_eq!(super::super::matrix_mul(&r, &m, &inv), vec![vec![1, 0], vec![0, 1]]);
        assert!(r.invert_matrix(&[vec![2, 0], vec![0, 1]]).is_none());
    }
}
