use num_traits::{One, Zero};
use rand::RngCore;

use super::{random_small_rational, CoeffRing, TraceVector};
use crate::{linalg, Error, Result, Q};

/// The field of rational numbers. Its only automorphism is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elem = Q;
    type Aut = ();

    fn name(&self) -> String {
        "Q".into()
    }
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &Q) -> bool {
        !a.is_zero()
    }
    fn invert(&self, a: &Q) -> Result<Q> {
        if a.is_zero() {
            Err(Error::NotAUnit("0".into()))
        } else {
            Ok(a.recip())
        }
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn from_integer(&self, n: i64) -> Q {
        Q::from_integer(n.into())
    }
    fn from_rational(&self, q: &Q) -> Result<Q> {
        Ok(q.clone())
    }
    fn contains_rationals(&self) -> bool {
        true
    }
    fn trace(&self, a: &Q) -> Result<TraceVector> {
        let mut t = TraceVector::new();
        if !a.is_zero() {
            t.insert(String::new(), a.clone());
        }
        Ok(t)
    }

    fn aut_identity(&self) {}
    fn aut_apply(&self, _: &(), a: &Q) -> Q {
        a.clone()
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

    fn invert_matrix(&self, m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
        linalg::inverse(m)
    }

    fn format_elem(&self, a: &Q) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<Q> {
        super::parse_rational(s)
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> Q {
        random_small_rational(rng)
    }
}
