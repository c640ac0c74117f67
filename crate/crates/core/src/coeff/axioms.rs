//! Randomized verification of the ring axioms on a coefficient ring.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::CoeffRing;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome {
    pub axiom: String,
    pub passed: bool,
    /// Offending sample, formatted, for the first failure.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub ring: String,
    pub samples: usize,
    pub seed: u64,
    pub outcomes: Vec<AxiomOutcome>,
    /// Whether every sampled pair commuted. Not an axiom.
    pub commutative: bool,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

struct Tally {
    outcomes: Vec<AxiomOutcome>,
}

impl Tally {
    fn record(&mut self, axiom: &str, ok: bool, witness: impl FnOnce() -> String) {
        match self.outcomes.iter_mut().find(|o| o.axiom == axiom) {
            Some(o) => {
                if o.passed && !ok {
                    o.passed = false;
                    o.witness = Some(witness());
                }
            }
            None => self.outcomes.push(AxiomOutcome {
                axiom: axiom.to_string(),
                passed: ok,
                witness: (!ok).then(witness),
            }),
        }
    }
}

/// Checks associativity, distributivity, unit laws, inverses, trace
/// cyclicity and multiplicativity of every registered automorphism on
/// `samples` random triples drawn from a ChaCha stream seeded by `seed`.
pub fn ring_axiom_check<R: CoeffRing>(ring: &R, samples: usize, seed: u64) -> AxiomReport {
    assert!(samples >= 1, "at least one sample is required");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally { outcomes: Vec::new() };
    let mut commutative = true;
    let auts: Vec<(String, R::Aut)> = ring
        .automorphism_names()
        .into_iter()
        .filter_map(|n| ring.automorphism(&n).map(|a| (n, a)))
        .collect();
    let has_trace = ring.trace(&ring.one()).is_ok();
    for _ in 0..samples {
        let a = ring.random_elem(&mut rng);
        let b = ring.random_elem(&mut rng);
        let c = ring.random_elem(&mut rng);
        let w = || {
            format!(
                "a = {}, b = {}, c = {}",
                ring.format_elem(&a),
                ring.format_elem(&b),
                ring.format_elem(&c)
            )
        };
        let add = |x: &R::Elem, y: &R::Elem| ring.add(x, y);
        let mul = |x: &R::Elem, y: &R::Elem| ring.mul(x, y);

        t.record("additive associativity", add(&add(&a, &b), &c) == add(&a, &add(&b, &c)), w);
        t.record("additive commutativity", add(&a, &b) == add(&b, &a), w);
        t.record("additive identity", add(&a, &ring.zero()) == a, w);
        t.record("additive inverse", ring.is_zero(&add(&a, &ring.neg(&a))), w);
        t.record("multiplicative associativity", mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c)), w);
        t.record("left distributivity", mul(&a, &add(&b, &c)) == add(&mul(&a, &b), &mul(&a, &c)), w);
        t.record("right distributivity", mul(&add(&a, &b), &c) == add(&mul(&a, &c), &mul(&b, &c)), w);
        t.record("multiplicative identity", mul(&a, &ring.one()) == a && mul(&ring.one(), &a) == a, w);
        if mul(&a, &b) != mul(&b, &a) {
            commutative = false;
        }
        if ring.is_unit(&a) {
            let ok = match ring.invert(&a) {
                Ok(inv) => {
                    ring.is_one(&mul(&a, &inv))
                        && ring.is_one(&mul(&inv, &a))
                        && ring.invert(&inv).map(|x| x == a).unwrap_or(false)
                }
                Err(_) => false,
            };
            t.record("two-sided inverse", ok, w);
        }
        if has_trace {
            let ok = matches!((ring.trace(&mul(&a, &b)), ring.trace(&mul(&b, &a))), (Ok(x), Ok(y)) if x == y);
            t.record("trace(ab) = trace(ba)", ok, w);
        }
        for (name, s) in &auts {
            let sab = ring.aut_apply(s, &mul(&a, &b));
            let ok = sab == mul(&ring.aut_apply(s, &a), &ring.aut_apply(s, &b))
                && ring.aut_apply(s, &add(&a, &b)) == add(&ring.aut_apply(s, &a), &ring.aut_apply(s, &b))
                && ring.is_one(&ring.aut_apply(s, &ring.one()))
                && ring.aut_apply(&ring.aut_inverse(s), &ring.aut_apply(s, &a)) == a;
            t.record(&format!("automorphism {name}"), ok, w);
            if has_trace {
                let lhs = ring.twisted_trace(&mul(&a, &b), s);
                let rhs = ring.twisted_trace(&mul(&b, &ring.aut_apply(s, &a)), s);
                let ok = match (lhs, rhs) {
                    (Ok(x), Ok(y)) => x == y,
                    (Err(Error::UnsupportedTwist(_)), Err(Error::UnsupportedTwist(_))) => true,
                    _ => false,
                };
                t.record(&format!("twisted trace {name}: tr(ab) = tr(b {name}(a))"), ok, w);
            }
        }
    }
    AxiomReport { ring: ring.name(), samples, seed, outcomes: t.outcomes, commutative }
}
