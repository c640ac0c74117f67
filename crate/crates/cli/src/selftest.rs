//! Seeded property ensembles, one named identity per check.

use std::sync::Arc;

use locaug::coeff::{
    ring_axiom_check, CoeffRing, FreeAlgebra, GroupAlgebra, GroupTable, MatrixRing, ProductRing, Rationals, ZMod,
};
use locaug::kgroup::{commutator_as_c_generator, cyc_log, vaserstein_transform, Flavor};
use locaug::matops::SeriesMatrix;
use locaug::novikov::{twisted_partition_check, w1_invariant, NovikovRing, NovikovSeries};
use locaug::random;
use locaug::tps::{SeriesRing, TwistedSeries};
use locaug::Result;
use rand::{Rng, RngCore};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{schema, JobError};

pub const SUITES: [&str; 7] = ["coeff", "ldu", "dieudonne", "dieudonne-commutative", "cgroup", "cyclog", "novikov"];

const CASES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub identity: String,
    pub ring: String,
    pub cases: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

struct Runner<'a> {
    suite: &'a str,
    rng: &'a mut dyn RngCore,
    checks: Vec<Check>,
}

impl Runner<'_> {
    /// Runs `case` `cases` times; it returns a witness string on failure.
    fn check(
        &mut self,
        identity: &str,
        ring: &str,
        cases: usize,
        mut case: impl FnMut(&mut dyn RngCore) -> Result<Option<String>>,
    ) {
        let mut witness = None;
        for _ in 0..cases {
            match case(&mut *self.rng) {
                Ok(None) => {}
                Ok(Some(w)) => witness = Some(w),
                Err(e) => witness = Some(format!("{}: {e}", e.kind())),
            }
            if witness.is_some() {
                break;
            }
        }
        self.checks.push(Check {
            suite: self.suite.to_string(),
            identity: identity.to_string(),
            ring: ring.to_string(),
            cases,
            passed: witness.is_none(),
            witness,
        });
    }
}

fn verdict(ok: bool, witness: impl FnOnce() -> String) -> Result<Option<String>> {
    Ok(if ok { None } else { Some(witness()) })
}

fn series_ring<R: CoeffRing>(coeff: R, letters: &str, n: usize) -> Arc<SeriesRing<R>> {
    SeriesRing::new(coeff, letters, n).expect("fixed alphabet").shared()
}

fn free(n: usize) -> Arc<SeriesRing<FreeAlgebra>> {
    series_ring(FreeAlgebra::new("yz", n.max(1)).expect("two generators"), "x", n)
}

fn m2(n: usize) -> Arc<SeriesRing<MatrixRing>> {
    series_ring(MatrixRing::new(2).expect("size 2"), "x", n)
}

fn swap_product() -> ProductRing {
    ProductRing::new(2).expect("two factors").with_automorphism("swap", vec![1, 0]).expect("permutation")
}

fn swap(letter: &str, n: usize) -> Arc<SeriesRing<ProductRing>> {
    SeriesRing::new(swap_product(), letter, n)
        .and_then(|r| r.with_twist(letter.chars().next().unwrap(), "swap"))
        .expect("swap twist")
        .shared()
}

fn c3_inverse(letters: &str, n: usize) -> Arc<SeriesRing<GroupAlgebra>> {
    let a = GroupAlgebra::new(GroupTable::cyclic(3)).with_automorphism("inv", vec![0, 2, 1]).expect("automorphism");
    SeriesRing::new(a, letters, n)
        .and_then(|r| r.with_twist(letters.chars().next().unwrap(), "inv"))
        .expect("inv twist")
        .shared()
}

fn label<R: CoeffRing>(ring: &Arc<SeriesRing<R>>) -> String {
    let twisted: Vec<String> = ring
        .letters()
        .iter()
        .filter_map(|&c| ring.twist_name(c).map(|t| format!("{c}:{t}")))
        .collect();
    let letters: String = ring.letters().iter().collect();
    if twisted.is_empty() {
        format!("{}<<{letters}>>", ring.coeff().name())
    } else {
        format!("{}<<{letters}>> twisted {}", ring.coeff().name(), twisted.join(","))
    }
}

fn dlog<R: CoeffRing>(m: &SeriesMatrix<R>) -> Result<locaug::kgroup::CycLogVector> {
    cyc_log(&m.dieudonne_det()?)
}

fn ldu_suite<R: CoeffRing>(t: &mut Runner, ring: &Arc<SeriesRing<R>>) {
    let name = label(ring);
    t.check("M = (1 0; l 1)(d1 0; 0 d2)(1 u; 0 1)", &name, CASES, |g| {
        let n = g.gen_range(2..=4);
        let m = random::unipotent_matrix(ring, n, g);
        let f = m.ldu_decompose()?;
        verdict(f.recompose()? == m && f.satisfies_augmentation_conditions(), || format!("{m:?}"))
    });
    t.check("LDU(L D U) = (L, D, U)", &name, CASES, |g| {
        let n = g.gen_range(2..=4);
        let m = random::unipotent_matrix(ring, n, g);
        let f = m.ldu_decompose()?;
        verdict(f.recompose()?.ldu_decompose()? == f, || format!("{m:?}"))
    });
}

fn dieudonne_suite<R: CoeffRing>(t: &mut Runner, ring: &Arc<SeriesRing<R>>) {
    let name = label(ring);
    t.check("M M^-1 = M^-1 M = I", &name, CASES, |g| {
        let n = g.gen_range(1..=4);
        let m = random::unipotent_matrix(ring, n, g);
        let inv = m.invert()?;
        let id = SeriesMatrix::identity(ring, n);
        verdict(m.try_mul(&inv)? == id && inv.try_mul(&m)? == id, || format!("{m:?}"))
    });
    t.check("D(M + I_k) = D(M)", &name, CASES, |g| {
        let n = g.gen_range(1..=3);
        let m = random::unipotent_matrix(ring, n, g);
        verdict(m.det_stabilize(g.gen_range(1..=2))? == m.dieudonne_det()?, || format!("{m:?}"))
    });
    t.check("D([[A, B], [0, C]]) = D(A) D(C)", &name, CASES, |g| {
        let (p, q) = (g.gen_range(1..=2), g.gen_range(1..=2));
        let a = random::unipotent_matrix(ring, p, g);
        let c = random::unipotent_matrix(ring, q, g);
        let b = random::augmentation_zero_matrix(ring, p, q, g);
        let whole = SeriesMatrix::from_blocks(&a, &b, &SeriesMatrix::zeros(ring, q, p), &c)?;
        verdict(whole.dieudonne_det()? == &a.dieudonne_det()? * &c.dieudonne_det()?, || format!("{whole:?}"))
    });
    t.check("cyc_log D(MN) = cyc_log D(M) + cyc_log D(N)", &name, CASES, |g| {
        let n = g.gen_range(1..=3);
        let a = random::unipotent_matrix(ring, n, g);
        let b = random::unipotent_matrix(ring, n, g);
        verdict(dlog(&a.try_mul(&b)?)? == dlog(&a)?.try_add(&dlog(&b)?)?, || format!("{a:?} {b:?}"))
    });
}

fn commutative_suite(t: &mut Runner, ring: &Arc<SeriesRing<Rationals>>) {
    let name = label(ring);
    t.check("D(M) = cofactor expansion of det M", &name, CASES, |g| {
        let n = g.gen_range(1..=4);
        let m = random::unipotent_matrix(ring, n, g);
        verdict(m.dieudonne_det()? == m.cofactor_det()?, || format!("{m:?}"))
    });
    t.check("D(MN) = D(M) D(N)", &name, CASES, |g| {
        let n = g.gen_range(1..=4);
        let a = random::unipotent_matrix(ring, n, g);
        let b = random::unipotent_matrix(ring, n, g);
        let lhs = a.try_mul(&b)?.dieudonne_det()?;
        verdict(lhs == &a.dieudonne_det()? * &b.dieudonne_det()?, || format!("{a:?} {b:?}"))
    });
}

fn cgroup_suite<R: CoeffRing>(t: &mut Runner, ring: &Arc<SeriesRing<R>>) {
    let name = label(ring);
    for flavor in Flavor::ALL {
        t.check(&format!("cyc_log (1 + ab)(1 + ba)^-1 = 0 [{}]", flavor.name()), &name, CASES, |g| {
            let c = random::c_generator(ring, flavor, g)?;
            let v = cyc_log(&c.in_kernel()?)?;
            verdict(v.is_zero(), || format!("a = {:?}, b = {:?}", c.a(), c.b()))
        });
    }
    t.check("u v u^-1 v^-1 = (1 + ab)(1 + ba)^-1 with a = uv - u, b = u^-1", &name, CASES, |g| {
        let u = random::unit(ring, g);
        let v = random::unipotent(ring, g);
        let w = commutator_as_c_generator(&u, &v)?;
        verdict(w.verified && cyc_log(&w.commutator)?.is_zero(), || format!("u = {u:?}, v = {v:?}"))
    });
    let x = TwistedSeries::letter(ring, ring.letters()[0]).expect("first letter");
    t.check("(1 + ab)(1 + ba)^-1 = (1 + ab')(1 + b'a)^-1 with b' = b + c + bac, ac = ca", &name, CASES, |g| {
        let a = random::augmentation_zero(ring, g);
        let b = random::any_series(ring, g);
        let k = g.gen_range(-2i64..=2);
        let c = if ring.is_twisted() {
            a.scale_left(&ring.coeff().from_integer(k))
        } else {
            &TwistedSeries::lift(ring, ring.coeff().from_integer(k)) + &x.pow(g.gen_range(1..=2))
        };
        let (_, holds) = vaserstein_transform(&a, &b, &c)?;
        verdict(holds, || format!("a = {a:?}, b = {b:?}, c = {c:?}"))
    });
}

fn cyclog_suite<R: CoeffRing>(t: &mut Runner, ring: &Arc<SeriesRing<R>>) {
    let name = label(ring);
    t.check("cyc_log(uv) = cyc_log(u) + cyc_log(v)", &name, CASES, |g| {
        let u = random::unipotent(ring, g);
        let v = random::unipotent(ring, g);
        verdict(cyc_log(&(&u * &v))? == cyc_log(&u)?.try_add(&cyc_log(&v)?)?, || format!("{u:?} {v:?}"))
    });
    t.check("cyc_log D(1 + ab) = cyc_log D(1 + ba)", &name, CASES, |g| {
        let (p, q) = (g.gen_range(1..=3), g.gen_range(1..=2));
        let a = random::augmentation_zero_matrix(ring, p, q, g);
        let entries = (0..q).map(|_| (0..p).map(|_| random::any_series(ring, g)).collect()).collect();
        let b = SeriesMatrix::new(ring, entries)?;
        let ab = SeriesMatrix::identity(ring, p).try_add(&a.try_mul(&b)?)?;
        let ba = SeriesMatrix::identity(ring, q).try_add(&b.try_mul(&a)?)?;
        verdict(dlog(&ab)? == dlog(&ba)?, || format!("{a:?} {b:?}"))
    });
}

fn novikov_suite<R: CoeffRing>(t: &mut Runner, z: &Arc<SeriesRing<R>>) {
    let name = label(z);
    let nring = match NovikovRing::new(z.clone(), z.order()) {
        Ok(r) => r,
        Err(e) => {
            t.check("Novikov ring construction", &name, 1, |_| Err(e.clone()));
            return;
        }
    };
    t.check("w1(uv) = w1(u) + w1(v)", &name, CASES, |g| {
        let u = NovikovSeries::from_series(&nring, &random::unipotent(z, g))?;
        let v = NovikovSeries::from_series(&nring, &random::unipotent(z, g))?;
        verdict(w1_invariant(&u.try_mul(&v)?)? == w1_invariant(&u)?.try_add(&w1_invariant(&v)?)?, || {
            format!("{u:?} {v:?}")
        })
    });
    t.check("u u^-1 = u^-1 u = 1", &name, CASES, |g| {
        let shift = g.gen_range(0..=z.order().min(2));
        let base = random::unit(z, g);
        let u = NovikovSeries::new(&nring, &base, shift)?;
        let inv = u.invert()?;
        verdict(u.try_mul(&inv)?.is_one() && inv.try_mul(&u)?.is_one(), || format!("{u:?}"))
    });
}

fn partition_checks(t: &mut Runner) {
    let groups = [GroupTable::symmetric3(), GroupTable::cyclic(6)];
    for group in groups {
        let name = format!("Q[{}]", group.names().join(","));
        let auts: Vec<Vec<usize>> = (0..group.order()).map(|g| group.inner_automorphism(g)).collect();
        let inverse: Vec<usize> = (0..group.order()).map(|g| group.inverse(g)).collect();
        let mut candidates = auts.clone();
        if group.is_abelian() {
            candidates.push(inverse);
        }
        t.check("twisted classes partition G and are closed under k g phi(k)^-1 and sigma", &name, 1, |_| {
            let mut ok = true;
            for phi in &candidates {
                for sigma in &candidates {
                    let commute = (0..group.order()).all(|g| phi[sigma[g]] == sigma[phi[g]]);
                    if commute && !twisted_partition_check(&group, phi, sigma) {
                        ok = false;
                    }
                }
            }
            verdict(ok, || "partition failed".into())
        });
    }
}

fn axioms<R: CoeffRing>(t: &mut Runner, ring: R, seed: u64) {
    let report = ring_axiom_check(&ring, CASES, seed);
    for o in report.outcomes {
        t.checks.push(Check {
            suite: t.suite.to_string(),
            identity: o.axiom,
            ring: report.ring.clone(),
            cases: report.samples,
            passed: o.passed,
            witness: o.witness,
        });
    }
}

/// Runs one suite with the given seed and truncation order.
pub fn selftest(suite: &str, seed: u64, order: usize) -> Option<Vec<Check>> {
    let mut rng = random::rng(seed);
    let mut t = Runner { suite, rng: &mut rng, checks: Vec::new() };
    let n = order;
    match suite {
        "coeff" => {
            axioms(&mut t, Rationals, seed);
            axioms(&mut t, ZMod::new(6).expect("modulus"), seed);
            axioms(&mut t, MatrixRing::new(2).expect("size"), seed);
            axioms(&mut t, GroupAlgebra::new(GroupTable::symmetric3()), seed);
            axioms(&mut t, FreeAlgebra::new("yz", n.max(1)).expect("generators"), seed);
            axioms(&mut t, swap_product(), seed);
        }
        "ldu" => {
            ldu_suite(&mut t, &free(n));
            ldu_suite(&mut t, &m2(n));
            ldu_suite(&mut t, &c3_inverse("xy", n));
        }
        "dieudonne" => {
            dieudonne_suite(&mut t, &free(n));
            dieudonne_suite(&mut t, &m2(n));
            dieudonne_suite(&mut t, &c3_inverse("xy", n));
        }
        "dieudonne-commutative" => commutative_suite(&mut t, &series_ring(Rationals, "x", n)),
        "cgroup" => {
            cgroup_suite(&mut t, &free(n));
            cgroup_suite(&mut t, &m2(n));
            cgroup_suite(&mut t, &swap("x", n));
        }
        "cyclog" => {
            cyclog_suite(&mut t, &free(n));
            cyclog_suite(&mut t, &m2(n));
            cyclog_suite(&mut t, &swap("x", n));
            cyclog_suite(&mut t, &c3_inverse("xy", n));
        }
        "novikov" => {
            novikov_suite(&mut t, &c3_inverse("z", n));
            novikov_suite(&mut t, &swap("z", n));
            novikov_suite(&mut t, &series_ring(GroupAlgebra::new(GroupTable::symmetric3()), "z", n));
            partition_checks(&mut t);
        }
        _ => return None,
    }
    Some(t.checks)
}

/// Report document for one suite, or all of them when `suite` is `None`.
pub(crate) fn report(suite: Option<&str>, seed: u64, order: usize) -> std::result::Result<(Value, bool), JobError> {
    let names: Vec<&str> = match suite {
        Some(s) if SUITES.contains(&s) => vec![s],
        Some(s) => return Err(schema(format!("unknown suite {s:?}; expected one of {SUITES:?}"))),
        None => SUITES.to_vec(),
    };
    let mut checks = Vec::new();
    for name in names {
        checks.extend(selftest(name, seed, order).expect("known suite"));
    }
    let passed = checks.iter().all(|c| c.passed);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let doc = json!({
        "seed": seed,
        "order": order,
        "passed": passed,
        "failed": failed,
        "checks": serde_json::to_value(&checks).expect("plain data"),
    });
    Ok((doc, passed))
}
