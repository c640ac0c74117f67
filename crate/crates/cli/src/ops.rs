use std::sync::Arc;

use locaug::coeff::{AnyRing, CoeffRing, GroupAlgebra, RingDescription};
use locaug::kgroup::{
    c_generator, coset_probably_equal, cyc_log, endo_class_invariant, exact_sequence_additivity_check,
    vaserstein_transform, CGenerator, Flavor,
};
use locaug::matops::SeriesMatrix;
use locaug::novikov::{orbit_counts, w1_invariant, NovikovRing, NovikovSeries};
use locaug::tps::{parse_series_value, series_ring_from_description, SeriesRing, TwistedSeries};
use locaug::with_ring;
use serde_json::{json, Map, Value};

use crate::{schema, JobDocument, JobError, Operands};

type Ring<R> = Arc<SeriesRing<R>>;

pub(crate) fn dispatch(desc: &RingDescription, job: &JobDocument) -> Result<Value, JobError> {
    if let (AnyRing::Group(g), "novikov") = (&desc.coeff, job.operation.as_str()) {
        return novikov_group(g.clone(), desc, job);
    }
    with_ring!(desc.coeff.clone(), r => execute(r, desc, job))
}

fn execute<R: CoeffRing>(coeff: R, desc: &RingDescription, job: &JobDocument) -> Result<Value, JobError> {
    let mut ops = Operands::new(&job.operands);
    let n = job.order;
    let doc = match job.operation.as_str() {
        "endoclass" => {
            let alpha = coeff_matrix(&coeff, ops.required("alpha")?)?;
            let inv = endo_class_invariant(&coeff, &alpha, n)?;
            let mut doc = json!({"class": inv.to_literal()});
            if coeff.contains_rationals() && coeff.trace(&coeff.one()).is_ok() {
                doc["cyclog"] = cyc_log(&inv)?.to_json();
            }
            doc
        }
        "addcheck" => {
            let alpha = coeff_matrix(&coeff, ops.required("alpha")?)?;
            let alpha2 = coeff_matrix(&coeff, ops.required("alpha2")?)?;
            let coupling = coeff_matrix(&coeff, ops.required("coupling")?)?;
            json!({"additive": exact_sequence_additivity_check(&coeff, &alpha, &alpha2, &coupling, n)?})
        }
        _ => {
            let ring = series_ring_from_description(coeff, desc, n)?;
            series_operation(&ring, &job.operation, &mut ops)?
        }
    };
    ops.finish()?;
    Ok(doc)
}

fn series_operation<R: CoeffRing>(ring: &Ring<R>, op: &str, ops: &mut Operands) -> Result<Value, JobError> {
    let series = |ops: &mut Operands, key: &str| -> Result<TwistedSeries<R>, JobError> {
        Ok(parse_series_value(ring, ops.required(key)?)?)
    };
    Ok(match op {
        "inv" => match (ops.optional("series"), ops.optional("matrix")) {
            (Some(s), None) => json!({"inverse": parse_series_value(ring, s)?.invert()?.to_literal()}),
            (None, Some(m)) => json!({"inverse": matrix_to_json(&parse_matrix(ring, m)?.invert()?)}),
            _ => return Err(schema("inv takes exactly one of \"series\" or \"matrix\"")),
        },
        "mul" => {
            let factors = ops.required("factors")?.as_array().ok_or_else(|| schema("\"factors\" must be an array"))?;
            let mut acc = TwistedSeries::one(ring);
            for f in factors {
                acc = acc.try_mul(&parse_series_value(ring, f)?)?;
            }
            json!({"product": acc.to_literal()})
        }
        "log" => json!({"log": series(ops, "series")?.log()?.to_literal()}),
        "ldu" => {
            let f = parse_matrix(ring, ops.required("matrix")?)?.ldu_decompose()?;
            json!({
                "l": f.l.iter().map(TwistedSeries::to_literal).collect::<Vec<_>>(),
                "d1": f.d1.to_literal(),
                "d2": matrix_to_json(&f.d2),
                "u": f.u.iter().map(TwistedSeries::to_literal).collect::<Vec<_>>(),
            })
        }
        "det" => {
            let m = parse_matrix(ring, ops.required("matrix")?)?;
            let (aug, reduced) = m.split_augmentation()?;
            let mut doc = json!({"det": reduced.dieudonne_det()?.to_literal()});
            if !m.is_augmentation_identity() {
                let c = ring.coeff();
                let rows: Vec<Vec<String>> = aug.iter().map(|r| r.iter().map(|a| c.format_elem(a)).collect()).collect();
                doc["augmentation"] = json!(rows);
            }
            doc
        }
        "cgen" => {
            let a = series(ops, "a")?;
            let b = series(ops, "b")?;
            let flavor = match ops.optional_str("flavor")? {
                Some(name) => Some(Flavor::from_name(&name).ok_or_else(|| schema(format!("unknown flavor {name:?}")))?),
                None => Flavor::ALL.into_iter().find(|f| f.holds(&a, &b)),
            };
            let mut doc = Map::new();
            match flavor {
                Some(flavor) => {
                    let g = CGenerator::new(a, b, flavor)?;
                    let k = g.in_kernel()?;
                    doc.insert("flavor".into(), json!(flavor.name()));
                    doc.insert("generator".into(), json!(g.value()?.to_literal()));
                    doc.insert("in_kernel".into(), json!(k.to_literal()));
                    if let Ok(v) = cyc_log(&k) {
                        doc.insert("cyclog".into(), v.to_json());
                    }
                }
                None => {
                    doc.insert("flavor".into(), Value::Null);
                    doc.insert("generator".into(), json!(c_generator(&a, &b)?.to_literal()));
                }
            }
            Value::Object(doc)
        }
        "vaserstein" => {
            let a = series(ops, "a")?;
            let b = series(ops, "b")?;
            let c = series(ops, "c")?;
            let (b2, holds) = vaserstein_transform(&a, &b, &c)?;
            json!({"b_prime": b2.to_literal(), "identity_holds": holds})
        }
        "cyclog" => json!({"cyclog": cyc_log(&series(ops, "series")?)?.to_json()}),
        "coset" => {
            let u = series(ops, "u")?;
            let v = series(ops, "v")?;
            json!({"verdict": coset_probably_equal(&u, &v)?.name()})
        }
        "novikov" => novikov_common(ring, ops)?.0,
        other => return Err(schema(format!("operation {other:?} is not a series operation"))),
    })
}

fn novikov_common<R: CoeffRing>(
    ring: &Ring<R>,
    ops: &mut Operands,
) -> Result<(Value, NovikovSeries<R>), JobError> {
    let shift = ops.optional_usize("shift")?.unwrap_or(0);
    let max_shift = ops.optional_usize("max_shift")?.unwrap_or(ring.order());
    let base = parse_series_value(ring, ops.required("series")?)?;
    let nring = NovikovRing::new(ring.clone(), max_shift)?;
    let u = NovikovSeries::new(&nring, &base, shift)?;
    let mut doc = Map::new();
    doc.insert("series".into(), json!(u.to_literal()));
    doc.insert("precision".into(), json!(u.precision()));
    match u.invert() {
        Ok(inv) => {
            doc.insert("inverse".into(), json!(inv.to_literal()));
            doc.insert("inverse_precision".into(), json!(inv.precision()));
        }
        Err(e) => {
            doc.insert("inverse".into(), Value::Null);
            doc.insert("inverse_error".into(), json!(e.kind()));
        }
    }
    match w1_invariant(&u) {
        Ok(v) => doc.insert("w1".into(), v.to_json()),
        Err(_) => doc.insert("w1".into(), Value::Null),
    };
    Ok((Value::Object(doc), u))
}

fn novikov_group(coeff: GroupAlgebra, desc: &RingDescription, job: &JobDocument) -> Result<Value, JobError> {
    let mut ops = Operands::new(&job.operands);
    let ring = series_ring_from_description(coeff, desc, job.order)?;
    let lefschetz = ops.optional_bool("lefschetz")?.unwrap_or(false);
    let (mut doc, u) = novikov_common(&ring, &mut ops)?;
    ops.finish()?;
    doc["orbit_counts"] = match orbit_counts(&u, lefschetz) {
        Ok(r) => r.to_json(),
        Err(_) => Value::Null,
    };
    Ok(doc)
}

fn parse_matrix<R: CoeffRing>(ring: &Ring<R>, v: &Value) -> Result<SeriesMatrix<R>, JobError> {
    let obj = v.as_object().ok_or_else(|| schema("matrix must be an object {\"n\", \"entries\"}"))?;
    if let Some(k) = obj.keys().find(|k| *k != "n" && *k != "entries") {
        return Err(schema(format!("unknown matrix field {k:?}")));
    }
    let n = obj.get("n").and_then(Value::as_u64).ok_or_else(|| schema("matrix needs an integer \"n\""))? as usize;
    let rows = obj.get("entries").and_then(Value::as_array).ok_or_else(|| schema("matrix needs \"entries\""))?;
    if rows.len() != n {
        return Err(schema(format!("matrix has {} rows, expected {n}", rows.len())));
    }
    let entries = rows
        .iter()
        .map(|row| {
            let row = row.as_array().filter(|r| r.len() == n).ok_or_else(|| schema(format!("each row needs {n} entries")))?;
            row.iter().map(|s| Ok(parse_series_value(ring, s)?)).collect::<Result<Vec<_>, JobError>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SeriesMatrix::new(ring, entries)?)
}

fn matrix_to_json<R: CoeffRing>(m: &SeriesMatrix<R>) -> Value {
    let entries: Vec<Vec<String>> = m.entries().iter().map(|r| r.iter().map(TwistedSeries::to_literal).collect()).collect();
    json!({"n": m.rows(), "entries": entries})
}

/// Coefficient matrix given as rows of element strings; `[]` is the empty matrix.
fn coeff_matrix<R: CoeffRing>(coeff: &R, v: &Value) -> Result<Vec<Vec<R::Elem>>, JobError> {
    let rows = v.as_array().ok_or_else(|| schema("coefficient matrix must be an array of rows"))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| schema("coefficient matrix rows must be arrays"))?
                .iter()
                .map(|a| match a {
                    Value::String(s) => Ok(coeff.parse_elem(s)?),
                    Value::Number(x) => Ok(coeff.parse_elem(&x.to_string())?),
                    _ => Err(schema("coefficients must be strings")),
                })
                .collect()
        })
        .collect()
}
