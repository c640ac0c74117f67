//! JSON ring description documents.
//!
//! ```text
//! {"kind": "rationals" | "zmod" | "matrix" | "group_algebra" | "free_trunc" | "product",
//!  <kind parameters>, "automorphisms": {name: spec},
//!  "alphabet": "xy", "twist": {"x": name}, "commuting": false}
//! ```
//! The last three keys describe the series ring built over the coefficients.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use super::{lincomb, FreeAlgebra, GroupAlgebra, GroupTable, MatrixRing, ProductRing, Rationals, ZMod};
use super::CoeffRing;
use crate::{Error, Result, Q};

/// A coefficient ring of any supported kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyRing {
    Rationals(Rationals),
    ZMod(ZMod),
    Matrix(MatrixRing),
    Group(GroupAlgebra),
    Free(FreeAlgebra),
    Product(ProductRing),
}

/// Runs `$body` with `$r` bound to the concrete ring inside an [`AnyRing`].
#[macro_export]
macro_rules! with_ring {
    ($any:expr, $r:ident => $body:expr) => {
        match $any {
            $crate::coeff::AnyRing::Rationals($r) => $body,
            $crate::coeff::AnyRing::ZMod($r) => $body,
            $crate::coeff::AnyRing::Matrix($r) => $body,
            $crate::coeff::AnyRing::Group($r) => $body,
            $crate::coeff::AnyRing::Free($r) => $body,
            $crate::coeff::AnyRing::Product($r) => $body,
        }
    };
}

/// Coefficient ring plus the shape of the series ring over it.
#[derive(Clone, Debug, PartialEq)]
pub struct RingDescription {
    pub coeff: AnyRing,
    pub alphabet: Vec<char>,
    pub twist: BTreeMap<char, String>,
    pub commuting: bool,
}

const SERIES_KEYS: [&str; 4] = ["kind", "alphabet", "twist", "commuting"];

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidRing(msg.into())
}

fn check_keys(obj: &Map<String, Value>, extra: &[&str]) -> Result<()> {
    for k in obj.keys() {
        if !SERIES_KEYS.contains(&k.as_str()) && !extra.contains(&k.as_str()) {
            return Err(invalid(format!("unknown field {k:?}")));
        }
    }
    Ok(())
}

fn get_usize(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| invalid(format!("missing or non-integer field {key:?}")))
}

fn get_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| invalid(format!("{what} must be a string")))
}

fn automorphism_specs(obj: &Map<String, Value>) -> Result<Vec<(String, Map<String, Value>)>> {
    match obj.get("automorphisms") {
        None => Ok(Vec::new()),
        Some(Value::Object(m)) => m
            .iter()
            .map(|(name, spec)| match spec {
                Value::Object(s) => Ok((name.clone(), s.clone())),
                _ => Err(invalid(format!("automorphism {name:?} must be an object"))),
            })
            .collect(),
        Some(_) => Err(invalid("\"automorphisms\" must be an object")),
    }
}

fn only_key<'a>(name: &str, spec: &'a Map<String, Value>, allowed: &[&str]) -> Result<(&'a str, &'a Value)> {
    if spec.len() != 1 {
        return Err(invalid(format!("automorphism {name:?} needs exactly one of {allowed:?}")));
    }
    let (k, v) = spec.iter().next().unwrap();
    if !allowed.contains(&k.as_str()) {
        return Err(invalid(format!("automorphism {name:?}: unknown field {k:?}")));
    }
    Ok((k.as_str(), v))
}

fn parse_group(obj: &Map<String, Value>) -> Result<GroupTable> {
    if let Some(g) = obj.get("group") {
        let s = get_str(g, "\"group\"")?;
        if s == "S3" {
            return Ok(GroupTable::symmetric3());
        }
        if let Some(n) = s.strip_prefix('C').and_then(|n| n.parse::<usize>().ok()) {
            if n >= 1 {
                return Ok(GroupTable::cyclic(n));
            }
        }
        return Err(invalid(format!("unknown group shorthand {s:?} (use Cn or S3)")));
    }
    let names: Vec<String> = obj
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("group algebra needs \"group\" or \"elements\" + \"table\""))?
        .iter()
        .map(|v| get_str(v, "element name").map(str::to_string))
        .collect::<Result<_>>()?;
    let lookup = |v: &Value| -> Result<usize> {
        match v {
            Value::Number(n) => n.as_u64().map(|x| x as usize).ok_or_else(|| invalid("bad table entry")),
            Value::String(s) => names.iter().position(|n| n == s).ok_or_else(|| invalid(format!("unknown element {s:?}"))),
            _ => Err(invalid("table entries must be indices or element names")),
        }
    };
    let table = obj
        .get("table")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("missing \"table\""))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| invalid("table rows must be arrays"))?
                .iter()
                .map(lookup)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GroupTable::new(names, table)
}

fn parse_coeff(obj: &Map<String, Value>) -> Result<AnyRing> {
    let kind = obj.get("kind").map(|k| get_str(k, "\"kind\"")).transpose()?.ok_or_else(|| invalid("missing \"kind\""))?;
    match kind {
        "rationals" => {
            check_keys(obj, &[])?;
            Ok(AnyRing::Rationals(Rationals))
        }
        "zmod" => {
            check_keys(obj, &["modulus"])?;
            Ok(AnyRing::ZMod(ZMod::new(get_usize(obj, "modulus")? as u64)?))
        }
        "matrix" => {
            check_keys(obj, &["size", "automorphisms"])?;
            let mut r = MatrixRing::new(get_usize(obj, "size")?)?;
            for (name, spec) in automorphism_specs(obj)? {
                let (_, v) = only_key(&name, &spec, &["conjugator"])?;
                let p = r.parse_elem(get_str(v, "conjugator")?)?;
                r = r.with_automorphism(&name, p)?;
            }
            Ok(AnyRing::Matrix(r))
        }
        "group_algebra" => {
            check_keys(obj, &["group", "elements", "table", "automorphisms"])?;
            let group = parse_group(obj)?;
            let mut r = GroupAlgebra::new(group.clone());
            for (name, spec) in automorphism_specs(obj)? {
                let images = match only_key(&name, &spec, &["images", "inner"])? {
                    ("inner", v) => {
                        let g = get_str(v, "inner")?;
                        let gi = group.index_of(g).ok_or_else(|| invalid(format!("unknown element {g:?}")))?;
                        group.inner_automorphism(gi)
                    }
                    (_, v) => v
                        .as_array()
                        .ok_or_else(|| invalid("images must be an array"))?
                        .iter()
                        .map(|x| {
                            let s = get_str(x, "image")?;
                            group.index_of(s).ok_or_else(|| invalid(format!("unknown element {s:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?,
                };
                r = r.with_automorphism(&name, images)?;
            }
            Ok(AnyRing::Group(r))
        }
        "free_trunc" => {
            check_keys(obj, &["generators", "degree", "automorphisms"])?;
            let gens = obj.get("generators").map(|g| get_str(g, "generators")).transpose()?.ok_or_else(|| invalid("missing \"generators\""))?;
            let mut r = FreeAlgebra::new(gens, get_usize(obj, "degree")?)?;
            for (name, spec) in automorphism_specs(obj)? {
                let (_, v) = only_key(&name, &spec, &["images"])?;
                let images = v
                    .as_array()
                    .ok_or_else(|| invalid("images must be an array"))?
                    .iter()
                    .map(|x| scaled_generator(get_str(x, "image")?))
                    .collect::<Result<Vec<_>>>()?;
                r = r.with_automorphism(&name, &images)?;
            }
            Ok(AnyRing::Free(r))
        }
        "product" => {
            check_keys(obj, &["factors", "automorphisms"])?;
            let mut r = ProductRing::new(get_usize(obj, "factors")?)?;
            for (name, spec) in automorphism_specs(obj)? {
                let (_, v) = only_key(&name, &spec, &["permutation"])?;
                let perm = v
                    .as_array()
                    .ok_or_else(|| invalid("permutation must be an array"))?
                    .iter()
                    .map(|x| x.as_u64().map(|i| i as usize).ok_or_else(|| invalid("permutation entries must be indices")))
                    .collect::<Result<Vec<_>>>()?;
                r = r.with_automorphism(&name, perm)?;
            }
            Ok(AnyRing::Product(r))
        }
        other => Err(invalid(format!("unknown ring kind {other:?}"))),
    }
}

fn scaled_generator(s: &str) -> Result<(Q, char)> {
    let terms = lincomb::parse(s)?;
    match terms.as_slice() {
        [(c, Some(name))] if name.chars().count() == 1 => Ok((c.clone(), name.chars().next().unwrap())),
        _ => Err(invalid(format!("image {s:?} must be a scaled generator such as 2*z"))),
    }
}

/// Parses a ring description document.
pub fn parse_ring_description(v: &Value) -> Result<RingDescription> {
    let obj = v.as_object().ok_or_else(|| invalid("ring description must be a JSON object"))?;
    let coeff = parse_coeff(obj)?;
    let alphabet: Vec<char> = match obj.get("alphabet") {
        None => vec!['x'],
        Some(a) => get_str(a, "\"alphabet\"")?.chars().collect(),
    };
    let mut twist = BTreeMap::new();
    match obj.get("twist") {
        None => {}
        Some(Value::Object(m)) => {
            for (k, v) in m {
                let mut cs = k.chars();
                let (Some(c), None) = (cs.next(), cs.next()) else {
                    return Err(invalid(format!("twist key {k:?} must be a single letter")));
                };
                twist.insert(c, get_str(v, "twist value")?.to_string());
            }
        }
        Some(_) => return Err(invalid("\"twist\" must be an object")),
    }
    let commuting = match obj.get("commuting") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(invalid("\"commuting\" must be a boolean")),
    };
    Ok(RingDescription { coeff, alphabet, twist, commuting })
}
