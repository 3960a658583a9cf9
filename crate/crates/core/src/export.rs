//! JSON documents and text rendering for the command line, plus the field
//! element syntax: `0`, `1`, `w`, `w^k` (`ω` is accepted for `w`), a prime
//! field digit `d < p`, or a coordinate tuple `(c_0, c_1, …)` with the
//! constant term first.

use serde_json::{json, Map, Value};

use crate::acceptance::CriterionReport;
use crate::classify::{CensusResult, IsoVerdict, IsotopyVerdict, ParamSet};
use crate::codes::{ConstaCode, MrdReport, RankCode};
use crate::fields::{Elem, ExtensionTower, FiniteField};
use crate::linalg::Matrix;
use crate::petit::{NucleusReport, PetitAlgebra, Precheck};
use crate::skewpoly::SkewPoly;
use crate::{Error, Result};

pub const SCHEMA_VERSION: &str = "semifield/1";

pub fn parse_element(field: &FiniteField, text: &str) -> Result<Elem> {
    let s = text.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse field element `{text}`"));
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let coords: Vec<u32> = inner
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        return field.from_coords(&coords);
    }
    let s = s.replace('ω', "w");
    if s == "w" {
        return Ok(field.primitive());
    }
    if let Some(k) = s.strip_prefix("w^") {
        let k: u64 = k.trim().parse().map_err(|_| bad())?;
        return Ok(field.exp(k));
    }
    let d: u32 = s.parse().map_err(|_| bad())?;
    if d >= field.characteristic() {
        return Err(bad());
    }
    Ok(field.from_prime(d))
}

pub fn show(field: &FiniteField, x: Elem) -> String {
    field.display(x)
}

fn elems(field: &FiniteField, xs: &[Elem]) -> Value {
    Value::Array(
        xs.iter()
            .map(|&x| Value::String(field.display(x)))
            .collect(),
    )
}

pub fn matrix_rows(field: &FiniteField, m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| elems(field, m.row(r))).collect())
}

/// Aligned plain-text dump of a matrix.
pub fn matrix_text(field: &FiniteField, m: &Matrix) -> String {
    m.to_text(|x| field.display(x))
}

/// `c_0 + c_1 t + ⋯` with coefficients in `w^k` notation.
pub fn poly_text(field: &FiniteField, f: &SkewPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| {
            let coeff = field.display(c);
            match (i, coeff.as_str()) {
                (0, _) => coeff,
                (1, "1") => "t".into(),
                (1, _) => format!("{coeff}·t"),
                (_, "1") => format!("t^{i}"),
                _ => format!("{coeff}·t^{i}"),
            }
        })
        .collect();
    terms.join(" + ")
}

/// Wraps a body object with the schema version and document kind.
pub fn document(kind: &str, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA_VERSION));
    out.insert("kind".into(), json!(kind));
    if let Value::Object(fields) = body {
        out.extend(fields);
    } else {
        out.insert("body".into(), body);
    }
    Value::Object(out)
}

pub fn field_doc(tower: &ExtensionTower) -> Value {
    let (f, k) = (tower.base(), tower.top());
    json!({
        "q": tower.q(),
        "n": tower.degree(),
        "characteristic": k.characteristic(),
        "base_modulus": f.modulus(),
        "top_modulus": k.modulus(),
        "order": k.order(),
        "primitive": "w",
        "base_in_top": elems(k, &tower.base_image()),
        "f_basis": elems(k, tower.f_basis()),
    })
}

pub fn nuclei_doc(alg: &PetitAlgebra, rep: &NucleusReport) -> Value {
    let k = alg.tower().top();
    let span = |xs: &[crate::AlgebraElement]| -> Value {
        Value::Array(
            xs.iter()
                .map(|x| json!(poly_text(k, &alg.to_poly(x))))
                .collect(),
        )
    };
    json!({
        "dimensions": {
            "left": rep.left.len(),
            "middle": rep.middle.len(),
            "right": rep.right.len(),
            "center": rep.center.len(),
        },
        "left": span(&rep.left),
        "middle": span(&rep.middle),
        "right": span(&rep.right),
        "center": span(&rep.center),
        "stabilizer_index": rep.stabilizer_index,
        "right_matches_prediction": rep.right_matches_prediction,
    })
}

pub fn algebra_doc(
    alg: &PetitAlgebra,
    nuclei: Option<&NucleusReport>,
    division: Option<bool>,
    prechecks: Option<&[Precheck]>,
) -> Value {
    let k = alg.tower().top();
    json!({
        "q": alg.tower().q(),
        "n": alg.tower().degree(),
        "j": alg.generator().exponent(),
        "m": alg.degree(),
        "modulus": poly_text(k, alg.modulus()),
        "dimension": alg.dimension(),
        "order": alg.order().to_string(),
        "right_invariant": alg.is_right_invariant(),
        "associative": alg.is_right_invariant(),
        "nuclei": nuclei.map(|r| nuclei_doc(alg, r)),
        "division": division,
        "prechecks": prechecks,
    })
}

pub fn verdict_doc(field: &FiniteField, v: &IsoVerdict) -> Value {
    json!({
        "status": v.status,
        "reason": v.reason,
        "witness": v.witness.map(|w| json!({"tau": w.tau, "k": field.display(w.k)})),
    })
}

pub fn isotopy_doc(v: &IsotopyVerdict) -> Value {
    json!({ "status": v.status, "reason": v.reason })
}

pub fn census_doc(field: &FiniteField, c: &CensusResult) -> Value {
    json!({
        "q": c.q,
        "m": c.m,
        "j": c.j,
        "count": c.count,
        "formula_count": c.formula_count,
        "representatives": elems(field, &c.representatives),
        "class_sizes": c.classes.iter().map(Vec::len).collect::<Vec<_>>(),
    })
}

pub fn param_doc(field: &FiniteField, p: &ParamSet) -> Value {
    let opt = |x: Option<Elem>| x.map(|x| field.display(x));
    json!({
        "q": p.q,
        "m": p.m,
        "set": p.kind,
        "base_data": {
            "zeta": opt(p.base.zeta),
            "beta": opt(p.base.beta),
            "b": opt(p.base.b),
            "c": opt(p.base.c),
            "sqrt_c": opt(p.base.sqrt_c),
        },
        "index_sets": p.blocks.iter().map(|b| json!({
            "set": b.set,
            "coset_representatives": b.coset_representatives
                .iter()
                .map(|r| elems(field, r))
                .collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "members": elems(field, &p.members),
    })
}

/// `codewords` is listed in full when given.
pub fn rank_code_doc(code: &RankCode, report: &MrdReport, codewords: Option<&[Matrix]>) -> Value {
    let field = code.field();
    json!({
        "ambient": {
            "size": code.size(),
            "field": field.descriptor(),
            "scalars": code.tower().q(),
        },
        "basis": code.basis().iter().map(|m| matrix_rows(field, m)).collect::<Vec<_>>(),
        "codewords": codewords.map(|ws| ws.iter().map(|m| matrix_rows(field, m)).collect::<Vec<_>>()),
        "verified": {
            "cardinality": report.cardinality.to_string(),
            "min_rank_distance": report.min_rank_distance,
            "bound_exponent": report.bound_exponent,
            "mrd": report.mrd,
        },
    })
}

pub fn consta_doc(code: &ConstaCode) -> Value {
    let k = code.tower().top();
    json!({
        "m": code.m,
        "k": code.k,
        "dimension": code.dimension(),
        "a": k.display(code.a),
        "g": poly_text(k, &code.g),
        "generator_matrix": matrix_rows(k, &code.generator_matrix),
        "min_hamming_distance": code.min_hamming_distance,
        "singleton_equality": code.singleton_equality,
    })
}

/// Timings are left out so the document is reproducible.
pub fn verify_doc(reports: &[CriterionReport]) -> Value {
    json!({
        "criteria": reports.iter().map(|r| json!({
            "id": r.id,
            "title": r.title,
            "passed": r.passed,
            "detail": r.detail,
            "limit_secs": r.limit.as_secs(),
        })).collect::<Vec<_>>(),
        "passed": reports.iter().filter(|r| r.passed).count(),
        "failed": reports.iter().filter(|r| !r.passed).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_field;

    #[test]
    fn parse_round_trip() {
        let f = make_field(2, 3).unwrap();
        for x in f.elements() {
            assert_eq!(parse_element(&f, &f.display(x)).unwrap(), x);
            let coords = f.coords(x);
            let tuple = format!(
                "({})",
                coords
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            assert_eq!(parse_element(&f, &tuple).unwrap(), x);
        }
        assert_eq!(parse_element(&f, "ω").unwrap(), f.primitive());
        assert_eq!(parse_element(&f, "w^7").unwrap(), f.one());
        assert!(parse_element(&f, "2").is_err());
        assert!(parse_element(&f, "v").is_err());
        assert!(parse_element(&f, "(1,1)").is_err());
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(parse_element(&f7, "3").unwrap(), f7.from_prime(3));
    }

    #[test]
    fn documents_carry_schema() {
        let d = document("x", json!({"a": 1}));
        assert_eq!(d["schema"], SCHEMA_VERSION);
        assert_eq!(d["a"], 1);
        let f = make_field(2, 2).unwrap();
        let p = SkewPoly::new(1, vec![f.primitive(), Elem::ZERO, f.one()]);
        assert_eq!(poly_text(&f, &p), "w + t^2");
    }
}
