//! Canonical JSON encodings of the library's results.
//!
//! Rationals are numbers when integral and `"p/q"` strings otherwise. Term
//! indices are 1-based, matching the usual mathematical labelling. Object keys
//! are emitted in sorted order by `serde_json`'s default map.

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::newton::{FaceDescriptor, LatticePolytope, MinkowskiReport};
use crate::okounkov::{GradingImage, OkounkovBody, ValuationMatrix};
use crate::polynomial::{
    ExponentVector, SparsePolynomial, WeightVector, WellPoisedReport, Witness,
};
use crate::rational::{rational_from_json, rational_to_json, Point, Rational};
use crate::tropical::{ConeCertificate, LinealityBasis, TropicalCone};

pub const SCHEMA_VERSION: u64 = 1;

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn matrix(rows: &[Point]) -> Value {
    Value::Array(rows.iter().map(|r| vector(r)).collect())
}

pub fn exponent(e: &ExponentVector) -> Value {
    json!(e.entries())
}

pub fn weight(w: &WeightVector) -> Value {
    vector(w.entries())
}

fn one_based(indices: &[usize]) -> Value {
    json!(indices.iter().map(|i| i + 1).collect::<Vec<_>>())
}

/// Parses `[[...], ...]` of integers or `"p/q"` strings.
pub fn parse_points(value: &Value) -> Result<Vec<Point>, Error> {
    let bad = || Error::Malformed("expected an array of rational vectors".into());
    value
        .as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|p| {
            p.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| rational_from_json(x).ok_or_else(bad))
                .collect()
        })
        .collect()
}

pub fn polynomial(f: &SparsePolynomial) -> Value {
    json!({
        "n": f.n(),
        "variables": f.variables(),
        "text": f.to_string(),
        "terms": f.terms().iter().map(|t| json!({
            "coefficient": rational_to_json(&t.coefficient),
            "exponent": exponent(&t.exponent),
        })).collect::<Vec<_>>(),
    })
}

pub fn well_poised(report: &WellPoisedReport, f: &SparsePolynomial) -> Value {
    let mut obj = Map::new();
    obj.insert("well_poised".into(), json!(report.well_poised));
    obj.insert("monomial".into(), json!(report.monomial));
    if let Some(w) = &report.witness {
        let w = match w {
            Witness::SharedVariable { variable, terms } => json!({
                "shared_variable": f.variables()[*variable],
                "terms": [terms.0 + 1, terms.1 + 1],
            }),
            Witness::CommonDivisor { terms, gcd } => json!({
                "gcd": gcd,
                "terms": [terms.0 + 1, terms.1 + 1],
            }),
        };
        obj.insert("witness".into(), w);
    }
    Value::Object(obj)
}

pub fn polytope(p: &LatticePolytope) -> Value {
    json!({ "n": p.n(), "vertices": matrix(p.vertices()) })
}

pub fn faces(list: &[FaceDescriptor]) -> Value {
    Value::Array(
        list.iter()
            .map(|d| json!({ "S": one_based(&d.terms), "weight": weight(&d.supporting_weight) }))
            .collect(),
    )
}

pub fn minkowski(report: &MinkowskiReport) -> Value {
    json!({
        "lattice_points": matrix(&report.lattice_points),
        "non_vertex_points": matrix(&report.non_vertex_points),
        "trivial_only": report.trivial_only,
        "edge_split": report.edge_split.as_ref().map(|s| json!({
            "edge": [vector(&s.edge.0), vector(&s.edge.1)],
            "point": vector(&s.point),
            "summands": s.summands.iter()
                .map(|(a, b)| json!([vector(a), vector(b)]))
                .collect::<Vec<_>>(),
        })),
    })
}

pub fn lineality(b: &LinealityBasis) -> Value {
    let rows: Vec<Point> = b.rows().into_iter().map(|r| r.0).collect();
    json!({
        "v_f": weight(&b.v_f),
        "lcm": b.lcm,
        "term_degrees": b.term_degrees,
        "kernel": b.kernel.iter().map(|k| json!({
            "term": k.term + 1,
            "position": k.position,
            "vector": weight(&k.vector),
        })).collect::<Vec<_>>(),
        "free_coordinates": b.free_coordinates.iter().map(|c| c + 1).collect::<Vec<_>>(),
        "rows": matrix(&rows),
    })
}

pub fn cone(c: &TropicalCone) -> Value {
    let lineality: Vec<Point> = c.lineality.rows().into_iter().map(|r| r.0).collect();
    let rays: Vec<Point> = c.rays.iter().map(|r| r.w.0.clone()).collect();
    json!({
        "S": one_based(&c.terms),
        "dim": c.dimension,
        "lineality": matrix(&lineality),
        "rays": matrix(&rays),
    })
}

pub fn certificate(c: &ConeCertificate) -> Value {
    json!({
        "S": one_based(&c.terms),
        "ray_coefficients": c.ray_coefficients.iter()
            .map(|(i, l)| json!([i + 1, rational_to_json(l)]))
            .collect::<Vec<_>>(),
        "lineality_coordinates": vector(&c.lineality_coordinates),
    })
}

pub fn valuation_matrix(m: &ValuationMatrix) -> Value {
    json!({ "S": one_based(&m.terms), "rows": matrix(&m.rows) })
}

pub fn grading_image(g: &GradingImage, variables: &[String]) -> Value {
    json!({
        "degrees": g.degrees.iter().map(|(j, d)| json!({
            "variable": variables.get(*j).cloned().unwrap_or_else(|| format!("x{}", j + 1)),
            "degree": vector(d),
        })).collect::<Vec<_>>(),
        "generators": matrix(&g.generators),
    })
}

pub fn body(b: &OkounkovBody) -> Value {
    json!({
        "points": matrix(&b.points),
        "vertices": matrix(&b.vertices),
        "dimension": b.dimension,
        "area": b.area().ok().map(|a| rational_to_json(&a)),
    })
}

pub fn exponents(list: &[ExponentVector]) -> Value {
    Value::Array(list.iter().map(exponent).collect())
}

pub fn error(e: &Error) -> Value {
    json!({ "error": { "code": e.code(), "message": e.to_string() } })
}
