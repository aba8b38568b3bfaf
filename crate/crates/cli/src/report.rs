//! JSON encodings of core results. Scalars are strings, matrices are
//! row-major arrays.

use serde_json::{json, Value};
use skewalg_core::groupoid::{Groupoid, ObjectId};
use skewalg_core::linalg::{AffineSolutionSet, Matrix, Scalar};
use skewalg_core::separability::{ExtractedWitness, SeparabilityCertificate, SeparabilityVerdict, TraceMap};
use skewalg_core::skewring::format_element;
use skewalg_core::tensor::TensorTerm;
use skewalg_core::validation::{CheckResult, ValidationReport};

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.row_vectors().iter().map(|r| vector(r)).collect())
}

pub fn element(names: &[String], v: &[Scalar]) -> Value {
    json!({ "display": format_element(names, v), "coords": vector(v) })
}

pub fn objects(g: &Groupoid, objs: &[ObjectId]) -> Value {
    Value::Array(objs.iter().map(|&e| Value::String(g.object_name(e).to_string())).collect())
}

pub fn family(names: &[String], f: &AffineSolutionSet) -> Value {
    match &f.particular {
        None => json!({ "empty": true }),
        Some(p) => json!({
            "empty": false,
            "particular": element(names, p),
            "kernel": f.kernel_basis.iter().map(|k| element(names, k)).collect::<Vec<_>>(),
        }),
    }
}

pub fn violations(r: &ValidationReport) -> Value {
    Value::Array(
        r.violations
            .iter()
            .map(|v| json!({ "kind": format!("{:?}", v.kind), "detail": v.detail }))
            .collect(),
    )
}

pub fn checks(cs: &[CheckResult]) -> Value {
    let passed = cs.iter().filter(|c| c.passed).count();
    json!({
        "passed": passed,
        "total": cs.len(),
        "checks": cs.iter().map(|c| {
            if c.passed {
                json!({ "name": c.name, "passed": true })
            } else {
                json!({ "name": c.name, "passed": false, "detail": c.detail })
            }
        }).collect::<Vec<_>>(),
    })
}

pub fn trace(g: &Groupoid, t: &TraceMap) -> Value {
    let name = |e: Option<ObjectId>| e.map(|e| Value::String(g.object_name(e).to_string())).unwrap_or(Value::Null);
    json!({ "source": name(t.source), "target": name(t.target), "matrix": matrix(&t.matrix) })
}

pub fn terms(g: &Groupoid, names: &[String], ts: &[TensorTerm]) -> Value {
    Value::Array(
        ts.iter()
            .map(|t| {
                json!({
                    "left": g.morphism_name(t.left),
                    "left_coeff": format_element(names, &t.left_coeff),
                    "right": g.morphism_name(t.right),
                    "right_coeff": format_element(names, &t.right_coeff),
                })
            })
            .collect(),
    )
}

pub fn certificate(g: &Groupoid, names: &[String], c: &SeparabilityCertificate) -> Value {
    json!({
        "witness": element(names, &c.witness_a),
        "idempotent": {
            "quotient_coords": vector(&c.idempotent_x),
            "terms": terms(g, names, &c.representative),
        },
        "checks": {
            "witness_central": c.checks.witness_central,
            "traces_are_units": c.checks.traces_are_units,
            "multiplication_is_unit": c.checks.multiplication_is_unit,
            "commutes_with_basis": c.checks.commutes_with_basis,
        },
    })
}

pub fn verdict(g: &Groupoid, names: &[String], v: &SeparabilityVerdict) -> Value {
    json!({
        "separable": v.separable,
        "components": v.per_component.iter().map(|c| json!({
            "objects": objects(g, &c.class),
            "separable": c.separable,
            "witness_family": family(names, &c.family),
        })).collect::<Vec<_>>(),
        "witness_family": family(names, &v.family),
        "certificate": v.certificate.as_ref().map(|c| certificate(g, names, c)),
    })
}

pub fn extraction(g: &Groupoid, names: &[String], w: &ExtractedWitness) -> Value {
    json!({
        "a": element(names, &w.a),
        "coefficients": w.coefficients.iter().map(|((x, y), c)| json!({
            "left": g.morphism_name(*x),
            "right": g.morphism_name(*y),
            "coeff": format_element(names, c),
        })).collect::<Vec<_>>(),
        "central": w.central,
        "traces_are_units": w.traces_are_units,
        "diagonal_transport": w.diagonal_transport,
    })
}
