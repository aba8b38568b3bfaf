//! Structural identities that every valid instance satisfies, checked
//! numerically: properties of unital partial actions, of the trace maps,
//! of the skew ring and its component ideals, of tensor products over `A`,
//! and consistency between the separability deciders.

use crate::groupoid::{connected_components, hom_set, ObjectId};
use crate::linalg::{intersect_spans, is_zero_vec, same_span, span_basis, Matrix, Vector};
use crate::paction::{invariant_checks, is_global, isotropy_action, restrict_to_component, PartialAction};
use crate::separability::{
    decide_global, decide_separability, invariant_subring_ij, isotropy_witness_transport, trace_alpha, trace_ij,
    trace_j, transfer_matrix, SeparabilityError,
};
use crate::skewring::SkewRing;
use crate::tensor::{Factor, Mid, TensorOverA};
use crate::validation::CheckResult;

type Result<T> = std::result::Result<T, SeparabilityError>;

/// Pairs `(i, j)` of objects in a common component.
fn connected_pairs(pa: &PartialAction) -> Vec<(ObjectId, ObjectId)> {
    let comps = connected_components(pa.groupoid());
    let mut out = Vec::new();
    for class in &comps.classes {
        for &i in class {
            for &j in class {
                out.push((i, j));
            }
        }
    }
    out
}

fn name(pa: &PartialAction, e: ObjectId) -> &str {
    pa.groupoid().object_name(e)
}

pub fn trace_checks(pa: &PartialAction) -> Result<Vec<CheckResult>> {
    let a = pa.algebra();
    let grp = pa.groupoid();
    let basis = a.basis();
    let mut source_fail = Vec::new();
    let mut isotropy_fail = Vec::new();
    let mut linear_fail = Vec::new();
    let mut transport_fail = Vec::new();
    for (i, j) in connected_pairs(pa) {
        let t = trace_ij(pa, i, j)?;
        let label = format!("({}, {})", name(pa, i), name(pa, j));
        if t.matrix.mul(&a.right_mul_matrix(pa.object_unit(i))) != t.matrix {
            source_fail.push(label.clone());
        }
        let loops = hom_set(grp, j, j)?;
        'iso: for b in &basis {
            let tb = t.apply(b);
            for &h in &loops {
                let hi = grp.inverse(h);
                if pa.apply(h, &a.multiply(&tb, pa.dom(hi))) != a.multiply(&tb, pa.dom(h)) {
                    isotropy_fail.push(label.clone());
                    break 'iso;
                }
            }
        }
        let inv = invariant_subring_ij(pa, i, j)?;
        'lin: for x in &inv {
            for b in &basis {
                let tb = t.apply(b);
                if t.apply(&a.multiply(x, b)) != a.multiply(x, &tb) || t.apply(&a.multiply(b, x)) != a.multiply(&tb, x) {
                    linear_fail.push(label.clone());
                    break 'lin;
                }
            }
        }
        let ti = trace_j(pa, i)?;
        let tj = trace_j(pa, j)?;
        'tr: for g in hom_set(grp, i, j)? {
            let gi = grp.inverse(g);
            for b in &basis {
                if pa.apply(g, &a.multiply(&ti.apply(b), pa.dom(gi))) != a.multiply(&tj.apply(b), pa.dom(g)) {
                    transport_fail.push(grp.morphism_name(g).to_string());
                    break 'tr;
                }
            }
        }
    }
    let d = a.dim();
    let sum = grp.objects().try_fold(Matrix::zeros(pa.field(), d, d), |acc, j| trace_j(pa, j).map(|t| acc.add(&t.matrix)))?;
    let total_fail = if sum == trace_alpha(pa).matrix { Vec::new() } else { vec!["t_α ≠ Σ t_j".to_string()] };

    let mut fixed_fail = Vec::new();
    for e in grp.objects() {
        let diag = invariant_subring_ij(pa, e, e)?;
        let own = pa.object_ideal(e).basis;
        let lhs = intersect_spans(pa.field(), d, &diag, &own);
        let iso = isotropy_action(pa, e).map_err(|err| SeparabilityError::InvalidAction(err.to_string()))?;
        let rhs: Vec<Vector> = isotropy_fixed_points(&iso)
            .iter()
            .map(|x| pa.object_ideal(e).embed(x, pa.field()))
            .collect();
        if !same_span(&lhs, &rhs, d) {
            fixed_fail.push(name(pa, e).to_string());
        }
    }
    Ok(vec![
        CheckResult::new("trace only sees the source unit", source_fail),
        CheckResult::new("trace images are isotropy invariants", isotropy_fail),
        CheckResult::new("traces are linear over the invariant subring", linear_fail),
        CheckResult::new("total trace is the sum of object traces", total_fail),
        CheckResult::new("traces are transported along arrows", transport_fail),
        CheckResult::new("diagonal invariants match isotropy fixed points", fixed_fail),
    ])
}

/// Fixed points of a group partial action: `{x : α_h(x 1_{h⁻¹}) = x 1_h}`.
fn isotropy_fixed_points(iso: &PartialAction) -> Vec<Vector> {
    let a = iso.algebra();
    let d = a.dim();
    let mut rows = Vec::new();
    for h in iso.groupoid().morphisms() {
        let m = transfer_matrix(iso, h).sub(&a.right_mul_matrix(iso.dom(h)));
        rows.extend(m.row_vectors().iter().cloned());
    }
    if d == 0 {
        return Vec::new();
    }
    let m = Matrix::from_rows(iso.field(), d, rows).expect("rows have length dim");
    span_basis(d, &m.kernel())
}

pub fn skew_checks(pa: &PartialAction, sr: &SkewRing) -> Vec<CheckResult> {
    let n = sr.dim();
    let a = pa.algebra();
    let unit = sr.coords(&sr.unit());
    let mut unit_fail = Vec::new();
    for i in 0..n {
        let b = crate::linalg::unit_vector(sr.field(), n, i);
        if sr.mul_coords(&unit, &b) != b || sr.mul_coords(&b, &unit) != b {
            unit_fail.push(sr.basis_label(i));
        }
    }
    let mut phi_fail = Vec::new();
    let basis = a.basis();
    for x in &basis {
        for y in &basis {
            if sr.embed_phi(&a.multiply(x, y)) != sr.mul(&sr.embed_phi(x), &sr.embed_phi(y)) {
                phi_fail.push("φ(xy) ≠ φ(x)φ(y)".to_string());
            }
        }
    }
    if sr.embed_phi(a.unit()) != sr.unit() {
        phi_fail.push("φ(1) ≠ 1".into());
    }
    let mut module_fail = Vec::new();
    'm: for i in 0..n {
        let z = sr.basis_element(i);
        for x in &basis {
            for y in &basis {
                let xy = a.multiply(x, y);
                let ok = sr.left_act(x, &sr.left_act(y, &z)) == sr.left_act(&xy, &z)
                    && sr.right_act(&sr.right_act(&z, x), y) == sr.right_act(&z, &xy)
                    && sr.right_act(&sr.left_act(x, &z), y) == sr.left_act(x, &sr.right_act(&z, y))
                    && sr.right_act(&z, x) == sr.mul(&z, &sr.embed_phi(x))
                    && sr.left_act(x, &z) == sr.mul(&sr.embed_phi(x), &z);
                if !ok {
                    module_fail.push(sr.basis_label(i));
                    break 'm;
                }
            }
        }
    }
    let mut out = vec![
        CheckResult::new("unit is a two-sided identity", unit_fail),
        CheckResult::new("φ is a unital ring map", phi_fail),
        CheckResult::new("bimodule laws through φ", module_fail),
    ];
    out.extend(sr.component_checks());
    out
}

pub fn tensor_checks(sr: &SkewRing) -> Result<Vec<CheckResult>> {
    let comps = sr.component_ideals();
    let mut cross_fail = Vec::new();
    let mut mid_fail = Vec::new();
    let mut balanced_fail = Vec::new();
    let whole = TensorOverA::new(sr, Factor::Whole, Factor::Whole, Mid::Base)?;
    if !whole.multiplication_is_balanced(sr) {
        balanced_fail.push("B ⊗_A B".to_string());
    }
    let mut split = 0;
    for c in 0..comps.len() {
        for d in 0..comps.len() {
            if c != d {
                let t = TensorOverA::new(sr, Factor::Component(c), Factor::Component(d), Mid::Base)?;
                if t.dim() != 0 {
                    cross_fail.push(format!("({c}, {d}) has dim {}", t.dim()));
                }
            }
        }
        let over_a = TensorOverA::new(sr, Factor::Component(c), Factor::Component(c), Mid::Base)?;
        let over_c = TensorOverA::new(sr, Factor::Component(c), Factor::Component(c), Mid::Component(c))?;
        if over_a.dim() != over_c.dim() {
            mid_fail.push(format!("component {c}: {} vs {}", over_a.dim(), over_c.dim()));
        }
        if !over_c.multiplication_is_balanced(sr) {
            balanced_fail.push(format!("component {c}"));
        }
        split += over_c.dim();
    }
    let split_fail =
        if split == whole.dim() { Vec::new() } else { vec![format!("{} vs Σ {}", whole.dim(), split)] };
    Ok(vec![
        CheckResult::new("tensors across components vanish", cross_fail),
        CheckResult::new("component tensors over A and over A_[e] agree", mid_fail),
        CheckResult::new("B ⊗_A B splits over components", split_fail),
        CheckResult::new("multiplication kills the balancing relations", balanced_fail),
    ])
}

pub fn decision_checks(pa: &PartialAction) -> Result<Vec<CheckResult>> {
    let verdict = decide_separability(pa)?;
    let comps = connected_components(pa.groupoid());
    let mut parts = true;
    for class in &comps.classes {
        let sub = restrict_to_component(pa, class).map_err(|e| SeparabilityError::InvalidAction(e.to_string()))?;
        parts &= decide_separability(&sub)?.separable;
    }
    let glue_fail = if parts == verdict.separable { Vec::new() } else { vec!["component verdicts disagree".to_string()] };
    let cert_fail = match &verdict.certificate {
        Some(c) if !c.checks.all() => vec![format!("{:?}", c.checks)],
        _ => Vec::new(),
    };
    let mut out = vec![
        CheckResult::new("verdict is the conjunction of component verdicts", glue_fail),
        CheckResult::new("certificate verifies", cert_fail),
    ];
    if is_global(pa) {
        let global = decide_global(pa)?;
        let agree = if global.separable == verdict.separable { Vec::new() } else { vec!["verdicts differ".to_string()] };
        out.push(CheckResult::new("single-object decision agrees for global actions", agree));
        let mut transport_fail = Vec::new();
        for (ci, part) in verdict.per_component.iter().enumerate() {
            let Some(b) = &part.family.particular else { continue };
            if pa.object_unit(part.class[0]).iter().all(|x| x.is_zero()) && is_zero_vec(b) {
                continue;
            }
            let moved = isotropy_witness_transport(pa, ci, b)?;
            if !(moved.trace_is_unit && moved.central_in_corner) {
                transport_fail.push(format!("component {ci}"));
            }
        }
        out.push(CheckResult::new("witnesses transport to isotropy groups", transport_fail));
    }
    Ok(out)
}

/// The whole suite.
pub fn invariant_suite(pa: &PartialAction) -> Result<Vec<CheckResult>> {
    let sr = SkewRing::build(pa)?;
    let mut out = invariant_checks(pa);
    out.extend(trace_checks(pa)?);
    out.extend(skew_checks(pa, &sr));
    out.extend(tensor_checks(&sr)?);
    out.extend(decision_checks(pa)?);
    Ok(out)
}
