//! Unital partial actions of finite groupoids on algebras.
//!
//! Each morphism `g` carries a central idempotent `1_g` with `A_g = A·1_g`
//! and a full `dim × dim` matrix for `α_g`. The matrix is required to vanish
//! on `A·(1 − 1_{g⁻¹})` and to restrict to a ring isomorphism
//! `A_{g⁻¹} → A_g`; the validator checks both.

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraElement, IdealByIdempotent};
use crate::groupoid::{connected_components, Groupoid, GroupoidError, MorphismId, ObjectId};
use crate::linalg::{is_zero_vec, same_span, Field, Matrix, Scalar, Vector};
use crate::validation::{CheckResult, ValidationReport, ViolationKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("the object idempotents do not decompose the algebra as a direct sum")]
    DecompositionRequired,
    #[error("the given objects are not a connected component")]
    NotAComponent,
    #[error("parts are defined over different fields")]
    FieldMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAction {
    groupoid: Groupoid,
    algebra: Algebra,
    dom: Vec<AlgebraElement>,
    maps: Vec<Matrix>,
}

impl PartialAction {
    /// Checks shapes only; use [`validate_partial_action`] for the axioms.
    pub fn new(
        groupoid: Groupoid,
        algebra: Algebra,
        dom: Vec<AlgebraElement>,
        maps: Vec<Matrix>,
    ) -> Result<Self, ActionError> {
        let n = groupoid.morphism_count();
        let d = algebra.dim();
        if dom.len() != n || maps.len() != n {
            return Err(ActionError::Shape(format!("expected data for {n} morphisms")));
        }
        if dom.iter().any(|v| v.len() != d) {
            return Err(ActionError::Shape(format!("domain idempotents must have length {d}")));
        }
        if maps.iter().any(|m| m.rows() != d || m.cols() != d || m.field() != algebra.field()) {
            return Err(ActionError::Shape(format!("maps must be {d}x{d} over {}", algebra.field())));
        }
        Ok(PartialAction { groupoid, algebra, dom, maps })
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    /// The idempotent `1_g`.
    pub fn dom(&self, g: MorphismId) -> &AlgebraElement {
        &self.dom[g.0]
    }

    pub fn map(&self, g: MorphismId) -> &Matrix {
        &self.maps[g.0]
    }

    /// `α_g(x)`.
    pub fn apply(&self, g: MorphismId, x: &[Scalar]) -> AlgebraElement {
        self.maps[g.0].mul_vec(x)
    }

    /// `1_e` for an object `e`.
    pub fn object_unit(&self, e: ObjectId) -> &AlgebraElement {
        self.dom(self.groupoid.identity(e))
    }

    pub fn object_units(&self) -> Vec<AlgebraElement> {
        self.groupoid.objects().map(|e| self.object_unit(e).clone()).collect()
    }

    /// `A_g` with its canonical basis.
    pub fn ideal(&self, g: MorphismId) -> IdealByIdempotent {
        IdealByIdempotent::spanned_by(&self.algebra, self.dom(g))
    }

    pub fn object_ideal(&self, e: ObjectId) -> IdealByIdempotent {
        self.ideal(self.groupoid.identity(e))
    }

    /// `a · b` in the algebra.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> AlgebraElement {
        self.algebra.multiply(a, b)
    }

    /// Whether `A = ⊕_e A_e` for the object idempotents.
    pub fn has_object_decomposition(&self) -> bool {
        self.algebra.check_object_decomposition(&self.object_units())
    }

    pub fn require_decomposition(&self) -> Result<(), ActionError> {
        if self.has_object_decomposition() {
            Ok(())
        } else {
            Err(ActionError::DecompositionRequired)
        }
    }

    /// Copy with groupoid names prefixed by `prefix.` and algebra basis
    /// names likewise, so that two copies can be glued.
    pub fn with_prefix(&self, prefix: &str) -> PartialAction {
        let names = self.algebra.basis_names().iter().map(|n| format!("{prefix}.{n}")).collect();
        PartialAction {
            groupoid: self.groupoid.with_prefix(prefix),
            algebra: self.algebra.clone().with_basis_names(names),
            dom: self.dom.clone(),
            maps: self.maps.clone(),
        }
    }

    /// Restriction to the subgroupoid on `objs` selected by `keep`, acting on
    /// the corner algebra `A·u` with `u = Σ_{e ∈ objs} 1_e`. Returns the
    /// restricted action together with the parent ids of its morphisms and
    /// the ideal `A·u` used for coordinates.
    pub fn restrict(
        &self,
        objs: &[ObjectId],
        keep: impl Fn(MorphismId) -> bool,
    ) -> Result<(PartialAction, Vec<MorphismId>, IdealByIdempotent), ActionError> {
        let (sub, kept) = self.groupoid.restrict(objs, keep)?;
        let mut u = self.algebra.zero();
        for &e in objs {
            u = crate::linalg::vec_add(&u, self.object_unit(e));
        }
        let corner_ideal = IdealByIdempotent::spanned_by(&self.algebra, &u);
        let corner = self.algebra.corner(&corner_ideal);
        let field = self.field();
        let k = corner_ideal.dim();
        let dom = kept.iter().map(|&g| corner_ideal.coords(self.dom(g))).collect();
        let maps = kept
            .iter()
            .map(|&g| {
                let cols: Vec<Vector> =
                    corner_ideal.basis.iter().map(|b| corner_ideal.coords(&self.apply(g, b))).collect();
                Matrix::from_columns(field, k, &cols)
            })
            .collect();
        let pa = PartialAction { groupoid: sub, algebra: corner, dom, maps };
        Ok((pa, kept, corner_ideal))
    }
}

fn describe(pa: &PartialAction, g: MorphismId) -> String {
    pa.groupoid.morphism_name(g).to_string()
}

/// Checks unitality, the ideal-isomorphism conditions and the three
/// partial-action axioms.
pub fn validate_partial_action(pa: &PartialAction) -> ValidationReport {
    let mut report = ValidationReport::default();
    let g_ = &pa.groupoid;
    let a = &pa.algebra;
    let mut dom_ok = vec![true; g_.morphism_count()];

    for g in g_.morphisms() {
        let e = pa.dom(g);
        if !a.is_central_idempotent(e) {
            report.push(ViolationKind::NotIdempotentDomain, format!("1_{} is not a central idempotent", describe(pa, g)));
            dom_ok[g.0] = false;
        } else if &a.multiply(e, pa.object_unit(g_.tgt(g))) != e {
            report.push(ViolationKind::NotIdempotentDomain, format!("A_{} is not inside A_t", describe(pa, g)));
            dom_ok[g.0] = false;
        }
    }
    for g in g_.morphisms() {
        let Some(gi) = g_.try_inverse(g) else { continue };
        if !dom_ok[g.0] || !dom_ok[gi.0] {
            continue;
        }
        for problem in ideal_iso_problems(pa, g, gi) {
            report.push(ViolationKind::NotRingIso, format!("α_{}: {problem}", describe(pa, g)));
        }
    }
    for e in g_.objects() {
        let id = g_.identity(e);
        if !dom_ok[id.0] {
            continue;
        }
        if pa.object_ideal(e).basis.iter().any(|x| &pa.apply(id, x) != x) {
            report.push(ViolationKind::IdentityAxiom, format!("α_{} is not the identity on A_e", describe(pa, id)));
        }
    }
    for g in g_.morphisms() {
        for h in g_.morphisms() {
            let Some(gh) = g_.compose(g, h) else { continue };
            let (Some(gi), Some(hi), Some(ghi)) = (g_.try_inverse(g), g_.try_inverse(h), g_.try_inverse(gh)) else {
                continue;
            };
            if [g, h, gh, gi, hi, ghi].iter().any(|m| !dom_ok[m.0]) {
                continue;
            }
            let pre = preimage_of_overlap(pa, g, h);
            let target = pa.dom(ghi);
            for x in &pre {
                if &a.multiply(x, target) != x {
                    report.push(
                        ViolationKind::AxiomII,
                        format!("α_{}⁻¹(A_{{{}⁻¹}} ∩ A_{}) ⊄ A_(gh)⁻¹", describe(pa, h), describe(pa, g), describe(pa, h)),
                    );
                    break;
                }
            }
            for x in &pre {
                if pa.apply(g, &pa.apply(h, x)) != pa.apply(gh, x) {
                    report.push(
                        ViolationKind::AxiomIII,
                        format!("α_{}∘α_{} ≠ α_{}", describe(pa, g), describe(pa, h), describe(pa, gh)),
                    );
                    break;
                }
            }
        }
    }
    report
}

fn ideal_iso_problems(pa: &PartialAction, g: MorphismId, gi: MorphismId) -> Vec<String> {
    let a = &pa.algebra;
    let mut out = Vec::new();
    let src = pa.ideal(gi);
    let tgt_idem = pa.dom(g);
    let off = a.complement(pa.dom(gi));
    if (0..a.dim()).any(|i| !is_zero_vec(&pa.apply(g, &a.multiply(&a.basis_element(i), &off)))) {
        out.push("does not vanish off the domain ideal".to_string());
    }
    let images: Vec<Vector> = src.basis.iter().map(|x| pa.apply(g, x)).collect();
    if images.iter().any(|y| &a.multiply(y, tgt_idem) != y) {
        out.push("image leaves the target ideal".to_string());
    }
    let rank = crate::linalg::span_basis(a.dim(), &images).len();
    let tgt_dim = pa.ideal(g).dim();
    if rank != src.dim() || rank != tgt_dim {
        out.push(format!("not bijective (rank {rank}, dims {} -> {tgt_dim})", src.dim()));
    }
    'mult: for (i, x) in src.basis.iter().enumerate() {
        for (j, y) in src.basis.iter().enumerate() {
            if pa.apply(g, &a.multiply(x, y)) != a.multiply(&images[i], &images[j]) {
                out.push("not multiplicative".to_string());
                break 'mult;
            }
        }
    }
    if &pa.apply(g, pa.dom(gi)) != tgt_idem {
        out.push("does not send 1_{g⁻¹} to 1_g".to_string());
    }
    out
}

/// Basis of `α_h⁻¹(A_{g⁻¹} ∩ A_h)` inside `A_{h⁻¹}`.
fn preimage_of_overlap(pa: &PartialAction, g: MorphismId, h: MorphismId) -> Vec<Vector> {
    let a = &pa.algebra;
    let gi = pa.groupoid.inverse(g);
    let hi = pa.groupoid.inverse(h);
    let src = pa.ideal(hi);
    if src.dim() == 0 {
        return Vec::new();
    }
    let off = a.complement(pa.dom(gi));
    let cols: Vec<Vector> = src.basis.iter().map(|x| a.multiply(&pa.apply(h, x), &off)).collect();
    let m = Matrix::from_columns(pa.field(), a.dim(), &cols);
    m.kernel().iter().map(|c| src.embed(c, pa.field())).collect()
}

/// True iff `1_g = 1_{t(g)}` for every morphism.
pub fn is_global(pa: &PartialAction) -> bool {
    pa.groupoid.morphisms().all(|g| pa.dom(g) == pa.object_unit(pa.groupoid.tgt(g)))
}

/// The action of the full subgroupoid on a component class on `A_[e]`.
pub fn restrict_to_component(pa: &PartialAction, class: &[ObjectId]) -> Result<PartialAction, ActionError> {
    pa.require_decomposition()?;
    let comps = connected_components(&pa.groupoid);
    let mut sorted = class.to_vec();
    sorted.sort();
    if !comps.classes.contains(&sorted) {
        return Err(ActionError::NotAComponent);
    }
    pa.restrict(class, |_| true).map(|(r, _, _)| r)
}

/// Disjoint-union groupoid acting on the direct-sum algebra.
pub fn glue_components(parts: &[PartialAction]) -> Result<PartialAction, ActionError> {
    let Some(first) = parts.first() else {
        return Err(ActionError::Shape("nothing to glue".into()));
    };
    let field = first.field();
    if parts.iter().any(|p| p.field() != field) {
        return Err(ActionError::FieldMismatch);
    }
    let groupoid = Groupoid::disjoint_union(&parts.iter().map(|p| &p.groupoid).collect::<Vec<_>>())?;
    let algebra = Algebra::direct_sum(&parts.iter().map(|p| &p.algebra).collect::<Vec<_>>());
    let d = algebra.dim();
    let mut dom = Vec::new();
    let mut maps = Vec::new();
    let mut base = 0;
    for p in parts {
        let k = p.algebra.dim();
        for g in p.groupoid.morphisms() {
            let mut v = vec![field.zero(); d];
            for (i, x) in p.dom(g).iter().enumerate() {
                v[base + i] = x.clone();
            }
            dom.push(v);
            let mut m = Matrix::zeros(field, d, d);
            for i in 0..k {
                for j in 0..k {
                    m.set(base + i, base + j, p.map(g).get(i, j).clone());
                }
            }
            maps.push(m);
        }
        base += k;
    }
    PartialAction::new(groupoid, algebra, dom, maps)
}

/// The partial action of the isotropy group at `e` on `A_e`.
pub fn isotropy_action(pa: &PartialAction, e: ObjectId) -> Result<PartialAction, ActionError> {
    let g = &pa.groupoid;
    g.object(e.0)?;
    pa.restrict(&[e], |m| g.src(m) == e && g.tgt(m) == e).map(|(r, _, _)| r)
}

/// The structural invariants that follow from the axioms for unital actions:
/// `α_{g⁻¹}` inverts `α_g`, `α_g(A_{g⁻¹} ∩ A_h) = A_g ∩ A_{gh}`, and
/// `α_g(α_h(a1_{h⁻¹})1_{g⁻¹}) = α_{gh}(a1_{(gh)⁻¹})1_g`.
pub fn invariant_checks(pa: &PartialAction) -> Vec<CheckResult> {
    let g_ = &pa.groupoid;
    let a = &pa.algebra;
    let d = a.dim();
    let mut inverse_fail = Vec::new();
    let mut overlap_fail = Vec::new();
    let mut compose_fail = Vec::new();
    for g in g_.morphisms() {
        let gi = g_.inverse(g);
        let roundtrip =
            pa.ideal(gi).basis.iter().all(|x| &pa.apply(gi, &pa.apply(g, x)) == x)
                && pa.ideal(g).basis.iter().all(|y| &pa.apply(g, &pa.apply(gi, y)) == y);
        if !roundtrip {
            inverse_fail.push(describe(pa, g));
        }
    }
    for g in g_.morphisms() {
        for h in g_.morphisms() {
            let Some(gh) = g_.compose(g, h) else { continue };
            let gi = g_.inverse(g);
            let hi = g_.inverse(h);
            let ghi = g_.inverse(gh);

            let overlap = IdealByIdempotent::spanned_by(a, &a.multiply(pa.dom(gi), pa.dom(h)));
            let image: Vec<Vector> = overlap.basis.iter().map(|x| pa.apply(g, x)).collect();
            let target = IdealByIdempotent::spanned_by(a, &a.multiply(pa.dom(g), pa.dom(gh)));
            if !same_span(&image, &target.basis, d) {
                overlap_fail.push(format!("({}, {})", describe(pa, g), describe(pa, h)));
            }

            for i in 0..d {
                let b = a.basis_element(i);
                let lhs = pa.apply(g, &a.multiply(&pa.apply(h, &a.multiply(&b, pa.dom(hi))), pa.dom(gi)));
                let rhs = a.multiply(&pa.apply(gh, &a.multiply(&b, pa.dom(ghi))), pa.dom(g));
                if lhs != rhs {
                    compose_fail.push(format!("({}, {}) at {}", describe(pa, g), describe(pa, h), a.basis_names()[i]));
                    break;
                }
            }
        }
    }
    vec![
        CheckResult::new("inverse maps are mutually inverse", inverse_fail),
        CheckResult::new("image of overlap ideals", overlap_fail),
        CheckResult::new("composition through unit idempotents", compose_fail),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn worked_instances_validate() {
        let q = Field::Rational;
        for pa in [catalog::edge_action(q), catalog::zero_cross_action(q), catalog::swap_global_action(q)] {
            let r = validate_partial_action(&pa);
            assert!(r.is_valid(), "{r}");
            assert!(invariant_checks(&pa).iter().all(|c| c.passed));
            assert!(pa.has_object_decomposition());
        }
    }

    #[test]
    fn zeroed_inverse_is_not_a_ring_iso() {
        let pa = catalog::edge_action(Field::Rational);
        let gi = pa.groupoid().find_morphism("g^-1").unwrap();
        let mut maps: Vec<Matrix> = pa.groupoid().morphisms().map(|m| pa.map(m).clone()).collect();
        maps[gi.0] = Matrix::zeros(pa.field(), 4, 4);
        let broken = PartialAction::new(
            pa.groupoid().clone(),
            pa.algebra().clone(),
            pa.groupoid().morphisms().map(|m| pa.dom(m).clone()).collect(),
            maps,
        )
        .unwrap();
        assert!(validate_partial_action(&broken).has(ViolationKind::NotRingIso));
    }

    #[test]
    fn globality() {
        let q = Field::Rational;
        assert!(!is_global(&catalog::edge_action(q)));
        assert!(is_global(&catalog::swap_global_action(q)));
        assert!(is_global(&catalog::trivial_action(q)));
    }

    #[test]
    fn isotropy_restrictions() {
        let q = Field::Rational;
        let pa = catalog::zero_cross_action(q);
        let e1 = pa.groupoid().find_object("e1").unwrap();
        let iso = isotropy_action(&pa, e1).unwrap();
        assert!(validate_partial_action(&iso).is_valid());
        assert_eq!(iso.groupoid().morphism_count(), 2);
        assert_eq!(iso.algebra().dim(), 1);
        let g = iso.groupoid().find_morphism("g").unwrap();
        assert_eq!(iso.map(g), &Matrix::identity(q, 1));

        let pa = catalog::edge_action(q);
        let iso = isotropy_action(&pa, pa.groupoid().find_object("e1").unwrap()).unwrap();
        assert_eq!(iso.groupoid().morphism_count(), 1);
        assert_eq!(iso.algebra().basis_names(), &["v1".to_string(), "v2".to_string()]);
        assert!(validate_partial_action(&iso).is_valid());
    }

    #[test]
    fn restrict_and_glue_round_trip() {
        let q = Field::Rational;
        let pa = catalog::edge_action(q);
        let comps = connected_components(pa.groupoid());
        assert_eq!(restrict_to_component(&pa, &comps.classes[0]).unwrap(), pa);
        assert_eq!(glue_components(std::slice::from_ref(&pa)).unwrap(), pa);

        let left = pa.with_prefix("L");
        let right = pa.with_prefix("R");
        let glued = glue_components(&[left.clone(), right.clone()]).unwrap();
        assert!(validate_partial_action(&glued).is_valid());
        assert_eq!(glued.algebra().dim(), 8);
        let comps = connected_components(glued.groupoid());
        assert_eq!(comps.classes.len(), 2);
        let back: Vec<PartialAction> =
            comps.classes.iter().map(|c| restrict_to_component(&glued, c).unwrap()).collect();
        assert_eq!(back, vec![left, right]);
        for p in &back {
            assert!(validate_partial_action(p).is_valid());
        }
        assert!(matches!(
            glue_components(&[pa.clone(), pa.clone()]),
            Err(ActionError::Groupoid(GroupoidError::OverlappingObjects(_)))
        ));
        assert_eq!(restrict_to_component(&glued, &[ObjectId(0)]), Err(ActionError::NotAComponent));
    }
}
