//! The partial skew groupoid ring `A ⋆ G = ⊕_g A_g δ_g`.

use thiserror::Error;

use crate::algebra::{AlgebraElement, IdealByIdempotent};
use crate::groupoid::{connected_components, MorphismId, ObjectId};
use crate::linalg::{is_zero_vec, same_span, vec_add, Field, Matrix, Scalar, Vector};
use crate::paction::{validate_partial_action, PartialAction};
use crate::validation::CheckResult;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("not a unital partial action: {0}")]
    NotUnitalAction(String),
    #[error("the object idempotents do not decompose the algebra as a direct sum")]
    DecompositionRequired,
    #[error("skew product is not associative on ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("coefficient of {0} does not lie in its ideal")]
    NotInIdeal(String),
}

/// `Σ_g a_g δ_g`, one full-length coefficient vector per morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewRingElement {
    pub terms: Vec<AlgebraElement>,
}

impl SkewRingElement {
    pub fn term(&self, g: MorphismId) -> &AlgebraElement {
        &self.terms[g.0]
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| is_zero_vec(t))
    }
}

#[derive(Clone, Debug)]
pub struct SkewRing {
    action: PartialAction,
    ideals: Vec<IdealByIdempotent>,
    offsets: Vec<usize>,
    basis: Vec<(MorphismId, usize)>,
    table: Vec<Vec<Vector>>,
}

impl SkewRing {
    /// Validates the action, builds the basis product table and checks
    /// associativity on all basis triples.
    pub fn build(pa: &PartialAction) -> Result<SkewRing, SkewError> {
        let report = validate_partial_action(pa);
        if !report.is_valid() {
            return Err(SkewError::NotUnitalAction(report.to_string()));
        }
        if !pa.has_object_decomposition() {
            return Err(SkewError::DecompositionRequired);
        }
        let sr = SkewRing::assemble(pa);
        if let Some((i, j, k)) = sr.associativity_failure() {
            return Err(SkewError::NonAssociative(i, j, k));
        }
        Ok(sr)
    }

    fn assemble(pa: &PartialAction) -> SkewRing {
        let g = pa.groupoid();
        let ideals: Vec<IdealByIdempotent> = g.morphisms().map(|m| pa.ideal(m)).collect();
        let mut offsets = Vec::new();
        let mut basis = Vec::new();
        for m in g.morphisms() {
            offsets.push(basis.len());
            for k in 0..ideals[m.0].dim() {
                basis.push((m, k));
            }
        }
        let mut sr = SkewRing { action: pa.clone(), ideals, offsets, basis, table: Vec::new() };
        let elems: Vec<SkewRingElement> = (0..sr.dim()).map(|i| sr.basis_element(i)).collect();
        sr.table = elems.iter().map(|x| elems.iter().map(|y| sr.coords(&sr.mul(x, y))).collect()).collect();
        sr
    }

    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let left = self.mul_coords_with_basis_right(ij, k);
                    let jk = &self.table[j][k];
                    let right = self.mul_coords_with_basis_left(i, jk);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    fn mul_coords_with_basis_right(&self, x: &[Scalar], k: usize) -> Vector {
        let mut out = vec![self.field().zero(); self.dim()];
        for (l, c) in x.iter().enumerate() {
            if !c.is_zero() {
                for (o, t) in out.iter_mut().zip(&self.table[l][k]) {
                    o.add_mul_assign(c, t);
                }
            }
        }
        out
    }

    fn mul_coords_with_basis_left(&self, i: usize, y: &[Scalar]) -> Vector {
        let mut out = vec![self.field().zero(); self.dim()];
        for (l, c) in y.iter().enumerate() {
            if !c.is_zero() {
                for (o, t) in out.iter_mut().zip(&self.table[i][l]) {
                    o.add_mul_assign(c, t);
                }
            }
        }
        out
    }

    pub fn action(&self) -> &PartialAction {
        &self.action
    }

    pub fn field(&self) -> Field {
        self.action.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `(g, k)`: the `k`-th basis vector of `A_g`, placed at `δ_g`.
    pub fn basis(&self) -> &[(MorphismId, usize)] {
        &self.basis
    }

    pub fn ideal(&self, g: MorphismId) -> &IdealByIdempotent {
        &self.ideals[g.0]
    }

    /// Range of basis indices belonging to `δ_g`.
    pub fn block(&self, g: MorphismId) -> std::ops::Range<usize> {
        let start = self.offsets[g.0];
        start..start + self.ideals[g.0].dim()
    }

    pub fn basis_label(&self, i: usize) -> String {
        let (g, k) = self.basis[i];
        let v = &self.ideals[g.0].basis[k];
        format!("{}·δ[{}]", format_element(self.action.algebra().basis_names(), v), self.action.groupoid().morphism_name(g))
    }

    pub fn zero(&self) -> SkewRingElement {
        let a = self.action.algebra();
        SkewRingElement { terms: vec![a.zero(); self.action.groupoid().morphism_count()] }
    }

    /// `a δ_g`; fails unless `a ∈ A_g`.
    pub fn monomial(&self, g: MorphismId, a: AlgebraElement) -> Result<SkewRingElement, SkewError> {
        let mut x = self.zero();
        x.terms[g.0] = a;
        self.check_element(&x)?;
        Ok(x)
    }

    pub fn check_element(&self, x: &SkewRingElement) -> Result<(), SkewError> {
        for g in self.action.groupoid().morphisms() {
            if !self.ideals[g.0].contains(self.action.algebra(), x.term(g)) {
                return Err(SkewError::NotInIdeal(self.action.groupoid().morphism_name(g).to_string()));
            }
        }
        Ok(())
    }

    pub fn basis_element(&self, i: usize) -> SkewRingElement {
        let (g, k) = self.basis[i];
        let mut x = self.zero();
        x.terms[g.0] = self.ideals[g.0].basis[k].clone();
        x
    }

    pub fn coords(&self, x: &SkewRingElement) -> Vector {
        let mut out = Vec::with_capacity(self.dim());
        for g in self.action.groupoid().morphisms() {
            out.extend(self.ideals[g.0].coords(x.term(g)));
        }
        out
    }

    pub fn element(&self, coords: &[Scalar]) -> SkewRingElement {
        let field = self.field();
        let terms =
            self.action.groupoid().morphisms().map(|g| self.ideals[g.0].embed(&coords[self.block(g)], field)).collect();
        SkewRingElement { terms }
    }

    /// `(a_g δ_g)(b_h δ_h) = α_g(α_{g⁻¹}(a_g) b_h) δ_{gh}` on composable
    /// pairs, extended bilinearly.
    pub fn mul(&self, x: &SkewRingElement, y: &SkewRingElement) -> SkewRingElement {
        let pa = &self.action;
        let grp = pa.groupoid();
        let mut out = self.zero();
        for g in grp.morphisms() {
            let ag = x.term(g);
            if is_zero_vec(ag) {
                continue;
            }
            let pulled = pa.apply(grp.inverse(g), ag);
            for h in grp.morphisms() {
                let Some(gh) = grp.compose(g, h) else { continue };
                let bh = y.term(h);
                if is_zero_vec(bh) {
                    continue;
                }
                let v = pa.apply(g, &pa.mul(&pulled, bh));
                out.terms[gh.0] = vec_add(&out.terms[gh.0], &v);
            }
        }
        out
    }

    /// Product in coordinates through the basis table.
    pub fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![self.field().zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        o.add_mul_assign(&c, t);
                    }
                }
            }
        }
        out
    }

    /// Coordinates of `b_i · b_j`.
    pub fn table_entry(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    /// `Σ_e 1_e δ_e`.
    pub fn unit(&self) -> SkewRingElement {
        let grp = self.action.groupoid();
        let mut x = self.zero();
        for e in grp.objects() {
            let id = grp.identity(e);
            x.terms[id.0] = self.action.dom(id).clone();
        }
        x
    }

    /// `φ(a) = Σ_e (a 1_e) δ_e`.
    pub fn embed_phi(&self, a: &[Scalar]) -> SkewRingElement {
        let grp = self.action.groupoid();
        let mut x = self.zero();
        for e in grp.objects() {
            let id = grp.identity(e);
            x.terms[id.0] = self.action.mul(a, self.action.dom(id));
        }
        x
    }

    /// `a · (a_g δ_g) = a a_g δ_g`.
    pub fn left_act(&self, a: &[Scalar], x: &SkewRingElement) -> SkewRingElement {
        SkewRingElement { terms: x.terms.iter().map(|t| self.action.mul(a, t)).collect() }
    }

    /// `(a_g δ_g) · a = a_g α_g(a 1_{g⁻¹}) δ_g`.
    pub fn right_act(&self, x: &SkewRingElement, a: &[Scalar]) -> SkewRingElement {
        let pa = &self.action;
        let grp = pa.groupoid();
        let terms = grp
            .morphisms()
            .map(|g| {
                let t = x.term(g);
                if is_zero_vec(t) {
                    return t.clone();
                }
                let moved = pa.apply(g, &pa.mul(a, pa.dom(grp.inverse(g))));
                pa.mul(t, &moved)
            })
            .collect();
        SkewRingElement { terms }
    }

    /// Per component class: the basis indices spanning `B_[e]` and its unit
    /// `u = Σ_{f ∈ [e]} 1_f δ_f`.
    pub fn component_ideals(&self) -> Vec<ComponentIdeal> {
        let grp = self.action.groupoid();
        let comps = connected_components(grp);
        comps
            .classes
            .iter()
            .map(|class| {
                let members: Vec<usize> =
                    (0..self.dim()).filter(|&i| class.contains(&grp.tgt(self.basis[i].0))).collect();
                let mut unit = self.zero();
                for &e in class {
                    let id = grp.identity(e);
                    unit.terms[id.0] = self.action.dom(id).clone();
                }
                ComponentIdeal { class: class.clone(), basis: members, unit }
            })
            .collect()
    }

    /// Checks that `B` splits as the direct sum of the component ideals, that
    /// each absorbs products on both sides, and that the units are central,
    /// orthogonal idempotents summing to `1` with `B_[e] = B·u`.
    pub fn component_checks(&self) -> Vec<CheckResult> {
        let comps = self.component_ideals();
        let n = self.dim();
        let mut sum_fail = Vec::new();
        let mut counted = vec![0usize; n];
        for c in &comps {
            for &i in &c.basis {
                counted[i] += 1;
            }
        }
        if counted.iter().any(|&k| k != 1) {
            sum_fail.push("basis is not partitioned by the components".to_string());
        }
        let mut ideal_fail = Vec::new();
        for (ci, c) in comps.iter().enumerate() {
            let inside = |v: &Vector| v.iter().enumerate().all(|(k, x)| x.is_zero() || c.basis.contains(&k));
            'outer: for &i in &c.basis {
                for j in 0..n {
                    if !inside(&self.table[i][j]) || !inside(&self.table[j][i]) {
                        ideal_fail.push(format!("component {ci} with basis {j}"));
                        break 'outer;
                    }
                }
            }
        }
        let mut unit_fail = Vec::new();
        let units: Vec<Vector> = comps.iter().map(|c| self.coords(&c.unit)).collect();
        let mut total = vec![self.field().zero(); n];
        for (ci, u) in units.iter().enumerate() {
            total = vec_add(&total, u);
            if &self.mul_coords(u, u) != u {
                unit_fail.push(format!("u{ci} is not idempotent"));
            }
            for j in 0..n {
                let b = crate::linalg::unit_vector(self.field(), n, j);
                if self.mul_coords(u, &b) != self.mul_coords(&b, u) {
                    unit_fail.push(format!("u{ci} is not central"));
                    break;
                }
            }
            for (cj, w) in units.iter().enumerate() {
                if ci != cj && !is_zero_vec(&self.mul_coords(u, w)) {
                    unit_fail.push(format!("u{ci}·u{cj} ≠ 0"));
                }
            }
            let bu: Vec<Vector> = (0..n).map(|j| self.table_row_times(j, u)).collect();
            let own: Vec<Vector> = comps[ci].basis.iter().map(|&j| crate::linalg::unit_vector(self.field(), n, j)).collect();
            if !same_span(&bu, &own, n) {
                unit_fail.push(format!("B·u{ci} ≠ B_[e{ci}]"));
            }
        }
        if total != self.coords(&self.unit()) {
            unit_fail.push("units do not sum to 1".to_string());
        }
        vec![
            CheckResult::new("skew ring is the direct sum of component ideals", [sum_fail, ideal_fail].concat()),
            CheckResult::new("component units are central orthogonal idempotents", unit_fail),
        ]
    }

    fn table_row_times(&self, j: usize, u: &[Scalar]) -> Vector {
        self.mul_coords(&crate::linalg::unit_vector(self.field(), self.dim(), j), u)
    }

    /// Matrix of left multiplication by `x` on coordinates.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> =
            (0..n).map(|j| self.mul_coords(x, &crate::linalg::unit_vector(self.field(), n, j))).collect();
        Matrix::from_columns(self.field(), n, &cols)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentIdeal {
    pub class: Vec<ObjectId>,
    pub basis: Vec<usize>,
    pub unit: SkewRingElement,
}

/// Renders `Σ c_k b_k` with the algebra basis names, e.g. `v1 + 2·v3`.
pub fn format_element(names: &[String], v: &[Scalar]) -> String {
    let mut parts = Vec::new();
    for (name, c) in names.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            parts.push(name.clone());
        } else {
            parts.push(format!("{c}·{name}"));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn v(f: Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn edge_ring_shape_and_products() {
        let q = Field::Rational;
        let pa = catalog::edge_action(q);
        let sr = SkewRing::build(&pa).unwrap();
        assert_eq!(sr.dim(), 6);
        let grp = pa.groupoid();
        let g = grp.find_morphism("g").unwrap();
        let gi = grp.find_morphism("g^-1").unwrap();
        let e2 = grp.find_morphism("id:e2").unwrap();
        let x = sr.monomial(g, v(q, &[0, 0, 1, 0])).unwrap();
        let y = sr.monomial(gi, v(q, &[0, 1, 0, 0])).unwrap();
        assert_eq!(sr.mul(&x, &y), sr.monomial(e2, v(q, &[0, 0, 1, 0])).unwrap());
        assert_eq!(sr.mul_coords(&sr.coords(&x), &sr.coords(&y)), sr.coords(&sr.mul(&x, &y)));

        let e1 = grp.find_morphism("id:e1").unwrap();
        let mut unit = sr.zero();
        unit.terms[e1.0] = v(q, &[1, 1, 0, 0]);
        unit.terms[e2.0] = v(q, &[0, 0, 1, 1]);
        assert_eq!(sr.unit(), unit);
        assert_eq!(sr.embed_phi(pa.algebra().unit()), unit);
        assert_eq!(sr.embed_phi(&v(q, &[0, 1, 0, 0])), sr.monomial(e1, v(q, &[0, 1, 0, 0])).unwrap());

        assert_eq!(sr.right_act(&x, &v(q, &[0, 1, 0, 0])), x);
        assert!(sr.right_act(&x, &v(q, &[0, 0, 1, 0])).is_zero());
        assert_eq!(sr.left_act(pa.algebra().unit(), &x), x);
        assert!(sr.monomial(g, v(q, &[0, 1, 0, 0])).is_err());
    }

    #[test]
    fn trivial_ring_is_the_field() {
        let q = Field::Rational;
        let sr = SkewRing::build(&catalog::trivial_action(q)).unwrap();
        assert_eq!(sr.dim(), 1);
        assert_eq!(sr.table_entry(0, 0), &v(q, &[1]));
    }

    #[test]
    fn components_of_glued_pair() {
        let q = Field::Rational;
        let sr = SkewRing::build(&catalog::glued_edge_pair(q)).unwrap();
        let comps = sr.component_ideals();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.basis.len() == 6));
        assert!(sr.component_checks().iter().all(|c| c.passed));

        let sr = SkewRing::build(&catalog::edge_action(q)).unwrap();
        let comps = sr.component_ideals();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].unit, sr.unit());
    }

    #[test]
    fn invalid_action_is_rejected() {
        let pa = catalog::edge_action(Field::Rational);
        let gi = pa.groupoid().find_morphism("g^-1").unwrap();
        let maps = pa
            .groupoid()
            .morphisms()
            .map(|m| if m == gi { Matrix::zeros(pa.field(), 4, 4) } else { pa.map(m).clone() })
            .collect();
        let doms = pa.groupoid().morphisms().map(|m| pa.dom(m).clone()).collect();
        let broken = PartialAction::new(pa.groupoid().clone(), pa.algebra().clone(), doms, maps).unwrap();
        assert!(matches!(SkewRing::build(&broken), Err(SkewError::NotUnitalAction(_))));
    }

    #[test]
    fn element_labels() {
        let q = Field::Rational;
        let sr = SkewRing::build(&catalog::edge_action(q)).unwrap();
        let labels: Vec<String> = (0..sr.dim()).map(|i| sr.basis_label(i)).collect();
        assert_eq!(labels, ["v1·δ[id:e1]", "v2·δ[id:e1]", "v3·δ[id:e2]", "v4·δ[id:e2]", "v3·δ[g]", "v2·δ[g^-1]"]);
    }
}
