//! Trace maps, the trace criterion for separability of `A ⊂ A ⋆ G`, its
//! certificates, a direct search for separability elements, and the
//! specialisations to global actions.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraElement, IdealByIdempotent};
use crate::groupoid::{connected_components, hom_set, GroupoidError, MorphismId, ObjectId};
use crate::linalg::{
    is_zero_vec, solve_affine, span_basis, vec_add, vec_scale, AffineSolutionSet, EchelonBuilder, Matrix, Scalar,
    Vector,
};
use crate::paction::{is_global, validate_partial_action, PartialAction};
use crate::skewring::{SkewError, SkewRing};
use crate::tensor::{Factor, Mid, TensorError, TensorOverA, TensorTerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeparabilityError {
    #[error("no morphism from {0} to {1}")]
    EmptyHomSet(String, String),
    #[error("the object idempotents do not decompose the algebra as a direct sum")]
    DecompositionRequired,
    #[error("invalid partial action: {0}")]
    InvalidAction(String),
    #[error("witness rejected: {0}")]
    WitnessInvalid(String),
    #[error("the action is not global")]
    NotGlobal,
    #[error("the groupoid is not connected")]
    NotConnected,
    #[error("unknown morphism {0}")]
    BadArrow(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

type Result<T> = std::result::Result<T, SeparabilityError>;

/// A linear map `A → A`. `source`/`target` are unset for the summed traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceMap {
    pub source: Option<ObjectId>,
    pub target: Option<ObjectId>,
    pub matrix: Matrix,
}

impl TraceMap {
    pub fn apply(&self, a: &[Scalar]) -> AlgebraElement {
        self.matrix.mul_vec(a)
    }
}

/// Matrix of `a ↦ α_g(a 1_{g⁻¹})`.
pub fn transfer_matrix(pa: &PartialAction, g: MorphismId) -> Matrix {
    let gi = pa.groupoid().inverse(g);
    pa.map(g).mul(&pa.algebra().right_mul_matrix(pa.dom(gi)))
}

fn sum_transfers(pa: &PartialAction, arrows: impl Iterator<Item = MorphismId>) -> Matrix {
    let d = pa.algebra().dim();
    arrows.fold(Matrix::zeros(pa.field(), d, d), |acc, g| acc.add(&transfer_matrix(pa, g)))
}

/// `t_{i,j}(a) = Σ_{g ∈ G(e_i, e_j)} α_g(a 1_{g⁻¹})`.
pub fn trace_ij(pa: &PartialAction, i: ObjectId, j: ObjectId) -> Result<TraceMap> {
    let grp = pa.groupoid();
    let hom = hom_set(grp, i, j)?;
    if hom.is_empty() {
        return Err(SeparabilityError::EmptyHomSet(grp.object_name(i).into(), grp.object_name(j).into()));
    }
    Ok(TraceMap { source: Some(i), target: Some(j), matrix: sum_transfers(pa, hom.into_iter()) })
}

/// `t_j = Σ_i t_{i,j}` over the objects of the component of `e_j`.
pub fn trace_j(pa: &PartialAction, j: ObjectId) -> Result<TraceMap> {
    let grp = pa.groupoid();
    grp.object(j.0)?;
    let comps = connected_components(grp);
    let class = &comps.classes[comps.class_of(j)];
    let d = pa.algebra().dim();
    let mut m = Matrix::zeros(pa.field(), d, d);
    for &i in class {
        m = m.add(&trace_ij(pa, i, j)?.matrix);
    }
    Ok(TraceMap { source: None, target: Some(j), matrix: m })
}

/// `t_α(a) = Σ_{g ∈ G} α_g(a 1_{g⁻¹})`.
pub fn trace_alpha(pa: &PartialAction) -> TraceMap {
    TraceMap { source: None, target: None, matrix: sum_transfers(pa, pa.groupoid().morphisms()) }
}

/// Basis of `A^{(i,j)} = {a : α_g(a 1_{g⁻¹}) = a 1_g for all g ∈ G(e_i, e_j)}`.
pub fn invariant_subring_ij(pa: &PartialAction, i: ObjectId, j: ObjectId) -> Result<Vec<AlgebraElement>> {
    let grp = pa.groupoid();
    let hom = hom_set(grp, i, j)?;
    let a = pa.algebra();
    let d = a.dim();
    let mut rows = Vec::new();
    for g in hom {
        let m = transfer_matrix(pa, g).sub(&a.right_mul_matrix(pa.dom(g)));
        rows.extend(m.row_vectors().iter().cloned());
    }
    if rows.is_empty() {
        return Ok(a.basis());
    }
    let stacked = Matrix::from_rows(pa.field(), d, rows).expect("rows have length dim");
    Ok(span_basis(d, &stacked.kernel()))
}

/// Basis of `C(A)·u`.
fn center_part(pa: &PartialAction, u: &[Scalar]) -> Vec<AlgebraElement> {
    let a = pa.algebra();
    let gens: Vec<Vector> = a.center_basis().iter().map(|z| a.multiply(z, u)).collect();
    span_basis(a.dim(), &gens)
}

fn class_unit(pa: &PartialAction, class: &[ObjectId]) -> AlgebraElement {
    class.iter().fold(pa.algebra().zero(), |acc, &e| vec_add(&acc, pa.object_unit(e)))
}

/// Solves `t_j(a) = 1_j` for `j` in `targets`, with `a` ranging over
/// `C(A)·u`. The family is returned in algebra coordinates.
fn solve_traces(pa: &PartialAction, u: &[Scalar], targets: &[ObjectId]) -> Result<AffineSolutionSet> {
    let field = pa.field();
    let d = pa.algebra().dim();
    let zs = center_part(pa, u);
    let m = zs.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &j in targets {
        let t = trace_j(pa, j)?;
        let images: Vec<Vector> = zs.iter().map(|z| t.apply(z)).collect();
        for r in 0..d {
            rows.push((0..m).map(|k| images[k][r].clone()).collect::<Vec<_>>());
        }
        rhs.extend(pa.object_unit(j).iter().cloned());
    }
    let system = Matrix::from_rows(field, m, rows).expect("rectangular system");
    let coeffs = solve_affine(&system, &rhs).expect("shapes agree");
    let combine = |c: &[Scalar]| -> Vector {
        zs.iter().zip(c).fold(vec![field.zero(); d], |acc, (z, x)| vec_add(&acc, &vec_scale(x, z)))
    };
    Ok(AffineSolutionSet {
        particular: coeffs.particular.as_deref().map(combine),
        kernel_basis: coeffs.kernel_basis.iter().map(|k| combine(k)).collect(),
    })
}

fn require_valid(pa: &PartialAction) -> Result<()> {
    let report = validate_partial_action(pa);
    if !report.is_valid() {
        return Err(SeparabilityError::InvalidAction(report.to_string()));
    }
    if !pa.has_object_decomposition() {
        return Err(SeparabilityError::DecompositionRequired);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateChecks {
    pub witness_central: bool,
    pub traces_are_units: bool,
    pub multiplication_is_unit: bool,
    pub commutes_with_basis: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.witness_central && self.traces_are_units && self.multiplication_is_unit && self.commutes_with_basis
    }
}

#[derive(Clone, Debug)]
pub struct SeparabilityCertificate {
    pub witness_a: AlgebraElement,
    pub witness_family: AffineSolutionSet,
    /// Quotient coordinates of `x` in `B ⊗_A B`.
    pub idempotent_x: Vector,
    /// The canonical representative of `x`.
    pub representative: Vec<TensorTerm>,
    pub checks: CertificateChecks,
}

#[derive(Clone, Debug)]
pub struct ComponentVerdict {
    pub class: Vec<ObjectId>,
    pub separable: bool,
    pub family: AffineSolutionSet,
}

#[derive(Clone, Debug)]
pub struct SeparabilityVerdict {
    pub separable: bool,
    pub per_component: Vec<ComponentVerdict>,
    /// Sum of the component families.
    pub family: AffineSolutionSet,
    pub certificate: Option<SeparabilityCertificate>,
}

fn merge_families(d: usize, pa: &PartialAction, parts: &[ComponentVerdict]) -> AffineSolutionSet {
    if parts.iter().any(|c| c.family.is_empty()) {
        return AffineSolutionSet::empty();
    }
    let mut particular = vec![pa.field().zero(); d];
    let mut kernel = Vec::new();
    for c in parts {
        particular = vec_add(&particular, c.family.particular.as_ref().expect("nonempty"));
        kernel.extend(c.family.kernel_basis.iter().cloned());
    }
    AffineSolutionSet { particular: Some(particular), kernel_basis: kernel }
}

fn verdict_from_parts(pa: &PartialAction, parts: Vec<ComponentVerdict>) -> Result<SeparabilityVerdict> {
    let family = merge_families(pa.algebra().dim(), pa, &parts);
    let separable = parts.iter().all(|c| c.separable);
    let certificate = match &family.particular {
        Some(a) => {
            let mut cert = build_certificate(pa, a)?;
            cert.witness_family = family.clone();
            Some(cert)
        }
        None => None,
    };
    Ok(SeparabilityVerdict { separable, per_component: parts, family, certificate })
}

/// Decides separability component by component: the extension is
/// separable iff for each class some `a ∈ C(A)·1_[e]` has `t_j(a) = 1_j`
/// for every object `j` of the class.
pub fn decide_separability(pa: &PartialAction) -> Result<SeparabilityVerdict> {
    require_valid(pa)?;
    let comps = connected_components(pa.groupoid());
    let mut parts = Vec::new();
    for class in &comps.classes {
        let family = solve_traces(pa, &class_unit(pa, class), class)?;
        parts.push(ComponentVerdict { class: class.clone(), separable: !family.is_empty(), family });
    }
    verdict_from_parts(pa, parts)
}

/// The global-action decision: per class, a single equation `t_k(a) = 1_k`
/// at the transversal object `k`.
pub fn decide_global(pa: &PartialAction) -> Result<SeparabilityVerdict> {
    require_valid(pa)?;
    if !is_global(pa) {
        return Err(SeparabilityError::NotGlobal);
    }
    let comps = connected_components(pa.groupoid());
    let mut parts = Vec::new();
    for (class, &k) in comps.classes.iter().zip(&comps.transversal) {
        let family = solve_traces(pa, &class_unit(pa, class), &[k])?;
        parts.push(ComponentVerdict { class: class.clone(), separable: !family.is_empty(), family });
    }
    verdict_from_parts(pa, parts)
}

/// Every `t_j(a)` equals `1_j`.
fn traces_hit_units(pa: &PartialAction, a: &[Scalar]) -> Result<bool> {
    for j in pa.groupoid().objects() {
        if &trace_j(pa, j)?.apply(a) != pa.object_unit(j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ambient vector of `Σ_g α_g(a 1_{g⁻¹}) δ_g ⊗ 1_{g⁻¹} δ_{g⁻¹}`.
pub fn certificate_ambient(pa: &PartialAction, sr: &SkewRing, t: &TensorOverA, a: &[Scalar]) -> Result<Vector> {
    let grp = pa.groupoid();
    let mut x = vec![pa.field().zero(); t.ambient_dim()];
    for g in grp.morphisms() {
        let gi = grp.inverse(g);
        let left = pa.apply(g, &pa.mul(a, pa.dom(gi)));
        if is_zero_vec(&left) {
            continue;
        }
        let l = sr.coords(&sr.monomial(g, left)?);
        let r = sr.coords(&sr.monomial(gi, pa.dom(gi).clone())?);
        x = vec_add(&x, &t.pure(sr, &l, &r)?);
    }
    Ok(x)
}

/// Checks `m̄(x) = 1` and `b x = x b` for every basis element `b`.
pub fn verify_separability_element(sr: &SkewRing, t: &TensorOverA, q: &[Scalar]) -> (bool, bool) {
    let m = t.multiply_ambient(sr, &t.section(q));
    let unit_ok = m == sr.coords(&sr.unit());
    let commutes = (0..sr.dim()).all(|c| t.act_left(sr, c, q) == t.act_right(sr, c, q));
    (unit_ok, commutes)
}

/// Builds and verifies the separability element attached to a central
/// witness `a` with `t_i(a) = 1_i` for all objects.
pub fn build_certificate(pa: &PartialAction, a: &[Scalar]) -> Result<SeparabilityCertificate> {
    require_valid(pa)?;
    if a.len() != pa.algebra().dim() {
        return Err(SeparabilityError::WitnessInvalid("wrong length".into()));
    }
    if !pa.algebra().commutes_with_basis(a) {
        return Err(SeparabilityError::WitnessInvalid("not central".into()));
    }
    if !traces_hit_units(pa, a)? {
        return Err(SeparabilityError::WitnessInvalid("some t_i(a) differs from 1_i".into()));
    }
    let sr = SkewRing::build(pa)?;
    let t = TensorOverA::new(&sr, Factor::Whole, Factor::Whole, Mid::Base)?;
    let ambient = certificate_ambient(pa, &sr, &t, a)?;
    let q = t.project(&ambient);
    let (multiplication_is_unit, commutes_with_basis) = verify_separability_element(&sr, &t, &q);
    Ok(SeparabilityCertificate {
        witness_a: a.to_vec(),
        witness_family: AffineSolutionSet { particular: Some(a.to_vec()), kernel_basis: Vec::new() },
        representative: t.terms(&t.section(&q)),
        idempotent_x: q,
        checks: CertificateChecks {
            witness_central: true,
            traces_are_units: true,
            multiplication_is_unit,
            commutes_with_basis,
        },
    })
}

#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub separable: bool,
    /// Quotient coordinates of one separability element.
    pub element: Option<Vector>,
    /// Dimension of the affine space of separability elements.
    pub freedom: usize,
    pub tensor_dim: usize,
}

/// Searches `B ⊗_A B` directly for `x` with `m̄(x) = 1` and `b x = x b`
/// for all basis elements `b`.
pub fn oracle_separability(pa: &PartialAction) -> Result<OracleOutcome> {
    require_valid(pa)?;
    let sr = SkewRing::build(pa)?;
    let t = TensorOverA::new(&sr, Factor::Whole, Factor::Whole, Mid::Base)?;
    let (set, _) = oracle_solutions(&sr, &t);
    Ok(OracleOutcome {
        separable: !set.is_empty(),
        freedom: set.kernel_basis.len(),
        element: set.particular,
        tensor_dim: t.dim(),
    })
}

/// The affine space of separability elements in quotient coordinates,
/// with the number of equations used.
pub fn oracle_solutions(sr: &SkewRing, t: &TensorOverA) -> (AffineSolutionSet, usize) {
    let field = sr.field();
    let qd = t.dim();
    let mut eb = EchelonBuilder::new(field, qd + 1);
    let mut equations = 0;
    let mmat = t.multiplication_matrix(sr);
    let unit = sr.coords(&sr.unit());
    for (r, u) in unit.iter().enumerate() {
        let mut row: Vec<Scalar> = (0..qd).map(|k| mmat.get(r, k).clone()).collect();
        row.push(u.clone());
        eb.push(row);
        equations += 1;
    }
    for c in 0..sr.dim() {
        let diff = t.left_action_matrix(sr, c).sub(&t.right_action_matrix(sr, c));
        for r in 0..qd {
            let row = diff.row(r);
            if row.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut row = row.to_vec();
            row.push(field.zero());
            eb.push(row);
            equations += 1;
        }
    }
    (eb.into_affine(), equations)
}

#[derive(Clone, Debug)]
pub struct ExtractedWitness {
    pub a: AlgebraElement,
    /// `a_{g,h}` for each composable-or-not block pair present in `x`.
    pub coefficients: Vec<((MorphismId, MorphismId), AlgebraElement)>,
    pub central: bool,
    pub traces_are_units: bool,
    /// `α_g(a_{s(g),s(g)} 1_{g⁻¹}) = a_{g,g⁻¹}` for every `g`.
    pub diagonal_transport: bool,
}

/// Rewrites `x = Σ a_{g,h} δ_g ⊗ 1_h δ_h` and reads off
/// `a = Σ_e a_{e,e}`.
pub fn extract_witness(pa: &PartialAction, sr: &SkewRing, t: &TensorOverA, q: &[Scalar]) -> Result<ExtractedWitness> {
    let grp = pa.groupoid();
    let n = grp.morphism_count();
    let zero = pa.algebra().zero();
    let mut coeff = vec![vec![zero.clone(); n]; n];
    for (i, j, c) in t.entries(&t.section(q)) {
        let (g, r) = sr.basis()[i];
        let (h, s) = sr.basis()[j];
        let w = &sr.ideal(g).basis[r];
        let w2 = &sr.ideal(h).basis[s];
        let moved = pa.apply(g, &pa.mul(w2, pa.dom(grp.inverse(g))));
        let term = vec_scale(c, &pa.mul(w, &moved));
        coeff[g.0][h.0] = vec_add(&coeff[g.0][h.0], &term);
    }
    let mut a = zero;
    for e in grp.objects() {
        let id = grp.identity(e);
        a = vec_add(&a, &coeff[id.0][id.0]);
    }
    let diagonal_transport = grp.morphisms().all(|g| {
        let gi = grp.inverse(g);
        let s = grp.identity(grp.src(g));
        pa.apply(g, &pa.mul(&coeff[s.0][s.0], pa.dom(gi))) == coeff[g.0][gi.0]
    });
    let central = pa.algebra().commutes_with_basis(&a);
    let traces_are_units = traces_hit_units(pa, &a)?;
    let mut coefficients = Vec::new();
    for g in grp.morphisms() {
        for h in grp.morphisms() {
            if !is_zero_vec(&coeff[g.0][h.0]) {
                coefficients.push(((g, h), coeff[g.0][h.0].clone()));
            }
        }
    }
    Ok(ExtractedWitness { a, coefficients, central, traces_are_units, diagonal_transport })
}

/// The sufficient condition: some central `a` has `t_k(a) = 1_k`, and every
/// object `j` is reached from `e_k` by an arrow `g_j` with `1_{g_j} = 1_j`.
pub fn check_sufficient_condition(pa: &PartialAction, k: ObjectId) -> Result<bool> {
    require_valid(pa)?;
    let grp = pa.groupoid();
    grp.object(k.0)?;
    if connected_components(grp).classes.len() != 1 {
        return Err(SeparabilityError::NotConnected);
    }
    if solve_traces(pa, pa.algebra().unit(), &[k])?.is_empty() {
        return Ok(false);
    }
    for j in grp.objects() {
        let reached = hom_set(grp, k, j)?.into_iter().any(|g| pa.dom(g) == pa.object_unit(j));
        if !reached {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct TransportedWitness {
    pub object: ObjectId,
    /// `g_k ∈ G(e_i, e_k)` for each object `e_k` of the class.
    pub arrows: Vec<MorphismId>,
    pub a: AlgebraElement,
    pub central_in_corner: bool,
    pub trace_is_unit: bool,
}

/// Moves a component witness `b` (with `t_i(b) = 1_i`) to the isotropy
/// group at `e_i`: `a = Σ_k α_{g_k⁻¹}(b 1_k)`. `e_i` is the first object of
/// the class and `g_k` the first arrow of `G(e_i, e_k)` in input order.
pub fn isotropy_witness_transport(pa: &PartialAction, class: usize, b: &[Scalar]) -> Result<TransportedWitness> {
    require_valid(pa)?;
    if !is_global(pa) {
        return Err(SeparabilityError::NotGlobal);
    }
    let grp = pa.groupoid();
    let comps = connected_components(grp);
    let members = comps
        .classes
        .get(class)
        .ok_or_else(|| SeparabilityError::WitnessInvalid(format!("no component {class}")))?;
    let i = members[0];
    if &trace_j(pa, i)?.apply(b) != pa.object_unit(i) || !pa.algebra().commutes_with_basis(b) {
        return Err(SeparabilityError::WitnessInvalid("b is not a central solution of t_i(b) = 1_i".into()));
    }
    let mut a = pa.algebra().zero();
    let mut arrows = Vec::new();
    for &k in members {
        let gk = hom_set(grp, i, k)?[0];
        arrows.push(gk);
        let bk = pa.mul(b, pa.object_unit(k));
        a = vec_add(&a, &pa.apply(grp.inverse(gk), &bk));
    }
    let a_alg = pa.algebra();
    let central_in_corner = a_alg.multiply(&a, pa.object_unit(i)) == a && a_alg.commutes_with_basis(&a);
    let trace_is_unit = &trace_ij(pa, i, i)?.apply(&a) == pa.object_unit(i);
    Ok(TransportedWitness { object: i, arrows, a, central_in_corner, trace_is_unit })
}

/// The isotropy action at `e` with its skew ring, the parent ids of its
/// arrows and the corner ideal `A_e`.
fn isotropy_ring(pa: &PartialAction, e: ObjectId) -> Result<(SkewRing, Vec<MorphismId>, IdealByIdempotent)> {
    let grp = pa.groupoid();
    let (sub, kept, ideal) = pa
        .restrict(&[e], |m| grp.src(m) == e && grp.tgt(m) == e)
        .map_err(|err| SeparabilityError::InvalidAction(err.to_string()))?;
    Ok((SkewRing::build(&sub)?, kept, ideal))
}

#[derive(Clone, Debug)]
pub struct PsiMap {
    pub from: ObjectId,
    pub to: ObjectId,
    pub matrix: Matrix,
    pub bijective: bool,
    pub multiplicative: bool,
    pub unital: bool,
}

impl PsiMap {
    pub fn is_ring_isomorphism(&self) -> bool {
        self.bijective && self.multiplicative && self.unital
    }
}

/// `ψ(a δ_g) = α_l(a) δ_{l g l⁻¹}` from `A_i ⋆ G(e_i)` to `A_j ⋆ G(e_j)` for
/// `l ∈ G(e_i, e_j)`, with its ring-isomorphism checks.
pub fn isotropy_transport_psi(pa: &PartialAction, l: MorphismId) -> Result<PsiMap> {
    require_valid(pa)?;
    if !is_global(pa) {
        return Err(SeparabilityError::NotGlobal);
    }
    let grp = pa.groupoid();
    if l.0 >= grp.morphism_count() {
        return Err(SeparabilityError::BadArrow(format!("#{}", l.0)));
    }
    let (i, j) = (grp.src(l), grp.tgt(l));
    let li = grp.inverse(l);
    let (sri, kept_i, ideal_i) = isotropy_ring(pa, i)?;
    let (srj, kept_j, ideal_j) = isotropy_ring(pa, j)?;
    let field = pa.field();
    let mut cols = Vec::new();
    for p in 0..sri.dim() {
        let (g_local, r) = sri.basis()[p];
        let g = kept_i[g_local.0];
        let a = ideal_i.embed(&sri.ideal(g_local).basis[r], field);
        let moved = ideal_j.coords(&pa.apply(l, &a));
        let conj = grp
            .compose(l, g)
            .and_then(|lg| grp.compose(lg, li))
            .expect("l g l⁻¹ is composable");
        let target = MorphismId(kept_j.iter().position(|&m| m == conj).expect("conjugate lies in G(e_j)"));
        cols.push(srj.coords(&srj.monomial(target, moved)?));
    }
    let matrix = Matrix::from_columns(field, srj.dim(), &cols);
    let bijective = sri.dim() == srj.dim() && matrix.rank() == sri.dim();
    let mut multiplicative = true;
    'outer: for p in 0..sri.dim() {
        for q in 0..sri.dim() {
            let lhs = matrix.mul_vec(sri.table_entry(p, q));
            let rhs = srj.mul_coords(&cols[p], &cols[q]);
            if lhs != rhs {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    let unital = matrix.mul_vec(&sri.coords(&sri.unit())) == srj.coords(&srj.unit());
    Ok(PsiMap { from: i, to: j, matrix, bijective, multiplicative, unital })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::Field;

    fn v(f: Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn edge_traces() {
        let q = Field::Rational;
        let pa = catalog::edge_action(q);
        let e1 = ObjectId(0);
        let e2 = ObjectId(1);
        let a = v(q, &[2, 3, 5, 7]);
        assert_eq!(trace_j(&pa, e1).unwrap().apply(&a), v(q, &[2, 8, 0, 0]));
        assert_eq!(trace_j(&pa, e2).unwrap().apply(&a), v(q, &[0, 0, 8, 7]));
        let sum = trace_j(&pa, e1).unwrap().matrix.add(&trace_j(&pa, e2).unwrap().matrix);
        assert_eq!(trace_alpha(&pa).matrix, sum);
        assert_eq!(invariant_subring_ij(&pa, e1, e2).unwrap().len(), 3);
    }

    #[test]
    fn cross_component_trace_is_an_error() {
        let pa = catalog::glued_edge_pair(Field::Rational);
        assert!(matches!(trace_ij(&pa, ObjectId(0), ObjectId(2)), Err(SeparabilityError::EmptyHomSet(_, _))));
    }

    #[test]
    fn zero_cross_depends_on_characteristic() {
        for (f, expected) in [(Field::Rational, true), (Field::prime(3).unwrap(), true), (Field::prime(2).unwrap(), false)] {
            let pa = catalog::zero_cross_action(f);
            let verdict = decide_separability(&pa).unwrap();
            assert_eq!(verdict.separable, expected, "{f}");
            assert_eq!(oracle_separability(&pa).unwrap().separable, expected, "{f}");
            if let Some(c) = verdict.certificate {
                assert!(c.checks.all());
            }
        }
    }

    #[test]
    fn edge_is_separable_with_checked_certificate() {
        let q = Field::Rational;
        let pa = catalog::edge_action(q);
        let verdict = decide_separability(&pa).unwrap();
        assert!(verdict.separable);
        assert_eq!(verdict.family.kernel_basis.len(), 1);
        assert!(verdict.certificate.unwrap().checks.all());
        assert!(!check_sufficient_condition(&pa, ObjectId(0)).unwrap());
        assert!(build_certificate(&pa, &v(q, &[1, 0, 0, 1])).is_err());
    }

    #[test]
    fn oracle_elements_yield_witnesses() {
        let q = Field::Rational;
        let pa = catalog::edge_action(q);
        let sr = SkewRing::build(&pa).unwrap();
        let t = TensorOverA::new(&sr, Factor::Whole, Factor::Whole, Mid::Base).unwrap();
        let (set, _) = oracle_solutions(&sr, &t);
        let x = set.particular.unwrap();
        let w = extract_witness(&pa, &sr, &t, &x).unwrap();
        assert!(w.central && w.traces_are_units && w.diagonal_transport);
    }

    #[test]
    fn global_swap() {
        let q = Field::Rational;
        let pa = catalog::swap_global_action(q);
        let full = decide_separability(&pa).unwrap();
        let global = decide_global(&pa).unwrap();
        assert!(full.separable && global.separable);
        let b = global.family.particular.clone().unwrap();
        let moved = isotropy_witness_transport(&pa, 0, &b).unwrap();
        assert!(moved.trace_is_unit && moved.central_in_corner);
        let s = pa.groupoid().find_morphism("s").unwrap();
        assert!(isotropy_transport_psi(&pa, s).unwrap().is_ring_isomorphism());
        assert!(matches!(decide_global(&catalog::edge_action(q)), Err(SeparabilityError::NotGlobal)));
        assert!(check_sufficient_condition(&pa, ObjectId(0)).unwrap());
    }
}
