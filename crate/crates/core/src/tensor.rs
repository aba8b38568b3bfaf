//! `L ⊗_R M` for subspaces `L, M` of the skew ring closed under the
//! relevant actions, realised as the pairwise tensor space modulo the
//! balancing relations `b·a ⊗ b' − b ⊗ a·b'`.
//!
//! The ambient space splits into blocks `(g, h)` spanned by
//! `A_g δ_g ⊗ A_h δ_h`, and every relation lives in a single block, so
//! each block is reduced on its own.

use thiserror::Error;

use crate::algebra::{AlgebraElement, IdealByIdempotent};
use crate::groupoid::MorphismId;
use crate::linalg::matrix::rref_rows;
use crate::linalg::{Field, Matrix, Scalar, Vector};
use crate::skewring::SkewRing;

pub const DEFAULT_MAX_AMBIENT: usize = 4096;

/// Ambient dimension cap, from `SKEWALG_MAX_DIM` when set.
pub fn ambient_cap() -> usize {
    std::env::var("SKEWALG_MAX_DIM").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_AMBIENT)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("ambient tensor dimension {0} exceeds the cap {1} (SKEWALG_MAX_DIM)")]
    TooLarge(usize, usize),
    #[error("no component with index {0}")]
    NoSuchComponent(usize),
    #[error("element is not supported on the tensor factor")]
    OutsideFactor,
}

/// A tensor factor: the whole ring or one component ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Whole,
    Component(usize),
}

/// The ring tensored over: `A` or a component subalgebra `A_[e]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mid {
    Base,
    Component(usize),
}

#[derive(Clone, Debug)]
struct Block {
    g: MorphismId,
    h: MorphismId,
    rows: usize,
    cols: usize,
    ambient_offset: usize,
    quotient_offset: usize,
    relations: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Block {
    fn reduce(&self, local: &mut [Scalar]) {
        for (row, &p) in self.relations.iter().zip(&self.pivots) {
            if local[p].is_zero() {
                continue;
            }
            let c = -&local[p];
            for (x, r) in local.iter_mut().zip(row) {
                if !r.is_zero() {
                    x.add_mul_assign(&c, r);
                }
            }
        }
    }
}

/// One summand `a δ_g ⊗ b δ_h` of a tensor representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorTerm {
    pub left: MorphismId,
    pub left_coeff: AlgebraElement,
    pub right: MorphismId,
    pub right_coeff: AlgebraElement,
}

#[derive(Clone, Debug)]
pub struct TensorOverA {
    field: Field,
    blocks: Vec<Block>,
    block_of: Vec<Vec<Option<usize>>>,
    ideals: Vec<IdealByIdempotent>,
    offsets: Vec<usize>,
    ambient_dim: usize,
    dim: usize,
    mid_dim: usize,
}

fn factor_morphisms(sr: &SkewRing, f: Factor) -> Result<Vec<bool>, TensorError> {
    let grp = sr.action().groupoid();
    match f {
        Factor::Whole => Ok(vec![true; grp.morphism_count()]),
        Factor::Component(c) => {
            let comps = sr.component_ideals();
            let class = &comps.get(c).ok_or(TensorError::NoSuchComponent(c))?.class;
            Ok(grp.morphisms().map(|g| class.contains(&grp.tgt(g))).collect())
        }
    }
}

fn mid_basis(sr: &SkewRing, m: Mid) -> Result<Vec<AlgebraElement>, TensorError> {
    let pa = sr.action();
    match m {
        Mid::Base => Ok(pa.algebra().basis()),
        Mid::Component(c) => {
            let comps = sr.component_ideals();
            let class = &comps.get(c).ok_or(TensorError::NoSuchComponent(c))?.class;
            let mut u = pa.algebra().zero();
            for &e in class {
                u = crate::linalg::vec_add(&u, pa.object_unit(e));
            }
            Ok(IdealByIdempotent::spanned_by(pa.algebra(), &u).basis)
        }
    }
}

impl TensorOverA {
    pub fn new(sr: &SkewRing, left: Factor, right: Factor, mid: Mid) -> Result<TensorOverA, TensorError> {
        Self::with_cap(sr, left, right, mid, ambient_cap())
    }

    pub fn with_cap(sr: &SkewRing, left: Factor, right: Factor, mid: Mid, cap: usize) -> Result<TensorOverA, TensorError> {
        let pa = sr.action();
        let grp = pa.groupoid();
        let field = sr.field();
        let in_left = factor_morphisms(sr, left)?;
        let in_right = factor_morphisms(sr, right)?;
        let mids = mid_basis(sr, mid)?;
        let n = grp.morphism_count();
        let ideals: Vec<IdealByIdempotent> = grp.morphisms().map(|g| sr.ideal(g).clone()).collect();
        let offsets: Vec<usize> = grp.morphisms().map(|g| sr.block(g).start).collect();

        let ambient_dim: usize = grp
            .morphisms()
            .filter(|g| in_left[g.0])
            .map(|g| ideals[g.0].dim())
            .sum::<usize>()
            * grp.morphisms().filter(|h| in_right[h.0]).map(|h| ideals[h.0].dim()).sum::<usize>();
        if ambient_dim > cap {
            return Err(TensorError::TooLarge(ambient_dim, cap));
        }

        let mut blocks = Vec::new();
        let mut block_of = vec![vec![None; n]; n];
        let mut ambient_offset = 0;
        let mut quotient_offset = 0;
        for g in grp.morphisms().filter(|g| in_left[g.0]) {
            for h in grp.morphisms().filter(|h| in_right[h.0]) {
                let (rows, cols) = (ideals[g.0].dim(), ideals[h.0].dim());
                if rows == 0 || cols == 0 {
                    continue;
                }
                let gi = grp.inverse(g);
                let mut rels = Vec::new();
                for a in &mids {
                    let moved = pa.apply(g, &pa.mul(a, pa.dom(gi)));
                    let right_acted: Vec<Vector> =
                        ideals[g.0].basis.iter().map(|w| ideals[g.0].coords(&pa.mul(w, &moved))).collect();
                    let left_acted: Vec<Vector> =
                        ideals[h.0].basis.iter().map(|w| ideals[h.0].coords(&pa.mul(a, w))).collect();
                    for r in 0..rows {
                        for s in 0..cols {
                            let mut rel = vec![field.zero(); rows * cols];
                            for (k, c) in right_acted[r].iter().enumerate() {
                                if !c.is_zero() {
                                    rel[k * cols + s] = &rel[k * cols + s] + c;
                                }
                            }
                            for (k, c) in left_acted[s].iter().enumerate() {
                                if !c.is_zero() {
                                    rel[r * cols + k] = &rel[r * cols + k] - c;
                                }
                            }
                            if rel.iter().any(|x| !x.is_zero()) {
                                rels.push(rel);
                            }
                        }
                    }
                }
                let pivots = rref_rows(&mut rels, rows * cols);
                rels.truncate(pivots.len());
                let free: Vec<usize> = (0..rows * cols).filter(|c| !pivots.contains(c)).collect();
                block_of[g.0][h.0] = Some(blocks.len());
                let qd = free.len();
                blocks.push(Block {
                    g,
                    h,
                    rows,
                    cols,
                    ambient_offset,
                    quotient_offset,
                    relations: rels,
                    pivots,
                    free,
                });
                ambient_offset += rows * cols;
                quotient_offset += qd;
            }
        }
        Ok(TensorOverA {
            field,
            blocks,
            block_of,
            ideals,
            offsets,
            ambient_dim: ambient_offset,
            dim: quotient_offset,
            mid_dim: mids.len(),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn mid_dim(&self) -> usize {
        self.mid_dim
    }

    /// Ambient index of `b_i ⊗ b_j` for skew-ring basis indices.
    fn ambient_index(&self, sr: &SkewRing, i: usize, j: usize) -> Option<usize> {
        let (g, r) = sr.basis()[i];
        let (h, s) = sr.basis()[j];
        let b = &self.blocks[self.block_of[g.0][h.0]?];
        Some(b.ambient_offset + r * b.cols + s)
    }

    /// The ambient vector of `x ⊗ y` for skew-ring coordinate vectors.
    pub fn pure(&self, sr: &SkewRing, x: &[Scalar], y: &[Scalar]) -> Result<Vector, TensorError> {
        let mut out = vec![self.field.zero(); self.ambient_dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let k = self.ambient_index(sr, i, j).ok_or(TensorError::OutsideFactor)?;
                out[k].add_mul_assign(xi, yj);
            }
        }
        Ok(out)
    }

    /// Nonzero ambient entries as `(i, j, coeff)` over skew-ring basis
    /// indices.
    pub fn entries<'a>(&'a self, ambient: &'a [Scalar]) -> impl Iterator<Item = (usize, usize, &'a Scalar)> + 'a {
        self.blocks.iter().flat_map(move |b| {
            let gi = self.offsets[b.g.0];
            let hi = self.offsets[b.h.0];
            (0..b.rows * b.cols).filter_map(move |k| {
                let c = &ambient[b.ambient_offset + k];
                (!c.is_zero()).then_some((gi + k / b.cols, hi + k % b.cols, c))
            })
        })
    }

    pub fn project(&self, ambient: &[Scalar]) -> Vector {
        let mut out = Vec::with_capacity(self.dim);
        for b in &self.blocks {
            let mut local = ambient[b.ambient_offset..b.ambient_offset + b.rows * b.cols].to_vec();
            b.reduce(&mut local);
            out.extend(b.free.iter().map(|&f| local[f].clone()));
        }
        out
    }

    /// Canonical representative: the reduced ambient vector.
    pub fn section(&self, q: &[Scalar]) -> Vector {
        let mut out = vec![self.field.zero(); self.ambient_dim];
        for b in &self.blocks {
            for (k, &f) in b.free.iter().enumerate() {
                out[b.ambient_offset + f] = q[b.quotient_offset + k].clone();
            }
        }
        out
    }

    /// Whether `x` and `y` agree in the quotient.
    pub fn equal_in_quotient(&self, x: &[Scalar], y: &[Scalar]) -> bool {
        self.project(x) == self.project(y)
    }

    fn apply_left(&self, sr: &SkewRing, c: usize, ambient: &[Scalar]) -> Vector {
        let mut out = vec![self.field.zero(); self.ambient_dim];
        for (i, j, coeff) in self.entries(ambient) {
            for (k, t) in sr.table_entry(c, i).iter().enumerate() {
                if !t.is_zero() {
                    let idx = self.ambient_index(sr, k, j).expect("left factor is a left ideal");
                    out[idx].add_mul_assign(coeff, t);
                }
            }
        }
        out
    }

    fn apply_right(&self, sr: &SkewRing, c: usize, ambient: &[Scalar]) -> Vector {
        let mut out = vec![self.field.zero(); self.ambient_dim];
        for (i, j, coeff) in self.entries(ambient) {
            for (k, t) in sr.table_entry(j, c).iter().enumerate() {
                if !t.is_zero() {
                    let idx = self.ambient_index(sr, i, k).expect("right factor is a right ideal");
                    out[idx].add_mul_assign(coeff, t);
                }
            }
        }
        out
    }

    fn quotient_map(&self, f: impl Fn(&[Scalar]) -> Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|k| {
                let e = crate::linalg::unit_vector(self.field, self.dim, k);
                f(&self.section(&e))
            })
            .collect();
        Matrix::from_columns(self.field, cols.first().map_or(0, |c| c.len()), &cols)
    }

    /// Induced left action of the basis element `b_c` on the quotient.
    pub fn left_action_matrix(&self, sr: &SkewRing, c: usize) -> Matrix {
        let m = self.quotient_map(|x| self.project(&self.apply_left(sr, c, x)));
        if self.dim == 0 {
            Matrix::zeros(self.field, 0, 0)
        } else {
            m
        }
    }

    pub fn right_action_matrix(&self, sr: &SkewRing, c: usize) -> Matrix {
        let m = self.quotient_map(|x| self.project(&self.apply_right(sr, c, x)));
        if self.dim == 0 {
            Matrix::zeros(self.field, 0, 0)
        } else {
            m
        }
    }

    /// `b_c · x` on quotient coordinates.
    pub fn act_left(&self, sr: &SkewRing, c: usize, q: &[Scalar]) -> Vector {
        self.project(&self.apply_left(sr, c, &self.section(q)))
    }

    pub fn act_right(&self, sr: &SkewRing, c: usize, q: &[Scalar]) -> Vector {
        self.project(&self.apply_right(sr, c, &self.section(q)))
    }

    /// Multiplication `Σ b_i ⊗ b_j ↦ Σ b_i b_j` on an ambient vector.
    pub fn multiply_ambient(&self, sr: &SkewRing, ambient: &[Scalar]) -> Vector {
        let mut out = vec![self.field.zero(); sr.dim()];
        for (i, j, coeff) in self.entries(ambient) {
            for (o, t) in out.iter_mut().zip(sr.table_entry(i, j)) {
                if !t.is_zero() {
                    o.add_mul_assign(coeff, t);
                }
            }
        }
        out
    }

    /// The induced map `m̄` into the skew ring, as a `dim B × dim` matrix.
    pub fn multiplication_matrix(&self, sr: &SkewRing) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|k| self.multiply_ambient(sr, &self.section(&crate::linalg::unit_vector(self.field, self.dim, k))))
            .collect();
        Matrix::from_columns(self.field, sr.dim(), &cols)
    }

    /// Whether multiplication kills every stored relation row.
    pub fn multiplication_is_balanced(&self, sr: &SkewRing) -> bool {
        self.blocks.iter().all(|b| {
            b.relations.iter().all(|rel| {
                let mut ambient = vec![self.field.zero(); self.ambient_dim];
                ambient[b.ambient_offset..b.ambient_offset + rel.len()].clone_from_slice(rel);
                crate::linalg::is_zero_vec(&self.multiply_ambient(sr, &ambient))
            })
        })
    }

    /// Summands of an ambient vector grouped by left basis vector:
    /// `b_r δ_g ⊗ (Σ_s c_rs b_s) δ_h`.
    pub fn terms(&self, ambient: &[Scalar]) -> Vec<TensorTerm> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for r in 0..b.rows {
                let row = &ambient[b.ambient_offset + r * b.cols..b.ambient_offset + (r + 1) * b.cols];
                if row.iter().all(|x| x.is_zero()) {
                    continue;
                }
                out.push(TensorTerm {
                    left: b.g,
                    left_coeff: self.ideals[b.g.0].basis[r].clone(),
                    right: b.h,
                    right_coeff: self.ideals[b.h.0].embed(row, self.field),
                });
            }
        }
        out
    }

    /// Block pairs `(g, h)` present in the ambient space.
    pub fn block_pairs(&self) -> Vec<(MorphismId, MorphismId)> {
        self.blocks.iter().map(|b| (b.g, b.h)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn section_then_project_is_identity() {
        let q = Field::Rational;
        let sr = SkewRing::build(&catalog::edge_action(q)).unwrap();
        let t = TensorOverA::new(&sr, Factor::Whole, Factor::Whole, Mid::Base).unwrap();
        assert_eq!(t.ambient_dim(), 36);
        assert!(t.multiplication_is_balanced(&sr));
        for k in 0..t.dim() {
            let e = crate::linalg::unit_vector(q, t.dim(), k);
            assert_eq!(t.project(&t.section(&e)), e);
        }
    }

    #[test]
    fn field_over_field() {
        let q = Field::Rational;
        let sr = SkewRing::build(&catalog::trivial_action(q)).unwrap();
        let t = TensorOverA::new(&sr, Factor::Whole, Factor::Whole, Mid::Base).unwrap();
        assert_eq!(t.dim(), 1);
    }

    #[test]
    fn cross_component_tensor_vanishes() {
        let q = Field::Rational;
        let sr = SkewRing::build(&catalog::glued_edge_pair(q)).unwrap();
        let t = TensorOverA::new(&sr, Factor::Component(0), Factor::Component(1), Mid::Base).unwrap();
        assert_eq!(t.dim(), 0);
        let whole = TensorOverA::new(&sr, Factor::Whole, Factor::Whole, Mid::Base).unwrap();
        let parts: usize = (0..2)
            .map(|c| TensorOverA::new(&sr, Factor::Component(c), Factor::Component(c), Mid::Component(c)).unwrap().dim())
            .sum();
        assert_eq!(whole.dim(), parts);
    }

    #[test]
    fn cap_is_enforced() {
        let q = Field::Rational;
        let sr = SkewRing::build(&catalog::edge_action(q)).unwrap();
        assert_eq!(
            TensorOverA::with_cap(&sr, Factor::Whole, Factor::Whole, Mid::Base, 10).unwrap_err(),
            TensorError::TooLarge(36, 10)
        );
    }
}
