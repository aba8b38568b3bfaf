//! Finite-dimensional unital associative algebras given by structure constants.

use thiserror::Error;

use crate::linalg::{is_zero_vec, span_basis, unit_vector, vec_add, vec_sub, Field, Matrix, Scalar, Vector};

/// Coefficient vector of an algebra element in the algebra's basis.
pub type AlgebraElement = Vector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("structure constants have the wrong shape: {0}")]
    Shape(String),
    #[error("scalar outside the ground field {0}")]
    ForeignScalar(Field),
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NonAssociative(String, String, String),
    #[error("the given unit is not a two-sided identity")]
    BadUnit,
    #[error("element is not a central idempotent")]
    NotCentralIdempotent,
}

/// Unital associative algebra with `b_i · b_j = Σ_k structure[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    basis_names: Vec<String>,
    structure: Vec<Vec<Vector>>,
    unit: Vector,
}

impl Algebra {
    /// Validating constructor: checks shapes, associativity on basis triples
    /// and that `unit` is a two-sided identity.
    pub fn new(
        field: Field,
        basis_names: Vec<String>,
        structure: Vec<Vec<Vector>>,
        unit: Vector,
    ) -> Result<Self, AlgebraError> {
        let d = basis_names.len();
        if structure.len() != d || structure.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
            return Err(AlgebraError::Shape(format!("expected {d}x{d}x{d}")));
        }
        if unit.len() != d {
            return Err(AlgebraError::Shape(format!("unit has length {}, expected {d}", unit.len())));
        }
        let foreign = structure.iter().flatten().flatten().chain(&unit).any(|x| !field.owns(x));
        if foreign {
            return Err(AlgebraError::ForeignScalar(field));
        }
        let a = Algebra { field, basis_names, structure, unit };
        a.check_associative()?;
        for i in 0..d {
            let b = a.basis_element(i);
            if a.multiply(&a.unit, &b) != b || a.multiply(&b, &a.unit) != b {
                return Err(AlgebraError::BadUnit);
            }
        }
        Ok(a)
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = &self.structure[i][j];
                for k in 0..d {
                    let left = self.multiply(ij, &self.basis_element(k));
                    let right = self.multiply(&self.basis_element(i), &self.structure[j][k]);
                    if left != right {
                        let n = &self.basis_names;
                        return Err(AlgebraError::NonAssociative(n[i].clone(), n[j].clone(), n[k].clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// `⊕ᵢ 𝕂vᵢ` with pairwise orthogonal idempotents `v1..vn` summing to 1.
    pub fn diagonal(field: Field, n: usize) -> Self {
        Self::diagonal_named(field, (1..=n).map(|i| format!("v{i}")).collect())
    }

    pub fn diagonal_named(field: Field, names: Vec<String>) -> Self {
        let n = names.len();
        let structure = (0..n)
            .map(|i| (0..n).map(|j| if i == j { unit_vector(field, n, i) } else { vec![field.zero(); n] }).collect())
            .collect();
        Algebra { field, basis_names: names, structure, unit: vec![field.one(); n] }
    }

    /// Full matrix algebra `M_n(𝕂)` on the matrix units `E_ij`.
    pub fn matrix_algebra(field: Field, n: usize) -> Self {
        let d = n * n;
        let idx = |i: usize, j: usize| i * n + j;
        let mut structure = vec![vec![vec![field.zero(); d]; d]; d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    // E_ij E_jl = E_il
                    structure[idx(i, j)][idx(j, l)][idx(i, l)] = field.one();
                }
            }
        }
        let mut unit = vec![field.zero(); d];
        for i in 0..n {
            unit[idx(i, i)] = field.one();
        }
        let names = (0..n).flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1))).collect();
        Algebra { field, basis_names: names, structure, unit }
    }

    /// Block direct sum; basis and names are concatenated in order.
    pub fn direct_sum(parts: &[&Algebra]) -> Self {
        let field = parts.first().map_or(Field::Rational, |a| a.field);
        let d: usize = parts.iter().map(|a| a.dim()).sum();
        let mut structure = vec![vec![vec![field.zero(); d]; d]; d];
        let mut unit = Vec::with_capacity(d);
        let mut names = Vec::with_capacity(d);
        let mut base = 0;
        for a in parts {
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    for k in 0..a.dim() {
                        structure[base + i][base + j][base + k] = a.structure[i][j][k].clone();
                    }
                }
            }
            unit.extend(a.unit.iter().cloned());
            names.extend(a.basis_names.iter().cloned());
            base += a.dim();
        }
        Algebra { field, basis_names: names, structure, unit }
    }

    /// Same algebra with renamed basis vectors.
    pub fn with_basis_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim(), "one name per basis vector");
        self.basis_names = names;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure(&self) -> &[Vec<Vector>] {
        &self.structure
    }

    pub fn unit(&self) -> &AlgebraElement {
        &self.unit
    }

    pub fn zero(&self) -> AlgebraElement {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        unit_vector(self.field, self.dim(), i)
    }

    pub fn basis(&self) -> Vec<AlgebraElement> {
        (0..self.dim()).map(|i| self.basis_element(i)).collect()
    }

    /// Bilinear product through the structure constants.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> AlgebraElement {
        let d = self.dim();
        assert!(x.len() == d && y.len() == d, "element length does not match algebra dimension");
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, s) in out.iter_mut().zip(&self.structure[i][j]) {
                    if !s.is_zero() {
                        o.add_mul_assign(&c, s);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ x·e` acting on coefficient columns.
    pub fn right_mul_matrix(&self, e: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|i| self.multiply(&self.basis_element(i), e)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `x ↦ e·x`.
    pub fn left_mul_matrix(&self, e: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|i| self.multiply(e, &self.basis_element(i))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    pub fn commutes_with_basis(&self, x: &[Scalar]) -> bool {
        (0..self.dim()).all(|i| {
            let b = self.basis_element(i);
            self.multiply(x, &b) == self.multiply(&b, x)
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.structure[i][j] == self.structure[j][i]))
    }

    /// Basis of the center, as the kernel of `x ↦ (x·bⱼ − bⱼ·x)ⱼ`.
    pub fn center_basis(&self) -> Vec<AlgebraElement> {
        let d = self.dim();
        let mut rows = Vec::with_capacity(d * d);
        for j in 0..d {
            for k in 0..d {
                rows.push((0..d).map(|i| &self.structure[i][j][k] - &self.structure[j][i][k]).collect());
            }
        }
        let m = Matrix::from_rows(self.field, d, rows).expect("square system");
        // rref basis of the kernel keeps the output canonical
        span_basis(d, &m.kernel())
    }

    pub fn is_central_idempotent(&self, e: &[Scalar]) -> bool {
        self.multiply(e, e) == e && self.commutes_with_basis(e)
    }

    /// The ideal `A·e` for a central idempotent `e`.
    pub fn ideal_basis(&self, e: &[Scalar]) -> Result<IdealByIdempotent, AlgebraError> {
        if !self.is_central_idempotent(e) {
            return Err(AlgebraError::NotCentralIdempotent);
        }
        Ok(IdealByIdempotent::spanned_by(self, e))
    }

    /// Whether `idems` are pairwise orthogonal and sum to the unit, i.e.
    /// `A = ⊕ A·eᵢ`.
    pub fn check_object_decomposition(&self, idems: &[AlgebraElement]) -> bool {
        for (i, x) in idems.iter().enumerate() {
            for y in &idems[i + 1..] {
                if !is_zero_vec(&self.multiply(x, y)) || !is_zero_vec(&self.multiply(y, x)) {
                    return false;
                }
            }
        }
        let sum = idems.iter().fold(self.zero(), |acc, x| vec_add(&acc, x));
        sum == self.unit
    }

    /// `1 − e`.
    pub fn complement(&self, e: &[Scalar]) -> AlgebraElement {
        vec_sub(&self.unit, e)
    }

    /// The algebra `A·e` in its canonical basis, for a central idempotent `e`.
    pub fn corner(&self, ideal: &IdealByIdempotent) -> Algebra {
        let names = ideal
            .basis
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let support: Vec<usize> = (0..v.len()).filter(|&k| !v[k].is_zero()).collect();
                match support.as_slice() {
                    [k] if v[*k].is_one() => self.basis_names[*k].clone(),
                    _ => format!("u{}", i + 1),
                }
            })
            .collect();
        let structure = ideal
            .basis
            .iter()
            .map(|x| ideal.basis.iter().map(|y| ideal.coords(&self.multiply(x, y))).collect())
            .collect();
        Algebra { field: self.field, basis_names: names, structure, unit: ideal.coords(&ideal.generator) }
    }
}

/// The ideal `A·1ₓ` generated by a central idempotent, with its canonical
/// (reduced echelon) basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealByIdempotent {
    pub generator: AlgebraElement,
    pub basis: Vec<AlgebraElement>,
    /// Pivot coordinate of each basis vector.
    pub pivots: Vec<usize>,
}

impl IdealByIdempotent {
    pub(crate) fn spanned_by(a: &Algebra, e: &[Scalar]) -> Self {
        let products: Vec<Vector> = (0..a.dim()).map(|i| a.multiply(&a.basis_element(i), e)).collect();
        let basis = span_basis(a.dim(), &products);
        let pivots = basis.iter().map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect();
        IdealByIdempotent { generator: e.to_vec(), basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an element of the ideal in the canonical basis.
    pub fn coords(&self, x: &[Scalar]) -> Vector {
        self.pivots.iter().map(|&p| x[p].clone()).collect()
    }

    /// Ambient element with the given coordinates.
    pub fn embed(&self, coords: &[Scalar], field: Field) -> AlgebraElement {
        let n = self.generator.len();
        let mut out = vec![field.zero(); n];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                o.add_mul_assign(c, x);
            }
        }
        out
    }

    /// Membership, valid for elements of the ambient algebra.
    pub fn contains(&self, a: &Algebra, x: &[Scalar]) -> bool {
        a.multiply(x, &self.generator) == x
    }
}
