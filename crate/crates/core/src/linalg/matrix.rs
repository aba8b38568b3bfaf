use std::fmt;

use super::{Field, LinalgError, Scalar};

pub type Vector = Vec<Scalar>;

/// Dense matrix over a single [`Field`], stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, entries: vec![vec![field.zero(); cols]; rows] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        for row in &rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: row.len() });
            }
            if let Some(bad) = row.iter().find(|x| !field.owns(x)) {
                return Err(LinalgError::ForeignScalar(bad.to_string(), field));
            }
        }
        Ok(Matrix { field, rows: rows.len(), cols, entries: rows })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.entries[i][j] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.entries[i][j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i]
    }

    pub fn row_vectors(&self) -> &[Vec<Scalar>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vector {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(Scalar::is_zero))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j][i] = self.entries[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimensions");
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimensions");
        self.entries
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul_assign(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, entries }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column count");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.entries.clone();
        let pivots = rref_rows(&mut rows, self.cols);
        (Matrix { field: self.field, rows: self.rows, cols: self.cols, entries: rows }, pivots)
    }

    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Basis of the null space `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref_with_pivots();
        kernel_from_rref(self.field, r.row_vectors(), &pivots, self.cols)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Gauss-Jordan elimination in place over the first `cols` columns.
/// Returns pivot columns; zero rows sink to the bottom.
pub(crate) fn rref_rows(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r][c..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let support: Vec<usize> = (c..rows[r].len()).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = -&row[c];
            for &j in &support {
                row[j].add_mul_assign(&f, &pivot_row[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn kernel_from_rref(field: Field, rref: &[Vec<Scalar>], pivots: &[usize], cols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (row, &p) in rref.iter().zip(pivots) {
                if !row[f].is_zero() {
                    v[p] = -&row[f];
                }
            }
            v
        })
        .collect()
}

/// Solution set `particular + span(kernel_basis)` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub particular: Option<Vector>,
    pub kernel_basis: Vec<Vector>,
}

impl AffineSolutionSet {
    pub fn empty() -> Self {
        AffineSolutionSet { particular: None, kernel_basis: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Whether `v` lies in the affine set.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let Some(p) = &self.particular else {
            return false;
        };
        let diff: Vector = v.iter().zip(p).map(|(a, b)| a - b).collect();
        span_contains(&self.kernel_basis, &diff)
    }

    /// Equality as sets, independent of the chosen particular point and kernel basis.
    pub fn same_set(&self, other: &AffineSolutionSet) -> bool {
        match (&self.particular, &other.particular) {
            (None, None) => true,
            (Some(_), Some(q)) => {
                self.contains(q) && same_span(&self.kernel_basis, &other.kernel_basis, q.len())
            }
            _ => false,
        }
    }

    /// `particular + Σ params[k] * kernel_basis[k]`.
    pub fn point(&self, params: &[Scalar]) -> Option<Vector> {
        let mut v = self.particular.clone()?;
        assert_eq!(params.len(), self.kernel_basis.len(), "parameter count");
        for (t, k) in params.iter().zip(&self.kernel_basis) {
            for (x, y) in v.iter_mut().zip(k) {
                x.add_mul_assign(t, y);
            }
        }
        Some(v)
    }
}

/// Full solution set of `a * x = b`.
pub fn solve_affine(a: &Matrix, b: &[Scalar]) -> Result<AffineSolutionSet, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let field = a.field();
    let n = a.cols();
    let mut rows: Vec<Vec<Scalar>> = a
        .row_vectors()
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref_rows(&mut rows, n + 1);
    Ok(affine_from_augmented_rref(field, &rows, &pivots, n))
}

/// Reads the solution set off an augmented rref with `n` variable columns.
pub(crate) fn affine_from_augmented_rref(
    field: Field,
    rows: &[Vec<Scalar>],
    pivots: &[usize],
    n: usize,
) -> AffineSolutionSet {
    if pivots.last() == Some(&n) {
        return AffineSolutionSet::empty();
    }
    let mut particular = vec![field.zero(); n];
    for (row, &p) in rows.iter().zip(pivots) {
        particular[p] = row[n].clone();
    }
    let trimmed: Vec<Vec<Scalar>> = rows.iter().take(pivots.len()).map(|r| r[..n].to_vec()).collect();
    let kernel_basis = kernel_from_rref(field, &trimmed, pivots, n);
    AffineSolutionSet { particular: Some(particular), kernel_basis }
}

/// Canonical (rref) basis of the span of `vectors` in a space of dimension `n`.
pub fn span_basis(n: usize, vectors: &[Vector]) -> Vec<Vector> {
    let mut rows: Vec<Vec<Scalar>> = vectors.to_vec();
    let pivots = rref_rows(&mut rows, n);
    rows.truncate(pivots.len());
    rows
}

/// Whether `v` lies in the span of `basis`.
pub fn span_contains(basis: &[Vector], v: &[Scalar]) -> bool {
    if v.iter().all(Scalar::is_zero) {
        return true;
    }
    let n = v.len();
    let r0 = span_basis(n, basis).len();
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    span_basis(n, &with).len() == r0
}

/// Equality of the spans of two vector lists in a space of dimension `n`.
pub fn same_span(a: &[Vector], b: &[Vector], n: usize) -> bool {
    span_basis(n, a) == span_basis(n, b)
}

/// Reduced basis of `span(a) ∩ span(b)` in `field^n`.
pub fn intersect_spans(field: Field, n: usize, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<Vector> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect()));
    let m = Matrix::from_columns(field, n, &cols);
    let common: Vec<Vector> = m
        .kernel()
        .iter()
        .map(|k| {
            let mut v = vec![field.zero(); n];
            for (c, col) in k.iter().zip(a) {
                for (x, y) in v.iter_mut().zip(col) {
                    x.add_mul_assign(c, y);
                }
            }
            v
        })
        .collect();
    span_basis(n, &common)
}

/// Incrementally maintained reduced echelon basis of a row space.
///
/// Rows are fully reduced on insertion so the stored rows are always in rref
/// (up to row order), which keeps memory proportional to the rank.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(field: Field, cols: usize) -> Self {
        EchelonBuilder { field, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts a row; returns whether it enlarged the span.
    pub fn push(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        for (stored, &p) in self.rows.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let f = -&row[p];
            for (j, x) in stored.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    row[j].add_mul_assign(&f, x);
                }
            }
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].inv().expect("nonzero pivot");
        for x in row[p..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let support: Vec<usize> = (p..self.cols).filter(|&j| !row[j].is_zero()).collect();
        for stored in self.rows.iter_mut() {
            if stored[p].is_zero() {
                continue;
            }
            let f = -&stored[p];
            for &j in &support {
                stored[j].add_mul_assign(&f, &row[j]);
            }
        }
        self.rows.push(row);
        self.pivots.push(p);
        true
    }

    /// Sorted rref rows and their pivot columns.
    pub fn finish(self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let pivots = order.iter().map(|&i| self.pivots[i]).collect();
        let mut rows: Vec<Option<Vec<Scalar>>> = self.rows.into_iter().map(Some).collect();
        let rows = order.iter().map(|&i| rows[i].take().expect("row once")).collect();
        (rows, pivots)
    }

    /// Treats the last column as a right-hand side.
    pub fn into_affine(self) -> AffineSolutionSet {
        let field = self.field;
        let n = self.cols - 1;
        let (rows, pivots) = self.finish();
        affine_from_augmented_rref(field, &rows, &pivots, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        let f = Field::Rational;
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(f, cols, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
            .unwrap()
    }

    fn gf2(rows: &[&[i64]]) -> Matrix {
        let f = Field::prime(2).unwrap();
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(f, cols, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
            .unwrap()
    }

    fn v(f: Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Field::Rational, 3);
        assert_eq!(id.rref(), id);
        assert_eq!(q(&[&[2, 4], &[1, 2]]).rref(), q(&[&[1, 2], &[0, 0]]));
        // R2 <- R2 + R1 over GF(2)
        assert_eq!(gf2(&[&[1, 1], &[1, 1]]).rref(), gf2(&[&[1, 1], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(Field::Rational, 3).kernel().is_empty());
        let z = Matrix::zeros(Field::Rational, 2, 2);
        assert_eq!(z.kernel(), vec![v(Field::Rational, &[1, 0]), v(Field::Rational, &[0, 1])]);
        let f2 = Field::prime(2).unwrap();
        // of (0,0),(1,0),(0,1),(1,1) only (0,0),(1,1) satisfy x+y=0
        assert_eq!(gf2(&[&[1, 1]]).kernel(), vec![v(f2, &[1, 1])]);
    }

    #[test]
    fn solve_affine_examples() {
        let f = Field::Rational;
        let s = solve_affine(&Matrix::identity(f, 3), &v(f, &[4, 5, 6])).unwrap();
        assert_eq!(s.particular, Some(v(f, &[4, 5, 6])));
        assert!(s.kernel_basis.is_empty());

        let s = solve_affine(&Matrix::zeros(f, 1, 2), &v(f, &[1])).unwrap();
        assert!(s.is_empty());

        assert!(matches!(
            solve_affine(&Matrix::zeros(f, 2, 2), &v(f, &[1])),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn affine_set_equality_ignores_parametrisation() {
        let f = Field::Rational;
        let a = AffineSolutionSet { particular: Some(v(f, &[1, 1, 0, 1])), kernel_basis: vec![v(f, &[0, -1, 1, 0])] };
        let b = AffineSolutionSet { particular: Some(v(f, &[1, 0, 1, 1])), kernel_basis: vec![v(f, &[0, 2, -2, 0])] };
        assert!(a.same_set(&b));
        let c = AffineSolutionSet { particular: Some(v(f, &[1, 0, 1, 0])), kernel_basis: vec![v(f, &[0, 1, -1, 0])] };
        assert!(!a.same_set(&c));
        assert!(!a.same_set(&AffineSolutionSet::empty()));
        assert_eq!(a.point(&[f.from_i64(1)]), Some(v(f, &[1, 0, 1, 1])));
    }

    #[test]
    fn echelon_builder_matches_rref() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        let mut b = EchelonBuilder::new(Field::Rational, 3);
        for r in m.row_vectors() {
            b.push(r.clone());
        }
        let (rows, pivots) = b.finish();
        let (r, p) = m.rref_with_pivots();
        assert_eq!(pivots, p);
        assert_eq!(rows, r.row_vectors()[..p.len()].to_vec());
    }

    #[test]
    fn span_helpers() {
        let f = Field::Rational;
        let basis = vec![v(f, &[1, 1, 0]), v(f, &[0, 1, 1])];
        assert!(span_contains(&basis, &v(f, &[1, 2, 1])));
        assert!(!span_contains(&basis, &v(f, &[1, 0, 0])));
        assert!(same_span(&basis, &[v(f, &[1, 2, 1]), v(f, &[1, 0, -1])], 3));
    }
}
