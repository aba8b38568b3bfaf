//! A dense model of `B ⊗_A B` used as an oracle: the full space `B ⊗_𝕂 B`
//! of dimension `n²` modulo every relation `x a ⊗ y - x ⊗ a y`, with `x`,
//! `y` running over the skew-ring basis and `a` over the basis of `A`.
//! Everything is built from element-level products, without the block
//! decomposition used by the library.

#![allow(dead_code)]

use skewalg_core::linalg::{solve_affine, vec_add, vec_scale, vec_sub, EchelonBuilder, Field, Matrix, Scalar, Vector};
use skewalg_core::skewring::SkewRing;
use skewalg_core::tensor::TensorOverA;

pub struct Dense {
    pub n: usize,
    field: Field,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Dense {
    pub fn new(sr: &SkewRing) -> Dense {
        let n = sr.dim();
        let field = sr.field();
        let mut eb = EchelonBuilder::new(field, n * n);
        let a_basis = sr.action().algebra().basis();
        for i in 0..n {
            let x = sr.basis_element(i);
            for j in 0..n {
                let y = sr.basis_element(j);
                for a in &a_basis {
                    let xa = sr.coords(&sr.right_act(&x, a));
                    let ay = sr.coords(&sr.left_act(a, &y));
                    let rel = vec_sub(&kron(&xa, &sr.coords(&y)), &kron(&sr.coords(&x), &ay));
                    eb.push(rel);
                }
            }
        }
        let (rows, pivots) = eb.finish();
        Dense { n, field, rows, pivots }
    }

    pub fn quotient_dim(&self) -> usize {
        self.n * self.n - self.rows.len()
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                for (x, r) in v.iter_mut().zip(row) {
                    x.add_mul_assign(&c, r);
                }
            }
        }
        v
    }

    pub fn equal(&self, u: &[Scalar], v: &[Scalar]) -> bool {
        self.reduce(&vec_sub(u, v)).iter().all(|x| x.is_zero())
    }

    /// Dense vector of `Σ x_i y_j e_i ⊗ e_j`.
    pub fn pure(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        kron(x, y)
    }

    /// Dense form of the canonical representative of a library quotient
    /// vector.
    pub fn library_form(&self, t: &TensorOverA, q: &[Scalar]) -> Vector {
        let mut out = vec![self.field.zero(); self.n * self.n];
        for (i, j, c) in t.entries(&t.section(q)) {
            out[i * self.n + j] = &out[i * self.n + j] + c;
        }
        out
    }

    pub fn multiply(&self, sr: &SkewRing, u: &[Scalar]) -> Vector {
        let mut out = vec![self.field.zero(); self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let c = &u[i * self.n + j];
                if !c.is_zero() {
                    let p = sr.mul_coords(&basis(self.field, self.n, i), &basis(self.field, self.n, j));
                    out = vec_add(&out, &vec_scale(c, &p));
                }
            }
        }
        out
    }

    /// `c u - u c` for the `k`-th basis element `c`.
    pub fn commutator(&self, sr: &SkewRing, k: usize, u: &[Scalar]) -> Vector {
        let n = self.n;
        let c = basis(self.field, n, k);
        let mut out = vec![self.field.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let x = &u[i * n + j];
                if x.is_zero() {
                    continue;
                }
                let left = kron(&sr.mul_coords(&c, &basis(self.field, n, i)), &basis(self.field, n, j));
                let right = kron(&basis(self.field, n, i), &sr.mul_coords(&basis(self.field, n, j), &c));
                out = vec_add(&out, &vec_scale(x, &vec_sub(&left, &right)));
            }
        }
        out
    }

    pub fn is_separability_element(&self, sr: &SkewRing, u: &[Scalar]) -> bool {
        self.multiply(sr, u) == sr.coords(&sr.unit())
            && (0..self.n).all(|k| self.reduce(&self.commutator(sr, k, u)).iter().all(|x| x.is_zero()))
    }

    /// Whether some separability element exists, solved over the free
    /// coordinates of the reduced form.
    pub fn separable(&self, sr: &SkewRing) -> bool {
        let n2 = self.n * self.n;
        let free: Vec<usize> = (0..n2).filter(|c| !self.pivots.contains(c)).collect();
        if free.is_empty() {
            return sr.coords(&sr.unit()).iter().all(|x| x.is_zero());
        }
        let mut cols = Vec::new();
        for &f in &free {
            let e = basis(self.field, n2, f);
            let mut col = self.multiply(sr, &e);
            for k in 0..self.n {
                col.extend(self.reduce(&self.commutator(sr, k, &e)));
            }
            cols.push(col);
        }
        let mut rhs = sr.coords(&sr.unit());
        rhs.extend(vec![self.field.zero(); self.n * n2]);
        let m = Matrix::from_columns(self.field, rhs.len(), &cols);
        !solve_affine(&m, &rhs).expect("shapes agree").is_empty()
    }
}

pub fn kron(x: &[Scalar], y: &[Scalar]) -> Vector {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a * b);
        }
    }
    out
}

pub fn basis(field: Field, n: usize, i: usize) -> Vector {
    (0..n).map(|k| if k == i { field.one() } else { field.zero() }).collect()
}

pub fn v(field: Field, xs: &[i64]) -> Vector {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}
