//! Exact scalar arithmetic and the dense linear-algebra kernel.
//!
//! Everything here is exact: rationals use arbitrary-precision integers and
//! prime-field residues are reduced on every operation.

mod field;
pub(crate) mod matrix;

pub use field::{Field, Scalar, MAX_PRIME};
pub use matrix::{
    intersect_spans, same_span, solve_affine, span_basis, span_contains, AffineSolutionSet, EchelonBuilder, Matrix, Vector,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("unrecognised field descriptor `{0}`")]
    BadField(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("scalar {0} does not belong to {1}")]
    ForeignScalar(String, Field),
}

/// `x + y` componentwise.
pub fn vec_add(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// `x - y` componentwise.
pub fn vec_sub(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn vec_scale(c: &Scalar, x: &[Scalar]) -> Vector {
    x.iter().map(|a| c * a).collect()
}

pub fn is_zero_vec(x: &[Scalar]) -> bool {
    x.iter().all(Scalar::is_zero)
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}
