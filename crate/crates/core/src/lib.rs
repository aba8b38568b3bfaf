//! Finite groupoids acting partially on finite-dimensional algebras, the
//! partial skew groupoid ring, and a separability decision procedure with
//! checkable certificates. All arithmetic is exact, over ℚ or GF(p).

pub mod algebra;
pub mod catalog;
pub mod fuzz;
pub mod groupoid;
pub mod instance;
pub mod invariants;
pub mod linalg;
pub mod paction;
pub mod separability;
pub mod skewring;
pub mod tensor;
pub mod validation;
