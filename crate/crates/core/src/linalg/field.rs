//! Exact scalars over the rationals or a prime field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Largest modulus accepted for prime fields.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// The ground field of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    PrimeField(u64),
}

impl Field {
    /// Prime field of order `p`, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::PrimeField(p) => Scalar::Residue {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    /// `num / den` reduced into this field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, LinalgError> {
        if den.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::PrimeField(p) => {
                let m = BigInt::from(*p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &m) + &m) % &m;
                    u64::try_from(r).expect("residue fits u64")
                };
                let n = Scalar::Residue { value: reduce(num), modulus: *p };
                let d = Scalar::Residue { value: reduce(den), modulus: *p };
                let d_inv = d.inv().ok_or(LinalgError::DivisionByZero)?;
                Ok(&n * &d_inv)
            }
        }
    }

    /// Parses `"3"`, `"-2"` or `"3/4"`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, LinalgError> {
        let s = s.trim();
        let bad = || LinalgError::BadScalar(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
        };
        self.from_fraction(&num, &den)
    }

    /// `"Q"` or `"GF(p)"`.
    pub fn parse(s: &str) -> Result<Self, LinalgError> {
        let t = s.trim();
        if t == "Q" || t.eq_ignore_ascii_case("rational") {
            return Ok(Field::Rational);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| LinalgError::BadField(s.to_string()))?;
        let p: u64 = inner.trim().parse().map_err(|_| LinalgError::BadField(s.to_string()))?;
        Field::prime(p)
    }

    /// Whether `x` belongs to this field.
    pub fn owns(&self, x: &Scalar) -> bool {
        match (self, x) {
            (Field::Rational, Scalar::Rational(_)) => true,
            (Field::PrimeField(p), Scalar::Residue { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms by
/// `BigRational`; residues live in `[0, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rational(r) => Some(Scalar::Rational(r.recip())),
            Scalar::Residue { value, modulus } => {
                // Fermat: value^(p-2)
                let p = *modulus;
                let mut base = *value as u128;
                let mut exp = p - 2;
                let mut acc: u128 = 1;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p as u128;
                    }
                    base = base * base % p as u128;
                    exp >>= 1;
                }
                Some(Scalar::Residue { value: acc as u64, modulus: p })
            }
        }
    }

    /// In-place `self += a * b`, the hot path of elimination.
    pub fn add_mul_assign(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (
                Scalar::Residue { value, modulus },
                Scalar::Residue { value: x, .. },
                Scalar::Residue { value: y, .. },
            ) => {
                let p = *modulus as u128;
                *value = ((*value as u128 + (*x as u128) * (*y as u128) % p) % p) as u64;
            }
            (Scalar::Rational(r), Scalar::Rational(x), Scalar::Rational(y)) => {
                *r += x * y;
            }
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    /// Sign-aware check used when printing; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $rat:expr, $res:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    (
                        Scalar::Residue { value: a, modulus: p },
                        Scalar::Residue { value: b, modulus: q },
                    ) if p == q => Scalar::Residue { value: $res(*a as u128, *b as u128, *p as u128) as u64, modulus: *p },
                    _ => panic!("mixed fields in scalar arithmetic"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a, b, p| (a + b) % p);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a, b, p| (a + p - b) % p);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, |a, b, p| a * b % p);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
