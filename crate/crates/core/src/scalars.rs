//! Exact scalar domains: the rationals, prime fields and the integers.
//!
//! Every scalar is carried as a [`BigRational`]; the owning [`ScalarDomain`]
//! decides which values are legal and performs the arithmetic. Prime-field
//! elements are stored as their canonical representative in `0..p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("value {value} does not belong to {domain}")]
    DomainMismatch { value: String, domain: ScalarDomain },
}

/// A prime modulus below `2^31`, checked on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial division; fine for the word-sized moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "p")]
pub enum ScalarDomain {
    Rationals,
    PrimeField(Prime),
    Integers,
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDomain::Rationals => write!(f, "Q"),
            ScalarDomain::PrimeField(p) => write!(f, "F_{p}"),
            ScalarDomain::Integers => write!(f, "Z"),
        }
    }
}

fn mod_reduce(n: &BigInt, p: u32) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    // p is prime, so a^(p-2) is the inverse
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl ScalarDomain {
    pub fn prime_field(p: u64) -> Result<Self, ScalarError> {
        Ok(ScalarDomain::PrimeField(Prime::new(p)?))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, ScalarDomain::Integers)
    }

    pub fn characteristic(self) -> u32 {
        match self {
            ScalarDomain::PrimeField(p) => p.get(),
            _ => 0,
        }
    }

    /// The field used for ranks: integers are treated through their fraction field.
    pub fn fraction_field(self) -> ScalarDomain {
        match self {
            ScalarDomain::Integers => ScalarDomain::Rationals,
            other => other,
        }
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            ScalarDomain::PrimeField(p) => Some(p.get() as u64),
            _ => None,
        }
    }

    /// Maps an arbitrary rational into this domain (reduction mod p for prime fields).
    pub fn normalize(self, v: &BigRational) -> Result<BigRational, ScalarError> {
        match self {
            ScalarDomain::Rationals => Ok(v.clone()),
            ScalarDomain::Integers => {
                if v.is_integer() {
                    Ok(v.clone())
                } else {
                    Err(self.mismatch(v))
                }
            }
            ScalarDomain::PrimeField(p) => {
                let p = p.get();
                let den = mod_reduce(v.denom(), p);
                if den == 0 {
                    return Err(self.mismatch(v));
                }
                let num = mod_reduce(v.numer(), p);
                let r = num * inv_mod(den, p as u64) % p as u64;
                Ok(BigRational::from_integer(BigInt::from(r)))
            }
        }
    }

    /// True when `v` is already in canonical form for this domain.
    pub fn contains(self, v: &BigRational) -> bool {
        match self {
            ScalarDomain::Rationals => true,
            ScalarDomain::Integers => v.is_integer(),
            ScalarDomain::PrimeField(p) => v.is_integer() && !v.is_negative() && v.numer() < &BigInt::from(p.get()),
        }
    }

    fn mismatch(self, v: &BigRational) -> ScalarError {
        ScalarError::DomainMismatch { value: v.to_string(), domain: self }
    }

    pub fn from_i64(self, v: i64) -> BigRational {
        self.normalize(&BigRational::from_integer(v.into())).expect("integers embed in every domain")
    }

    pub fn zero(self) -> BigRational {
        BigRational::zero()
    }

    pub fn one(self) -> BigRational {
        BigRational::one()
    }

    fn reduce(self, v: BigRational) -> BigRational {
        match self {
            ScalarDomain::PrimeField(p) => {
                let r = mod_reduce(v.numer(), p.get());
                BigRational::from_integer(BigInt::from(r))
            }
            _ => v,
        }
    }

    pub fn add(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a + b)
    }

    pub fn sub(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a - b)
    }

    pub fn mul(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a * b)
    }

    pub fn neg(self, a: &BigRational) -> BigRational {
        self.reduce(-a)
    }

    /// Multiplicative inverse, when it exists in this domain.
    pub fn inv(self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            return None;
        }
        match self {
            ScalarDomain::Rationals => Some(a.recip()),
            ScalarDomain::Integers => {
                if a.is_integer() && a.numer().abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            ScalarDomain::PrimeField(p) => {
                let p = p.get() as u64;
                let v = mod_reduce(a.numer(), p as u32);
                Some(BigRational::from_integer(BigInt::from(inv_mod(v, p))))
            }
        }
    }

    pub fn is_unit(self, a: &BigRational) -> bool {
        self.inv(a).is_some()
    }
}
