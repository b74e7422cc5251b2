//! Exact field arithmetic: arbitrary-precision rationals and prime fields of
//! odd characteristic.
//!
//! Every value is kept in canonical form (reduced fraction with positive
//! denominator, or residue in `[0, p)`), so `==` is exact field equality.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// The coefficient field: rationals, or `F_p` for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// A prime field of odd characteristic. Rejects `p = 2` and composites.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharTwoField);
        }
        if p >= 1 << 63 || !is_prime_u64(p) {
            return Err(Error::NotOddPrime { p });
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

/// Whether a scalar equals `1`, `-1`, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
    Neither,
}

/// An exact field element. Arithmetic never rounds; results are canonical.
///
/// Mixed-field arithmetic is a programming error and panics; the public
/// entry points of the crate validate fields before computing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::PrimeField(p) => Scalar::Mod { value: 0, modulus: p },
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::PrimeField(p) => Scalar::Mod { value: 1, modulus: p },
        }
    }

    pub fn from_i64(v: i64, field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => {
                let r = v.rem_euclid(p as i64) as u64;
                Scalar::Mod { value: r, modulus: p }
            }
        }
    }

    /// The rational `num/den`. Only defined over the rationals.
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rat(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Mod { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn is_minus_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => (-r).is_one(),
            Scalar::Mod { value, modulus } => *value == modulus - 1,
        }
    }

    /// `Plus` iff the value is `1`, `Minus` iff it is `-1` (`p - 1` in `F_p`).
    pub fn is_sign(&self) -> Sign {
        if self.is_one() {
            Sign::Plus
        } else if self.is_minus_one() {
            Sign::Minus
        } else {
            Sign::Neither
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (
                Scalar::Mod { value: a, modulus: p },
                Scalar::Mod { value: b, modulus: q },
            ) if p == q => Scalar::Mod {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => panic!("scalar arithmetic across different fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (
                Scalar::Mod { value: a, modulus: p },
                Scalar::Mod { value: b, modulus: q },
            ) if p == q => Scalar::Mod {
                value: mul_mod(*a, *b, *p),
                modulus: *p,
            },
            _ => panic!("scalar arithmetic across different fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::NonInvertible);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                // Fermat: a^(p-2) inverts a mod p.
                value: pow_mod(*value, *modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; `pow(a, 0) = 1` and negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let field = self.field();
        if exp == 0 {
            return Ok(Scalar::one(field));
        }
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one(field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    /// True if the rational value is negative. Residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }

    /// The value with any rational sign stripped, for sign-aware printing.
    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.abs()),
            m @ Scalar::Mod { .. } => m.clone(),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
