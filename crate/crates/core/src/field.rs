//! Coefficient fields: the rationals and prime fields `Z/p`.

use alloc::format;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Largest admissible characteristic; products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// The prime field `Z/p`. Fails unless `p` is a prime below [`MAX_PRIME`].
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!("{p} exceeds the supported maximum {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
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
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular(Zp::new(n.rem_euclid(*p as i64) as u64, *p)),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Modular(Zp::new(r.to_u64().unwrap_or(0), *p))
            }
        }
    }

    /// `num/den` in this field; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::InvalidField(format!("denominator {den} is zero in {self}")))?;
        Ok(&self.from_bigint(num) * &inv)
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rationals, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Modular(z)) => z.modulus == *p,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue class modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zp {
    value: u64,
    modulus: u64,
}

impl Zp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Zp { value: value % modulus, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1 % self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            e >>= 1;
        }
        Zp::new(acc, self.modulus)
    }

    /// Inverse via Fermat: `a^(p-2)`.
    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| self.pow(self.modulus - 2))
    }
}

/// A field element. Arithmetic between elements of different fields panics;
/// ring-level operations check compatibility before they get here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular(Zp),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular(z) => z.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular(z) => z.value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => (!q.is_zero()).then(|| Scalar::Rational(q.recip())),
            Scalar::Modular(z) => z.inv().map(Scalar::Modular),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular(z) => Field::Prime(z.modulus),
        }
    }

    /// True for rationals with a leading minus sign; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular(_) => None,
        }
    }

    pub fn as_residue(&self) -> Option<Zp> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Modular(z) => Some(*z),
        }
    }
}

fn mismatch() -> ! {
    panic!("arithmetic between scalars of different fields")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular(a), Scalar::Modular(b)) if a.modulus == b.modulus => {
                Scalar::Modular(Zp::new(a.value + b.value, a.modulus))
            }
            _ => mismatch(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular(a), Scalar::Modular(b)) if a.modulus == b.modulus => {
                Scalar::Modular(Zp::new(a.value + a.modulus - b.value, a.modulus))
            }
            _ => mismatch(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular(a), Scalar::Modular(b)) if a.modulus == b.modulus => {
                Scalar::Modular(Zp::new(a.value * b.value, a.modulus))
            }
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular(a) => Scalar::Modular(Zp::new(a.modulus - a.value, a.modulus)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular(z) => write!(f, "{}", z.value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(32003).is_ok());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(91).is_err());
        assert!(Field::prime(MAX_PRIME + 2).is_err());
    }

    #[test]
    fn modular_inverse_by_exponentiation() {
        let f = Field::prime(7).unwrap();
        for a in 1..7 {
            let x = f.from_i64(a);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn ratio_in_small_characteristic() {
        let f2 = Field::prime(2).unwrap();
        assert!(f2.from_ratio(&BigInt::from(1), &BigInt::from(2)).is_err());
        let q = Field::Rationals;
        let half = q.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(format!("{half}"), "1/2");
        assert_eq!(format!("{}", f2.from_i64(-3)), "1");
    }
}
