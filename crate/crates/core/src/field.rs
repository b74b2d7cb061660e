//! Exact base fields: the rationals and prime fields.
//!
//! Every scalar is stored as a [`BigRational`]. Over `F_p` the stored value is
//! always the canonical residue in `0..p` with denominator 1, so structural
//! equality of scalars is equality in the field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::PrimeField(p) => write!(f, "FP {p}"),
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

impl Field {
    /// `F_p`, rejecting composite `p`. Moduli are capped at 2^31 so residue
    /// products fit in a `u64`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.normalize(Scalar::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        self.reduce(Scalar::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Maps an arbitrary rational into this field. Fails over `F_p` when the
    /// denominator is divisible by `p`.
    pub fn reduce(&self, v: Scalar) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(v),
            Field::PrimeField(p) => {
                let pb = BigInt::from(*p);
                let num = v.numer().mod_floor(&pb);
                let den = v.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::Invalid(format!(
                        "denominator of {v} vanishes mod {p}"
                    )));
                }
                let n = num.to_u64().unwrap_or(0);
                let d = den.to_u64().unwrap_or(1);
                Ok(residue(mul_mod(n, inv_mod(d, *p), *p)))
            }
        }
    }

    fn normalize(&self, v: Scalar) -> Scalar {
        self.reduce(v).expect("integer values always reduce")
    }

    pub fn contains(&self, v: &Scalar) -> bool {
        match self {
            Field::Rationals => true,
            Field::PrimeField(p) => {
                v.is_integer() && !v.is_negative() && v.numer() < &BigInt::from(*p)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a + b,
            Field::PrimeField(p) => residue((to_res(a) + to_res(b)) % p),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a - b,
            Field::PrimeField(p) => residue((to_res(a) + p - to_res(b)) % p),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => -a,
            Field::PrimeField(p) => residue((p - to_res(a)) % p),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a * b,
            Field::PrimeField(p) => residue(mul_mod(to_res(a), to_res(b), *p)),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        Some(match self {
            Field::Rationals => a.recip(),
            Field::PrimeField(p) => residue(inv_mod(to_res(a), *p)),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// `(-1)^k` as a field element.
    pub fn sign(&self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::Invalid(format!("malformed scalar `{text}`"));
        let v = match text.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Scalar::new(n, d)
            }
            None => Scalar::from_integer(text.trim().parse().map_err(|_| bad())?),
        };
        self.reduce(v)
    }

    /// `p/q` in lowest terms, or a bare integer; residues over `F_p`.
    pub fn format_scalar(&self, v: &Scalar) -> String {
        if v.is_integer() {
            v.numer().to_string()
        } else {
            format!("{}/{}", v.numer(), v.denom())
        }
    }
}

pub(crate) fn residue(v: u64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub(crate) fn to_res(v: &Scalar) -> u64 {
    v.numer().to_u64().unwrap_or(0)
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a is nonzero mod p.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(Field::prime(6), Err(Error::NotPrime(6)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert!(Field::prime(5).is_ok());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        let three = f.from_i64(3);
        assert_eq!(f.add(&three, &three), f.from_i64(1));
        assert_eq!(f.mul(&three, &f.inv(&three).unwrap()), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(3));
        assert!(f.parse_scalar("1/5").is_err());
    }

    #[test]
    fn rational_normalization() {
        let q = Field::Rationals;
        let v = q.parse_scalar("3/6").unwrap();
        assert_eq!(q.format_scalar(&v), "1/2");
        assert_eq!(q.format_scalar(&q.parse_scalar("-4/2").unwrap()), "-2");
    }
}
