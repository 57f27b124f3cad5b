//! Exact coefficient arithmetic.
//!
//! Two coefficient fields are supported: the rationals (arbitrary precision,
//! always stored reduced with positive denominator) and prime fields Z/p for
//! a machine-word prime p. No floating point appears anywhere in the kernel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which coefficient field a polynomial ring works over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    PrimeField { characteristic: u64 },
}

/// Default characteristic used when a randomized computation needs a prime
/// field and the caller did not pick one.
pub const DEFAULT_PRIME: u64 = 32003;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the active coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime(u64),
}

impl FieldSpec {
    pub fn render(&self) -> String {
        match self {
            FieldSpec::Rationals => "QQ".to_string(),
            FieldSpec::PrimeField { characteristic } => format!("GF({characteristic})"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField { characteristic } => {
                if *characteristic < 2 || !is_prime(*characteristic) {
                    Err(Error::InvalidArgument(format!(
                        "characteristic {characteristic} is not prime"
                    )))
                } else if *characteristic > u32::MAX as u64 {
                    Err(Error::InvalidArgument(
                        "characteristic must fit in 32 bits".into(),
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::PrimeField { .. } => Scalar::Prime(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
            FieldSpec::PrimeField { .. } => Scalar::Prime(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from(BigInt::from(v))),
            FieldSpec::PrimeField { characteristic } => {
                let p = *characteristic as i128;
                Scalar::Prime((((v as i128) % p + p) % p) as u64)
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from(v.clone())),
            FieldSpec::PrimeField { characteristic } => {
                let p = BigInt::from(*characteristic);
                let mut r = v % &p;
                if r.is_negative() {
                    r += &p;
                }
                let digits = r.to_u64_digits().1;
                Scalar::Prime(digits.first().copied().unwrap_or(0))
            }
        }
    }

    /// Builds num/den in the field; in a prime field the denominator is
    /// inverted mod p, which fails when p divides it.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(
                num.clone(),
                den.clone(),
            ))),
            FieldSpec::PrimeField { .. } => {
                let n = self.from_bigint(num);
                let d = self.from_bigint(den);
                self.mul(&n, &self.inv(&d)?)
            }
        }
    }

    fn p(&self) -> u64 {
        match self {
            FieldSpec::PrimeField { characteristic } => *characteristic,
            FieldSpec::Rationals => unreachable!("rational field has no characteristic"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x + y)),
            (Scalar::Prime(x), Scalar::Prime(y)) => Ok(Scalar::Prime((x + y) % self.p())),
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Prime(x) => {
                let p = self.p();
                Scalar::Prime(if *x == 0 { 0 } else { p - x })
            }
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x * y)),
            (Scalar::Prime(x), Scalar::Prime(y)) => {
                Ok(Scalar::Prime(((*x as u128 * *y as u128) % self.p() as u128) as u64))
            }
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        match a {
            Scalar::Rational(x) => Ok(Scalar::Rational(x.recip())),
            Scalar::Prime(x) => {
                // extended Euclid on (x, p)
                let p = self.p() as i128;
                let (mut r0, mut r1) = (*x as i128, p);
                let (mut s0, mut s1) = (1i128, 0i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                debug_assert_eq!(r0, 1);
                Ok(Scalar::Prime(((s0 % p + p) % p) as u64))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.mul(a, &self.inv(b)?)
    }

    /// A random coefficient for generic form construction. Over the
    /// rationals small integers keep later Groebner arithmetic affordable;
    /// over a prime field the full field is used.
    pub fn random_coefficient<R: Rng>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Rationals => self.from_i64(rng.gen_range(-9i64..=9)),
            FieldSpec::PrimeField { characteristic } => {
                Scalar::Prime(rng.gen_range(0..*characteristic))
            }
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Prime(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_one(),
            Scalar::Prime(x) => *x == 1,
        }
    }

    /// Canonical text form: reduced `a/b` or plain integer. Used by the
    /// printer and by cache keys, so it must stay stable.
    pub fn render(&self) -> String {
        match self {
            Scalar::Rational(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Prime(x) => x.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse_round_trips() {
        let f = FieldSpec::PrimeField { characteristic: DEFAULT_PRIME };
        for v in [1u64, 2, 17, 31999, 32002] {
            let a = Scalar::Prime(v);
            let inv = f.inv(&a).unwrap();
            assert!(f.mul(&a, &inv).unwrap().is_one());
        }
    }

    #[test]
    fn rational_stays_reduced_with_positive_denominator() {
        let f = FieldSpec::Rationals;
        let half = f
            .from_ratio(&BigInt::from(-2), &BigInt::from(-4))
            .unwrap();
        assert_eq!(half.render(), "1/2");
        let neg = f.from_ratio(&BigInt::from(3), &BigInt::from(-6)).unwrap();
        assert_eq!(neg.render(), "-1/2");
    }

    #[test]
    fn characteristic_must_be_prime()
    {
        assert!(FieldSpec::PrimeField { characteristic: 32004 }.validate().is_err());
        assert!(FieldSpec::PrimeField { characteristic: 32003 }.validate().is_ok());
    }

    #[test]
    fn from_ratio_rejects_denominator_divisible_by_p() {
        let f = FieldSpec::PrimeField { characteristic: 5 };
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(10)).is_err());
    }
}
