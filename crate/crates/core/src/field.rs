//! Coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default characteristic used throughout the crate.
pub const DEFAULT_PRIME: u32 = 32003;

/// Range used when sampling "random" rationals.
const RATIONAL_SAMPLE_BOUND: i64 = 1000;

/// A coefficient field. `Prime(p)` requires `p` prime and below `2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

/// A field element. The variant always matches the owning ring's [`Field`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Mod(u32),
    Rat(BigRational),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds a field from a characteristic; `0` selects the rationals.
    pub fn from_characteristic(p: u32) -> Result<Field> {
        if p == 0 {
            Ok(Field::Rational)
        } else if p >= (1 << 31) || !is_prime(p) {
            Err(Error::InvalidRing(format!("characteristic {p} is not a prime below 2^31")))
        } else {
            Ok(Field::Prime(p))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rational => Coeff::Rat(BigRational::zero()),
            Field::Prime(_) => Coeff::Mod(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            Field::Rational => Coeff::Rat(BigRational::one()),
            Field::Prime(_) => Coeff::Mod(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Field::Rational => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coeff::Mod(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            Field::Rational => Coeff::Rat(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = ((v % BigInt::from(*p)) + BigInt::from(*p)) % BigInt::from(*p);
                Coeff::Mod(r.to_u32().expect("residue fits"))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (Field::Rational, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => unreachable!("coefficient from a foreign field"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Prime(p), Coeff::Mod(x)) => Coeff::Mod(if *x == 0 { 0 } else { p - x }),
            (Field::Rational, Coeff::Rat(x)) => Coeff::Rat(-x),
            _ => unreachable!("coefficient from a foreign field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (Field::Rational, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => unreachable!("coefficient from a foreign field"),
        }
    }

    /// Multiplicative inverse. Panics on zero; callers never invert zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!a.is_zero(), "inverse of zero");
        match (self, a) {
            (Field::Prime(p), Coeff::Mod(x)) => Coeff::Mod(pow_mod(*x, p - 2, *p)),
            (Field::Rational, Coeff::Rat(x)) => Coeff::Rat(x.recip()),
            _ => unreachable!("coefficient from a foreign field"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    /// Uniform element of `F_p`, or an integer in a fixed symmetric range over Q.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Coeff {
        match self {
            Field::Prime(p) => Coeff::Mod(rng.gen_range(0..*p)),
            Field::Rational => self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND)),
        }
    }

    /// Random nonzero element.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Coeff {
        loop {
            let c = self.random(rng);
            if !c.is_zero() {
                return c;
            }
        }
    }
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc: u64 = 1;
    let mut b = base as u64 % p as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        exp >>= 1;
    }
    acc as u32
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Mod(x) => *x == 0,
            Coeff::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Mod(x) => *x == 1,
            Coeff::Rat(x) => x.is_one(),
        }
    }

    /// Sign used when printing: prime-field residues above `p/2` print as negatives.
    pub(crate) fn signed_parts(&self, field: &Field) -> (bool, String) {
        match (self, field) {
            (Coeff::Mod(x), Field::Prime(p)) => {
                if *x > p / 2 {
                    (true, (p - x).to_string())
                } else {
                    (false, x.to_string())
                }
            }
            (Coeff::Rat(x), _) => {
                let abs = x.abs();
                let s = if abs.is_integer() {
                    abs.numer().to_string()
                } else {
                    format!("{}/{}", abs.numer(), abs.denom())
                };
                (x.is_negative(), s)
            }
            _ => unreachable!("coefficient from a foreign field"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(DEFAULT_PRIME);
        for v in [1i64, 2, 17, 32002] {
            let a = f.from_i64(v);
            assert!(f.mul(&a, &f.inv(&a)).is_one());
        }
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(Field::from_characteristic(32004).is_err());
        assert!(Field::from_characteristic(1).is_err());
        assert_eq!(Field::from_characteristic(0).unwrap(), Field::Rational);
        assert_eq!(Field::from_characteristic(2).unwrap(), Field::Prime(2));
    }

    #[test]
    fn negative_literals_reduce() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-1), Coeff::Mod(6));
        assert_eq!(f.from_bigint(&BigInt::from(-15)), Coeff::Mod(6));
    }
}
