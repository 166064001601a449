use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{inv_mod, mul_mod, reduce_bigint};
use crate::{Error, Rational, Result};

/// Coefficient field of a ring context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Integer,
    /// `F_p`; the prime is validated by [`super::Ring::new`].
    Prime(u64),
}

/// A single coefficient. Residues are kept in `[0, p)`, rationals in lowest
/// terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(Rational),
    Integer(BigInt),
    Residue(u64),
}

impl Field {
    pub fn zero(self) -> Coefficient {
        match self {
            Field::Rational => Coefficient::Rational(Rational::zero()),
            Field::Integer => Coefficient::Integer(BigInt::zero()),
            Field::Prime(_) => Coefficient::Residue(0),
        }
    }

    pub fn one(self) -> Coefficient {
        match self {
            Field::Rational => Coefficient::Rational(Rational::one()),
            Field::Integer => Coefficient::Integer(BigInt::one()),
            Field::Prime(_) => Coefficient::Residue(1),
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Coefficient {
        match self {
            Field::Rational => Coefficient::Rational(Rational::from_integer(n.clone())),
            Field::Integer => Coefficient::Integer(n.clone()),
            Field::Prime(p) => Coefficient::Residue(reduce_bigint(n, p)),
        }
    }

    /// Bring a rational literal into this field.
    pub fn from_rational(self, r: &Rational) -> Result<Coefficient> {
        match self {
            Field::Rational => Ok(Coefficient::Rational(r.clone())),
            Field::Integer if r.is_integer() => Ok(Coefficient::Integer(r.to_integer())),
            Field::Integer => Err(Error::CoefficientNotInField(r.to_string())),
            Field::Prime(p) => {
                let den = reduce_bigint(r.denom(), p);
                if den == 0 {
                    return Err(Error::CoefficientNotInField(r.to_string()));
                }
                let num = reduce_bigint(r.numer(), p);
                Ok(Coefficient::Residue(mul_mod(num, inv_mod(den, p), p)))
            }
        }
    }

    /// Coerce a coefficient of a matching variant into canonical form.
    ///
    /// Panics on a variant that does not belong to this field; the public
    /// constructors only build matching variants.
    pub fn normalize(self, c: Coefficient) -> Coefficient {
        match (self, c) {
            (Field::Prime(p), Coefficient::Residue(r)) => Coefficient::Residue(r % p),
            (Field::Prime(p), Coefficient::Integer(n)) => Coefficient::Residue(reduce_bigint(&n, p)),
            (Field::Rational, Coefficient::Integer(n)) => {
                Coefficient::Rational(Rational::from_integer(n))
            }
            (Field::Rational, c @ Coefficient::Rational(_)) => c,
            (Field::Integer, c @ Coefficient::Integer(_)) => c,
            (f, c) => panic!("coefficient {c:?} does not belong to {f:?}"),
        }
    }

    pub fn is_zero(self, c: &Coefficient) -> bool {
        match c {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Integer(n) => n.is_zero(),
            Coefficient::Residue(r) => *r == 0,
        }
    }

    pub fn add(self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        match (self, a, b) {
            (Field::Prime(p), Coefficient::Residue(x), Coefficient::Residue(y)) => {
                Coefficient::Residue((x + y) % p)
            }
            (_, Coefficient::Rational(x), Coefficient::Rational(y)) => Coefficient::Rational(x + y),
            (_, Coefficient::Integer(x), Coefficient::Integer(y)) => Coefficient::Integer(x + y),
            _ => panic!("mixed coefficient variants"),
        }
    }

    pub fn neg(self, a: &Coefficient) -> Coefficient {
        match (self, a) {
            (Field::Prime(p), Coefficient::Residue(x)) => Coefficient::Residue((p - x % p) % p),
            (_, Coefficient::Rational(x)) => Coefficient::Rational(-x),
            (_, Coefficient::Integer(x)) => Coefficient::Integer(-x),
            _ => panic!("mixed coefficient variants"),
        }
    }

    pub fn mul(self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        match (self, a, b) {
            (Field::Prime(p), Coefficient::Residue(x), Coefficient::Residue(y)) => {
                Coefficient::Residue(mul_mod(*x, *y, p))
            }
            (_, Coefficient::Rational(x), Coefficient::Rational(y)) => Coefficient::Rational(x * y),
            (_, Coefficient::Integer(x), Coefficient::Integer(y)) => Coefficient::Integer(x * y),
            _ => panic!("mixed coefficient variants"),
        }
    }

    /// Multiplicative inverse; `None` for zero or over `Z`.
    pub fn inv(self, a: &Coefficient) -> Option<Coefficient> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Prime(p), Coefficient::Residue(x)) => Some(Coefficient::Residue(inv_mod(*x, p))),
            (Field::Rational, Coefficient::Rational(x)) => Some(Coefficient::Rational(x.recip())),
            _ => None,
        }
    }

    /// Sign and magnitude text used when rendering. Residues render as their
    /// representative in `[0, p)`.
    pub(crate) fn sign_split(self, c: &Coefficient) -> (bool, String) {
        match c {
            Coefficient::Residue(r) => (false, r.to_string()),
            Coefficient::Integer(n) => (n.is_negative(), n.abs().to_string()),
            Coefficient::Rational(r) => (r.is_negative(), r.abs().to_string()),
        }
    }
}

impl Coefficient {
    /// Integer value of an integer or integral rational coefficient.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Coefficient::Integer(n) => Some(n.clone()),
            Coefficient::Rational(r) if r.is_integer() => Some(r.to_integer()),
            Coefficient::Residue(r) => Some(BigInt::from(*r)),
            Coefficient::Rational(_) => None,
        }
    }
}

impl core::fmt::Display for Coefficient {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Coefficient::Rational(r) => write!(f, "{r}"),
            Coefficient::Integer(n) => write!(f, "{n}"),
            Coefficient::Residue(r) => write!(f, "{r}"),
        }
    }
}
