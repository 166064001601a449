//! Characteristic-zero log canonical thresholds of the families with a
//! closed form, and the truncation bound.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::newton::{lct_monomial, MonomialIdeal};
use crate::polyring::Polynomial;
use crate::{Error, Method, Rational, Result, Threshold, ThresholdResult};

/// Families whose log canonical threshold at the origin is known in closed
/// form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LctFamilyInput {
    /// `x_1^{a_1} + … + x_n^{a_n}`.
    Diagonal(Vec<u64>),
    /// Homogeneous of degree `d` in `n` variables with an isolated
    /// singularity at the origin.
    HomogeneousIsolated { n: u64, d: u64 },
    /// Nonsingular subscheme of codimension `r` in an `n`-dimensional
    /// ambient space.
    SmoothSubscheme { n: u64, r: u64 },
    Monomial(MonomialIdeal),
    /// Ordinary double point of a plane curve, `xy`.
    Node,
}

fn one() -> Rational {
    Rational::one()
}

fn frac(a: u64, b: u64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn lct_closed_form(input: &LctFamilyInput) -> Result<ThresholdResult> {
    let value = match input {
        LctFamilyInput::Diagonal(a) => {
            if a.is_empty() || a.contains(&0) {
                return Err(Error::Precondition("diagonal exponents must be >= 1".to_string()));
            }
            let s: Rational = a.iter().map(|&ai| frac(1, ai)).sum();
            s.min(one())
        }
        LctFamilyInput::HomogeneousIsolated { n, d } => {
            if *n == 0 || *d == 0 {
                return Err(Error::Precondition("need n >= 1 and d >= 1".to_string()));
            }
            frac(*n, *d).min(one())
        }
        LctFamilyInput::SmoothSubscheme { n, r } => {
            if *r == 0 || r > n {
                return Err(Error::Precondition("need 1 <= r <= n".to_string()));
            }
            Rational::from_integer(BigInt::from(*r))
        }
        LctFamilyInput::Node => one(),
        LctFamilyInput::Monomial(a) => {
            return match lct_monomial(a)? {
                Threshold::Finite(v) => Ok(ThresholdResult::exact(v, Method::Lp)),
                Threshold::Infinity => Err(Error::Precondition(
                    "the unit ideal has infinite threshold".to_string(),
                )),
            }
        }
    };
    Ok(ThresholdResult::exact(value, Method::ClosedForm))
}

/// Recognize a polynomial as a member of the closed-form catalogue.
///
/// Diagonal sums of pure powers, monomials (principal monomial ideals) and
/// polynomials of order one (smooth hypersurfaces) are recognized; anything
/// else is [`Error::UnsupportedFamily`].
pub fn classify(f: &Polynomial) -> Result<LctFamilyInput> {
    if f.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let n = f.ring().nvars();
    if f.is_monomial() {
        let u = f.monomials().next().unwrap().exponents().to_vec();
        return Ok(LctFamilyInput::Monomial(MonomialIdeal::new(n, alloc::vec![u])?));
    }
    if f.order() == Some(0) {
        return Err(Error::Precondition(
            "the polynomial does not vanish at the origin".to_string(),
        ));
    }
    if f.order() == Some(1) {
        return Ok(LctFamilyInput::SmoothSubscheme { n: n as u64, r: 1 });
    }
    // a sum of pure powers of distinct variables
    let mut exps: Vec<Option<u64>> = alloc::vec![None; n];
    for m in f.monomials() {
        let support: Vec<(usize, u64)> = m
            .exponents()
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, e)| *e > 0)
            .collect();
        match support.as_slice() {
            [(i, e)] if exps[*i].is_none() => exps[*i] = Some(*e),
            _ => return Err(Error::UnsupportedFamily(f.render())),
        }
    }
    Ok(LctFamilyInput::Diagonal(exps.into_iter().flatten().collect()))
}

/// Certified range of `lct_0` for any polynomial with the same truncation to
/// degree `N` as one with threshold `lct`: `lct ± n/(N+1)`, clipped at zero.
pub fn truncation_bound(lct: &Rational, n: u64, big_n: u64) -> Result<(Rational, Rational)> {
    if n == 0 || big_n == 0 {
        return Err(Error::Precondition("n and N must be positive".to_string()));
    }
    if *lct < Rational::zero() || *lct > Rational::from_integer(BigInt::from(n)) {
        return Err(Error::Precondition("lct must lie in [0, n]".to_string()));
    }
    let delta = frac(n, big_n + 1);
    let lo = (lct - &delta).max(Rational::zero());
    Ok((lo, lct + delta))
}

/// Threshold of a linear combination of the generators of a monomial ideal
/// with *general* coefficients: `min(lct(a), 1)`. Valid for generic
/// coefficients only; specific coefficients can only lower the value.
pub fn general_combination_lct(lct_of_ideal: &Threshold) -> Rational {
    match lct_of_ideal {
        Threshold::Finite(v) => v.clone().min(one()),
        Threshold::Infinity => one(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use crate::polyring::{parse, Ring};
    use proptest::prelude::*;

    fn value(input: LctFamilyInput) -> Rational {
        lct_closed_form(&input).unwrap().exact_value().unwrap().clone()
    }

    #[test]
    fn catalogue_values() {
        assert_eq!(value(LctFamilyInput::Diagonal(alloc::vec![2, 3])), ratio(5, 6));
        assert_eq!(value(LctFamilyInput::HomogeneousIsolated { n: 3, d: 3 }), int(1));
        assert_eq!(value(LctFamilyInput::HomogeneousIsolated { n: 2, d: 5 }), ratio(2, 5));
        assert_eq!(value(LctFamilyInput::SmoothSubscheme { n: 3, r: 1 }), int(1));
        assert_eq!(value(LctFamilyInput::SmoothSubscheme { n: 3, r: 2 }), int(2));
        assert_eq!(value(LctFamilyInput::Diagonal(alloc::vec![100])), ratio(1, 100));
        assert_eq!(value(LctFamilyInput::Node), int(1));
    }

    #[test]
    fn invalid_inputs() {
        assert!(lct_closed_form(&LctFamilyInput::Diagonal(alloc::vec![0, 2])).is_err());
        assert!(lct_closed_form(&LctFamilyInput::SmoothSubscheme { n: 2, r: 3 }).is_err());
        assert!(lct_closed_form(&LctFamilyInput::HomogeneousIsolated { n: 2, d: 0 }).is_err());
    }

    #[test]
    fn classification() {
        let r = Ring::rational(2);
        assert_eq!(
            classify(&parse("x^2+y^3", r).unwrap()).unwrap(),
            LctFamilyInput::Diagonal(alloc::vec![2, 3])
        );
        assert!(matches!(
            classify(&parse("x^2*y", r).unwrap()).unwrap(),
            LctFamilyInput::Monomial(_)
        ));
        assert_eq!(
            classify(&parse("x+y^2", r).unwrap()).unwrap(),
            LctFamilyInput::SmoothSubscheme { n: 2, r: 1 }
        );
        assert!(matches!(
            classify(&parse("x^2+x*y^2+y^3", r).unwrap()),
            Err(Error::UnsupportedFamily(_))
        ));
        assert!(classify(&parse("1+x", r).unwrap()).is_err());
    }

    #[test]
    fn truncation_examples() {
        let (lo, hi) = truncation_bound(&ratio(5, 6), 2, 10).unwrap();
        assert_eq!(lo, ratio(5, 6) - ratio(2, 11));
        assert_eq!(hi, ratio(5, 6) + ratio(2, 11));
        let (lo, hi) = truncation_bound(&ratio(5, 6), 2, 1_000_000).unwrap();
        assert!(&hi - &lo < ratio(1, 100_000));
        // x^2 + y^3 against its degree-2 truncation x^2
        let full = value(LctFamilyInput::Diagonal(alloc::vec![2, 3]));
        let trunc = value(LctFamilyInput::Diagonal(alloc::vec![2]));
        assert_eq!(trunc, ratio(1, 2));
        let (lo, hi) = truncation_bound(&full, 2, 2).unwrap();
        assert!(lo <= trunc && trunc <= hi);
    }

    #[test]
    fn general_combination() {
        assert_eq!(general_combination_lct(&Threshold::Finite(ratio(5, 6))), ratio(5, 6));
        assert_eq!(general_combination_lct(&Threshold::Finite(int(2))), int(1));
    }

    proptest! {
        #[test]
        fn principal_families_stay_in_range(a in prop::collection::vec(1u64..=12, 1..=5)) {
            let n = a.len() as u64;
            let v = value(LctFamilyInput::Diagonal(a.clone()));
            prop_assert!(v > int(0) && v <= int(n as i64));
            prop_assert!(v <= int(1));
            if a.contains(&1) {
                prop_assert_eq!(&v, &int(1));
            }
            let ideal = MonomialIdeal::diagonal(&a).unwrap();
            let via_monomial = value(LctFamilyInput::Monomial(ideal));
            prop_assert_eq!(v, via_monomial.min(int(1)));
        }

        #[test]
        fn truncation_intervals_are_nested(num in 0i64..=60, n in 1u64..=4, big_n in 1u64..=50) {
            let lct = ratio(num, 20).min(int(n as i64));
            let (lo1, hi1) = truncation_bound(&lct, n, big_n).unwrap();
            let (lo2, hi2) = truncation_bound(&lct, n, big_n + 1).unwrap();
            prop_assert!(lo1 <= lo2 && hi2 <= hi1);
        }
    }
}
