//! Small exact-arithmetic helpers shared across modules.

use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Rational, Result};

/// `a/b` as a reduced rational.
pub fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn int(a: i64) -> Rational {
    Rational::from_integer(BigInt::from(a))
}

/// Deterministic trial-division primality test; inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_prime(p: u64) -> Result<u64> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `p^e`, failing when it exceeds `cap`.
pub fn prime_power(p: u64, e: u32, cap: u64) -> Result<u64> {
    let q = p.checked_pow(e).ok_or(Error::ExponentOverflow)?;
    if q > cap {
        return Err(Error::Budget {
            what: "prime power p^e",
            limit: cap,
        });
    }
    Ok(q)
}

pub fn ceil_to_u64(x: &Rational) -> Result<u64> {
    if x.is_negative() {
        return Err(Error::Precondition("negative value".to_string()));
    }
    x.ceil().to_integer().to_u64().ok_or(Error::ExponentOverflow)
}

pub fn floor_to_u64(x: &Rational) -> Result<u64> {
    if x.is_negative() {
        return Err(Error::Precondition("negative value".to_string()));
    }
    x.floor().to_integer().to_u64().ok_or(Error::ExponentOverflow)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Base-`p` digits of `k`, least significant first.
pub fn digits(mut k: u64, p: u64) -> alloc::vec::Vec<u64> {
    let mut out = alloc::vec::Vec::new();
    while k > 0 {
        out.push(k % p);
        k /= p;
    }
    out
}

pub fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
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

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Reduce an integer into `[0, p)`.
pub fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let m = n.mod_floor(&BigInt::from(p));
    m.to_u64().unwrap_or(0)
}

/// Rational enclosure `[lo, hi]` of `sqrt(x)` with `hi - lo <= tol`.
///
/// Bisection start, Newton refinement from above; `lo` is `x / hi`.
pub fn sqrt_enclosure(x: &Rational, tol: &Rational) -> (Rational, Rational) {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    if x.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    let two = int(2);
    // Start above the root.
    let mut hi = if *x > Rational::one() {
        x.clone()
    } else {
        Rational::one()
    };
    loop {
        let lo = x / &hi;
        if &hi - &lo <= *tol {
            return (lo, hi);
        }
        // Newton step keeps hi >= sqrt(x); round it to keep denominators small.
        let next = (&hi + &lo) / &two;
        hi = round_up(&next, tol);
    }
}

/// Smallest multiple of a power-of-two grid not below `x`, with grid well
/// under `tol`; keeps Newton iterates from growing huge denominators.
fn round_up(x: &Rational, tol: &Rational) -> Rational {
    let mut den = BigInt::one();
    let target = tol / int(16);
    while Rational::new(BigInt::one(), den.clone()) > target {
        den *= 2;
    }
    let scaled = (x * Rational::from_integer(den.clone())).ceil().to_integer();
    Rational::new(scaled, den)
}

/// `num/den` text with an explicit `/1` omitted.
pub fn render(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Syntax {
        position: 0,
        message: alloc::format!("not a rational number: `{s}`"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Decimal approximation with `digits` fractional digits (truncated toward
/// zero); used only for explicitly-labelled approximate output.
pub fn decimal(x: &Rational, digits: usize) -> String {
    let neg = x.is_negative();
    let a = x.abs();
    let int_part = a.trunc().to_integer();
    let mut frac = a.fract();
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        s.push('.');
        for _ in 0..digits {
            frac *= int(10);
            let d = frac.trunc().to_integer();
            s.push_str(&d.to_string());
            frac = frac.fract();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: alloc::vec::Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn sqrt_five_enclosure() {
        let tol = ratio(1, 1_000_000_000);
        let (lo, hi) = sqrt_enclosure(&int(5), &tol);
        assert!(&lo * &lo <= int(5) && int(5) <= &hi * &hi);
        assert!(&hi - &lo <= tol);
    }

    #[test]
    fn sqrt_of_square_is_tight() {
        let (lo, hi) = sqrt_enclosure(&int(4), &ratio(1, 1000));
        assert!(lo <= int(2) && int(2) <= hi);
    }

    #[test]
    fn digits_base_p() {
        assert_eq!(digits(0, 7), alloc::vec::Vec::<u64>::new());
        assert_eq!(digits(50, 7), [1, 0, 1]);
    }

    #[test]
    fn decimal_render() {
        assert_eq!(decimal(&ratio(5, 6), 4), "0.8333");
        assert_eq!(decimal(&ratio(-1, 4), 2), "-0.25");
        assert_eq!(render(&ratio(4, 2)), "2");
        assert_eq!(render(&ratio(-5, 6)), "-5/6");
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("5/6").unwrap(), ratio(5, 6));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
