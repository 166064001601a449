//! Characteristic-`p` invariants: membership in Frobenius powers of the
//! maximal ideal, the sequence `ν(e)`, F-pure threshold enclosures and the
//! ordinarity test for plane cubics.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{self, prime_power};
use crate::grobner::PolyIdeal;
use crate::testideal::root_escapes;
use crate::newton::{lct_monomial, MonomialIdeal};
use crate::polyring::{Coefficient, Field, Monomial, Polynomial, Ring};
use crate::{Budget, Error, Method, Rational, Result, Threshold, ThresholdResult};

/// Prime, ambient dimension and computation horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusContext {
    pub p: u64,
    pub n: usize,
    pub e_max: u32,
    pub budget: Budget,
}

impl FrobeniusContext {
    pub fn new(p: u64, n: usize, e_max: u32) -> Result<Self> {
        arith::check_prime(p)?;
        if e_max == 0 {
            return Err(Error::Precondition("e_max must be at least 1".to_string()));
        }
        Ok(FrobeniusContext {
            p,
            n,
            e_max,
            budget: Budget::default(),
        })
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }
}

/// `ν(1), …, ν(e_max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuSequence {
    pub p: u64,
    pub values: Vec<u64>,
    pub ideal: String,
}

impl NuSequence {
    /// `ν(e)` for `e >= 1`.
    pub fn get(&self, e: u32) -> Option<u64> {
        self.values.get(e.checked_sub(1)? as usize).copied()
    }
}

/// Is `g ∈ (x_1^{p^e}, …, x_n^{p^e})`? Membership in a monomial ideal is
/// decided term by term.
pub fn in_frobenius_power(g: &Polynomial, e: u32) -> Result<bool> {
    let p = prime_of(g.ring())?;
    let q = prime_power(p, e, u64::MAX)?;
    Ok(g.monomials().all(|m| m.exponents().iter().any(|&x| x >= q)))
}

fn prime_of(ring: Ring) -> Result<u64> {
    match ring.field() {
        Field::Prime(p) => Ok(p),
        _ => Err(Error::Precondition(
            "computation needs coefficients in F_p".to_string(),
        )),
    }
}

fn check_generators(gens: &[Polynomial]) -> Result<Ring> {
    let first = gens.first().ok_or(Error::ZeroIdeal)?;
    let ring = first.ring();
    prime_of(ring)?;
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    if gens.iter().all(Polynomial::is_zero) {
        return Err(Error::ZeroIdeal);
    }
    if gens.iter().any(|g| g.order() == Some(0)) {
        return Err(Error::Precondition(
            "ideal is not contained in the maximal ideal".to_string(),
        ));
    }
    Ok(ring)
}

/// Reduce modulo `m^{[q]}`: keep only monomials with every exponent `< q`.
fn below(q: u64) -> impl Fn(&Monomial) -> bool {
    move |m: &Monomial| m.exponents().iter().all(|&x| x < q)
}

/// `ν(e)`: the largest `i` with `a^i ⊄ m^{[p^e]}`.
///
/// `a^i ⊆ m^{[p^e]}` is monotone in `i`, so the answer is found by binary
/// search over `[0, n(p^e - 1)]`.
pub fn nu(gens: &[Polynomial], e: u32, budget: &Budget) -> Result<u64> {
    nu_from(gens, e, None, budget)
}

/// Exponents `a_i` when `f = Σ c_i x_i^{a_i}` with distinct variables.
fn diagonal_exponents(f: &Polynomial) -> Option<Vec<u64>> {
    let mut seen = alloc::vec![false; f.ring().nvars()];
    let mut exps = Vec::new();
    for m in f.monomials() {
        let mut support = m.exponents().iter().enumerate().filter(|(_, &x)| x > 0);
        let (i, &a) = support.next()?;
        if support.next().is_some() || seen[i] {
            return None;
        }
        seen[i] = true;
        exps.push(a);
    }
    Some(exps)
}

/// `ν(e)` of a diagonal `Σ c_i x_i^{a_i}`. The coefficient of
/// `Π x_i^{a_i k_i}` in `f^N` is a unit times a multinomial coefficient,
/// which is nonzero mod `p` iff the `k_i` add without carries in base `p`.
/// So `ν(e) = max Σ k_i` over carry-free `k` with `a_i k_i < p^e`, found by a
/// digit recursion over the set of `k_i` still equal to their bound's
/// prefix.
fn nu_diagonal(exps: &[u64], p: u64, e: u32, q: u64) -> u64 {
    let n = exps.len();
    let bounds: Vec<Vec<u64>> = exps
        .iter()
        .map(|&a| {
            let mut d = arith::digits((q - 1) / a, p);
            d.resize(e as usize, 0);
            d.reverse();
            d
        })
        .collect();
    let full = (1usize << n) - 1;
    let mut best: Vec<Option<u128>> = alloc::vec![None; full + 1];
    best[full] = Some(0);
    for pos in 0..e as usize {
        let mut next: Vec<Option<u128>> = alloc::vec![None; full + 1];
        for (tight, v) in best.iter().enumerate() {
            let Some(v) = *v else { continue };
            // keep the variables in `stay` on their bound, drop the rest
            let mut stay = tight;
            loop {
                let mut forced = 0u64;
                let mut cap = 0u64;
                let mut ok = true;
                for i in 0..n {
                    let d = bounds[i][pos];
                    if stay >> i & 1 == 1 {
                        forced += d;
                        cap += d;
                    } else if tight >> i & 1 == 1 {
                        if d == 0 {
                            ok = false;
                        } else {
                            cap += d - 1;
                        }
                    } else {
                        cap += p - 1;
                    }
                }
                if ok && forced <= p - 1 {
                    let value = v * p as u128 + cap.min(p - 1) as u128;
                    if next[stay].map_or(true, |w| w < value) {
                        next[stay] = Some(value);
                    }
                }
                if stay == 0 {
                    break;
                }
                stay = (stay - 1) & tight;
            }
        }
        best = next;
    }
    best.into_iter().flatten().max().unwrap_or(0) as u64
}

/// Binary search, optionally seeded with `ν(e-1)`. Writing a product of
/// `N` generators as `g^{pβ + r}` with `r_i < p` gives
/// `p·ν(e-1) <= ν(e) <= p·(ν(e-1)+1) + m(p-1) - 1` for `m` generators.
fn nu_from(gens: &[Polynomial], e: u32, prev: Option<u64>, budget: &Budget) -> Result<u64> {
    let ring = check_generators(gens)?;
    let p = prime_of(ring)?;
    if e == 0 {
        return Err(Error::Precondition("e must be positive".to_string()));
    }
    let q = prime_power(p, e, budget.max_prime_power)?;
    if let [f] = gens {
        if let Some(exps) = diagonal_exponents(f).filter(|x| x.len() <= 12) {
            return Ok(nu_diagonal(&exps, p, e, q));
        }
    }
    // fewer generators means fewer residue tuples in the root
    let mut small: Vec<Polynomial> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()).map(Polynomial::monic) {
        if !small.contains(&g) {
            small.push(g);
        }
    }
    let mut ideal = PolyIdeal::new(ring, small)?;
    if gens.len() > 1 {
        let basis = ideal.basis(budget)?;
        if basis.len() < ideal.gens().len() {
            ideal = PolyIdeal::new(ring, basis)?;
        }
    }
    let escapes = |i: u64| -> Result<bool> {
        match gens {
            [f] => Ok(!f.pow_filtered(i, &below(q), budget)?.is_zero()),
            _ => root_escapes(&ideal, i, e, budget),
        }
    };
    let mut hi = (ring.nvars() as u64)
        .checked_mul(q - 1)
        .ok_or(Error::ExponentOverflow)?;
    let mut lo = 0; // escapes(lo) holds
    if let Some(v) = prev {
        let m = gens.len() as u64;
        let upper = (v + 1)
            .checked_mul(p)
            .and_then(|x| x.checked_add(m * (p - 1) - 1));
        if let Some(upper) = upper {
            hi = hi.min(upper);
        }
        let seed = v.saturating_mul(p);
        if seed <= hi && escapes(seed)? {
            lo = seed;
        }
    }
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if escapes(mid)? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// `ν(1), …, ν(e_max)`, seeding each search with the previous value.
pub fn nu_sequence(gens: &[Polynomial], ctx: &FrobeniusContext) -> Result<NuSequence> {
    let mut values = Vec::with_capacity(ctx.e_max as usize);
    let mut prev = 0u64;
    for e in 1..=ctx.e_max {
        let v = nu_from(gens, e, (e > 1).then_some(prev), &ctx.budget)?;
        values.push(v);
        prev = v;
    }
    Ok(NuSequence {
        p: ctx.p,
        values,
        ideal: describe(gens),
    })
}

fn describe(gens: &[Polynomial]) -> String {
    let parts: Vec<String> = gens.iter().map(Polynomial::render).collect();
    alloc::format!("({})", parts.join(", "))
}

fn as_monomial_ideal(gens: &[Polynomial]) -> Option<MonomialIdeal> {
    let ring = gens.first()?.ring();
    let mut exps = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if !g.is_monomial() {
            return None;
        }
        exps.push(g.monomials().next()?.exponents().to_vec());
    }
    MonomialIdeal::new(ring.nvars(), exps).ok()
}

/// Enclosure of the F-pure threshold from `ν(1..e_max)`.
///
/// Lower end `max ν(e)/p^e`; upper end `min (ν(e) + m)/p^e` for an ideal
/// with `m` generators (from `a^{pk + (m-1)(p-1)} ⊆ (a^k)^{[p]}`), both
/// clipped to `[1/ord(a), n/ord(a)]`. Monomial ideals and principal ideals
/// in one variable get their exact value.
pub fn fpt_enclosure(
    gens: &[Polynomial],
    ctx: &FrobeniusContext,
) -> Result<(ThresholdResult, NuSequence)> {
    let ring = check_generators(gens)?;
    if prime_of(ring)? != ctx.p {
        return Err(Error::RingMismatch);
    }
    let seq = nu_sequence(gens, ctx)?;
    let nonzero: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    let ord = nonzero.iter().filter_map(|g| g.order()).min().unwrap_or(1);
    let n = ring.nvars() as u64;
    if let Some(a) = as_monomial_ideal(gens) {
        let v = fpt_monomial(&a)?;
        return Ok((ThresholdResult::exact(v, Method::ClosedForm), seq));
    }
    if nonzero.len() == 1 && n == 1 {
        let v = Rational::new(BigInt::one(), BigInt::from(ord));
        return Ok((ThresholdResult::exact(v, Method::ClosedForm), seq));
    }
    let m = nonzero.len() as u64;
    let mut lo = Rational::new(BigInt::one(), BigInt::from(ord));
    let mut hi = Rational::new(BigInt::from(n), BigInt::from(ord));
    let mut q = BigInt::one();
    for &v in &seq.values {
        q *= ctx.p;
        lo = lo.max(Rational::new(BigInt::from(v), q.clone()));
        hi = hi.min(Rational::new(BigInt::from(v + m), q.clone()));
    }
    Ok((
        ThresholdResult::interval(lo, hi, false, Method::NuLimit),
        seq,
    ))
}

/// F-pure threshold of a monomial ideal; the same LP value as the log
/// canonical threshold, independent of `p`.
pub fn fpt_monomial(a: &MonomialIdeal) -> Result<Rational> {
    match lct_monomial(a)? {
        Threshold::Finite(v) => Ok(v),
        Threshold::Infinity => Err(Error::Precondition(
            "the unit ideal has no F-pure threshold".to_string(),
        )),
    }
}

fn check_cubic(f: &Polynomial) -> Result<u64> {
    let p = prime_of(f.ring())?;
    if f.ring().nvars() != 3 || f.is_zero() || !f.is_homogeneous() || f.total_degree() != Some(3) {
        return Err(Error::Precondition(
            "expected a homogeneous cubic in three variables".to_string(),
        ));
    }
    Ok(p)
}

/// A smooth plane cubic `f` is ordinary iff the coefficient of
/// `(xyz)^{p-1}` in `f^{p-1}` is nonzero. Smoothness is the caller's
/// responsibility.
pub fn is_ordinary_cubic(f: &Polynomial) -> Result<bool> {
    let p = check_cubic(f)?;
    let u = Monomial::new(alloc::vec![p - 1; 3]);
    let c = f.monomial_coefficient(p - 1, &u, &Budget::default())?;
    Ok(c != Coefficient::Residue(0))
}

/// F-pure threshold of the cone over a smooth plane cubic: `1` when the
/// curve is ordinary, `1 - 1/p` when it is supersingular.
pub fn fpt_cubic_cone(f: &Polynomial) -> Result<Rational> {
    let p = check_cubic(f)?;
    if is_ordinary_cubic(f)? {
        Ok(Rational::one())
    } else {
        Ok(Rational::one() - Rational::new(BigInt::one(), BigInt::from(p)))
    }
}

#[cfg(test)]
mod tests;
