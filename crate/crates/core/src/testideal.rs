//! Frobenius roots `b^{[1/p^e]}`, test ideals `τ(a^λ)` as the stable value
//! of `I_e = (a^{⌈λp^e⌉})^{[1/p^e]}`, a grid search for F-jumping numbers and
//! the Skoda / `p`-scaling identities.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, ceil_to_u64, prime_power};
use crate::frobenius::fpt_monomial;
use crate::grobner::{contains, equal, PolyIdeal};
use crate::newton::MonomialIdeal;
use crate::polyring::{Field, Monomial, Polynomial, Ring};
use crate::{Budget, Error, Rational, Result};

/// Nonnegative rational exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lambda(Rational);

impl Lambda {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::Precondition("λ must be nonnegative".to_string()));
        }
        Ok(Lambda(value))
    }

    pub fn ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Precondition("zero denominator".to_string()));
        }
        Ok(Lambda(Rational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Lambda::new(arith::parse_rational(text)?)
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&arith::render(&self.0))
    }
}

/// Horizon and caps for test-ideal computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TauContext {
    pub e_max: u32,
    pub budget: Budget,
}

impl Default for TauContext {
    fn default() -> Self {
        TauContext {
            e_max: 5,
            budget: Budget::default(),
        }
    }
}

/// Outcome of [`tau`]: the last iterate and whether `I_e = I_{e+1}` was
/// observed. One-step equality is evidence of stabilization, not a proof.
#[derive(Debug, Clone)]
pub struct TauResult {
    pub ideal: PolyIdeal,
    pub stabilized: bool,
    /// `I_1, I_2, …` as computed, each with its reduced basis.
    pub iterates: Vec<PolyIdeal>,
}

fn prime_of(ring: Ring) -> Result<u64> {
    match ring.field() {
        Field::Prime(p) => Ok(p),
        _ => Err(Error::Precondition(
            "test ideals need coefficients in F_p".to_string(),
        )),
    }
}

/// Components of `f = Σ u_w^{p^e} x^w`.
fn components(f: &Polynomial, e: u32) -> Result<Vec<Polynomial>> {
    Ok(f.frobenius_decompose(e)?.into_values().collect())
}

/// `b^{[1/p^e]}`: the smallest ideal `J` with `b ⊆ J^{[p^e]}`, generated by
/// the decomposition components of the generators of `b`.
pub fn frobenius_root(b: &PolyIdeal, e: u32) -> Result<PolyIdeal> {
    prime_of(b.ring())?;
    let mut gens = Vec::new();
    for g in b.gens() {
        gens.extend(components(g, e)?);
    }
    PolyIdeal::new(b.ring(), gens)
}

fn basis_of(ring: Ring, gens: Vec<Polynomial>, budget: &Budget) -> Result<Vec<Polynomial>> {
    PolyIdeal::new(ring, gens)?.basis(budget)
}

/// Exponent vectors `r ∈ [0, p)^m` with `|r| <= k` and `|r| ≡ k (mod p)`.
fn residue_tuples(m: usize, p: u64, k: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = alloc::vec![0u64; m];
    fn rec(i: usize, sum: u64, cur: &mut Vec<u64>, p: u64, k: u64, out: &mut Vec<Vec<u64>>) {
        let m = cur.len();
        if i + 1 == m {
            // the last entry is pinned modulo p
            let last = (k + p - sum % p) % p;
            let mut r = last;
            while r < p && sum + r <= k {
                if (k - sum - r) % p == 0 {
                    cur[i] = r;
                    out.push(cur.clone());
                }
                r += p;
            }
            return;
        }
        for r in 0..p {
            if sum + r > k {
                break;
            }
            cur[i] = r;
            rec(i + 1, sum + r, cur, p, k, out);
        }
        cur[i] = 0;
    }
    if m == 0 {
        return out;
    }
    rec(0, 0, &mut cur, p, k, &mut out);
    out
}

/// Reduced generators of `a^k`, memoized by `k`.
#[derive(Debug, Default)]
struct PowerCache {
    powers: BTreeMap<u64, Vec<Polynomial>>,
}

impl PowerCache {
    fn get(&mut self, a: &PolyIdeal, k: u64, budget: &Budget) -> Result<Vec<Polynomial>> {
        let ring = a.ring();
        if self.powers.is_empty() {
            self.powers.insert(0, alloc::vec![Polynomial::one(ring)]);
        }
        if let Some(v) = self.powers.get(&k) {
            return Ok(v.clone());
        }
        let base = a.basis(budget)?;
        let (&start, _) = self.powers.range(..k).next_back().expect("a^0 is cached");
        let mut acc = self.powers[&start].clone();
        for j in start + 1..=k {
            let mut next = Vec::with_capacity(acc.len() * base.len());
            for f in &acc {
                for g in &base {
                    next.push(f.mul(g)?);
                }
            }
            if next.len() as u64 > budget.max_products {
                return Err(Error::Budget {
                    what: "generator products",
                    limit: budget.max_products,
                });
            }
            acc = basis_of(ring, next, budget)?;
            self.powers.insert(j, acc.clone());
        }
        Ok(acc)
    }
}

#[cfg(test)]
fn ideal_power(a: &PolyIdeal, k: u64, budget: &Budget) -> Result<Vec<Polynomial>> {
    PowerCache::default().get(a, k, budget)
}

/// `(a^N)^{[1/p^e]}`, one `p`-th root at a time.
///
/// The state `{k ↦ J_k}` stands for the ideal `Σ a^k J_k`. Writing a
/// product of generators as `g^α` with `α = pβ + r`, `0 <= r_i < p`, gives
/// `(a^k J)^{[1/p]} = Σ_r a^{(k-|r|)/p} (g^r J)^{[1/p]}`.
pub fn power_root(a: &PolyIdeal, n: u64, e: u32, budget: &Budget) -> Result<PolyIdeal> {
    power_root_with(a, n, e, budget, &mut PowerCache::default())
}

fn power_root_with(
    a: &PolyIdeal,
    n: u64,
    e: u32,
    budget: &Budget,
    cache: &mut PowerCache,
) -> Result<PolyIdeal> {
    let ring = a.ring();
    let state = root_state(a, n, e, false, budget)?;
    let mut out = Vec::new();
    for (k, ideal) in state {
        let ak = cache.get(a, k, budget)?;
        for f in &ak {
            for c in &ideal {
                out.push(f.mul(c)?);
            }
        }
    }
    PolyIdeal::new(ring, out)?.with_basis(budget)
}

/// Whether `a^n ⊄ m^{[p^e]}`, i.e. `(a^n)^{[1/p^e]} ⊄ m`, for `a ⊆ m`.
/// With `t` roots still to take, anything in `m^{[p^t]}` only contributes
/// to `m` at the end, so every intermediate term with an exponent
/// `>= p^t` is dropped.
pub(crate) fn root_escapes(a: &PolyIdeal, n: u64, e: u32, budget: &Budget) -> Result<bool> {
    let state = root_state(a, n, e, true, budget)?;
    // a^k ⊆ m for k > 0
    Ok(state.get(&0).is_some_and(|j| {
        j.iter()
            .any(|g| g.terms().next().is_some_and(|(m, _)| m.exponents().iter().all(|&x| x == 0)))
    }))
}

/// `{k ↦ J_k}` with `(a^n)^{[1/p^e]} = Σ a^k J_k` (modulo `m` when
/// `local`).
fn root_state(
    a: &PolyIdeal,
    n: u64,
    e: u32,
    local: bool,
    budget: &Budget,
) -> Result<BTreeMap<u64, Vec<Polynomial>>> {
    let ring = a.ring();
    let p = prime_of(ring)?;
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let bound = |t: u32| -> Result<u64> {
        if local {
            prime_power(p, t, budget.max_prime_power)
        } else {
            Ok(u64::MAX)
        }
    };
    // any generating set works; the given one is usually the smallest
    let gens = a.gens().to_vec();
    let m = gens.len();
    let top = bound(e)?;
    let keep = move |x: &Monomial| x.exponents().iter().all(|&v| v < top);
    // g_i^j for j < p
    let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(m);
    for g in &gens {
        let mut row = alloc::vec![Polynomial::one(ring)];
        for j in 1..p {
            let next = row[j as usize - 1].mul_filtered(g, &keep, budget)?;
            row.push(next);
        }
        powers.push(row);
    }
    let mut state: BTreeMap<u64, Vec<Polynomial>> = BTreeMap::new();
    state.insert(n, alloc::vec![Polynomial::one(ring)]);
    for step in 0..e {
        let here = bound(e - step)?;
        let keep = move |x: &Monomial| x.exponents().iter().all(|&v| v < here);
        let after = bound(e - step - 1)?;
        let mut next: BTreeMap<u64, Vec<Polynomial>> = BTreeMap::new();
        for (&k, ideal) in &state {
            for r in residue_tuples(m, p, k) {
                let mut h = Polynomial::one(ring);
                for (i, &ri) in r.iter().enumerate() {
                    h = h.mul_filtered(&powers[i][ri as usize], &keep, budget)?;
                }
                if h.is_zero() {
                    continue;
                }
                let key = (k - r.iter().sum::<u64>()) / p;
                let slot = next.entry(key).or_default();
                for c in ideal {
                    slot.extend(components(&h.mul_filtered(c, &keep, budget)?, 1)?);
                }
            }
        }
        state = BTreeMap::new();
        for (k, v) in next {
            let mut b = basis_of(ring, v, budget)?;
            if local {
                b = b
                    .into_iter()
                    .map(|g| g.retain(&|x: &Monomial| x.exponents().iter().all(|&v| v < after)))
                    .filter(|g| !g.is_zero())
                    .collect();
            }
            if !b.is_empty() {
                state.insert(k, b);
            }
        }
    }
    Ok(state)
}

/// `I_e = (a^{⌈λp^e⌉})^{[1/p^e]}`.
pub fn tau_iterate(a: &PolyIdeal, lambda: &Lambda, e: u32, budget: &Budget) -> Result<PolyIdeal> {
    iterate_with(a, lambda, e, budget, &mut PowerCache::default())
}

fn iterate_with(
    a: &PolyIdeal,
    lambda: &Lambda,
    e: u32,
    budget: &Budget,
    cache: &mut PowerCache,
) -> Result<PolyIdeal> {
    let p = prime_of(a.ring())?;
    let q = prime_power(p, e, budget.max_prime_power)?;
    let n = ceil_to_u64(&(lambda.value() * Rational::from_integer(BigInt::from(q))))?;
    power_root_with(a, n, e, budget, cache)
}

/// Period of the base-`p` digits of `λ`: the multiplicative order of `p`
/// modulo the `p`-free part of the denominator (1 when there is none).
pub fn digit_period(lambda: &Lambda, p: u64) -> u64 {
    let mut v = lambda.value().denom().clone();
    let bp = BigInt::from(p);
    while (&v % &bp).is_zero() {
        v /= &bp;
    }
    if v.is_one() {
        return 1;
    }
    let mut x = BigInt::from(p) % &v;
    let mut k = 1u64;
    while !x.is_one() {
        x = (x * &bp) % &v;
        k += 1;
    }
    k
}

/// Number of base-`p` digits of `λ` before they turn periodic: the
/// exponent of `p` in the denominator.
pub fn digit_preperiod(lambda: &Lambda, p: u64) -> u32 {
    let mut v = lambda.value().denom().clone();
    let bp = BigInt::from(p);
    let mut s = 0;
    while !v.is_zero() && (&v % &bp).is_zero() {
        v /= &bp;
        s += 1;
    }
    s
}

/// `τ(a^λ)`: iterate until the chain `I_e` stays constant over one full
/// period of the base-`p` digits of `λ`, counting only steps past the
/// preperiod, or the horizon is reached. This is evidence of
/// stabilization, not a proof.
pub fn tau(a: &PolyIdeal, lambda: &Lambda, ctx: &TauContext) -> Result<TauResult> {
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ctx.e_max < 2 {
        return Err(Error::Precondition("the horizon must be at least 2".to_string()));
    }
    let p = prime_of(a.ring())?;
    let period = digit_period(lambda, p);
    let skip = digit_preperiod(lambda, p);
    let mut cache = PowerCache::default();
    let mut iterates = alloc::vec![iterate_with(a, lambda, 1, &ctx.budget, &mut cache)?];
    let mut run = 0u64;
    for e in 2..=ctx.e_max {
        let next = iterate_with(a, lambda, e, &ctx.budget, &mut cache)?;
        let prev = iterates.last().unwrap();
        if !contains(&next, prev, &ctx.budget)? {
            return Err(Error::Precondition(
                "test-ideal iterates failed to ascend".to_string(),
            ));
        }
        // I_{e-1} = I_e only counts once e - 1 is past the preperiod
        run = if e > skip + 1 && contains(prev, &next, &ctx.budget)? {
            run + 1
        } else {
            0
        };
        iterates.push(next);
        if run >= period {
            return Ok(TauResult {
                ideal: iterates.last().unwrap().clone(),
                stabilized: true,
                iterates,
            });
        }
    }
    Ok(TauResult {
        ideal: iterates.last().unwrap().clone(),
        stabilized: false,
        iterates,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    GridResolution,
    Certified,
}

impl Exactness {
    pub fn as_str(self) -> &'static str {
        match self {
            Exactness::GridResolution => "grid-resolution",
            Exactness::Certified => "certified",
        }
    }
}

/// A grid point where the test ideal changes.
#[derive(Debug, Clone)]
pub struct Jump {
    pub lambda: Rational,
    pub before: PolyIdeal,
    pub after: PolyIdeal,
    /// A closed-form F-pure threshold equals this (first) jump.
    pub certified: bool,
}

#[derive(Debug, Clone)]
pub struct JumpingReport {
    pub lambda_max: Rational,
    pub grid: u64,
    pub jumps: Vec<Jump>,
    pub exactness: Exactness,
    /// Every scanned test ideal stabilized within the horizon.
    pub stabilized: bool,
}

/// Default grid denominator `lcm(6, p, p^2)`, capped at `10^4`.
pub fn default_grid(p: u64) -> u64 {
    arith::lcm(6, p.saturating_mul(p)).min(10_000)
}

fn closed_form_fpt(a: &PolyIdeal) -> Option<Rational> {
    let ring = a.ring();
    let gens = a.gens();
    if a.is_monomial() {
        let exps = gens
            .iter()
            .map(|g| g.monomials().next().map(|m| m.exponents().to_vec()))
            .collect::<Option<Vec<_>>>()?;
        return fpt_monomial(&MonomialIdeal::new(ring.nvars(), exps).ok()?).ok();
    }
    if ring.nvars() == 1 && gens.len() == 1 {
        let ord = gens[0].order()?;
        if ord > 0 {
            return Some(Rational::new(1.into(), BigInt::from(ord)));
        }
    }
    None
}

/// Scan `τ(a^{k/grid})` for `0 <= k <= λ_max·grid` and report each change.
/// A jump at `k/grid` lies in `((k-1)/grid, k/grid]`.
pub fn fjump_scan(
    a: &PolyIdeal,
    lambda_max: &Lambda,
    grid: u64,
    ctx: &TauContext,
) -> Result<JumpingReport> {
    if grid == 0 {
        return Err(Error::Precondition("grid must be positive".to_string()));
    }
    let steps = arith::floor_to_u64(&(lambda_max.value() * Rational::from_integer(BigInt::from(grid))))?;
    if steps > ctx.budget.max_products {
        return Err(Error::Budget {
            what: "grid points",
            limit: ctx.budget.max_products,
        });
    }
    let reference = closed_form_fpt(a);
    let mut jumps: Vec<Jump> = Vec::new();
    let mut stabilized = true;
    let mut prev = tau(a, &Lambda::ratio(0, 1)?, ctx)?;
    stabilized &= prev.stabilized;
    for k in 1..=steps {
        let lambda = Rational::new(BigInt::from(k), BigInt::from(grid));
        let cur = tau(a, &Lambda::new(lambda.clone())?, ctx)?;
        stabilized &= cur.stabilized;
        if !equal(&prev.ideal, &cur.ideal, &ctx.budget)? {
            let certified = jumps.is_empty() && reference.as_ref() == Some(&lambda);
            jumps.push(Jump {
                lambda,
                before: prev.ideal.clone(),
                after: cur.ideal.clone(),
                certified,
            });
        }
        prev = cur;
    }
    let exactness = if !jumps.is_empty() && jumps.iter().all(|j| j.certified) {
        Exactness::Certified
    } else {
        Exactness::GridResolution
    };
    Ok(JumpingReport {
        lambda_max: lambda_max.value().clone(),
        grid,
        jumps,
        exactness,
        stabilized,
    })
}

/// `τ(a^λ) = a·τ(a^{λ-1})`, for `λ >= 1` when `a` is principal and
/// `λ >= m` for `m` generators otherwise.
pub fn check_skoda(a: &PolyIdeal, lambda: &Lambda, ctx: &TauContext) -> Result<bool> {
    let m = a.gens().len().max(1) as i64;
    let bound = if a.gens().len() == 1 { 1 } else { m };
    if lambda.value() < &Rational::from_integer(BigInt::from(bound)) {
        return Err(Error::Precondition(alloc::format!(
            "λ must be at least {bound}"
        )));
    }
    let lhs = tau(a, lambda, ctx)?;
    let shifted = Lambda::new(lambda.value() - Rational::from_integer(BigInt::from(1)))?;
    let rhs = a.product(&tau(a, &shifted, ctx)?.ideal)?;
    equal(&lhs.ideal, &rhs, &ctx.budget)
}

/// `τ(a^{λ/p}) = τ(a^λ)^{[1/p]}`. Both test ideals must stabilize within
/// the horizon.
pub fn check_p_scaling(a: &PolyIdeal, lambda: &Lambda, ctx: &TauContext) -> Result<bool> {
    let p = prime_of(a.ring())?;
    let small = Lambda::new(lambda.value() / Rational::from_integer(BigInt::from(p)))?;
    let lhs = tau(a, &small, ctx)?;
    let rhs = tau(a, lambda, ctx)?;
    if !lhs.stabilized || !rhs.stabilized {
        return Err(Error::Precondition(
            "test ideal did not stabilize within the horizon".to_string(),
        ));
    }
    let root = frobenius_root(&rhs.ideal, 1)?;
    equal(&lhs.ideal, &root, &ctx.budget)
}
