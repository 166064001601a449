//! Asymptotic invariants of graded sequences of monomial ideals
//! `a_m = (x^u : u ∈ mQ)`: `Arn(a_•) = lim Arn(a_m)/m` and monomial
//! valuations `val_v(a_•) = lim val_v(a_m)/m`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, int};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::newton::{lct_monomial, monomial_valuation, MonomialIdeal, RationalPoint};
use crate::{Budget, Error, Rational, Result, Threshold};

/// `⟨normal, u⟩ >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: Vec<Rational>,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradedMonomialSequence {
    /// `a_m = I^m`.
    PowersOf(MonomialIdeal),
    /// `Q = {u >= 0 : ⟨c_j, u⟩ >= b_j}` with every `c_j >= 0`.
    PolyhedralQ { n: usize, constraints: Vec<HalfSpace> },
    /// `Q = {u ∈ R^2_{>=0} : (u_1 + 1) u_2 >= 1}`.
    HyperbolaQ,
}

impl GradedMonomialSequence {
    pub fn polyhedral(n: usize, constraints: Vec<HalfSpace>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("need at least one variable".to_string()));
        }
        for h in &constraints {
            if h.normal.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: h.normal.len(),
                });
            }
            if h.normal.iter().any(Signed::is_negative) {
                return Err(Error::Precondition(
                    "constraint normals must be nonnegative so that Q is upward closed".to_string(),
                ));
            }
            if h.rhs.is_positive() && h.normal.iter().all(Zero::is_zero) {
                return Err(Error::Precondition("Q is empty".to_string()));
            }
        }
        Ok(GradedMonomialSequence::PolyhedralQ { n, constraints })
    }

    pub fn nvars(&self) -> usize {
        match self {
            GradedMonomialSequence::PowersOf(i) => i.nvars(),
            GradedMonomialSequence::PolyhedralQ { n, .. } => *n,
            GradedMonomialSequence::HyperbolaQ => 2,
        }
    }

    /// Is `x^u ∈ a_m`?
    pub fn contains(&self, u: &[u64], m: u64) -> Result<bool> {
        if u.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: u.len(),
            });
        }
        Ok(match self {
            GradedMonomialSequence::PowersOf(i) => i.power(m as u32)?.contains_monomial(u),
            GradedMonomialSequence::PolyhedralQ { constraints, .. } => {
                let m = int(m as i64);
                constraints.iter().all(|h| {
                    let lhs: Rational = h
                        .normal
                        .iter()
                        .zip(u)
                        .map(|(c, &x)| c * Rational::from_integer(x.into()))
                        .sum();
                    lhs >= &h.rhs * &m
                })
            }
            GradedMonomialSequence::HyperbolaQ => {
                let m = m as u128;
                (u[0] as u128 + m) * u[1] as u128 >= m * m
            }
        })
    }

    /// Minimal generators of `a_m`.
    pub fn term(&self, m: u64, budget: &Budget) -> Result<MonomialIdeal> {
        if m == 0 {
            return MonomialIdeal::new(self.nvars(), alloc::vec![alloc::vec![0; self.nvars()]]);
        }
        match self {
            GradedMonomialSequence::PowersOf(i) => {
                let r = u32::try_from(m).map_err(|_| Error::ExponentOverflow)?;
                i.power(r)
            }
            GradedMonomialSequence::HyperbolaQ => MonomialIdeal::new(2, hyperbola_staircase(m)),
            GradedMonomialSequence::PolyhedralQ { n, constraints } => {
                polyhedral_term(*n, constraints, m, budget)
            }
        }
    }
}

/// Staircase of `{(a, b) ∈ N^2 : (a + m) b >= m^2}`: for each `b` the least
/// admissible `a`, keeping only strict decreases.
fn hyperbola_staircase(m: u64) -> Vec<Vec<u64>> {
    let mm = m as u128 * m as u128;
    let mut out = Vec::new();
    let mut last = u128::MAX;
    for b in 1..=m as u128 {
        let a = ((mm + b - 1) / b).saturating_sub(m as u128);
        if a < last {
            out.push(alloc::vec![a as u64, b as u64]);
            last = a;
        }
        if a == 0 {
            break;
        }
    }
    out
}

/// Lattice points of `mQ` found in the box where minimal points live:
/// lowering `u_i` below `max_j ⌈m b_j / c_{ji}⌉` is the only way to leave a
/// constraint that involves `x_i`.
fn polyhedral_term(
    n: usize,
    constraints: &[HalfSpace],
    m: u64,
    budget: &Budget,
) -> Result<MonomialIdeal> {
    let mr = int(m as i64);
    let mut bounds = alloc::vec![0u64; n];
    for (i, bound) in bounds.iter_mut().enumerate() {
        for h in constraints {
            if h.normal[i].is_positive() && h.rhs.is_positive() {
                let need = arith::ceil_to_u64(&(&h.rhs * &mr / &h.normal[i]))?;
                *bound = (*bound).max(need);
            }
        }
    }
    let size = bounds
        .iter()
        .try_fold(1u64, |acc, &b| acc.checked_mul(b + 1))
        .ok_or(Error::ExponentOverflow)?;
    if size > budget.max_terms {
        return Err(Error::Budget {
            what: "lattice points",
            limit: budget.max_terms,
        });
    }
    let seq = GradedMonomialSequence::PolyhedralQ {
        n,
        constraints: constraints.to_vec(),
    };
    let mut gens = Vec::new();
    let mut u = alloc::vec![0u64; n];
    loop {
        if seq.contains(&u, m)? {
            gens.push(u.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return MonomialIdeal::new(n, gens);
            }
            if u[i] < bounds[i] {
                u[i] += 1;
                break;
            }
            u[i] = 0;
            i += 1;
        }
    }
}

/// `min { t : (t, t) ∈ P(a) }` for a monomial ideal in two variables, read
/// off the lower convex hull of its staircase.
pub fn diagonal_entry_2d(gens: &[Vec<u64>]) -> Rational {
    let mut pts: Vec<(i128, i128)> = gens.iter().map(|g| (g[0] as i128, g[1] as i128)).collect();
    pts.sort();
    let mut hull: Vec<(i128, i128)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    // drop points that are not on the lower-left chain (y must decrease)
    let mut chain: Vec<(i128, i128)> = Vec::new();
    for p in hull {
        if chain.last().map_or(true, |q: &(i128, i128)| p.1 < q.1) {
            chain.push(p);
        }
    }
    let first = chain[0];
    if first.0 >= first.1 {
        return Rational::from_integer(BigInt::from(first.0));
    }
    for w in chain.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b.0 >= b.1 {
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let num = a.1 * dx - a.0 * dy;
            return Rational::new(BigInt::from(num), BigInt::from(dx - dy));
        }
    }
    Rational::from_integer(BigInt::from(chain.last().unwrap().1))
}

fn arnold(a: &MonomialIdeal) -> Result<Rational> {
    if a.nvars() == 2 {
        return Ok(diagonal_entry_2d(a.gens()));
    }
    Ok(match lct_monomial(a)? {
        Threshold::Finite(l) => l.recip(),
        Threshold::Infinity => Rational::zero(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convergence {
    /// The limit is known exactly (LP on `Q`, or scaling for powers).
    Exact,
    /// Two-sided band around the last value from a fitted `c/m` rate.
    Fitted,
}

impl Convergence {
    pub fn as_str(self) -> &'static str {
        match self {
            Convergence::Exact => "exact",
            Convergence::Fitted => "fitted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticEstimate {
    /// `(m, α(a_m)/m)`.
    pub values: Vec<(u64, Rational)>,
    pub lo: Rational,
    pub hi: Rational,
    pub convergence: Convergence,
    /// Enclosure of a closed-form value for the limit, when one is known.
    pub reference: Option<(Rational, Rational)>,
}

impl AsymptoticEstimate {
    pub fn last(&self) -> Option<&Rational> {
        self.values.last().map(|(_, v)| v)
    }

    /// Running minima of the recorded values.
    pub fn min_so_far(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(self.values.len());
        for (_, v) in &self.values {
            let next = match out.last() {
                Some(prev) if prev < v => prev.clone(),
                _ => v.clone(),
            };
            out.push(next);
        }
        out
    }
}

/// `1..=16`, then powers of two, then `m_max`.
pub fn schedule(m_max: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=m_max.min(16)).collect();
    let mut m = 32;
    while m < m_max {
        out.push(m);
        m *= 2;
    }
    if m_max > 16 {
        out.push(m_max);
    }
    out
}

/// `[inf - 2c/m_max, inf]` with `c = max_m m·(value_m - inf)`: for an
/// infimum-limit the smallest value is an upper bound, and the `c/m` rate is
/// fitted from the recorded values, not proved.
fn fitted_band(values: &[(u64, Rational)]) -> (Rational, Rational) {
    let hi = values.iter().map(|(_, v)| v.clone()).min().expect("nonempty schedule");
    let m_last = values.last().unwrap().0;
    let c = values
        .iter()
        .map(|(m, v)| int(*m as i64) * (v - &hi))
        .max()
        .unwrap_or_else(Rational::zero);
    let lo = &hi - int(2) * c / int(m_last as i64);
    (lo.max(Rational::zero()), hi)
}

fn check_m_max(m_max: u64) -> Result<()> {
    if m_max == 0 {
        return Err(Error::Precondition("m_max must be positive".to_string()));
    }
    Ok(())
}

/// `√5` to 30 digits.
fn golden_ratio_enclosure() -> (Rational, Rational) {
    let tol = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 30));
    let (lo, hi) = arith::sqrt_enclosure(&int(5), &tol);
    ((lo - int(1)) / int(2), (hi - int(1)) / int(2))
}

/// `η = (√5 - 1)/2`, as an enclosure accurate to 30 digits.
pub fn eta() -> (Rational, Rational) {
    golden_ratio_enclosure()
}

fn polyhedral_diagonal(constraints: &[HalfSpace]) -> Result<Rational> {
    // min t subject to ⟨c_j, (t,…,t)⟩ >= b_j, t >= 0
    let mut lp = LinearProgram::new(1);
    lp.objective[0] = Rational::one();
    for h in constraints {
        let s: Rational = h.normal.iter().cloned().sum();
        lp.constrain(alloc::vec![s], Relation::Ge, h.rhs.clone());
    }
    match lp.minimize() {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(Error::Precondition("Q misses the diagonal".to_string())),
        LpOutcome::Unbounded => unreachable!("t >= 0"),
    }
}

fn polyhedral_valuation(n: usize, constraints: &[HalfSpace], v: &[Rational]) -> Result<Rational> {
    let mut lp = LinearProgram::new(n);
    lp.objective = v.to_vec();
    for h in constraints {
        lp.constrain(h.normal.clone(), Relation::Ge, h.rhs.clone());
    }
    match lp.minimize() {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(Error::Precondition("Q is empty".to_string())),
        LpOutcome::Unbounded => unreachable!("v >= 0 on the orthant"),
    }
}

/// Largest `m` for which lattice terms of a polyhedral `Q` are enumerated.
const POLYHEDRAL_TERMS: u64 = 32;

/// `Arn(a_•) = lim Arn(a_m)/m`; `lct(a_•)` is its reciprocal.
pub fn arn_asym(s: &GradedMonomialSequence, m_max: u64, budget: &Budget) -> Result<AsymptoticEstimate> {
    check_m_max(m_max)?;
    match s {
        GradedMonomialSequence::PowersOf(i) => {
            let t = arnold(i)?;
            let mut values = Vec::new();
            for m in schedule(m_max.min(POLYHEDRAL_TERMS)) {
                values.push((m, arnold(&s.term(m, budget)?)? / int(m as i64)));
            }
            Ok(AsymptoticEstimate {
                values,
                lo: t.clone(),
                hi: t,
                convergence: Convergence::Exact,
                reference: None,
            })
        }
        GradedMonomialSequence::PolyhedralQ { constraints, .. } => {
            let t = polyhedral_diagonal(constraints)?;
            let mut values = Vec::new();
            for m in schedule(m_max.min(POLYHEDRAL_TERMS)) {
                values.push((m, arnold(&s.term(m, budget)?)? / int(m as i64)));
            }
            Ok(AsymptoticEstimate {
                values,
                lo: t.clone(),
                hi: t,
                convergence: Convergence::Exact,
                reference: None,
            })
        }
        GradedMonomialSequence::HyperbolaQ => {
            let mut values = Vec::new();
            for m in schedule(m_max) {
                values.push((m, arnold(&s.term(m, budget)?)? / int(m as i64)));
            }
            let (lo, hi) = fitted_band(&values);
            Ok(AsymptoticEstimate {
                values,
                lo,
                hi,
                convergence: Convergence::Fitted,
                reference: Some(eta()),
            })
        }
    }
}

/// Closed form `min { αu_1 + βu_2 : (u_1 + 1)u_2 >= 1, u >= 0 }`:
/// `2√(αβ) - α` when `β >= α`, else `β`, as an enclosure of width `tol`.
pub fn hyperbola_valuation(alpha: &Rational, beta: &Rational, tol: &Rational) -> (Rational, Rational) {
    if beta < alpha {
        return (beta.clone(), beta.clone());
    }
    let (lo, hi) = arith::sqrt_enclosure(&(alpha * beta), &(tol / int(2)));
    (int(2) * lo - alpha, int(2) * hi - alpha)
}

/// `val_v(a_•) = lim val_v(a_m)/m`.
pub fn val_asym(
    s: &GradedMonomialSequence,
    v: &RationalPoint,
    m_max: u64,
    budget: &Budget,
) -> Result<AsymptoticEstimate> {
    check_m_max(m_max)?;
    if v.len() != s.nvars() {
        return Err(Error::DimensionMismatch {
            expected: s.nvars(),
            found: v.len(),
        });
    }
    let cap = match s {
        GradedMonomialSequence::HyperbolaQ => m_max,
        _ => m_max.min(POLYHEDRAL_TERMS),
    };
    let mut values = Vec::new();
    for m in schedule(cap) {
        let a = s.term(m, budget)?;
        values.push((m, monomial_valuation(v, &a)? / int(m as i64)));
    }
    match s {
        GradedMonomialSequence::PowersOf(i) => {
            let val = monomial_valuation(v, i)?;
            Ok(AsymptoticEstimate {
                values,
                lo: val.clone(),
                hi: val,
                convergence: Convergence::Exact,
                reference: None,
            })
        }
        GradedMonomialSequence::PolyhedralQ { n, constraints } => {
            let val = polyhedral_valuation(*n, constraints, v.coords())?;
            Ok(AsymptoticEstimate {
                values,
                lo: val.clone(),
                hi: val,
                convergence: Convergence::Exact,
                reference: None,
            })
        }
        GradedMonomialSequence::HyperbolaQ => {
            let (lo, hi) = fitted_band(&values);
            let tol = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 30));
            let reference = hyperbola_valuation(&v.coords()[0], &v.coords()[1], &tol);
            Ok(AsymptoticEstimate {
                values,
                lo,
                hi,
                convergence: Convergence::Fitted,
                reference: Some(reference),
            })
        }
    }
}

/// Do sums of generators of `a_p` and `a_q` lie in `a_{p+q}` for every
/// listed `(p, q)`?
pub fn check_graded(s: &GradedMonomialSequence, pairs: &[(u64, u64)], budget: &Budget) -> Result<bool> {
    for &(p, q) in pairs {
        let (ap, aq) = (s.term(p, budget)?, s.term(q, budget)?);
        for u in ap.gens() {
            for w in aq.gens() {
                let sum: Vec<u64> = u.iter().zip(w).map(|(a, b)| a + b).collect();
                if !s.contains(&sum, p + q)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Convergence table of `Arn(a_m)/m` for the hyperbola sequence against `η`.
#[derive(Debug, Clone)]
pub struct GoldenRatioReport {
    pub estimate: AsymptoticEstimate,
    pub eta: (Rational, Rational),
    pub tolerance: Rational,
    /// `|Arn(a_{m_max})/m_max - η| <= tolerance`, decided on the enclosure.
    pub within_tolerance: bool,
    pub min_so_far_nonincreasing: bool,
}

/// Default tolerance: `1/50` below `m = 2048`, `1/200` from there on.
pub fn default_tolerance(m_max: u64) -> Rational {
    if m_max >= 2048 {
        Rational::new(BigInt::one(), BigInt::from(200))
    } else {
        Rational::new(BigInt::one(), BigInt::from(50))
    }
}

pub fn golden_ratio_demo(m_max: u64, tolerance: &Rational, budget: &Budget) -> Result<GoldenRatioReport> {
    if m_max < 16 {
        return Err(Error::Precondition("m_max must be at least 16".to_string()));
    }
    let estimate = arn_asym(&GradedMonomialSequence::HyperbolaQ, m_max, budget)?;
    let (lo, hi) = eta();
    let last = estimate.last().expect("nonempty schedule").clone();
    let within_tolerance = &last - &lo <= *tolerance && &hi - &last <= *tolerance;
    let mins = estimate.min_so_far();
    let min_so_far_nonincreasing = mins.windows(2).all(|w| w[1] <= w[0]);
    Ok(GoldenRatioReport {
        estimate,
        eta: (lo, hi),
        tolerance: tolerance.clone(),
        within_tolerance,
        min_so_far_nonincreasing,
    })
}

/// Tab-separated `m`, exact value and an 8-digit approximation.
pub fn render_table(est: &AsymptoticEstimate) -> String {
    let mut out = String::from("m\tvalue\tapprox\n");
    for (m, v) in &est.values {
        out.push_str(&alloc::format!("{m}\t{}\t{}\n", arith::render(v), arith::decimal(v, 8)));
    }
    out
}
