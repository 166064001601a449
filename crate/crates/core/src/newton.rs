//! Monomial ideals and their Newton polyhedra.
//!
//! `P(a) = conv(gens) + R^n_{>=0}` is never materialized as half-spaces;
//! membership and optimization go through the exact LP in [`crate::lp`].

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::polyring::{self, Field};
use crate::{Error, Rational, Result, Threshold};

/// Monomial ideal stored by its minimal generators (sorted, no generator
/// divides another).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Vec<u64>>,
}

fn divides(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    pub fn new(n: usize, gens: Vec<Vec<u64>>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        for g in &gens {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
        }
        let mut gens = gens;
        gens.sort();
        gens.dedup();
        let minimal: Vec<Vec<u64>> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && divides(h, g)))
            .cloned()
            .collect();
        Ok(MonomialIdeal { n, gens: minimal })
    }

    /// `(x_1^{a_1}, …, x_n^{a_n})`.
    pub fn diagonal(exps: &[u64]) -> Result<Self> {
        let n = exps.len();
        let gens = exps
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut g = vec![0; n];
                g[i] = a;
                g
            })
            .collect();
        MonomialIdeal::new(n, gens)
    }

    /// The maximal ideal `(x_1, …, x_n)`.
    pub fn maximal(n: usize) -> Result<Self> {
        MonomialIdeal::diagonal(&vec![1; n])
    }

    /// Parse a comma-separated list of monomials, e.g. `x^2, y^3`.
    /// The variable count is inferred unless `n` is given.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let n = match n {
            Some(n) => n,
            None => polyring::infer_nvars(text)?.max(1),
        };
        let ring = polyring::Ring::new(n, Field::Integer)?;
        let mut gens = Vec::new();
        for part in text.split(',') {
            let f = polyring::parse(part, ring)?;
            if !f.is_monomial() {
                return Err(Error::Precondition(alloc::format!(
                    "`{}` is not a monomial",
                    part.trim()
                )));
            }
            gens.push(f.monomials().next().unwrap().exponents().to_vec());
        }
        MonomialIdeal::new(n, gens)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Vec<u64>] {
        &self.gens
    }

    /// Not the unit ideal.
    pub fn is_proper(&self) -> bool {
        !self.gens.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    pub fn contains_monomial(&self, u: &[u64]) -> bool {
        self.gens.iter().any(|g| divides(g, u))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &MonomialIdeal) -> bool {
        self.n == other.n && other.gens.iter().all(|g| self.contains_monomial(g))
    }

    /// Every variable has a pure power in the ideal.
    pub fn is_m_primary(&self) -> bool {
        (0..self.n).all(|i| {
            self.gens
                .iter()
                .any(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
        })
    }

    /// `min |u|` over generators.
    pub fn order(&self) -> u64 {
        self.gens.iter().map(|g| g.iter().sum()).min().unwrap_or(0)
    }

    /// Ideal with every generator exponent multiplied by `r`; its Newton
    /// polyhedron is `r·P(a) = P(a^r)`.
    pub fn scale_exponents(&self, r: u64) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                g.iter()
                    .map(|e| e.checked_mul(r).ok_or(Error::ExponentOverflow))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(self.n, gens)
    }

    /// Ideal power `a^r`.
    pub fn power(&self, r: u32) -> Result<Self> {
        let mut acc = MonomialIdeal::new(self.n, vec![vec![0; self.n]])?;
        for _ in 0..r {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        MonomialIdeal::new(self.n, gens)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RingMismatch);
        }
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        MonomialIdeal::new(self.n, gens)
    }

    /// `a + b` in the polynomial ring on the disjoint union of the variables
    /// (`a` in the first block, `b` in the second).
    pub fn disjoint_sum(&self, other: &MonomialIdeal) -> Result<Self> {
        let n = self.n + other.n;
        let mut gens = Vec::new();
        for g in &self.gens {
            let mut v = g.clone();
            v.resize(n, 0);
            gens.push(v);
        }
        for g in &other.gens {
            let mut v = vec![0; self.n];
            v.extend_from_slice(g);
            gens.push(v);
        }
        MonomialIdeal::new(n, gens)
    }

    pub fn newton_polyhedron(&self) -> NewtonPolyhedron {
        NewtonPolyhedron {
            n: self.n,
            generators: self
                .gens
                .iter()
                .map(|g| g.iter().map(|&e| Rational::from_integer(e.into())).collect())
                .collect(),
        }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = polyring::Ring::integer(self.n);
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let m = polyring::Monomial::new(g.clone());
            let s = m.render(&ring);
            f.write_str(if s.is_empty() { "1" } else { &s })?;
        }
        Ok(())
    }
}

/// Point of `R^n_{>=0}` with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint(Vec<Rational>);

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.iter().any(|c| c.is_negative()) {
            return Err(Error::Precondition("negative coordinate".to_string()));
        }
        Ok(RationalPoint(coords))
    }

    pub fn from_ints(coords: &[u64]) -> Self {
        RationalPoint(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// `(t, …, t)`.
    pub fn diagonal(n: usize, t: Rational) -> Result<Self> {
        RationalPoint::new(vec![t; n])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `conv(generators) + R^n_{>=0}`, kept in generator form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    n: usize,
    generators: Vec<Vec<Rational>>,
}

impl NewtonPolyhedron {
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    /// `q ∈ P`: is `q = Σ μ_i g_i + r` with `μ` a convex combination and
    /// `r >= 0`?
    pub fn contains_point(&self, q: &RationalPoint) -> Result<bool> {
        if q.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: q.len(),
            });
        }
        let k = self.generators.len();
        let mut lp = LinearProgram::new(k + self.n);
        for j in 0..self.n {
            let mut row = vec![Rational::zero(); k + self.n];
            for (i, g) in self.generators.iter().enumerate() {
                row[i] = g[j].clone();
            }
            row[k + j] = Rational::one();
            lp.constrain(row, Relation::Eq, q.coords()[j].clone());
        }
        let mut row = vec![Rational::zero(); k + self.n];
        for c in row.iter_mut().take(k) {
            *c = Rational::one();
        }
        lp.constrain(row, Relation::Eq, Rational::one());
        Ok(lp.is_feasible())
    }

    /// `min { t : (t, …, t) ∈ P }`.
    pub fn diagonal_entry(&self) -> Result<Rational> {
        let k = self.generators.len();
        let width = k + self.n + 1;
        let t = width - 1;
        let mut lp = LinearProgram::new(width);
        lp.objective[t] = Rational::one();
        for j in 0..self.n {
            let mut row = vec![Rational::zero(); width];
            for (i, g) in self.generators.iter().enumerate() {
                row[i] = g[j].clone();
            }
            row[k + j] = Rational::one();
            row[t] = -Rational::one();
            lp.constrain(row, Relation::Eq, Rational::zero());
        }
        let mut row = vec![Rational::zero(); width];
        for c in row.iter_mut().take(k) {
            *c = Rational::one();
        }
        lp.constrain(row, Relation::Eq, Rational::one());
        match lp.minimize() {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Infeasible => Err(Error::Infeasible),
            LpOutcome::Unbounded => unreachable!("t is bounded below by zero"),
        }
    }
}

/// `lct(a) = max { λ : (1, …, 1) ∈ λ·P(a) } = 1 / min { t : (t, …, t) ∈ P(a) }`;
/// infinite for the unit ideal.
pub fn lct_monomial(a: &MonomialIdeal) -> Result<Threshold> {
    if !a.is_proper() {
        return Ok(Threshold::Infinity);
    }
    let t = a.newton_polyhedron().diagonal_entry()?;
    Ok(Threshold::Finite(t.recip()))
}

/// `val_v(a) = min_u ⟨u, v⟩` over the generators.
pub fn monomial_valuation(v: &RationalPoint, a: &MonomialIdeal) -> Result<Rational> {
    if v.len() != a.nvars() {
        return Err(Error::DimensionMismatch {
            expected: a.nvars(),
            found: v.len(),
        });
    }
    Ok(a.gens()
        .iter()
        .map(|g| {
            g.iter()
                .zip(v.coords())
                .map(|(&e, c)| Rational::from_integer(e.into()) * c)
                .sum::<Rational>()
        })
        .min()
        .expect("monomial ideals are nonempty"))
}

/// Hilbert–Samuel multiplicity `e(a) = n! · covol(P(a))`.
pub fn multiplicity_monomial(a: &MonomialIdeal) -> Result<BigInt> {
    if !a.is_m_primary() {
        return Err(Error::NotMPrimary);
    }
    let n = a.nvars();
    let covol = covolume(&a.newton_polyhedron().generators, n);
    let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    let e = covol * Rational::from_integer(fact);
    debug_assert!(e.is_integer());
    Ok(e.to_integer())
}

/// `e(a) · lct(a)^n >= n^n`.
pub fn check_amgm(a: &MonomialIdeal) -> Result<bool> {
    let e = Rational::from_integer(multiplicity_monomial(a)?);
    let lct = match lct_monomial(a)? {
        Threshold::Finite(l) => l,
        Threshold::Infinity => return Err(Error::NotMPrimary),
    };
    let n = a.nvars();
    let lhs = e * num_traits::pow(lct, n);
    let rhs = Rational::from_integer(num_traits::pow(BigInt::from(n), n));
    Ok(lhs >= rhs)
}

/// Volume of `R^n_{>=0} \ P` for the Newton polyhedron generated by
/// `points`, which must contain a point on every coordinate axis.
fn covolume(points: &[Vec<Rational>], n: usize) -> Rational {
    match n {
        0 => Rational::zero(),
        1 => points.iter().map(|p| p[0].clone()).min().unwrap(),
        2 => covolume_plane(points),
        _ => covolume_sliced(points, n),
    }
}

/// Area under the lower-left convex chain from the `y`-axis to the `x`-axis.
fn covolume_plane(points: &[Vec<Rational>]) -> Rational {
    let mut pts: Vec<(Rational, Rational)> =
        points.iter().map(|p| (p[0].clone(), p[1].clone())).collect();
    pts.sort();
    pts.dedup();
    let mut hull: Vec<(Rational, Rational)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            let cross = (&b.0 - &a.0) * (&p.1 - &a.1) - (&b.1 - &a.1) * (&p.0 - &a.0);
            if cross.is_positive() {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    let end = hull
        .iter()
        .position(|(_, y)| y.is_zero())
        .expect("a point on the x-axis");
    let two = Rational::from_integer(2.into());
    hull[..=end]
        .windows(2)
        .map(|w| (&w[1].0 - &w[0].0) * (&w[0].1 + &w[1].1) / &two)
        .sum()
}

/// Slices `u_n = s`. Between consecutive generator heights the slice
/// covolume is a polynomial of degree `<= n - 1` in `s`, integrated exactly
/// from `n` interior samples.
fn covolume_sliced(points: &[Vec<Rational>], n: usize) -> Rational {
    let last = n - 1;
    let top = points
        .iter()
        .filter(|p| p[..last].iter().all(Zero::is_zero))
        .map(|p| p[last].clone())
        .min()
        .expect("a point on the last axis");
    let mut cuts: Vec<Rational> = points
        .iter()
        .map(|p| p[last].clone())
        .filter(|h| *h < top)
        .collect();
    cuts.push(Rational::zero());
    cuts.push(top);
    cuts.sort();
    cuts.dedup();
    let (nodes, weights) = interior_rule(n - 1);
    let mut total = Rational::zero();
    for w in cuts.windows(2) {
        let width = &w[1] - &w[0];
        let mut acc = Rational::zero();
        for (t, wt) in nodes.iter().zip(&weights) {
            let s = &w[0] + t * &width;
            acc += wt * covolume(&slice(points, &s, last), last);
        }
        total += acc * width;
    }
    total
}

/// Generators of `{ v : (v, s) ∈ P }`.
fn slice(points: &[Vec<Rational>], s: &Rational, last: usize) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for p in points {
        if p[last] <= *s {
            out.push(p[..last].to_vec());
        }
    }
    for g in points {
        if g[last] >= *s {
            continue;
        }
        for h in points {
            if h[last] <= *s {
                continue;
            }
            let lam = (s - &g[last]) / (&h[last] - &g[last]);
            out.push(
                (0..last)
                    .map(|j| &g[j] + &lam * (&h[j] - &g[j]))
                    .collect(),
            );
        }
    }
    prune_dominated(out)
}

fn prune_dominated(mut pts: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    pts.sort();
    pts.dedup();
    let keep: Vec<bool> = pts
        .iter()
        .map(|p| {
            !pts.iter()
                .any(|q| q != p && q.iter().zip(p).all(|(a, b)| a <= b))
        })
        .collect();
    pts.into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

/// Nodes `t_j = (j+1)/(d+2)` on `[0, 1]` and weights integrating every
/// polynomial of degree `<= d` exactly.
fn interior_rule(d: usize) -> (Vec<Rational>, Vec<Rational>) {
    let nodes: Vec<Rational> = (0..=d)
        .map(|j| Rational::new(BigInt::from(j + 1), BigInt::from(d + 2)))
        .collect();
    let weights = (0..=d)
        .map(|j| {
            // coefficients of the Lagrange basis polynomial L_j, low degree first
            let mut poly = vec![Rational::one()];
            for (k, tk) in nodes.iter().enumerate() {
                if k == j {
                    continue;
                }
                let denom = &nodes[j] - tk;
                let mut next = vec![Rational::zero(); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] += c / &denom;
                    next[i] -= c * tk / &denom;
                }
                poly = next;
            }
            poly.iter()
                .enumerate()
                .map(|(i, c)| c / Rational::from_integer(BigInt::from(i + 1)))
                .sum()
        })
        .collect();
    (nodes, weights)
}
