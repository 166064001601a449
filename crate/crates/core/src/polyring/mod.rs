//! Sparse multivariate polynomials over `Q`, `Z` and `F_p`.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded reverse lexicographic; the last key is the leading term.

mod coeff;
mod monomial;
mod parse;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

pub use coeff::{Coefficient, Field};
pub use monomial::Monomial;
pub use parse::{infer_nvars, parse, parse_in};

use crate::arith;
use crate::{Budget, Error, Result};

/// Ring context: number of variables and coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    nvars: usize,
    field: Field,
}

impl Ring {
    pub fn new(nvars: usize, field: Field) -> Result<Self> {
        if let Field::Prime(p) = field {
            arith::check_prime(p)?;
            if p >= 1 << 32 {
                return Err(Error::Precondition(alloc::format!(
                    "prime {p} does not fit the residue representation"
                )));
            }
        }
        Ok(Ring { nvars, field })
    }

    pub fn rational(nvars: usize) -> Self {
        Ring {
            nvars,
            field: Field::Rational,
        }
    }

    pub fn integer(nvars: usize) -> Self {
        Ring {
            nvars,
            field: Field::Integer,
        }
    }

    pub fn prime(nvars: usize, p: u64) -> Result<Self> {
        Ring::new(nvars, Field::Prime(p))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Characteristic of the coefficient field (0 for `Q` and `Z`).
    pub fn characteristic(&self) -> u64 {
        match self.field {
            Field::Prime(p) => p,
            _ => 0,
        }
    }

    /// Name of variable `i` as rendered: `x, y, z` for up to three
    /// variables, `x1 .. xn` otherwise.
    pub fn var_name(&self, i: usize) -> String {
        if self.nvars <= 3 {
            String::from(["x", "y", "z"][i])
        } else {
            alloc::format!("x{}", i + 1)
        }
    }
}

/// Sparse polynomial; no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: Ring, c: i64) -> Self {
        let c = ring.field.from_bigint(&BigInt::from(c));
        Self::from_terms(ring, [(Monomial::one(ring.nvars), c)])
    }

    /// `x_i`.
    pub fn var(ring: Ring, i: usize) -> Self {
        let mut e = alloc::vec![0; ring.nvars];
        e[i] = 1;
        Self::from_terms(ring, [(Monomial::new(e), ring.field.one())])
    }

    /// The monomial `x^exps` with coefficient one.
    pub fn monomial(ring: Ring, exps: &[u64]) -> Result<Self> {
        if exps.len() != ring.nvars {
            return Err(Error::DimensionMismatch {
                expected: ring.nvars,
                found: exps.len(),
            });
        }
        Ok(Self::from_terms(
            ring,
            [(Monomial::new(exps.to_vec()), ring.field.one())],
        ))
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging
    /// repeated monomials and dropping zeros.
    ///
    /// Panics if a monomial has the wrong length.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coefficient)>,
    {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars, "monomial length differs from ring");
            p.add_term(m, ring.field.normalize(c));
        }
        p
    }

    /// Integer-coefficient terms, reduced into the ring's field.
    pub fn from_int_terms(ring: Ring, terms: &[(&[u64], i64)]) -> Result<Self> {
        let mut p = Polynomial::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.nvars {
                return Err(Error::DimensionMismatch {
                    expected: ring.nvars,
                    found: e.len(),
                });
            }
            p.add_term(
                Monomial::new(e.to_vec()),
                ring.field.from_bigint(&BigInt::from(*c)),
            );
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Coefficient) {
        let field = self.ring.field;
        if field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), &c);
                if field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coefficient)> + '_ {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coefficient {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<(&Monomial, &Coefficient)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term (the order of vanishing at the origin).
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field;
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        let field = self.ring.field;
        if field.is_zero(c) {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), field.mul(d, c)))
                .filter(|(_, d)| !field.is_zero(d))
                .collect(),
        }
    }

    /// `c · x^m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &Coefficient) -> Result<Polynomial> {
        let field = self.ring.field;
        let mut terms = BTreeMap::new();
        for (k, d) in &self.terms {
            let prod = field.mul(d, c);
            if !field.is_zero(&prod) {
                terms.insert(k.checked_mul(m)?, prod);
            }
        }
        Ok(Polynomial {
            ring: self.ring,
            terms,
        })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.mul_filtered(other, &|_| true, &Budget::default())
    }

    /// Product keeping only monomials accepted by `keep`.
    ///
    /// `keep` must be closed under taking divisors for the filtered powers
    /// built on top of this to be exact.
    pub fn mul_filtered(
        &self,
        other: &Polynomial,
        keep: &dyn Fn(&Monomial) -> bool,
        budget: &Budget,
    ) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = Polynomial::zero(self.ring);
        let field = self.ring.field;
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.checked_mul(m2)?;
                if !keep(&m) {
                    continue;
                }
                out.add_term(m, field.mul(c1, c2));
            }
            if out.terms.len() as u64 > budget.max_terms {
                return Err(Error::Budget {
                    what: "polynomial terms",
                    limit: budget.max_terms,
                });
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u64, budget: &Budget) -> Result<Polynomial> {
        self.pow_filtered(k, &|_| true, budget)
    }

    /// `self^k` restricted to the monomials accepted by `keep` (which must be
    /// closed under divisors).
    ///
    /// Over `F_p` this uses `f^k = Π_d (f^{k_d})^{[p^d]}` for the base-`p`
    /// digits `k_d` of `k`; otherwise binary powering.
    pub fn pow_filtered(
        &self,
        k: u64,
        keep: &dyn Fn(&Monomial) -> bool,
        budget: &Budget,
    ) -> Result<Polynomial> {
        match self.ring.field {
            Field::Prime(p) if k >= p => {
                let mut acc = Polynomial::one(self.ring);
                let mut scale = 1u64;
                for (i, d) in arith::digits(k, p).into_iter().enumerate() {
                    if i > 0 {
                        scale = scale.checked_mul(p).ok_or(Error::ExponentOverflow)?;
                    }
                    if d == 0 {
                        continue;
                    }
                    let scaled_keep = |m: &Monomial| match m.checked_scale(scale) {
                        Ok(s) => keep(&s),
                        Err(_) => false,
                    };
                    let factor = self
                        .binary_pow(d, &scaled_keep, budget)?
                        .frobenius_power(scale)?;
                    acc = acc.mul_filtered(&factor, keep, budget)?;
                    if acc.is_zero() {
                        break;
                    }
                }
                Ok(acc)
            }
            _ => self.binary_pow(k, keep, budget),
        }
    }

    fn binary_pow(
        &self,
        mut k: u64,
        keep: &dyn Fn(&Monomial) -> bool,
        budget: &Budget,
    ) -> Result<Polynomial> {
        let mut acc = Polynomial::one(self.ring).retain(keep);
        let mut base = self.clone().retain(keep);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_filtered(&base, keep, budget)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_filtered(&base, keep, budget)?;
            }
        }
        Ok(acc)
    }

    /// Drop the terms whose monomial is rejected by `keep`.
    pub fn retain(mut self, keep: &dyn Fn(&Monomial) -> bool) -> Polynomial {
        self.terms.retain(|m, _| keep(m));
        self
    }

    /// Substitute `x_i -> x_i^q` for every variable.
    ///
    /// Over `F_p` with `q` a power of `p` this is `f^q`, since Frobenius fixes
    /// the prime field.
    pub fn frobenius_power(&self, q: u64) -> Result<Polynomial> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.checked_scale(q)?, c.clone());
        }
        Ok(Polynomial {
            ring: self.ring,
            terms,
        })
    }

    /// Coefficient of `x^u` in `self^k`, computed from the monomials dividing
    /// `x^u` only (over `F_p` digit by digit, which is Lucas' theorem for
    /// multinomial coefficients).
    pub fn monomial_coefficient(&self, k: u64, u: &Monomial, budget: &Budget) -> Result<Coefficient> {
        if u.len() != self.ring.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars,
                found: u.len(),
            });
        }
        let keep = |m: &Monomial| m.divides(u);
        let pk = self.pow_filtered(k, &keep, budget)?;
        Ok(pk.coefficient(u))
    }

    /// Decompose `self = Σ_w u_w^{p^e} x^w` over the monomial basis
    /// `x^w`, `0 <= w_i < p^e`, of `F_p[x]` as a module over `p^e`-th powers.
    pub fn frobenius_decompose(&self, e: u32) -> Result<BTreeMap<Monomial, Polynomial>> {
        let p = match self.ring.field {
            Field::Prime(p) => p,
            _ => {
                return Err(Error::Precondition(String::from(
                    "Frobenius decomposition needs a prime field",
                )))
            }
        };
        if e == 0 {
            return Err(Error::Precondition(String::from("e must be positive")));
        }
        let q = p.checked_pow(e).ok_or(Error::ExponentOverflow)?;
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (quot, rem) = m.div_rem_scalar(q);
            out.entry(rem)
                .or_insert_with(|| Polynomial::zero(self.ring))
                .add_term(quot, c.clone());
        }
        out.retain(|_, u| !u.is_zero());
        Ok(out)
    }

    /// Apply `f` to every coefficient, re-homing the result in `ring`.
    pub fn map_coefficients(
        &self,
        ring: Ring,
        f: impl Fn(&Coefficient) -> Coefficient,
    ) -> Result<Polynomial> {
        if ring.nvars != self.ring.nvars {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        ))
    }

    /// Scale so the leading coefficient is one (fields only).
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => match self.ring.field.inv(c) {
                Some(inv) => self.scale(&inv),
                None => self.clone(),
            },
        }
    }

    /// Text form in the crate's polynomial grammar, highest term first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.terms.is_empty() {
            out.push('0');
            return out;
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = self.ring.field.sign_split(c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render(&self.ring);
            match (mono.is_empty(), mag.as_str()) {
                (true, _) => out.push_str(&mag),
                (false, "1") => out.push_str(&mono),
                (false, _) => {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Exponent vectors of a polynomial's terms.
pub fn support(f: &Polynomial) -> Vec<Monomial> {
    f.monomials().cloned().collect()
}
