//! Buchberger's algorithm over `F_p` with grevlex, used to decide ideal
//! membership, containment and equality.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::polyring::{Field, Monomial, Polynomial, Ring};
use crate::{Budget, Error, Result};

/// Monomial orders understood by [`groebner_basis`]. Terms are stored in
/// grevlex order, which is the only order supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
}

/// Ideal given by generators over `F_p`, optionally carrying its reduced
/// Gröbner basis.
#[derive(Debug, Clone)]
pub struct PolyIdeal {
    ring: Ring,
    gens: Vec<Polynomial>,
    basis: Option<Vec<Polynomial>>,
}

impl PolyIdeal {
    pub fn new(ring: Ring, gens: Vec<Polynomial>) -> Result<Self> {
        if !matches!(ring.field(), Field::Prime(_)) {
            return Err(Error::Precondition(
                "ideals are supported over F_p only".to_string(),
            ));
        }
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(PolyIdeal {
            ring,
            gens,
            basis: None,
        })
    }

    pub fn unit(ring: Ring) -> Result<Self> {
        PolyIdeal::new(ring, alloc::vec![Polynomial::one(ring)])
    }

    pub fn zero(ring: Ring) -> Result<Self> {
        PolyIdeal::new(ring, Vec::new())
    }

    /// `(x_1, …, x_n)`.
    pub fn maximal(ring: Ring) -> Result<Self> {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        PolyIdeal::new(ring, gens)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(Polynomial::is_monomial)
    }

    /// Largest generator degree (0 for the zero ideal).
    pub fn max_degree(&self) -> u64 {
        self.gens.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
    }

    pub fn cached_basis(&self) -> Option<&[Polynomial]> {
        self.basis.as_deref()
    }

    /// Reduced Gröbner basis, reusing the cached one when present.
    pub fn basis(&self, budget: &Budget) -> Result<Vec<Polynomial>> {
        match &self.basis {
            Some(b) => Ok(b.clone()),
            None => groebner_basis(self, MonomialOrder::Grevlex, budget),
        }
    }

    /// Same ideal with its reduced basis computed and stored; the basis also
    /// replaces the generator list.
    pub fn with_basis(self, budget: &Budget) -> Result<Self> {
        if self.basis.is_some() {
            return Ok(self);
        }
        let b = self.basis(budget)?;
        Ok(PolyIdeal {
            ring: self.ring,
            gens: b.clone(),
            basis: Some(b),
        })
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        Ok(self.basis(budget)?.iter().any(Polynomial::is_unit_constant))
    }

    /// `I^{[q]}`: generated by the `q`-th powers of the generators.
    pub fn frobenius_power(&self, q: u64) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.frobenius_power(q))
            .collect::<Result<Vec<_>>>()?;
        PolyIdeal::new(self.ring, gens)
    }

    /// Product ideal.
    pub fn product(&self, other: &PolyIdeal) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(g)?);
            }
        }
        PolyIdeal::new(self.ring, gens)
    }
}

impl fmt::Display for PolyIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.basis.as_ref().unwrap_or(&self.gens);
        f.write_str("(")?;
        for (i, g) in gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

fn lm(f: &Polynomial) -> &Monomial {
    f.leading().expect("nonzero polynomial").0
}

/// Remainder of `f` on division by `basis` (full reduction: no term of the
/// result is divisible by a leading monomial of the basis).
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    let field = f.ring().field();
    let mut p = f.clone();
    let mut rem = Polynomial::zero(f.ring());
    while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().find(|g| lm(g).divides(&m));
        match divisor {
            Some(g) => {
                let (gm, gc) = g.leading().unwrap();
                let factor = field.mul(&c, &field.inv(gc).expect("field coefficient"));
                let shift = gm.quotient_of(&m).unwrap();
                p = p.sub(&g.mul_term(&shift, &factor)?)?;
            }
            None => {
                let term = Polynomial::from_terms(f.ring(), [(m.clone(), c.clone())]);
                rem = rem.add(&term)?;
                p = p.sub(&term)?;
            }
        }
    }
    Ok(rem)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let field = f.ring().field();
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l).unwrap(), &field.inv(fc).unwrap())?;
    let b = g.mul_term(&gm.quotient_of(&l).unwrap(), &field.inv(gc).unwrap())?;
    a.sub(&b)
}

/// Reduced Gröbner basis (every element monic, no term of one element
/// divisible by the leading monomial of another). Deterministic: pairs are
/// processed by smallest lcm, ties by index.
pub fn groebner_basis(
    ideal: &PolyIdeal,
    _order: MonomialOrder,
    budget: &Budget,
) -> Result<Vec<Polynomial>> {
    if ideal.is_monomial() {
        return Ok(minimal_monomials(ideal.ring, &ideal.gens));
    }
    let mut g: Vec<Polynomial> = Vec::new();
    // seed with interreduced generators so the pair set starts small
    for f in &ideal.gens {
        let r = normal_form(f, &g)?;
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    if g.iter().any(Polynomial::is_unit_constant) {
        return Ok(alloc::vec![Polynomial::one(ideal.ring)]);
    }
    let key = |g: &[Polynomial], i: usize, j: usize| (lm(&g[i]).lcm(lm(&g[j])), i, j);
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert(key(&g, i, j));
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut reductions = 0u64;
    while let Some((l, i, j)) = pairs.pop_first() {
        done.insert((i, j));
        let (mi, mj) = (lm(&g[i]), lm(&g[j]));
        if mi.is_coprime(mj) {
            continue;
        }
        let processed = |a: usize, b: usize| done.contains(&(a.min(b), a.max(b)));
        let chain = (0..g.len())
            .any(|k| k != i && k != j && lm(&g[k]).divides(&l) && processed(i, k) && processed(j, k));
        if chain {
            continue;
        }
        reductions += 1;
        if reductions > budget.max_pairs {
            return Err(Error::Budget {
                what: "S-polynomial reductions",
                limit: budget.max_pairs,
            });
        }
        let r = normal_form(&s_polynomial(&g[i], &g[j])?, &g)?;
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.is_unit_constant() {
            return Ok(alloc::vec![Polynomial::one(ideal.ring)]);
        }
        let k = g.len();
        g.push(r);
        for i in 0..k {
            pairs.insert(key(&g, i, k));
        }
    }
    Ok(reduce_basis(g))
}

/// Minimal generators of a monomial ideal, as monic monomials in
/// increasing grevlex order.
fn minimal_monomials(ring: Ring, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut ms: Vec<&Monomial> = gens.iter().map(lm).collect();
    // grevlex is graded, so divisors come first
    ms.sort();
    ms.dedup();
    let mut kept: Vec<&Monomial> = Vec::new();
    for m in ms {
        if !kept.iter().any(|k| k.divides(m)) {
            kept.push(m);
        }
    }
    kept.into_iter()
        .map(|m| Polynomial::from_terms(ring, [(m.clone(), ring.field().one())]))
        .collect()
}

fn reduce_basis(g: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, f) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, h)| {
            j != i && lm(h).divides(lm(f)) && (lm(h) != lm(f) || j < i)
        });
        if !redundant {
            minimal.push(f.clone());
        }
    }
    if minimal.iter().all(Polynomial::is_monomial) {
        let mut out: Vec<Polynomial> = minimal.iter().map(Polynomial::monic).collect();
        out.sort_by(|a, b| lm(a).cmp(lm(b)));
        return out;
    }
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let r = normal_form(&minimal[i], &others).expect("same ring");
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| lm(a).cmp(lm(b)));
    reduced
}

fn monomial_divides_some(gens: &[Polynomial], m: &Monomial) -> bool {
    gens.iter().any(|g| lm(g).divides(m))
}

/// `g ∈ I`.
pub fn member(g: &Polynomial, ideal: &PolyIdeal, budget: &Budget) -> Result<bool> {
    if g.ring() != ideal.ring {
        return Err(Error::RingMismatch);
    }
    if g.is_zero() {
        return Ok(true);
    }
    if ideal.is_monomial() {
        // a monomial ideal contains g iff it contains every term of g
        return Ok(g.monomials().all(|m| monomial_divides_some(&ideal.gens, m)));
    }
    let basis = ideal.basis(budget)?;
    Ok(normal_form(g, &basis)?.is_zero())
}

/// `J ⊆ I`.
pub fn contains(big: &PolyIdeal, small: &PolyIdeal, budget: &Budget) -> Result<bool> {
    if big.ring != small.ring {
        return Err(Error::RingMismatch);
    }
    if big.is_monomial() {
        return Ok(small
            .gens
            .iter()
            .all(|g| g.monomials().all(|m| monomial_divides_some(&big.gens, m))));
    }
    let basis = big.basis(budget)?;
    for g in &small.gens {
        if !normal_form(g, &basis)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn equal(a: &PolyIdeal, b: &PolyIdeal, budget: &Budget) -> Result<bool> {
    Ok(contains(a, b, budget)? && contains(b, a, budget)?)
}
