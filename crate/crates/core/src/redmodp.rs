//! Reduction of integer models modulo `p` and the comparison of
//! `fpt(f_p)` with `lct_0(f)` over a list of primes.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{self, int, ratio};
use crate::frobenius::{fpt_cubic_cone, fpt_enclosure, fpt_monomial, FrobeniusContext};
use crate::grobner::PolyIdeal;
use crate::lct0::{classify, lct_closed_form, LctFamilyInput};
use crate::newton::MonomialIdeal;
use crate::polyring::{Coefficient, Field, Monomial, Polynomial, Ring};
use crate::{Budget, Error, Method, Rational, Result, ThresholdResult};

/// Coefficient-wise reduction of a polynomial with integer coefficients.
pub fn reduce_mod_p(f: &Polynomial, p: u64) -> Result<Polynomial> {
    let ring = Ring::prime(f.ring().nvars(), p)?;
    let field = Field::Prime(p);
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let n = match c {
            Coefficient::Integer(n) => n.clone(),
            Coefficient::Rational(r) if r.is_integer() => r.to_integer(),
            Coefficient::Rational(r) => {
                return Err(Error::CoefficientNotInField(arith::render(r)))
            }
            Coefficient::Residue(_) => {
                return Err(Error::Precondition(
                    "the polynomial is already over a finite field".to_string(),
                ))
            }
        };
        let r = field.from_bigint(&n);
        if !field.is_zero(&r) {
            terms.push((m.clone(), r));
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// An integer model whose two thresholds can both be certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyModel {
    /// `Σ c_i x_i^{a_i}`.
    Diagonal { exps: Vec<u64>, poly: Polynomial },
    /// Cone over a smooth plane cubic.
    Cubic(Polynomial),
    Monomial(MonomialIdeal),
}

impl FamilyModel {
    /// `x_1^{a_1} + … + x_n^{a_n}` over `Z`.
    pub fn diagonal(exps: &[u64]) -> Result<Self> {
        if exps.is_empty() || exps.contains(&0) {
            return Err(Error::Precondition("diagonal exponents must be >= 1".to_string()));
        }
        let ring = Ring::integer(exps.len());
        let mut f = Polynomial::zero(ring);
        for (i, &a) in exps.iter().enumerate() {
            let mut e = alloc::vec![0; exps.len()];
            e[i] = a;
            f = f.add(&Polynomial::monomial(ring, &e)?)?;
        }
        Ok(FamilyModel::Diagonal {
            exps: exps.to_vec(),
            poly: f,
        })
    }

    /// Recognize an integer polynomial: a diagonal sum, a homogeneous cubic
    /// in three variables or a monomial.
    pub fn from_polynomial(f: &Polynomial) -> Result<Self> {
        if !matches!(f.ring().field(), Field::Integer | Field::Rational) {
            return Err(Error::Precondition("expected an integer model".to_string()));
        }
        if f.ring().nvars() == 3 && f.is_homogeneous() && f.total_degree() == Some(3) && !f.is_monomial() {
            return Ok(FamilyModel::Cubic(f.clone()));
        }
        match classify(f)? {
            LctFamilyInput::Diagonal(exps) => Ok(FamilyModel::Diagonal {
                exps,
                poly: f.clone(),
            }),
            LctFamilyInput::Monomial(a) => Ok(FamilyModel::Monomial(a)),
            _ => Err(Error::UnsupportedFamily(f.render())),
        }
    }

    pub fn lct0(&self) -> Result<Rational> {
        let r = match self {
            FamilyModel::Diagonal { exps, .. } => {
                lct_closed_form(&LctFamilyInput::Diagonal(exps.clone()))?
            }
            FamilyModel::Cubic(_) => {
                lct_closed_form(&LctFamilyInput::HomogeneousIsolated { n: 3, d: 3 })?
            }
            FamilyModel::Monomial(a) => lct_closed_form(&LctFamilyInput::Monomial(a.clone()))?,
        };
        Ok(r.exact_value().expect("closed forms are exact").clone())
    }

    /// Primes for which no closed form is asserted.
    pub fn excludes(&self, p: u64) -> bool {
        match self {
            FamilyModel::Diagonal { exps, .. } => is_cusp(exps) && p <= 3,
            FamilyModel::Cubic(_) => p <= 3,
            FamilyModel::Monomial(_) => false,
        }
    }

    /// `N = Π a_i` for diagonal models.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            FamilyModel::Diagonal { exps, .. } => exps.iter().try_fold(1u64, |a, &b| a.checked_mul(b)),
            _ => None,
        }
    }
}

fn is_cusp(exps: &[u64]) -> bool {
    let mut e = exps.to_vec();
    e.sort_unstable();
    e == [2, 3]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    FptLess,
    Inconclusive,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Equal => "equal",
            Relation::FptLess => "fpt-less",
            Relation::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub p: u64,
    pub fpt: ThresholdResult,
    pub lct0: Rational,
    pub relation: Relation,
    /// `(p mod N, N)` for diagonal models.
    pub splitting: Option<(u64, u64)>,
    /// The reduction mod `p` left the family (a coefficient vanished or the
    /// cubic became singular).
    pub degenerate: bool,
    pub note: Option<String>,
}

/// `5/6` for `p ≡ 1 (mod 3)`, `5/6 - 1/(6p)` for `p ≡ 2 (mod 3)`; `p > 3`.
pub fn cusp_fpt(p: u64) -> Rational {
    if p % 3 == 1 {
        ratio(5, 6)
    } else {
        ratio(5, 6) - Rational::new(BigInt::one(), BigInt::from(6 * p))
    }
}

/// Is the cubic cone `f` over `F_p` (`p > 3`) an isolated singularity, i.e.
/// is `(∂f/∂x, ∂f/∂y, ∂f/∂z)` primary to the maximal ideal?
fn is_smooth_cubic(f: &Polynomial, budget: &Budget) -> Result<bool> {
    let ring = f.ring();
    let p = ring.characteristic();
    let mut partials = Vec::new();
    for i in 0..3 {
        let mut d = Vec::new();
        for (m, c) in f.terms() {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            let k = ring.field().from_bigint(&BigInt::from(e % p));
            d.push((Monomial::new(ex), ring.field().mul(c, &k)));
        }
        partials.push(Polynomial::from_terms(ring, d));
    }
    let basis = PolyIdeal::new(ring, partials)?.basis(budget)?;
    // primary to the maximal ideal iff every variable has a pure power among
    // the leading monomials
    Ok((0..3).all(|i| {
        basis.iter().any(|g| {
            let (m, _) = g.leading().expect("basis elements are nonzero");
            m.exponents().iter().enumerate().all(|(j, &x)| j == i || x == 0)
        })
    }))
}

fn relation(fpt: &ThresholdResult, lct0: &Rational) -> (Relation, Option<String>) {
    match (fpt.certified, fpt.exact_value()) {
        (true, Some(v)) if v == lct0 => (Relation::Equal, None),
        (true, Some(v)) if v < lct0 => (Relation::FptLess, None),
        (true, Some(_)) => (
            Relation::Inconclusive,
            Some("certified fpt exceeds lct".to_string()),
        ),
        _ => (Relation::Inconclusive, None),
    }
}

fn enclosure(f: &Polynomial, p: u64, e_max: u32, budget: &Budget) -> Result<ThresholdResult> {
    let ctx = FrobeniusContext::new(p, f.ring().nvars(), e_max)?.with_budget(*budget);
    Ok(fpt_enclosure(&[f.clone()], &ctx)?.0)
}

/// Certified value, cross-checked against the `ν` enclosure.
fn checked(value: Rational, f: &Polynomial, p: u64, e_max: u32, budget: &Budget) -> Result<(ThresholdResult, Option<String>)> {
    let enc = enclosure(f, p, e_max, budget)?;
    if enc.contains(&value) {
        Ok((ThresholdResult::exact(value, Method::ClosedForm), None))
    } else {
        Ok((enc, Some(alloc::format!("closed form {} outside the ν enclosure", arith::render(&value)))))
    }
}

/// One row per prime, ordered by `p`.
pub fn compare_family(model: &FamilyModel, primes: &[u64], e_max: u32, budget: &Budget) -> Result<Vec<ComparisonRow>> {
    let lct0 = model.lct0()?;
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let mut rows = Vec::with_capacity(primes.len());
    for p in primes {
        arith::check_prime(p)?;
        let splitting = model.modulus().map(|n| (p % n, n));
        let (fpt, degenerate, mut note) = match model {
            FamilyModel::Monomial(a) => {
                let v = fpt_monomial(a)?;
                (ThresholdResult::exact(v, Method::ClosedForm), false, None)
            }
            FamilyModel::Diagonal { exps, poly } => {
                let f = reduce_mod_p(poly, p)?;
                let degenerate = f.len() != poly.len();
                if degenerate || f.is_zero() {
                    let r = if f.is_zero() {
                        ThresholdResult::interval(int(0), int(0), false, Method::NuLimit)
                    } else {
                        enclosure(&f, p, e_max, budget)?
                    };
                    (r, true, Some("a coefficient vanishes mod p".to_string()))
                } else if model.excludes(p) {
                    (enclosure(&f, p, e_max, budget)?, false, Some("small prime excluded".to_string()))
                } else if is_cusp(exps) {
                    let (r, n) = checked(cusp_fpt(p), &f, p, e_max, budget)?;
                    (r, false, n)
                } else if exps.contains(&1) {
                    let (r, n) = checked(int(1), &f, p, e_max, budget)?;
                    (r, false, n)
                } else if splitting.map_or(false, |(r, _)| r == 1) {
                    let (r, n) = checked(lct0.clone(), &f, p, e_max, budget)?;
                    (r, false, n)
                } else {
                    (enclosure(&f, p, e_max, budget)?, false, None)
                }
            }
            FamilyModel::Cubic(poly) => {
                let f = reduce_mod_p(poly, p)?;
                if model.excludes(p) {
                    (enclosure(&f, p, e_max.min(2), budget)?, false, Some("small prime excluded".to_string()))
                } else if f.is_zero() || !is_smooth_cubic(&f, budget)? {
                    let r = if f.is_zero() {
                        ThresholdResult::interval(int(0), int(0), false, Method::NuLimit)
                    } else {
                        enclosure(&f, p, 1, budget)?
                    };
                    (r, true, Some("reduction is not a smooth cubic".to_string()))
                } else {
                    let v = fpt_cubic_cone(&f)?;
                    (ThresholdResult::exact(v, Method::ClosedForm), false, None)
                }
            }
        };
        let (rel, rel_note) = if degenerate {
            (Relation::Inconclusive, None)
        } else {
            relation(&fpt, &lct0)
        };
        if note.is_none() {
            note = rel_note;
        }
        rows.push(ComparisonRow {
            p,
            fpt,
            lct0: lct0.clone(),
            relation: rel,
            splitting,
            degenerate,
            note,
        });
    }
    Ok(rows)
}

/// Aligned text table of comparison rows.
pub fn render_rows(rows: &[ComparisonRow]) -> String {
    let mut out = alloc::format!("{:>5}  {:<22}  {:<8}  {:<12}  {}\n", "p", "fpt", "lct0", "relation", "note");
    for r in rows {
        let split = r.splitting.map(|(a, n)| alloc::format!(" p≡{a} mod {n}")).unwrap_or_default();
        let note = r.note.clone().unwrap_or_default();
        out.push_str(&alloc::format!(
            "{:>5}  {:<22}  {:<8}  {:<12}  {}{}\n",
            r.p,
            r.fpt.to_string(),
            arith::render(&r.lct0),
            r.relation.as_str(),
            note,
            split
        ));
    }
    out
}
