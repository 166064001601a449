use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::Ring;
use crate::{Error, Result};

/// Exponent vector `u` of the monomial `x^u = x_1^{u_1} ⋯ x_n^{u_n}`.
///
/// `Ord` is graded reverse lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u64>);

impl Monomial {
    pub fn new(exps: Vec<u64>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(alloc::vec![0; n])
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn checked_scale(&self, k: u64) -> Result<Monomial> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides it.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Coprime supports (no common variable).
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Componentwise `(u div q, u mod q)`.
    pub fn div_rem_scalar(&self, q: u64) -> (Monomial, Monomial) {
        let quot = self.0.iter().map(|a| a / q).collect();
        let rem = self.0.iter().map(|a| a % q).collect();
        (Monomial(quot), Monomial(rem))
    }

    /// `x^2*y` style rendering; empty for the unit monomial.
    pub fn render(&self, ring: &Ring) -> String {
        let mut out = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&ring.var_name(i));
            if e > 1 {
                out.push('^');
                out.push_str(&alloc::format!("{e}"));
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u128 = self.0.iter().map(|&e| e as u128).sum();
        let db: u128 = other.0.iter().map(|&e| e as u128).sum();
        da.cmp(&db).then_with(|| {
            // reverse lexicographic: smaller exponent in the last differing
            // variable wins
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
