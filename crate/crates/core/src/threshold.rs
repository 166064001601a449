use core::fmt;

use crate::arith::render;
use crate::Rational;

/// A threshold value that may be infinite (`lct` of the unit ideal).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Threshold {
    Finite(Rational),
    Infinity,
}

impl Threshold {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Threshold::Finite(r) => Some(r),
            Threshold::Infinity => None,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(r) => f.write_str(&render(r)),
            Threshold::Infinity => f.write_str("inf"),
        }
    }
}

/// How a threshold was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Lp,
    NuLimit,
    Asymptotic,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Lp => "LP",
            Method::NuLimit => "nu-limit",
            Method::Asymptotic => "asymptotic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThresholdValue {
    Exact(Rational),
    /// Closed interval `[lo, hi]`, `lo <= hi`.
    Interval { lo: Rational, hi: Rational },
}

/// A threshold with its provenance: an exact value or an enclosing interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdResult {
    pub value: ThresholdValue,
    pub certified: bool,
    pub method: Method,
}

impl ThresholdResult {
    pub fn exact(value: Rational, method: Method) -> Self {
        ThresholdResult {
            value: ThresholdValue::Exact(value),
            certified: true,
            method,
        }
    }

    /// An interval; collapses to an exact value when `lo == hi`.
    pub fn interval(lo: Rational, hi: Rational, certified: bool, method: Method) -> Self {
        assert!(lo <= hi, "empty threshold interval");
        let value = if lo == hi {
            ThresholdValue::Exact(lo)
        } else {
            ThresholdValue::Interval { lo, hi }
        };
        ThresholdResult {
            value,
            certified,
            method,
        }
    }

    pub fn lo(&self) -> &Rational {
        match &self.value {
            ThresholdValue::Exact(v) => v,
            ThresholdValue::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rational {
        match &self.value {
            ThresholdValue::Exact(v) => v,
            ThresholdValue::Interval { hi, .. } => hi,
        }
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        match &self.value {
            ThresholdValue::Exact(v) => Some(v),
            ThresholdValue::Interval { .. } => None,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo() <= x && x <= self.hi()
    }

    pub fn width(&self) -> Rational {
        self.hi() - self.lo()
    }
}

impl fmt::Display for ThresholdResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ThresholdValue::Exact(v) => f.write_str(&render(v)),
            ThresholdValue::Interval { lo, hi } => write!(f, "[{}, {}]", render(lo), render(hi)),
        }
    }
}
