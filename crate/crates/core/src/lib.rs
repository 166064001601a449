//! Exact computation of singularity thresholds.
//!
//! The crate covers log canonical thresholds of the closed-form families
//! (monomial ideals, diagonal and homogeneous hypersurfaces), F-pure
//! thresholds and the `ν(e)` sequences in characteristic `p`, Frobenius
//! roots and test ideals over `F_p`, asymptotic invariants of graded
//! sequences of monomial ideals and a reduction-mod-`p` comparison harness.
//!
//! Every threshold is an exact rational (or a certified rational interval);
//! nothing in this crate uses floating point.
//!
//! The crate is `no_std` and only needs `alloc`. The `std` feature adds
//! `std::error::Error` for [`Error`].

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arith;
pub mod asymptotic;
pub mod budget;
pub mod error;
pub mod frobenius;
pub mod grobner;
pub mod lct0;
pub mod lp;
pub mod newton;
pub mod polyring;
pub mod redmodp;
pub mod testideal;
pub mod threshold;

pub use budget::Budget;
pub use error::{Error, Result};
pub use newton::{MonomialIdeal, RationalPoint};
pub use polyring::{Coefficient, Field, Monomial, Polynomial, Ring};
pub use threshold::{Method, Threshold, ThresholdResult, ThresholdValue};

/// Exact rational number used for every threshold.
pub type Rational = num_rational::BigRational;
