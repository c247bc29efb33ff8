//! Exact intersection-theoretic engine for the inflectional loci of scrolls
//! over smooth curves.
//!
//! The crate has two halves that are meant to be checked against each other:
//!
//! - a symbolic side ([`chow`], [`chern`], [`formulas`]) computing the class
//!   of the k-th inflectional locus in the `{L^j, L^{j-1}F}` basis, with the
//!   degree `d` and genus `g` kept as formal polynomial variables;
//! - an oracle side ([`scroll`], [`scanner`]) that builds explicit rational
//!   normal scrolls `P(O(a_1) + ... + O(a_n))` over `P^1`, evaluates exact
//!   jet matrices and Wronskians, and extracts inflection weights and
//!   divisor classes by brute force.
//!
//! Everything is exact: integers and rationals are arbitrary precision and no
//! floating point is used anywhere.

pub mod chern;
pub mod chow;
mod error;
pub mod formulas;
pub mod linalg;
pub mod poly;
pub mod scanner;
pub mod scroll;

pub use chern::RankProfile;
pub use chow::{ChowClass, CoeffPoly, Coefficient, Moduli};
pub use error::{Error, Result};
pub use formulas::{Classification, ScrollParams, UninflectedDescriptor};
pub use scroll::{BaseChart, DecomposableScroll, JetMatrix, ScrollPoint};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand for an integral rational.
pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
