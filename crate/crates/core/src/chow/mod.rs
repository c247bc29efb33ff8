//! Graded intersection algebra of a scroll over a curve.
//!
//! Classes are written in the basis `{L^j, L^{j-1}F}` of each codimension,
//! where `L` is the hyperplane class and `F` the class of a fiber. The only
//! relations used are `F^2 = 0` and vanishing beyond the dimension of the
//! scroll; `L^n = d` and `L^{n-1}F = 1` enter only when taking degrees.

mod class;
mod coeff;

pub use class::ChowClass;
pub use coeff::{CoeffPoly, Coefficient, Moduli};

#[cfg(test)]
mod tests;
