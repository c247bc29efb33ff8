use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::coeff::{CoeffPoly, Coefficient};
use crate::error::{Error, Result};

/// A class on an n-dimensional scroll over a curve, written in the basis
/// `L^j` and `L^{j-1}F` of each codimension `j`, with `F^2 = 0` and
/// everything beyond codimension `n` truncated.
#[derive(Clone, PartialEq, Debug)]
pub struct ChowClass<C = CoeffPoly> {
    dim: usize,
    /// `pieces[j] = (alpha_j, beta_j)`, the coefficients of `L^j` and
    /// `L^{j-1}F`. `beta_0` is always zero.
    pieces: Vec<(C, C)>,
}

impl<C: Coefficient> ChowClass<C> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            pieces: vec![(C::zero(), C::zero()); dim + 1],
        }
    }

    pub fn scalar(dim: usize, c: C) -> Self {
        let mut out = Self::zero(dim);
        out.pieces[0].0 = c;
        out
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, C::one())
    }

    /// The hyperplane class `L` (zero on a 0-dimensional scroll).
    pub fn hyperplane(dim: usize) -> Self {
        let mut out = Self::zero(dim);
        if dim >= 1 {
            out.pieces[1].0 = C::one();
        }
        out
    }

    /// The fiber class `F`.
    pub fn fiber(dim: usize) -> Self {
        let mut out = Self::zero(dim);
        if dim >= 1 {
            out.pieces[1].1 = C::one();
        }
        out
    }

    /// Builds a class from `(codim, alpha, beta)` triples. Repeated
    /// codimensions are summed.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (usize, C, C)>) -> Result<Self> {
        let mut out = Self::zero(dim);
        for (codim, alpha, beta) in terms {
            if codim > dim {
                return Err(Error::CodimOutOfRange { codim, dim });
            }
            if codim == 0 && !beta.is_zero() {
                return Err(Error::FiberTermInCodimZero);
            }
            let slot = &mut out.pieces[codim];
            slot.0 = slot.0.clone() + alpha;
            slot.1 = slot.1.clone() + beta;
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The coefficient pair `(alpha_j, beta_j)` at codimension `j`.
    pub fn term(&self, j: usize) -> Result<(&C, &C)> {
        self.pieces
            .get(j)
            .map(|(a, b)| (a, b))
            .ok_or(Error::CodimOutOfRange {
                codim: j,
                dim: self.dim,
            })
    }

    /// The codimension-`j` part as a class of its own.
    pub fn graded_piece(&self, j: usize) -> Result<Self> {
        let (a, b) = self.term(j)?;
        let mut out = Self::zero(self.dim);
        out.pieces[j] = (a.clone(), b.clone());
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|(a, b)| a.is_zero() && b.is_zero())
    }

    /// Codimensions carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.pieces
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| !a.is_zero() || !b.is_zero())
            .map(|(j, _)| j)
            .collect()
    }

    /// The codimension of a homogeneous class. The zero class is
    /// homogeneous of every codimension and reports `Some(None)`.
    pub fn homogeneous_codim(&self) -> Option<Option<usize>> {
        match self.support().as_slice() {
            [] => Some(None),
            [j] => Some(Some(*j)),
            _ => None,
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let mut out = Self::zero(self.dim);
        for (i, (a1, b1)) in self.pieces.iter().enumerate() {
            if a1.is_zero() && b1.is_zero() {
                continue;
            }
            for (j, (a2, b2)) in rhs.pieces.iter().enumerate().take(self.dim + 1 - i) {
                // (a1 L^i + b1 L^{i-1}F)(a2 L^j + b2 L^{j-1}F); the b1*b2 part has F^2.
                let slot = &mut out.pieces[i + j];
                slot.0 = slot.0.clone() + a1.clone() * a2.clone();
                slot.1 = slot.1.clone() + a1.clone() * b2.clone() + b1.clone() * a2.clone();
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let pieces = self
            .pieces
            .iter()
            .zip(&rhs.pieces)
            .map(|((a1, b1), (a2, b2))| (a1.clone() + a2.clone(), b1.clone() + b2.clone()))
            .collect();
        Ok(Self {
            dim: self.dim,
            pieces,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.dim), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// Inverse as a truncated power series. Requires the constant term to
    /// be a unit of the coefficient ring.
    pub fn inverse(&self) -> Result<Self> {
        let c0_inv = self.pieces[0].0.unit_inverse().ok_or(Error::NotUnit)?;
        // self = c0 (1 + y) with y nilpotent: y^(dim+1) = 0.
        let y = &self.scale(&c0_inv) - &Self::one(self.dim);
        let minus_y = -&y;
        let mut acc = Self::one(self.dim);
        let mut power = Self::one(self.dim);
        for _ in 0..self.dim {
            power = &power * &minus_y;
            acc = &acc + &power;
        }
        Ok(acc.scale(&c0_inv))
    }

    /// Degree of a homogeneous class: intersect with the complementary power
    /// of `L` and use `L^n = d`, `L^{n-1}F = 1`.
    pub fn degree(&self, d: &C) -> Result<C> {
        match self.homogeneous_codim() {
            None => Err(Error::NotHomogeneous),
            Some(None) => Ok(C::zero()),
            Some(Some(j)) => {
                let (a, b) = &self.pieces[j];
                Ok(a.clone() * d.clone() + b.clone())
            }
        }
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> ChowClass<D> {
        ChowClass {
            dim: self.dim,
            pieces: self.pieces.iter().map(|(a, b)| (f(a), f(b))).collect(),
        }
    }
}

impl ChowClass<CoeffPoly> {
    /// Substitutes numeric values for the formal `d` and `g`.
    pub fn evaluate(&self, d: &BigRational, g: &BigRational) -> ChowClass<BigRational> {
        self.map(|c| c.eval(d, g))
    }

    /// Degree evaluated at `(d0, g0)`.
    pub fn degree_at(&self, d0: &BigRational, g0: &BigRational) -> Result<BigRational> {
        self.evaluate(d0, g0).degree(d0)
    }
}

impl<C: Coefficient> Mul for &ChowClass<C> {
    type Output = ChowClass<C>;

    /// Panics when the dimensions differ; use [`ChowClass::checked_mul`]
    /// for untrusted input.
    fn mul(self, rhs: Self) -> ChowClass<C> {
        self.checked_mul(rhs)
            .expect("multiplying classes of different dimension")
    }
}

impl<C: Coefficient> Add for &ChowClass<C> {
    type Output = ChowClass<C>;

    fn add(self, rhs: Self) -> ChowClass<C> {
        self.checked_add(rhs)
            .expect("adding classes of different dimension")
    }
}

impl<C: Coefficient> Sub for &ChowClass<C> {
    type Output = ChowClass<C>;

    fn sub(self, rhs: Self) -> ChowClass<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Neg for &ChowClass<C> {
    type Output = ChowClass<C>;

    fn neg(self) -> ChowClass<C> {
        self.map(|c| -c.clone())
    }
}

fn basis_name(j: usize, fiber: bool) -> String {
    let lpow = if fiber { j - 1 } else { j };
    let l = match lpow {
        0 => String::new(),
        1 => "L".to_string(),
        p => format!("L^{p}"),
    };
    match (fiber, l.is_empty()) {
        (false, _) => l,
        (true, true) => "F".to_string(),
        (true, false) => format!("{l}*F"),
    }
}

impl<C: Coefficient> fmt::Display for ChowClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, (a, b)) in self.pieces.iter().enumerate() {
            for (c, fiber) in [(a, false), (b, true)] {
                if c.is_zero() {
                    continue;
                }
                let name = basis_name(j, fiber);
                let neg = c.is_negative();
                let abs = if neg { -c.clone() } else { c.clone() };
                match (first, neg) {
                    (true, true) => write!(f, "-")?,
                    (true, false) => {}
                    (false, true) => write!(f, " - ")?,
                    (false, false) => write!(f, " + ")?,
                }
                first = false;
                if name.is_empty() {
                    if abs.is_compound() {
                        write!(f, "({abs})")?;
                    } else {
                        write!(f, "{abs}")?;
                    }
                } else if abs.is_one() {
                    write!(f, "{name}")?;
                } else if abs.is_compound() {
                    write!(f, "({abs})*{name}")?;
                } else {
                    write!(f, "{abs}*{name}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
