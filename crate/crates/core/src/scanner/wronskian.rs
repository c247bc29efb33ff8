use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::determinant_expansion;
use crate::poly::UPoly;
use crate::scroll::DecomposableScroll;

/// A map `P^1 -> P^k` given by `k + 1` polynomials in the affine coordinate
/// `u`. The curve degree `d` is the largest basis degree; the chart at
/// infinity uses the degree-`d` reversals.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCurve {
    basis: Vec<UPoly>,
    degree: usize,
}

impl RationalCurve {
    pub fn new(basis: Vec<UPoly>) -> Result<Self> {
        if basis.len() < 2 {
            return Err(Error::InvalidBasis("need at least two polynomials".into()));
        }
        if basis.iter().any(Zero::is_zero) {
            return Err(Error::InvalidBasis("zero polynomial in basis".into()));
        }
        let degree = basis.iter().filter_map(UPoly::degree).max().unwrap_or(0);
        if degree == 0 {
            return Err(Error::InvalidBasis(
                "all basis polynomials are constant".into(),
            ));
        }
        Ok(Self { basis, degree })
    }

    /// `{u^e : e in exps}`.
    pub fn monomials(exps: &[usize]) -> Result<Self> {
        Self::new(
            exps.iter()
                .map(|&e| UPoly::monomial(BigRational::from_integer(1.into()), e))
                .collect(),
        )
    }

    /// The rational normal curve of a one-summand scroll `(d)`, with its
    /// complete basis `1, u, ..., u^d`.
    pub fn from_scroll(x: &DecomposableScroll) -> Result<Self> {
        if x.n() != 1 {
            return Err(Error::InvalidBasis(format!("{x} is not a curve")));
        }
        let d = x.degrees()[0] as usize;
        Self::monomials(&(0..=d).collect::<Vec<_>>())
    }

    /// `k + 1` polynomials of degree exactly `d` with coefficients in
    /// `-9..=9`.
    pub fn random<R: Rng>(d: usize, k: usize, rng: &mut R) -> Result<Self> {
        let basis = (0..=k)
            .map(|_| {
                let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
                let lead = loop {
                    let x = rng.gen_range(-9..=9);
                    if x != 0 {
                        break x;
                    }
                };
                c.push(lead);
                UPoly::from_ints(&c)
            })
            .collect();
        Self::new(basis)
    }

    /// One polynomial per line, as comma-separated integer coefficients with
    /// the constant term first. Blank lines and `#` comments are skipped.
    pub fn parse_basis(text: &str) -> Result<Self> {
        let mut basis = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let coeffs = line
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<BigInt>()
                        .map(BigRational::from_integer)
                        .map_err(|_| {
                            Error::Parse(format!(
                                "line {}: bad coefficient {:?}",
                                lineno + 1,
                                t.trim()
                            ))
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            basis.push(UPoly::new(coeffs));
        }
        Self::new(basis)
    }

    pub fn basis(&self) -> &[UPoly] {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Projective dimension of the target, `len - 1`.
    pub fn span(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis_at_infinity(&self) -> Vec<UPoly> {
        self.basis.iter().map(|p| p.reversed(self.degree)).collect()
    }
}

impl fmt::Display for RationalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Determinant of the derivatives of orders `0..len` of `basis`.
pub fn wronskian(basis: &[UPoly]) -> UPoly {
    let rows: Vec<Vec<UPoly>> = basis
        .iter()
        .map(|p| {
            let mut row = Vec::with_capacity(basis.len());
            let mut q = p.clone();
            for _ in 0..basis.len() {
                let next = q.derivative();
                row.push(q);
                q = next;
            }
            row
        })
        .collect();
    determinant_expansion(&rows)
}

/// A squarefree factor of the Wronskian: each of its `deg` roots is an
/// inflection point of the given weight.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteInflection {
    pub factor: UPoly,
    pub weight: u32,
}

impl FiniteInflection {
    pub fn points(&self) -> usize {
        self.factor.degree().unwrap_or(0)
    }

    /// The rational root, when the factor is linear.
    pub fn root(&self) -> Option<BigRational> {
        self.factor.linear_root()
    }

    pub fn total(&self) -> u64 {
        self.points() as u64 * self.weight as u64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InflectionWeights {
    pub finite: Vec<FiniteInflection>,
    pub at_infinity: u32,
    pub total: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WronskianReport {
    pub curve: RationalCurve,
    pub k: u32,
    pub wronskian: UPoly,
    pub wronskian_at_infinity: UPoly,
    /// `None` when the basis is linearly dependent.
    pub weights: Option<InflectionWeights>,
}

impl WronskianReport {
    pub fn is_degenerate(&self) -> bool {
        self.weights.is_none()
    }

    pub fn total(&self) -> Option<u64> {
        self.weights.as_ref().map(|w| w.total)
    }
}

/// Inflection weights of a curve in `P^k`: root multiplicities of the
/// Wronskian in the chart at 0, plus its order at `u~ = 0` in the chart at
/// infinity.
pub fn wronskian_weights(curve: &RationalCurve, k: u32) -> Result<WronskianReport> {
    if k == 0 {
        return Err(Error::InvalidJetOrder);
    }
    if curve.basis.len() != k as usize + 1 {
        return Err(Error::InvalidBasis(format!(
            "jet order {k} needs {} basis polynomials, got {}",
            k + 1,
            curve.basis.len()
        )));
    }
    if k as usize > curve.degree {
        return Err(Error::InvalidBasis(format!(
            "jet order {k} exceeds the curve degree {}",
            curve.degree
        )));
    }
    let w0 = wronskian(&curve.basis);
    let winf = wronskian(&curve.basis_at_infinity());
    let weights = (!w0.is_zero()).then(|| {
        let finite: Vec<FiniteInflection> = w0
            .squarefree_decomposition()
            .into_iter()
            .map(|(factor, weight)| FiniteInflection { factor, weight })
            .collect();
        let at_infinity = winf
            .valuation()
            .expect("nonzero in one chart means nonzero in both") as u32;
        let total = finite.iter().map(FiniteInflection::total).sum::<u64>() + at_infinity as u64;
        InflectionWeights {
            finite,
            at_infinity,
            total,
        }
    });
    Ok(WronskianReport {
        curve: curve.clone(),
        k,
        wronskian: w0,
        wronskian_at_infinity: winf,
        weights,
    })
}
