//! Explicit decomposable scrolls `P(O(a_1) + ... + O(a_n))` over `P^1`,
//! embedded by the complete linear system of the tautological bundle.
//!
//! A point is written in one of `2n` affine charts: the base chart (`u = t/s`
//! near 0, or `u = s/t` near infinity) and the fiber chart `iota` in which
//! the `iota`-th fiber coordinate is normalised to 1. In such a chart every
//! section has the local form `v_i u^e`, linear in the fiber coordinates, so
//! the only derivatives that can be nonzero are `d_u^h` and
//! `d_u^h d_{v_j}`. The jet matrix keeps exactly those `kn + 1` columns.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, RankCertificate};
use crate::poly::MPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseChart {
    /// `s != 0`, coordinate `u = t/s`.
    Zero,
    /// `t != 0`, coordinate `u = s/t`.
    Infinity,
}

impl BaseChart {
    pub fn other(self) -> Self {
        match self {
            BaseChart::Zero => BaseChart::Infinity,
            BaseChart::Infinity => BaseChart::Zero,
        }
    }
}

/// A point in the chart `(base, fiber_chart)`. `v` holds the fiber
/// coordinates `w_j / w_iota` for `j != iota`, in increasing `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScrollPoint {
    pub base: BaseChart,
    pub u: BigRational,
    pub fiber_chart: usize,
    pub v: Vec<BigRational>,
}

impl ScrollPoint {
    pub fn new(base: BaseChart, u: BigRational, fiber_chart: usize, v: Vec<BigRational>) -> Self {
        Self {
            base,
            u,
            fiber_chart,
            v,
        }
    }

    /// All `n` fiber coordinates, with 1 in the chart's own slot.
    pub fn fiber_coords(&self) -> Vec<BigRational> {
        let mut out = self.v.clone();
        out.insert(self.fiber_chart, BigRational::one());
        out
    }
}

impl fmt::Display for ScrollPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.base {
            BaseChart::Zero => "u",
            BaseChart::Infinity => "1/u",
        };
        let coords: Vec<String> = self
            .fiber_coords()
            .iter()
            .enumerate()
            .map(|(i, c)| format!("w{}={c}", i + 1))
            .collect();
        write!(f, "[{base}={}; {}]", self.u, coords.join(", "))
    }
}

/// The section `w_i t^m s^(a_i - m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Section {
    pub summand: usize,
    pub power: u32,
}

/// A reduced jet column: `d_u^u_order`, times `d_{v_j}` when `fiber` is
/// `Some(j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetColumn {
    pub u_order: u32,
    pub fiber: Option<usize>,
}

impl fmt::Display for JetColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s")?;
        for _ in 0..self.u_order {
            write!(f, "u")?;
        }
        if let Some(j) = self.fiber {
            write!(f, "v{}", j + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecomposableScroll {
    degrees: Vec<u32>,
}

fn falling_factorial(e: u32, h: u32) -> BigInt {
    (0..h).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(e as i64 - i as i64)
    })
}

/// A single-term jet entry `coeff * u^u_exp * v_fiber`.
struct Monomial {
    coeff: BigInt,
    u_exp: u32,
    fiber: Option<usize>,
}

impl DecomposableScroll {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidScroll("no summands".into()));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidScroll(
                "summand degrees must be positive for a very ample tautological bundle".into(),
            ));
        }
        Ok(Self { degrees })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self) -> u64 {
        self.degrees.iter().map(|&a| a as u64).sum()
    }

    /// `N = d + n - 1`.
    pub fn ambient(&self) -> usize {
        self.degree() as usize + self.n() - 1
    }

    /// Monomial basis of `H^0`, summand by summand.
    pub fn sections(&self) -> Vec<Section> {
        self.degrees
            .iter()
            .enumerate()
            .flat_map(|(summand, &a)| (0..=a).map(move |power| Section { summand, power }))
            .collect()
    }

    /// Reduced columns in order: by derivative order, `d_u^o` first, then
    /// `d_u^(o-1) d_{v_j}` for `j != iota`.
    pub fn jet_columns(&self, k: u32, iota: usize) -> Vec<JetColumn> {
        let mut cols = Vec::with_capacity(k as usize * self.n() + 1);
        for o in 0..=k {
            cols.push(JetColumn {
                u_order: o,
                fiber: None,
            });
            if o >= 1 {
                for j in (0..self.n()).filter(|&j| j != iota) {
                    cols.push(JetColumn {
                        u_order: o - 1,
                        fiber: Some(j),
                    });
                }
            }
        }
        cols
    }

    fn local_exponent(&self, s: Section, base: BaseChart) -> u32 {
        match base {
            BaseChart::Zero => s.power,
            BaseChart::Infinity => self.degrees[s.summand] - s.power,
        }
    }

    fn entry(&self, s: Section, col: JetColumn, base: BaseChart, iota: usize) -> Option<Monomial> {
        let e = self.local_exponent(s, base);
        if col.u_order > e {
            return None;
        }
        let coeff = falling_factorial(e, col.u_order);
        let u_exp = e - col.u_order;
        match col.fiber {
            None => Some(Monomial {
                coeff,
                u_exp,
                fiber: (s.summand != iota).then_some(s.summand),
            }),
            Some(j) if j == s.summand && j != iota => Some(Monomial {
                coeff,
                u_exp,
                fiber: None,
            }),
            Some(_) => None,
        }
    }

    fn check_chart(&self, iota: usize) -> Result<()> {
        if iota >= self.n() {
            return Err(Error::InvalidPoint(format!(
                "fiber chart {} out of range 1..={}",
                iota + 1,
                self.n()
            )));
        }
        Ok(())
    }

    pub fn validate_point(&self, p: &ScrollPoint) -> Result<()> {
        self.check_chart(p.fiber_chart)?;
        if p.v.len() + 1 != self.n() {
            return Err(Error::InvalidPoint(format!(
                "expected {} fiber coordinates, got {}",
                self.n() - 1,
                p.v.len()
            )));
        }
        Ok(())
    }

    /// Jet matrix with polynomial entries in `u` (variable 0) and the fiber
    /// coordinates `v_j` (variable `j + 1`) of the chart `(base, iota)`.
    pub fn symbolic_jet_matrix(
        &self,
        k: u32,
        base: BaseChart,
        iota: usize,
    ) -> Result<Vec<Vec<MPoly>>> {
        self.check_chart(iota)?;
        let nvars = self.n() + 1;
        let cols = self.jet_columns(k, iota);
        Ok(self
            .sections()
            .into_iter()
            .map(|s| {
                cols.iter()
                    .map(|&c| match self.entry(s, c, base, iota) {
                        None => MPoly::zero_in(nvars),
                        Some(m) => {
                            let mut exps = vec![0; nvars];
                            exps[0] = m.u_exp;
                            if let Some(j) = m.fiber {
                                exps[j + 1] = 1;
                            }
                            MPoly::monomial(nvars, m.coeff, exps)
                        }
                    })
                    .collect()
            })
            .collect())
    }

    pub fn jet_matrix(&self, k: u32, p: &ScrollPoint) -> Result<JetMatrix> {
        if k == 0 {
            return Err(Error::InvalidJetOrder);
        }
        self.validate_point(p)?;
        let w = p.fiber_coords();
        let columns = self.jet_columns(k, p.fiber_chart);
        let rows = self.sections();
        let entries = rows
            .iter()
            .map(|&s| {
                columns
                    .iter()
                    .map(|&c| match self.entry(s, c, p.base, p.fiber_chart) {
                        None => BigRational::zero(),
                        Some(m) => {
                            let mut x = BigRational::from_integer(m.coeff)
                                * num_traits::pow(p.u.clone(), m.u_exp as usize);
                            if let Some(j) = m.fiber {
                                x *= &w[j];
                            }
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(JetMatrix {
            k,
            n: self.n(),
            point: p.clone(),
            columns,
            rows,
            entries,
        })
    }

    pub fn jet_rank(&self, k: u32, p: &ScrollPoint) -> Result<usize> {
        Ok(self.jet_matrix(k, p)?.rank())
    }

    /// `dim Osc^k = rank - 1`.
    pub fn osculating_dim(&self, k: u32, p: &ScrollPoint) -> Result<usize> {
        Ok(self.jet_rank(k, p)? - 1)
    }

    pub fn check_jet_order(&self, k: u32) -> Result<()> {
        if k == 0 {
            return Err(Error::InvalidJetOrder);
        }
        if k as usize * self.n() > self.ambient() {
            return Err(Error::JetOrderTooLarge {
                k,
                n: self.n(),
                ambient: self.ambient(),
            });
        }
        Ok(())
    }

    /// True when the k-jet map drops below its maximal rank `kn + 1` at `p`.
    pub fn is_inflected(&self, k: u32, p: &ScrollPoint) -> Result<bool> {
        self.check_jet_order(k)?;
        Ok(self.jet_rank(k, p)? < k as usize * self.n() + 1)
    }

    /// Values of all sections at `p`: the point's homogeneous coordinates in
    /// `P^N`, up to a common factor.
    pub fn embed(&self, p: &ScrollPoint) -> Result<Vec<BigRational>> {
        self.validate_point(p)?;
        let w = p.fiber_coords();
        Ok(self
            .sections()
            .into_iter()
            .map(|s| {
                let e = self.local_exponent(s, p.base);
                num_traits::pow(p.u.clone(), e as usize) * &w[s.summand]
            })
            .collect())
    }

    /// The same point in the other base chart; `None` on the fiber `u = 0`.
    pub fn change_base_chart(&self, p: &ScrollPoint) -> Option<ScrollPoint> {
        if p.u.is_zero() {
            return None;
        }
        let iota = p.fiber_chart;
        let a_iota = self.degrees[iota] as i32;
        let v = (0..self.n())
            .filter(|&j| j != iota)
            .zip(&p.v)
            .map(|(j, vj)| vj * pow_signed(&p.u, self.degrees[j] as i32 - a_iota))
            .collect();
        Some(ScrollPoint::new(p.base.other(), p.u.recip(), iota, v))
    }

    /// The same point in fiber chart `target`; `None` where `w_target = 0`.
    pub fn change_fiber_chart(&self, p: &ScrollPoint, target: usize) -> Option<ScrollPoint> {
        let w = p.fiber_coords();
        let pivot = w.get(target)?;
        if pivot.is_zero() {
            return None;
        }
        let v = w
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != target)
            .map(|(_, x)| x / pivot)
            .collect();
        Some(ScrollPoint::new(p.base, p.u.clone(), target, v))
    }
}

fn pow_signed(x: &BigRational, e: i32) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

impl FromStr for DecomposableScroll {
    type Err = Error;

    /// Comma-separated summand degrees, e.g. `"2,2"` or `"1, 3"`.
    fn from_str(s: &str) -> Result<Self> {
        let degrees = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad summand degree {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(degrees)
    }
}

impl fmt::Display for DecomposableScroll {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Exact k-jets of the section basis at one point: rows are sections,
/// columns the `kn + 1` reduced derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct JetMatrix {
    pub k: u32,
    pub n: usize,
    pub point: ScrollPoint,
    pub columns: Vec<JetColumn>,
    pub rows: Vec<Section>,
    pub entries: Vec<Vec<BigRational>>,
}

impl JetMatrix {
    pub fn rank_certificate(&self) -> RankCertificate {
        linalg::rank_certificate(&self.entries)
    }

    pub fn rank(&self) -> usize {
        self.rank_certificate().rank
    }

    /// Maximal possible rank `kn + 1` minus the actual rank.
    pub fn corank(&self) -> usize {
        self.k as usize * self.n + 1 - self.rank()
    }
}
