//! Polynomial kernels used by the oracles: dense univariate polynomials over
//! the rationals and sparse multivariate polynomials over the integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial over Q, coefficients from the constant term
/// up. The leading coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * u^e`
    pub fn monomial(c: BigRational, e: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Order of vanishing at 0.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    /// `u^deg * p(1/u)`, the expression of a degree-`deg` binary form in the
    /// chart at infinity. `deg` must be at least the degree of `self`.
    pub fn reversed(&self, deg: usize) -> Self {
        assert!(
            self.degree().is_none_or(|d| d <= deg),
            "reversal degree too small"
        );
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(deg + 1, BigRational::zero());
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] * &lc_inv;
            if !c.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[top - dd + i] -= &c * dc;
                }
                quot[top - dd] = c;
            }
            rem.pop();
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's squarefree decomposition of a nonzero polynomial: pairwise
    /// coprime monic squarefree factors `f_m` with `self = c * prod f_m^m`.
    /// Constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, u32)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let c = f.gcd(&df);
        let mut w = f.exact_div(&c);
        let mut y = df.exact_div(&c);
        let mut m = 1;
        loop {
            let z = &y - &w.derivative();
            if w.is_constant() {
                break;
            }
            let g = w.gcd(&z);
            if !g.is_constant() {
                out.push((g.clone(), m));
            }
            w = w.exact_div(&g);
            y = z.exact_div(&g);
            m += 1;
        }
        out
    }

    /// The root of a degree-1 polynomial.
    pub fn linear_root(&self) -> Option<BigRational> {
        (self.degree() == Some(1)).then(|| -&self.coeffs[0] / &self.coeffs[1])
    }

    pub fn fmt_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            match (s.is_empty(), neg) {
                (true, true) => s.push('-'),
                (true, false) => {}
                (false, true) => s.push_str(" - "),
                (false, false) => s.push_str(" + "),
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let coeff = if abs.is_integer() {
                abs.to_string()
            } else {
                format!("({abs})")
            };
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => s.push_str(&coeff),
                (false, true) => s.push_str(&mono),
                (false, false) => s.push_str(&format!("{coeff}*{mono}")),
            }
        }
        s
    }
}

impl Zero for UPoly {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UPoly {
    fn one() -> Self {
        Self::constant(BigRational::one())
    }
}

impl Add for UPoly {
    type Output = UPoly;

    fn add(self, rhs: UPoly) -> UPoly {
        &self + &rhs
    }
}

impl Mul for UPoly {
    type Output = UPoly;

    fn mul(self, rhs: UPoly) -> UPoly {
        &self * &rhs
    }
}

impl Neg for UPoly {
    type Output = UPoly;

    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<'a> Add<&'a UPoly> for &UPoly {
    type Output = UPoly;

    fn add(self, rhs: &'a UPoly) -> UPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &UPoly {
    type Output = UPoly;

    fn sub(self, rhs: &'a UPoly) -> UPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UPoly> for &UPoly {
    type Output = UPoly;

    fn mul(self, rhs: &'a UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_in("u"))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

/// Sparse polynomial over Z in a fixed number of variables. Keys are
/// exponent vectors; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero_in(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(nvars: usize, c: impl Into<BigInt>, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut out = Self::zero_in(nvars);
        let c = c.into();
        if !c.is_zero() {
            out.terms.insert(exps, c);
        }
        out
    }

    pub fn constant_in(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, c, vec![0; nvars])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// The integer value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .filter(|(&k, _)| k > 0)
                    .fold(BigRational::from_integer(c.clone()), |acc, (&k, x)| {
                        acc * num_traits::pow(x.clone(), k as usize)
                    })
            })
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    /// Groups terms by their exponents outside `var`, giving each group as a
    /// univariate polynomial in `var`.
    pub fn collect_in(&self, var: usize) -> BTreeMap<Vec<u32>, UPoly> {
        let mut grouped: BTreeMap<Vec<u32>, Vec<BigRational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = e.clone();
            let pow = std::mem::replace(&mut key[var], 0) as usize;
            let slot = grouped.entry(key).or_default();
            if slot.len() <= pow {
                slot.resize(pow + 1, BigRational::zero());
            }
            slot[pow] += BigRational::from_integer(c.clone());
        }
        grouped
            .into_iter()
            .map(|(k, v)| (k, UPoly::new(v)))
            .collect()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn fmt_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (s.is_empty(), neg) {
                (true, true) => s.push('-'),
                (true, false) => {}
                (false, true) => s.push_str(" - "),
                (false, false) => s.push_str(" + "),
            }
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, name)| {
                    if k == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => s.push_str(&abs.to_string()),
                (false, true) => s.push_str(&mono.join("*")),
                (false, false) => s.push_str(&format!("{abs}*{}", mono.join("*"))),
            }
        }
        s
    }
}

impl Zero for MPoly {
    /// Zero with no variables; it adapts to the variable count of whatever
    /// it is combined with.
    fn zero() -> Self {
        Self::zero_in(0)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn common_nvars(a: &MPoly, b: &MPoly) -> usize {
    match (a.is_zero(), b.is_zero()) {
        (true, _) => b.nvars.max(a.nvars),
        (_, true) => a.nvars,
        _ => {
            assert_eq!(a.nvars, b.nvars, "polynomials in different rings");
            a.nvars
        }
    }
}

impl<'a> Add<&'a MPoly> for &MPoly {
    type Output = MPoly;

    fn add(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        out.nvars = common_nvars(self, rhs);
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &MPoly {
    type Output = MPoly;

    // exponents add when monomials multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        let mut out = MPoly::zero_in(common_nvars(self, rhs));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Add for MPoly {
    type Output = MPoly;

    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;

    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;

    fn neg(mut self) -> MPoly {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
        self
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "MPoly({})", self.fmt_with(&refs))
    }
}
