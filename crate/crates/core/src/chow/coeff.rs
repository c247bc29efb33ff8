use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ring of coefficients a class can be written over.
///
/// Implemented for [`CoeffPoly`] (formal `d`, `g`) and for [`BigRational`]
/// (numeric `d`, `g`), so that every formula can be run in either mode.
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn from_int(v: i64) -> Self;

    /// Multiplicative inverse, if the element is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    /// True when the element prints as a single negative term.
    fn is_negative(&self) -> bool;

    /// True when the element needs parentheses as a factor.
    fn is_compound(&self) -> bool;
}

impl Coefficient for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn is_compound(&self) -> bool {
        !self.is_integer()
    }
}

/// Polynomial with integer coefficients in the formal degree `d` and genus
/// `g`. Keys are exponent pairs `(e_d, e_g)`; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoeffPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl CoeffPoly {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e_d: u32, e_g: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e_d, e_g), c);
        }
        Self { terms }
    }

    /// The formal degree `d`.
    pub fn d() -> Self {
        Self::monomial(1, 1, 0)
    }

    /// The formal genus `g`.
    pub fn g() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn coeff(&self, e_d: u32, e_g: u32) -> BigInt {
        self.terms.get(&(e_d, e_g)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    /// Substitutes rational values for `d` and `g`.
    pub fn eval(&self, d: &BigRational, g: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(ed, eg), c)| {
                BigRational::from_integer(c.clone())
                    * num_traits::pow(d.clone(), ed as usize)
                    * num_traits::pow(g.clone(), eg as usize)
            })
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Terms in canonical print order: higher total degree first, then
    /// higher power of `d`.
    fn ordered_terms(&self) -> Vec<((u32, u32), &BigInt)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|((a1, b1), _), ((a2, b2), _)| (a2 + b2, a2).cmp(&(a1 + b1, a1)));
        v
    }
}

impl Coefficient for CoeffPoly {
    fn from_int(v: i64) -> Self {
        Self::constant(v)
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        match self.terms.get(&(0, 0)) {
            Some(c) if c.is_one() || (-c).is_one() => Some(self.clone()),
            _ => None,
        }
    }

    fn is_negative(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.is_negative())
    }

    fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

impl Zero for CoeffPoly {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for CoeffPoly {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl From<i64> for CoeffPoly {
    fn from(v: i64) -> Self {
        Self::constant(v)
    }
}

impl<'a> Add<&'a CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;

    fn add(self, rhs: &'a CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;

    fn sub(self, rhs: &'a CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c);
        }
        out
    }
}

impl<'a> Mul<&'a CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;

    fn mul(self, rhs: &'a CoeffPoly) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;

    fn neg(self) -> CoeffPoly {
        CoeffPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for CoeffPoly {
    type Output = CoeffPoly;

    fn neg(self) -> CoeffPoly {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<CoeffPoly> for CoeffPoly {
            type Output = CoeffPoly;
            fn $m(self, rhs: CoeffPoly) -> CoeffPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CoeffPoly> for CoeffPoly {
            type Output = CoeffPoly;
            fn $m(self, rhs: &'a CoeffPoly) -> CoeffPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<CoeffPoly> for &CoeffPoly {
            type Output = CoeffPoly;
            fn $m(self, rhs: CoeffPoly) -> CoeffPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

fn fmt_monomial(e_d: u32, e_g: u32) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("d", e_d), ("g", e_g)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((ed, eg), c)) in self.ordered_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = fmt_monomial(ed, eg);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoeffPoly({self})")
    }
}

/// Values for the degree `d` of the scroll and the genus `g` of its base
/// curve, either formal or numeric.
#[derive(Clone, Debug, PartialEq)]
pub struct Moduli<C> {
    pub d: C,
    pub g: C,
}

impl Moduli<CoeffPoly> {
    pub fn formal() -> Self {
        Self {
            d: CoeffPoly::d(),
            g: CoeffPoly::g(),
        }
    }
}

impl Moduli<BigRational> {
    pub fn numeric(d: BigRational, g: BigRational) -> Self {
        Self { d, g }
    }

    pub fn integral(d: i64, g: i64) -> Self {
        Self::numeric(BigRational::from_int(d), BigRational::from_int(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = CoeffPoly::d() - CoeffPoly::d();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        assert!(CoeffPoly::monomial(0, 3, 1).is_zero());
    }

    #[test]
    fn canonical_print_order() {
        let p = CoeffPoly::constant(-12)
            + CoeffPoly::g() * CoeffPoly::from(12)
            + CoeffPoly::d() * CoeffPoly::from(2);
        assert_eq!(p.to_string(), "2*d + 12*g - 12");
        let q = CoeffPoly::g() * CoeffPoly::g() - CoeffPoly::d() * CoeffPoly::g()
            + CoeffPoly::d() * CoeffPoly::d();
        assert_eq!(q.to_string(), "d^2 - d*g + g^2");
        assert_eq!((-CoeffPoly::d()).to_string(), "-d");
    }

    #[test]
    fn evaluation() {
        // (d - 1)(g + 2) at d = 3/2, g = -1 is 1/2
        let p = (CoeffPoly::d() - CoeffPoly::one()) * (CoeffPoly::g() + CoeffPoly::from(2));
        let v = p.eval(
            &BigRational::new(3.into(), 2.into()),
            &BigRational::from_int(-1),
        );
        assert_eq!(v, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn units() {
        assert!(CoeffPoly::one().unit_inverse().is_some());
        assert!(CoeffPoly::from(-1).unit_inverse().is_some());
        assert!(CoeffPoly::from(2).unit_inverse().is_none());
        assert!(CoeffPoly::d().unit_inverse().is_none());
    }
}
