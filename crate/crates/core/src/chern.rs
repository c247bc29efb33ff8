//! Chern and Segre classes of the bundles `E_k` attached to the osculating
//! spaces of a scroll, plus the rank bookkeeping for `P^k(L)`, `Q_k`, `M_k`
//! and `E_k`.
//!
//! The sheaves themselves never appear; only their ranks and total Chern
//! classes do.

use crate::chow::{ChowClass, Coefficient, Moduli};
use crate::error::{Error, Result};

/// Ranks of the bundles in the jet-bundle filtration of an n-dimensional
/// scroll at jet order k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub n: u64,
    pub k: u64,
    /// `P^k(L)`: `C(n+k, n)`.
    pub rank_jet: u64,
    /// `E_k`: `kn + 1`.
    pub rank_ek: u64,
    /// `Q_k^dual`: `C(n+k, n) - (kn + 1)`.
    pub rank_qk_dual: u64,
    /// `M_k`: `C(n+k-1, n-1) - n`.
    pub rank_mk: u64,
    /// `S^k Omega_X (x) L`: `C(n+k-1, n-1)`.
    pub rank_sym: u64,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

impl RankProfile {
    /// Profile at jet order `k >= 0`; order 0 is the line bundle itself.
    fn at(n: u64, k: u64) -> Self {
        let rank_jet = binomial(n + k, n);
        let rank_ek = k * n + 1;
        let rank_sym = if k == 0 {
            1
        } else {
            binomial(n + k - 1, n - 1)
        };
        Self {
            n,
            k,
            rank_jet,
            rank_ek,
            rank_qk_dual: rank_jet - rank_ek,
            rank_mk: if k == 0 { 0 } else { rank_sym - n },
            rank_sym,
        }
    }

    /// Violated rank identities, empty when the profile is consistent with
    /// the exact sequences linking order `k - 1` to order `k`.
    pub fn inconsistencies(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.k == 0 {
            return out;
        }
        let prev = Self::at(self.n, self.k - 1);
        if self.rank_qk_dual != prev.rank_qk_dual + self.rank_mk {
            out.push(format!(
                "rank Q_k^dual = {} but rank Q_(k-1)^dual + rank M_k = {}",
                self.rank_qk_dual,
                prev.rank_qk_dual + self.rank_mk
            ));
        }
        if self.rank_ek != prev.rank_ek + self.n {
            out.push(format!(
                "rank E_k = {} but rank E_(k-1) + n = {}",
                self.rank_ek,
                prev.rank_ek + self.n
            ));
        }
        // iota_k: pi^* Omega_C^(k-1) (x) Omega_X (x) L (rank n) into S^k Omega_X (x) L
        if self.rank_mk + self.n != self.rank_sym {
            out.push(format!(
                "rank M_k + n = {} but rank S^k Omega (x) L = {}",
                self.rank_mk + self.n,
                self.rank_sym
            ));
        }
        if self.rank_jet != prev.rank_jet + self.rank_sym {
            out.push(format!(
                "rank P^k = {} but rank P^(k-1) + rank S^k = {}",
                self.rank_jet,
                prev.rank_jet + self.rank_sym
            ));
        }
        if self.rank_ek + self.rank_qk_dual != self.rank_jet {
            out.push("rank E_k + rank Q_k^dual != rank P^k".to_string());
        }
        out
    }
}

pub fn rank_profile(n: u64, k: u64) -> Result<RankProfile> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    if k == 0 {
        return Err(Error::InvalidJetOrder);
    }
    Ok(RankProfile::at(n, k))
}

/// Which of a class and its inverse to return.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorForm {
    Direct,
    Inverse,
}

fn int<C: Coefficient>(v: u64) -> C {
    C::from_int(i64::try_from(v).expect("integer parameter too large"))
}

/// Pullback of `c(F^dual (x) T_C^i)` from the base curve, where `F` is the
/// rank-n pushforward of `L`: `1 - (d + 2in(g-1))F`. The inverse form is
/// `1 + (d + 2in(g-1))F`.
pub fn chern_curve_factor<C: Coefficient>(
    n: usize,
    i: u64,
    moduli: &Moduli<C>,
    form: FactorForm,
) -> ChowClass<C> {
    let e = moduli.d.clone() + int::<C>(2 * i * n as u64) * (moduli.g.clone() - C::one());
    let fib = ChowClass::fiber(n).scale(&e);
    match form {
        FactorForm::Direct => &ChowClass::one(n) - &fib,
        FactorForm::Inverse => &ChowClass::one(n) + &fib,
    }
}

/// Total Chern class of the line bundle `pi^* T_C^k (x) L^-1`:
/// `1 - 2k(g-1)F - L`.
pub fn chern_line_twist<C: Coefficient>(n: usize, k: u64, moduli: &Moduli<C>) -> ChowClass<C> {
    let b = int::<C>(2 * k) * (moduli.g.clone() - C::one());
    &(&ChowClass::one(n) - &ChowClass::fiber(n).scale(&b)) - &ChowClass::hyperplane(n)
}

/// `c(E_k)` as the product of the `k` curve factors and the line twist.
/// Order 0 gives `c(L^-1)`.
pub fn total_chern_ek<C: Coefficient>(
    n: usize,
    k: u64,
    moduli: &Moduli<C>,
) -> Result<ChowClass<C>> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    let curve = (0..k).fold(ChowClass::one(n), |acc, i| {
        &acc * &chern_curve_factor(n, i, moduli, FactorForm::Direct)
    });
    Ok(&curve * &chern_line_twist(n, k, moduli))
}

/// The product of the inverse curve factors, `1 + aF` with
/// `a = k(d + n(k-1)(g-1))`.
pub fn inverse_curve_product<C: Coefficient>(n: usize, k: u64, moduli: &Moduli<C>) -> ChowClass<C> {
    (0..k).fold(ChowClass::one(n), |acc, i| {
        &acc * &chern_curve_factor(n, i, moduli, FactorForm::Inverse)
    })
}

fn check_segre_range(n: usize, j: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    if j == 0 || j > n {
        return Err(Error::CodimOutOfRange { codim: j, dim: n });
    }
    Ok(())
}

/// Codimension-`j` piece of `c(E_k)^-1`, computed by inverting the product
/// of Chern classes.
pub fn segre_term<C: Coefficient>(
    n: usize,
    k: u64,
    j: usize,
    moduli: &Moduli<C>,
) -> Result<ChowClass<C>> {
    check_segre_range(n, j)?;
    total_chern_ek(n, k, moduli)?.inverse()?.graded_piece(j)
}

/// Closed form of the same piece: `L^j + k(d + (n(k-1) + 2j)(g-1)) L^{j-1}F`.
pub fn segre_closed_form<C: Coefficient>(
    n: usize,
    k: u64,
    j: usize,
    moduli: &Moduli<C>,
) -> Result<ChowClass<C>> {
    check_segre_range(n, j)?;
    let shift = int::<C>(n as u64 * k.saturating_sub(1) + 2 * j as u64);
    let beta = int::<C>(k) * (moduli.d.clone() + shift * (moduli.g.clone() - C::one()));
    ChowClass::from_terms(n, [(j, C::one(), beta)])
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::chow::CoeffPoly;
    use crate::rat;

    fn formal() -> Moduli<CoeffPoly> {
        Moduli::formal()
    }

    fn c(v: i64) -> CoeffPoly {
        CoeffPoly::from(v)
    }

    fn gm1() -> CoeffPoly {
        CoeffPoly::g() - c(1)
    }

    #[test]
    fn rank_examples() {
        let p = rank_profile(2, 2).unwrap();
        assert_eq!(
            (p.rank_jet, p.rank_ek, p.rank_qk_dual, p.rank_mk),
            (6, 5, 1, 1)
        );
        for k in 1..8 {
            let p = rank_profile(1, k).unwrap();
            assert_eq!((p.rank_jet, p.rank_ek, p.rank_qk_dual), (k + 1, k + 1, 0));
        }
        let p = rank_profile(3, 2).unwrap();
        assert_eq!(
            (p.rank_jet, p.rank_ek, p.rank_qk_dual, p.rank_mk),
            (10, 7, 3, 3)
        );
    }

    #[test]
    fn rank_profile_rejects_zero() {
        assert_eq!(rank_profile(0, 2), Err(Error::InvalidDimension));
        assert_eq!(rank_profile(2, 0), Err(Error::InvalidJetOrder));
    }

    #[test]
    fn rank_additivity_grid() {
        for n in 1..=10 {
            for k in 1..=10 {
                let p = rank_profile(n, k).unwrap();
                assert!(
                    p.inconsistencies().is_empty(),
                    "n={n} k={k}: {:?}",
                    p.inconsistencies()
                );
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(20, 10), 184756);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn curve_factor_examples() {
        let m = formal();
        for n in 1..=4 {
            let direct = chern_curve_factor(n, 0, &m, FactorForm::Direct);
            assert_eq!(
                direct,
                &ChowClass::one(n) - &ChowClass::fiber(n).scale(&CoeffPoly::d())
            );
        }
        let inv = chern_curve_factor(2, 1, &m, FactorForm::Inverse);
        let e = CoeffPoly::d() + gm1() * c(4);
        assert_eq!(inv, &ChowClass::one(2) + &ChowClass::fiber(2).scale(&e));
        for i in 0..5 {
            let d = chern_curve_factor(3, i, &m, FactorForm::Direct);
            let v = chern_curve_factor(3, i, &m, FactorForm::Inverse);
            assert_eq!(&d * &v, ChowClass::one(3));
        }
    }

    #[test]
    fn line_twist_examples() {
        let m = formal();
        assert_eq!(
            chern_line_twist(3, 0, &m),
            &ChowClass::one(3) - &ChowClass::hyperplane(3)
        );
        let expected = &(&ChowClass::one(2) - &ChowClass::fiber(2).scale(&(gm1() * c(4))))
            - &ChowClass::hyperplane(2);
        assert_eq!(chern_line_twist(2, 2, &m), expected);
        for k in 0..6 {
            let at_g1 = chern_line_twist(2, k, &m).evaluate(&rat(5), &rat(1));
            assert_eq!(at_g1, &ChowClass::one(2) - &ChowClass::hyperplane(2));
        }
    }

    #[test]
    fn total_chern_examples() {
        let m = formal();
        let expected = &(&ChowClass::one(1) - &ChowClass::fiber(1).scale(&CoeffPoly::d()))
            * &chern_line_twist(1, 1, &m);
        assert_eq!(total_chern_ek(1, 1, &m).unwrap(), expected);
        for n in 1..=4 {
            for k in 1..=4u64 {
                let total = total_chern_ek(n, k, &m).unwrap();
                assert_eq!(total.term(0).unwrap().0, &c(1));
                // codim 1: -L - (kd + (nk(k-1) + 2k)(g-1))F
                let (alpha, beta) = total.term(1).unwrap();
                assert_eq!(alpha, &c(-1));
                let want = -(CoeffPoly::d() * c(k as i64)
                    + gm1() * c((n as u64 * k * (k - 1) + 2 * k) as i64));
                assert_eq!(beta, &want);
            }
        }
    }

    #[test]
    fn inverse_curve_product_is_one_plus_a_fiber() {
        let m = formal();
        for n in 1..=6 {
            for k in 0..=6u64 {
                let a = c(k as i64)
                    * (CoeffPoly::d() + c((n as u64 * k.saturating_sub(1)) as i64) * gm1());
                let want = &ChowClass::one(n) + &ChowClass::fiber(n).scale(&a);
                assert_eq!(inverse_curve_product(n, k, &m), want, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn multiplicative_recursion() {
        // c(E_k) = c(E_{k-1}) c(T^k L^-1) c(T^{k-1} L^-1)^-1 c(F^dual T^{k-1})
        let m = formal();
        for n in 1..=5 {
            for k in 1..=5u64 {
                let lhs = total_chern_ek(n, k, &m).unwrap();
                let rhs = &(&(&total_chern_ek(n, k - 1, &m).unwrap()
                    * &chern_line_twist(n, k, &m))
                    * &chern_line_twist(n, k - 1, &m).inverse().unwrap())
                    * &chern_curve_factor(n, k - 1, &m, FactorForm::Direct);
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn segre_examples() {
        let m = formal();
        // n = k = j = 2 at g = 0: L^2 + 2(d - 6) L F
        let t = segre_term(2, 2, 2, &m).unwrap();
        let at_g0 = t.map(|p| {
            let mut q = CoeffPoly::zero();
            for ((ed, eg), v) in p.terms() {
                if eg == 0 {
                    q = q + CoeffPoly::monomial(v.clone(), ed, 0);
                }
            }
            q
        });
        let want = ChowClass::from_terms(2, [(2, c(1), CoeffPoly::d() * c(2) - c(12))]).unwrap();
        assert_eq!(at_g0, want);

        // curves: degree (k+1)(d + k(g-1))
        for k in 1..=6u64 {
            let t = segre_term(1, k, 1, &m).unwrap();
            let deg = t.degree(&CoeffPoly::d()).unwrap();
            let want = c(k as i64 + 1) * (CoeffPoly::d() + c(k as i64) * gm1());
            assert_eq!(deg, want);
        }
    }

    #[test]
    fn closed_form_examples() {
        let m = formal();
        for n in 1..=4 {
            for k in 1..=4u64 {
                for j in 1..=n {
                    let at_g1 = segre_closed_form(n, k, j, &m)
                        .unwrap()
                        .evaluate(&rat(7), &rat(1));
                    let (a, b) = at_g1.term(j).unwrap();
                    assert_eq!((a.clone(), b.clone()), (rat(1), rat(7 * k as i64)));
                }
            }
        }
        let v = segre_closed_form(2, 2, 1, &m)
            .unwrap()
            .evaluate(&rat(3), &rat(0));
        assert_eq!(v.to_string(), "L - 2*F");
    }

    #[test]
    fn segre_range_errors() {
        let m = formal();
        assert!(segre_term(2, 2, 0, &m).is_err());
        assert!(segre_term(2, 2, 3, &m).is_err());
        assert!(segre_closed_form(3, 1, 4, &m).is_err());
    }
}
