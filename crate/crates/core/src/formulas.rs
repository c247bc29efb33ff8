//! Closed-form class and degree of the inflectional locus, the classical
//! curve count, the double-point identity for scrolls in `P^{2n}`, and the
//! classification of uninflected scrolls.

use crate::chow::{ChowClass, Coefficient, Moduli};
use crate::error::{Error, Result};

/// Dimension and ambient space of a scroll, with the jet order `k` and the
/// expected codimension `ell` of `Phi_k` derived from them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScrollParams {
    n: usize,
    ambient: usize,
    k: u64,
    ell: usize,
}

impl ScrollParams {
    /// `k` is the largest integer with `kn <= N`; it cannot be supplied.
    pub fn new(n: usize, ambient: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension);
        }
        if ambient <= n {
            return Err(Error::InvalidParams(format!(
                "a nondegenerate {n}-dimensional scroll needs N >= {}, got N = {ambient}",
                n + 1
            )));
        }
        let k = ambient / n;
        let ell = ambient + 1 - k * n;
        debug_assert!((1..=n).contains(&ell));
        Ok(Self {
            n,
            ambient,
            k: k as u64,
            ell,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Expected codimension `N + 1 - kn` of `Phi_k`, always in `1..=n`.
    pub fn ell(&self) -> usize {
        self.ell
    }

    /// True when `Phi_k` is expected to be a finite set of points.
    pub fn is_pointwise(&self) -> bool {
        self.ell == self.n
    }
}

fn int<C: Coefficient>(v: i64) -> C {
    C::from_int(v)
}

/// `[Phi_k] = L^ell + k(d + (n(k-1) + 2(N+1-kn))(g-1)) L^{ell-1}F`.
pub fn inflectional_class<C: Coefficient>(p: &ScrollParams, moduli: &Moduli<C>) -> ChowClass<C> {
    let (n, k, big_n) = (p.n as i64, p.k as i64, p.ambient as i64);
    let shift = n * (k - 1) + 2 * (big_n + 1 - k * n);
    let beta = int::<C>(k) * (moduli.d.clone() + int::<C>(shift) * (moduli.g.clone() - C::one()));
    ChowClass::from_terms(p.n, [(p.ell, C::one(), beta)]).expect("ell lies in 1..=n")
}

/// `deg Phi_k = (k+1)d + k(2(N+1) - (k+1)n)(g-1)`.
pub fn inflectional_degree<C: Coefficient>(p: &ScrollParams, moduli: &Moduli<C>) -> C {
    let (n, k, big_n) = (p.n as i64, p.k as i64, p.ambient as i64);
    int::<C>(k + 1) * moduli.d.clone()
        + int::<C>(k * (2 * (big_n + 1) - (k + 1) * n)) * (moduli.g.clone() - C::one())
}

/// Degree when `Phi_k` is 0-dimensional (`N = (k+1)n - 1`):
/// `(k+1)(d + nk(g-1))`.
pub fn pointwise_degree<C: Coefficient>(n: usize, k: u64, moduli: &Moduli<C>) -> C {
    let (n, k) = (n as i64, k as i64);
    int::<C>(k + 1) * (moduli.d.clone() + int::<C>(n * k) * (moduli.g.clone() - C::one()))
}

/// Weighted number of k-th order inflection points of a curve of degree `d`
/// and genus `g` spanning `P^k`: `(k+1)(d + k(g-1))`.
pub fn curve_inflection_degree<C: Coefficient>(k: u64, moduli: &Moduli<C>) -> Result<C> {
    if k == 0 {
        return Err(Error::InvalidJetOrder);
    }
    Ok(pointwise_degree(1, k, moduli))
}

/// Double-point identity for a smooth n-dimensional scroll in `P^{2n}`:
/// `(d-n)(d-n-1) = n(n+1)g`.
pub fn double_point_check(n: i64, d: i64, g: i64) -> bool {
    let (n, d, g) = (n as i128, d as i128, g as i128);
    (d - n) * (d - n - 1) == n * (n + 1) * g
}

/// The balanced rational normal scroll `P(O(k) + ... + O(k))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UninflectedDescriptor {
    pub genus: u64,
    pub degree: u64,
    pub splitting: Vec<u64>,
    pub ambient: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// No scroll with these invariants is uninflected.
    NecessarilyInflected,
    Uninflected(UninflectedDescriptor),
}

/// The only uninflected n-dimensional scroll in `P^{kn + ell - 1}`.
///
/// For `ell < n` the class of `Phi_k` has `L^{n-1}F`-degree one after
/// cutting with `L^{n-ell-1}F`, so it never vanishes. For `ell = n` the
/// degree `(k+1)(d + nk(g-1))` vanishes only at `g = 0`, `d = kn`.
pub fn classify_uninflected(n: u64, k: u64, ell: u64) -> Result<Classification> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    if k == 0 {
        return Err(Error::InvalidJetOrder);
    }
    if ell == 0 || ell > n {
        return Err(Error::InvalidParams(format!(
            "ell = {ell} must lie in 1..={n}"
        )));
    }
    if ell < n {
        return Ok(Classification::NecessarilyInflected);
    }
    Ok(Classification::Uninflected(UninflectedDescriptor {
        genus: 0,
        degree: k * n,
        splitting: vec![k; n as usize],
        ambient: (k + 1) * n - 1,
    }))
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use num_traits::Zero;

    use super::*;
    use crate::chern::{segre_closed_form, segre_term};
    use crate::chow::CoeffPoly;
    use crate::rat;

    fn numeric(d: i64, g: i64) -> Moduli<BigRational> {
        Moduli::integral(d, g)
    }

    #[test]
    fn params_derive_k_and_ell() {
        let p = ScrollParams::new(2, 5).unwrap();
        assert_eq!((p.k(), p.ell()), (2, 2));
        let p = ScrollParams::new(3, 7).unwrap();
        assert_eq!((p.k(), p.ell()), (2, 2));
        let p = ScrollParams::new(1, 4).unwrap();
        assert_eq!((p.k(), p.ell()), (4, 1));
        assert!(ScrollParams::new(2, 2).is_err());
        assert!(ScrollParams::new(0, 5).is_err());
    }

    #[test]
    fn params_invariants() {
        for n in 1..=8 {
            for big_n in n + 1..=40 {
                let p = ScrollParams::new(n, big_n).unwrap();
                let k = p.k() as usize;
                assert!(k * n <= big_n && big_n < (k + 1) * n);
                assert!((1..=n).contains(&p.ell()));
            }
        }
    }

    #[test]
    fn class_examples() {
        let p = ScrollParams::new(2, 4).unwrap();
        assert_eq!(
            inflectional_class(&p, &numeric(3, 0)).to_string(),
            "L - 2*F"
        );

        for n in 2..=8 {
            let p = ScrollParams::new(n, 2 * n).unwrap();
            let d = 2 * n as i64 + 1;
            let got = inflectional_class(&p, &numeric(d, 1));
            let want = ChowClass::from_terms(n, [(1, rat(1), rat(2 * d))]).unwrap();
            assert_eq!(got, want);
        }

        // g = 1 case (ii) with n = k = 2: L + k(nk + 1)F = L + 10F
        let p = ScrollParams::new(2, 4).unwrap();
        assert_eq!(
            inflectional_class(&p, &numeric(5, 1)).to_string(),
            "L + 10*F"
        );
    }

    #[test]
    fn degree_examples() {
        let p = ScrollParams::new(1, 2).unwrap();
        assert_eq!(inflectional_degree(&p, &numeric(4, 3)), rat(24));
        let p = ScrollParams::new(2, 5).unwrap();
        assert_eq!(inflectional_degree(&p, &numeric(4, 0)), rat(0));
        let p = ScrollParams::new(1, 3).unwrap();
        assert_eq!(inflectional_degree(&p, &numeric(3, 0)), rat(0));
    }

    #[test]
    fn curve_degree_examples() {
        assert_eq!(curve_inflection_degree(3, &numeric(4, 0)).unwrap(), rat(4));
        assert_eq!(curve_inflection_degree(2, &numeric(4, 3)).unwrap(), rat(24));
        for k in 1..10 {
            assert_eq!(
                curve_inflection_degree(k, &numeric(k as i64, 0)).unwrap(),
                rat(0)
            );
        }
        assert!(curve_inflection_degree(0, &numeric(4, 0)).is_err());
    }

    #[test]
    fn double_point_examples() {
        for n in 1..=10 {
            assert!(double_point_check(n, n + 1, 0));
            assert!(double_point_check(n, 2 * n + 1, 1));
        }
        assert!(!double_point_check(2, 6, 0));
    }

    #[test]
    fn classify_examples() {
        let want = UninflectedDescriptor {
            genus: 0,
            degree: 4,
            splitting: vec![2, 2],
            ambient: 5,
        };
        assert_eq!(
            classify_uninflected(2, 2, 2).unwrap(),
            Classification::Uninflected(want)
        );
        assert_eq!(
            classify_uninflected(3, 2, 1).unwrap(),
            Classification::NecessarilyInflected
        );
        for k in 1..6 {
            match classify_uninflected(1, k, 1).unwrap() {
                Classification::Uninflected(u) => {
                    assert_eq!((u.degree, u.ambient, u.splitting), (k, k, vec![k]));
                }
                other => panic!("{other:?}"),
            }
        }
        assert!(classify_uninflected(2, 2, 3).is_err());
        assert!(classify_uninflected(2, 2, 0).is_err());
    }

    #[test]
    fn descriptor_invariants() {
        for n in 1..=6 {
            for k in 1..=6 {
                if let Classification::Uninflected(u) = classify_uninflected(n, k, n).unwrap() {
                    assert_eq!(u.degree, u.splitting.iter().sum::<u64>());
                    assert_eq!(u.ambient, u.degree + n - 1);
                }
            }
        }
    }

    #[test]
    fn class_agrees_with_pipeline() {
        let m = Moduli::formal();
        for n in 1..=6 {
            for big_n in n + 1..=7 * n - 1 {
                let p = ScrollParams::new(n, big_n).unwrap();
                if p.k() > 6 {
                    continue;
                }
                let class = inflectional_class(&p, &m);
                assert_eq!(class, segre_term(n, p.k(), p.ell(), &m).unwrap());
                assert_eq!(class, segre_closed_form(n, p.k(), p.ell(), &m).unwrap());
                assert_eq!(
                    class.degree(&CoeffPoly::d()).unwrap(),
                    inflectional_degree(&p, &m)
                );
            }
        }
    }

    #[test]
    fn degree_specialisations() {
        let m = Moduli::formal();
        for n in 1..=6 {
            for k in 1..=6u64 {
                let big_n = (k as usize + 1) * n - 1;
                if big_n <= n {
                    continue;
                }
                let p = ScrollParams::new(n, big_n).unwrap();
                assert_eq!(p.k(), k);
                assert_eq!(inflectional_degree(&p, &m), pointwise_degree(n, k, &m));
            }
        }
        for k in 2..=8u64 {
            let p = ScrollParams::new(1, k as usize).unwrap();
            assert_eq!(
                inflectional_degree(&p, &m),
                curve_inflection_degree(k, &m).unwrap()
            );
        }
    }

    #[test]
    fn balanced_is_the_only_zero_of_pointwise_degree() {
        for n in 1..=4 {
            for k in 1..=4u64 {
                let zeros: Vec<(i64, i64)> = (0..=6)
                    .flat_map(|g| (1..=60).map(move |d| (d, g)))
                    .filter(|&(d, g)| pointwise_degree(n, k, &numeric(d, g)).is_zero())
                    .collect();
                assert_eq!(zeros, vec![((n as u64 * k) as i64, 0)]);
            }
        }
    }
}
