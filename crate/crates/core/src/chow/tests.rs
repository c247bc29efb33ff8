use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::{rat, Error};

type Class = ChowClass<CoeffPoly>;

fn c(v: i64) -> CoeffPoly {
    CoeffPoly::from(v)
}

fn l(n: usize) -> Class {
    Class::hyperplane(n)
}

fn f(n: usize) -> Class {
    Class::fiber(n)
}

#[test]
fn make_examples() {
    let one = Class::from_terms(2, [(0, c(1), c(0))]).unwrap();
    assert_eq!(one, Class::one(2));

    let k = c(2);
    let case_i = Class::from_terms(3, [(1, c(1), -k.clone())]).unwrap();
    assert_eq!(case_i, &l(3) - &f(3).scale(&k));
    assert_eq!(case_i.to_string(), "L - 2*F");

    let fib = Class::from_terms(2, [(1, c(0), c(1))]).unwrap();
    assert_eq!(fib, f(2));
    assert_eq!(fib.to_string(), "F");
}

#[test]
fn make_rejects_bad_terms() {
    assert_eq!(
        Class::from_terms(2, [(3, c(1), c(0))]),
        Err(Error::CodimOutOfRange { codim: 3, dim: 2 })
    );
    assert_eq!(
        Class::from_terms(2, [(0, c(1), c(1))]),
        Err(Error::FiberTermInCodimZero)
    );
}

#[test]
fn fiber_squared_vanishes() {
    for n in 1..=6 {
        assert!((&f(n) * &f(n)).is_zero());
    }
}

#[test]
fn distributive_example() {
    let a = CoeffPoly::d();
    let x = &Class::one(3) + &f(3).scale(&a);
    let y = &Class::one(3) + &l(3);
    let expected = &(&(&Class::one(3) + &l(3)) + &f(3).scale(&a)) + &(&l(3) * &f(3)).scale(&a);
    assert_eq!(&x * &y, expected);
}

#[test]
fn difference_of_squares_on_surface() {
    let two_f = f(2).scale(&c(2));
    let prod = &(&l(2) - &two_f) * &(&l(2) + &two_f);
    assert_eq!(prod, l(2).pow(2));
}

#[test]
fn mismatched_dimensions() {
    assert_eq!(l(2).checked_mul(&l(3)), Err(Error::DimensionMismatch(2, 3)));
}

#[test]
fn truncation_beyond_dimension() {
    assert!(l(2).pow(3).is_zero());
    assert!(!l(2).pow(2).is_zero());
    assert!((&l(2).pow(2) * &f(2)).is_zero());
}

#[test]
fn inverse_examples() {
    assert_eq!(Class::one(4).inverse().unwrap(), Class::one(4));

    // (1 - bF - L)^{-1} has j-th term L^j + j b L^{j-1} F
    let b = CoeffPoly::g() * c(4) - c(4);
    for n in 1..=6 {
        let x = &(&Class::one(n) - &f(n).scale(&b)) - &l(n);
        let inv = x.inverse().unwrap();
        for j in 1..=n {
            let (alpha, beta) = inv.term(j).unwrap();
            assert_eq!(alpha, &c(1));
            assert_eq!(beta, &(b.clone() * c(j as i64)));
        }
    }

    // curve factor: (1 - eF)^{-1} = 1 + eF
    let e = CoeffPoly::d() + (CoeffPoly::g() - c(1)) * c(8);
    let direct = &Class::one(2) - &f(2).scale(&e);
    assert_eq!(direct.inverse().unwrap(), &Class::one(2) + &f(2).scale(&e));
}

#[test]
fn inverse_rejects_non_units() {
    let x = &Class::scalar(2, c(2)) + &l(2);
    assert_eq!(x.inverse(), Err(Error::NotUnit));
    assert_eq!(l(2).inverse(), Err(Error::NotUnit));
    // a -1 constant term is still a unit
    let y = &Class::scalar(2, c(-1)) + &l(2);
    assert_eq!(&y * &y.inverse().unwrap(), Class::one(2));
}

#[test]
fn term_examples() {
    let x = &Class::one(2) + &f(2).scale(&c(5));
    assert_eq!(x.term(1).unwrap(), (&c(0), &c(5)));
    assert_eq!(Class::one(2).term(0).unwrap(), (&c(1), &c(0)));
    assert!(x.term(3).is_err());
}

#[test]
fn degree_examples() {
    let y = &l(2) - &f(2).scale(&c(2));
    assert_eq!(y.degree_at(&rat(3), &rat(0)).unwrap(), rat(1));
    for n in 1..=5 {
        assert_eq!(f(n).degree_at(&rat(7), &rat(2)).unwrap(), rat(1));
        assert_eq!(
            l(n).pow(n as u32).degree_at(&rat(7), &rat(2)).unwrap(),
            rat(7)
        );
    }
    let mixed = &Class::one(2) + &l(2);
    assert_eq!(
        mixed.degree_at(&rat(3), &rat(0)),
        Err(Error::NotHomogeneous)
    );
    // formal degree: L + dF on a surface has degree 2d
    let formal = &l(2) + &f(2).scale(&CoeffPoly::d());
    assert_eq!(
        formal.degree(&CoeffPoly::d()).unwrap(),
        CoeffPoly::d() * c(2)
    );
}

#[test]
fn numeric_coefficients() {
    let half = BigRational::new(1.into(), 2.into());
    let x = &ChowClass::<BigRational>::one(2) - &ChowClass::fiber(2).scale(&half);
    let inv = x.inverse().unwrap();
    assert_eq!(&x * &inv, ChowClass::one(2));
    assert_eq!(inv.to_string(), "1 + (1/2)*F");
}

#[test]
fn display() {
    let x = Class::from_terms(
        3,
        [
            (0, c(1), c(0)),
            (2, c(1), CoeffPoly::d() * c(2) - c(12)),
            (3, c(-3), CoeffPoly::g()),
        ],
    )
    .unwrap();
    assert_eq!(x.to_string(), "1 + L^2 + (2*d - 12)*L*F - 3*L^3 + g*L^2*F");
    assert_eq!(Class::zero(2).to_string(), "0");
}

fn coeff_poly() -> impl Strategy<Value = CoeffPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), -6i64..=6), 0..5).prop_map(|ts| {
        ts.into_iter().fold(CoeffPoly::zero(), |acc, ((a, b), v)| {
            acc + CoeffPoly::monomial(v, a, b)
        })
    })
}

fn class_on(n: usize) -> impl Strategy<Value = Class> {
    prop::collection::vec((coeff_poly(), coeff_poly()), n + 1).prop_map(move |pieces| {
        let terms = pieces
            .into_iter()
            .enumerate()
            .map(|(j, (a, b))| (j, a, if j == 0 { CoeffPoly::zero() } else { b }));
        Class::from_terms(n, terms).unwrap()
    })
}

fn class_triple() -> impl Strategy<Value = (Class, Class, Class)> {
    (1usize..=6).prop_flat_map(|n| (class_on(n), class_on(n), class_on(n)))
}

fn unit_class() -> impl Strategy<Value = Class> {
    (1usize..=6).prop_flat_map(class_on).prop_map(|x| {
        let (a0, _) = x.term(0).unwrap();
        let shift = Class::scalar(x.dim(), CoeffPoly::one() - a0.clone());
        &x + &shift
    })
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=7).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

proptest! {
    #[test]
    fn coeff_ring_axioms(a in coeff_poly(), b in coeff_poly(), cc in coeff_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &cc, &a + &(&b + &cc));
        prop_assert_eq!(&(&a * &b) * &cc, &a * &(&b * &cc));
        prop_assert_eq!(&a * &(&b + &cc), &(&a * &b) + &(&a * &cc));
        prop_assert!((&a - &a).is_zero());
        for (_, v) in a.terms() {
            prop_assert!(!v.is_zero());
        }
    }

    #[test]
    fn coeff_evaluation_is_homomorphism(a in coeff_poly(), b in coeff_poly(), d in small_rat(), g in small_rat()) {
        prop_assert_eq!((&a * &b).eval(&d, &g), a.eval(&d, &g) * b.eval(&d, &g));
        prop_assert_eq!((&a + &b).eval(&d, &g), a.eval(&d, &g) + b.eval(&d, &g));
    }

    #[test]
    fn class_ring_axioms((x, y, z) in class_triple()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &Class::one(x.dim()), x.clone());
    }

    #[test]
    fn class_evaluation_commutes((x, y, _z) in class_triple(), d in small_rat(), g in small_rat()) {
        prop_assert_eq!((&x * &y).evaluate(&d, &g), &x.evaluate(&d, &g) * &y.evaluate(&d, &g));
    }

    #[test]
    fn grading_is_additive(n in 1usize..=6, i in 0usize..=6, j in 0usize..=6, a in coeff_poly(), b in coeff_poly()) {
        let i = i.min(n);
        let j = j.min(n);
        let x = Class::from_terms(n, [(i, a.clone(), if i == 0 { CoeffPoly::zero() } else { b.clone() })]).unwrap();
        let y = Class::from_terms(n, [(j, b, if j == 0 { CoeffPoly::zero() } else { a })]).unwrap();
        let support = (&x * &y).support();
        prop_assert!(support.iter().all(|&s| s == i + j));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn inverse_is_two_sided(x in unit_class()) {
        let inv = x.inverse().unwrap();
        prop_assert_eq!(&x * &inv, Class::one(x.dim()));
        prop_assert_eq!(&inv * &x, Class::one(x.dim()));
    }
}
