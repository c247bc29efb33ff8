use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::divisor::{determinant_divisor, DivisorReport};
use super::scan::{rank_scan, SampleSpec, ScanReport};
use super::wronskian::{wronskian_weights, RationalCurve, WronskianReport};
use crate::chow::{ChowClass, Moduli};
use crate::error::{Error, Result};
use crate::formulas::{
    curve_inflection_degree, inflectional_class, inflectional_degree, ScrollParams,
};
use crate::scroll::DecomposableScroll;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
    /// The oracle shows `Phi_k` of the wrong dimension (or everywhere), so
    /// the formula's hypotheses do not hold.
    HypothesisViolated,
    /// The oracle cannot confirm or refute the formula, e.g. a finite
    /// locus that random sampling is not expected to hit.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
            Verdict::HypothesisViolated => "HYPOTHESIS-VIOLATED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// The oracle run for a given scroll, with its full report.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightedLocusReport {
    Wronskian(WronskianReport),
    Divisor(DivisorReport),
    Scan(ScanReport),
}

impl WeightedLocusReport {
    pub fn oracle_name(&self) -> &'static str {
        match self {
            WeightedLocusReport::Wronskian(_) => "wronskian",
            WeightedLocusReport::Divisor(_) => "determinant-divisor",
            WeightedLocusReport::Scan(_) => "rank-scan",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossValidation {
    pub k: u32,
    pub n: usize,
    pub ambient: usize,
    pub degree: u64,
    pub formula_class: ChowClass<BigRational>,
    pub formula_degree: BigRational,
    pub oracle: WeightedLocusReport,
    /// Class found by the oracle, when it measures one.
    pub oracle_class: Option<ChowClass<BigRational>>,
    pub oracle_degree: Option<BigRational>,
    pub verdict: Verdict,
    pub reason: String,
}

fn degree_of(class: &ChowClass<BigRational>, d: u64) -> BigRational {
    class
        .degree(&BigRational::from_integer(d.into()))
        .expect("inflectional classes are homogeneous")
}

fn check_k(given: Option<u32>, derived: u64) -> Result<u32> {
    let derived = derived as u32;
    match given {
        Some(k) if k != derived => Err(Error::InconsistentJetOrder { given: k, derived }),
        _ => Ok(derived),
    }
}

/// Compares the closed-form class and degree of `Phi_k` on a genus-0 scroll
/// with the applicable oracle: the Wronskian for curves, the determinant
/// divisor when `N = kn`, and a rank scan otherwise. `k` is always
/// `floor(N/n)`; a supplied `k` must agree with it.
pub fn cross_validate(
    x: &DecomposableScroll,
    k: Option<u32>,
    spec: SampleSpec,
) -> Result<CrossValidation> {
    let params = ScrollParams::new(x.n(), x.ambient())
        .map_err(|_| Error::InvalidScroll(format!("{x} spans only P^{}", x.ambient())))?;
    let k = check_k(k, params.k())?;
    let moduli = Moduli::integral(x.degree() as i64, 0);
    let formula_class = inflectional_class(&params, &moduli);
    let formula_degree = inflectional_degree(&params, &moduli);
    let base = |oracle, oracle_class, oracle_degree, verdict, reason: String| CrossValidation {
        k,
        n: x.n(),
        ambient: x.ambient(),
        degree: x.degree(),
        formula_class: formula_class.clone(),
        formula_degree: formula_degree.clone(),
        oracle,
        oracle_class,
        oracle_degree,
        verdict,
        reason,
    };

    if x.n() == 1 {
        let report = wronskian_weights(&RationalCurve::from_scroll(x)?, k)?;
        let (weight, verdict, reason) = curve_outcome(&report, &formula_degree);
        return Ok(base(
            WeightedLocusReport::Wronskian(report),
            None,
            weight,
            verdict,
            reason,
        ));
    }

    if x.ambient() == k as usize * x.n() {
        let report = determinant_divisor(x, k)?;
        return Ok(match &report.divisor {
            None => base(
                WeightedLocusReport::Divisor(report.clone()),
                None,
                None,
                Verdict::HypothesisViolated,
                "jet determinant vanishes identically: generic rank is below kn+1".into(),
            ),
            Some(div) => {
                let class = div.class.to_chow(x.n());
                let deg = degree_of(&class, x.degree());
                let (verdict, reason) = if class == formula_class {
                    (
                        Verdict::Match,
                        format!("oracle class {class} equals formula class"),
                    )
                } else {
                    (
                        Verdict::Mismatch,
                        format!("oracle class {class} differs from formula class {formula_class}"),
                    )
                };
                base(
                    WeightedLocusReport::Divisor(report.clone()),
                    Some(class),
                    Some(deg),
                    verdict,
                    reason,
                )
            }
        });
    }

    let report = rank_scan(x, k, spec)?;
    let expected_dim = x.n() - params.ell();
    let found = report.dimension_lower_bound();
    let (verdict, reason) = match found {
        Some(dim) if dim > expected_dim => (
            Verdict::HypothesisViolated,
            format!("locus has dimension at least {dim}, expected {expected_dim}"),
        ),
        Some(_) if formula_degree.is_zero() => (
            Verdict::HypothesisViolated,
            "formula degree is 0 but inflected points exist, so the locus is excess".into(),
        ),
        Some(dim) => (
            Verdict::Match,
            format!(
                "inflected points found, dimension bound {dim} within the expected {expected_dim}"
            ),
        ),
        None if formula_degree.is_zero() => (
            Verdict::Match,
            "formula degree 0 and no inflected sample found".into(),
        ),
        None => (
            Verdict::Inconclusive,
            format!("formula degree {formula_degree} but no inflected sample found"),
        ),
    };
    Ok(base(
        WeightedLocusReport::Scan(report),
        None,
        None,
        verdict,
        reason,
    ))
}

fn curve_outcome(
    report: &WronskianReport,
    formula_degree: &BigRational,
) -> (Option<BigRational>, Verdict, String) {
    match report.total() {
        None => (
            None,
            Verdict::HypothesisViolated,
            "Wronskian vanishes identically: the basis is dependent".into(),
        ),
        Some(total) => {
            let weight = BigRational::from_integer(total.into());
            let (verdict, reason) = if weight == *formula_degree {
                (
                    Verdict::Match,
                    format!("total weight {total} equals formula degree"),
                )
            } else {
                (
                    Verdict::Mismatch,
                    format!("total weight {total} differs from formula degree {formula_degree}"),
                )
            };
            (Some(weight), verdict, reason)
        }
    }
}

/// Cross-validation for a rational curve given by an explicit basis, which
/// need not be linearly normal: the formula side is the classical count
/// `(k+1)(d + k(g-1))` at `g = 0` with `k` the span of the basis.
pub fn cross_validate_curve(curve: &RationalCurve, k: Option<u32>) -> Result<CrossValidation> {
    let k = check_k(k, curve.span() as u64)?;
    let d = curve.degree() as i64;
    let moduli = Moduli::integral(d, 0);
    let formula_degree = curve_inflection_degree(k as u64, &moduli)?;
    let beta = &formula_degree - BigRational::from_integer(d.into());
    let formula_class = ChowClass::from_terms(1, [(1, BigRational::from_integer(1.into()), beta)])?;
    let report = wronskian_weights(curve, k)?;
    let (oracle_degree, verdict, reason) = curve_outcome(&report, &formula_degree);
    Ok(CrossValidation {
        k,
        n: 1,
        ambient: curve.span(),
        degree: d as u64,
        formula_class,
        formula_degree,
        oracle: WeightedLocusReport::Wronskian(report),
        oracle_class: None,
        oracle_degree,
        verdict,
        reason,
    })
}
