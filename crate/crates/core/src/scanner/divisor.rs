use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chow::ChowClass;
use crate::error::{Error, Result};
use crate::linalg::determinant_expansion;
use crate::poly::{MPoly, UPoly};
use crate::scroll::{BaseChart, DecomposableScroll};

/// The class `a L + b F` of a divisor on a scroll.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub fn to_chow(self, dim: usize) -> ChowClass<BigRational> {
        let r = |x: i64| BigRational::from_integer(x.into());
        ChowClass::from_terms(dim, [(1, r(self.a), r(self.b))])
            .expect("codimension 1 on a positive-dimensional scroll")
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_chow(1))
    }
}

/// The jet determinant in one affine chart, over the variables
/// `u, v_1, ..., v_n` (the chart's own `v_iota` never occurs).
#[derive(Clone, Debug, PartialEq)]
pub struct ChartDeterminant {
    pub base: BaseChart,
    pub fiber_chart: usize,
    pub det: MPoly,
}

impl ChartDeterminant {
    pub fn variable_names(&self, n: usize) -> Vec<String> {
        let u = match self.base {
            BaseChart::Zero => "u".to_string(),
            BaseChart::Infinity => "u~".to_string(),
        };
        std::iter::once(u)
            .chain((1..=n).map(|j| format!("v{j}")))
            .collect()
    }

    pub fn display(&self, n: usize) -> String {
        let names = self.variable_names(n);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        self.det.fmt_with(&refs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DivisorComponent {
    /// `sum_i w_i h_i(u) = 0`, meeting each fiber in a hyperplane.
    Horizontal {
        coefficients: Vec<UPoly>,
        multiplicity: u32,
    },
    /// The fibers over the roots of `factor`.
    Fibers {
        factor: UPoly,
        multiplicity: u32,
    },
    FiberAtInfinity {
        multiplicity: u32,
    },
}

impl fmt::Display for DivisorComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorComponent::Horizontal {
                coefficients,
                multiplicity,
            } => {
                write!(
                    f,
                    "{{{} = 0}} x{multiplicity}",
                    format_fiber_form(coefficients)
                )
            }
            DivisorComponent::Fibers {
                factor,
                multiplicity,
            } => {
                write!(f, "fibers {{{} = 0}} x{multiplicity}", factor.fmt_in("u"))
            }
            DivisorComponent::FiberAtInfinity { multiplicity } => {
                write!(f, "fiber at infinity x{multiplicity}")
            }
        }
    }
}

/// `sum_i w_i h_i(u)` as text, e.g. `w2` or `(u - 1)*w1 + w2`.
pub fn format_fiber_form(coefficients: &[UPoly]) -> String {
    let mut out = String::new();
    for (i, h) in coefficients.iter().enumerate() {
        if h.is_zero() {
            continue;
        }
        let w = format!("w{}", i + 1);
        let term = if h.is_one() {
            w
        } else if h.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
            && !h.leading().is_some_and(|c| c < &BigRational::zero())
        {
            format!("{}*{w}", h.fmt_in("u"))
        } else {
            format!("({})*{w}", h.fmt_in("u"))
        };
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Divisor {
    pub class: DivisorClass,
    /// Coefficient of `w_i` in the chart-0 equation, normalised so that the
    /// first nonzero one is monic.
    pub equation: Vec<UPoly>,
    pub components: Vec<DivisorComponent>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorReport {
    pub scroll: DecomposableScroll,
    pub k: u32,
    pub charts: Vec<ChartDeterminant>,
    /// `None` when the determinant vanishes identically, so the jet map
    /// never reaches rank `kn + 1`.
    pub divisor: Option<Divisor>,
}

impl DivisorReport {
    pub fn generic_rank_fails(&self) -> bool {
        self.divisor.is_none()
    }
}

/// Coefficients `p_i(u)` of `w_i` in a chart determinant, which must have
/// total degree at most 1 in the fiber coordinates.
fn fiber_coefficients(det: &MPoly, n: usize, iota: usize) -> Result<Vec<UPoly>> {
    let mut out = vec![UPoly::zero(); n];
    for (exps, mut poly) in det.collect_in(0) {
        let vdeg: u32 = exps[1..].iter().sum();
        let slot = match vdeg {
            0 => iota,
            1 => exps[1..]
                .iter()
                .position(|&e| e == 1)
                .expect("one fiber variable"),
            _ => {
                return Err(Error::NonlinearDeterminant(format!(
                    "term of fiber degree {vdeg} in chart iota={}",
                    iota + 1
                )))
            }
        };
        std::mem::swap(&mut out[slot], &mut poly);
    }
    Ok(out)
}

/// `Some(c)` with `q = c * p` componentwise, for a nonzero vector `p`.
fn proportionality(p: &[UPoly], q: &[UPoly]) -> Option<BigRational> {
    let i = p.iter().position(|x| !x.is_zero())?;
    let c = q[i].leading()? / p[i].leading()?;
    p.iter().zip(q).all(|(x, y)| x.scale(&c) == *y).then_some(c)
}

fn gcd_all(polys: &[UPoly]) -> UPoly {
    polys.iter().fold(UPoly::zero(), |acc, p| acc.gcd(p))
}

/// The degeneracy divisor of the k-jet map on a scroll with `N = kn`,
/// where the jet matrix is square. The determinant is computed in all `2n`
/// charts; its `F`-coefficient is read from the `u`-degrees of the fiber
/// coefficients against the summand degrees, and the charts must agree.
pub fn determinant_divisor(x: &DecomposableScroll, k: u32) -> Result<DivisorReport> {
    if k == 0 {
        return Err(Error::InvalidJetOrder);
    }
    let n = x.n();
    let kn = k as usize * n;
    if x.ambient() != kn {
        return Err(Error::NotSquare {
            ambient: x.ambient(),
            kn,
        });
    }
    let mut charts = Vec::with_capacity(2 * n);
    for base in [BaseChart::Zero, BaseChart::Infinity] {
        for iota in 0..n {
            let m = x.symbolic_jet_matrix(k, base, iota)?;
            charts.push(ChartDeterminant {
                base,
                fiber_chart: iota,
                det: determinant_expansion(&m),
            });
        }
    }
    let report = |divisor| DivisorReport {
        scroll: x.clone(),
        k,
        charts: charts.clone(),
        divisor,
    };
    if charts.iter().all(|c| c.det.is_zero()) {
        return Ok(report(None));
    }
    if let Some(c) = charts.iter().find(|c| c.det.is_zero()) {
        return Err(Error::ChartDisagreement(format!(
            "determinant vanishes identically only in chart ({:?}, iota={})",
            c.base,
            c.fiber_chart + 1
        )));
    }

    let vectors = charts
        .iter()
        .map(|c| fiber_coefficients(&c.det, n, c.fiber_chart))
        .collect::<Result<Vec<_>>>()?;
    let (zero_side, inf_side) = vectors.split_at(n);
    for (side, name) in [(zero_side, "0"), (inf_side, "infinity")] {
        for (iota, v) in side.iter().enumerate().skip(1) {
            if proportionality(&side[0], v).is_none() {
                return Err(Error::ChartDisagreement(format!(
                    "fiber charts 1 and {} over base chart {name} give different equations",
                    iota + 1
                )));
            }
        }
    }
    let p = &zero_side[0];
    let q = &inf_side[0];

    let a = x.degrees();
    let mut b: Option<i64> = None;
    for i in (0..n).filter(|&i| !p[i].is_zero()) {
        let Some(ord) = q[i].valuation() else {
            return Err(Error::ChartDisagreement(format!(
                "coefficient of w{} vanishes only at infinity",
                i + 1
            )));
        };
        let bi = (p[i].degree().unwrap() + ord) as i64 - a[i] as i64;
        match b {
            None => b = Some(bi),
            Some(b0) if b0 != bi => {
                return Err(Error::ChartDisagreement(format!(
                    "F-coefficient read as {b0} and {bi} from different summands"
                )))
            }
            Some(_) => {}
        }
    }
    let b = b.expect("nonzero determinant has a nonzero coefficient");
    let reversed: Vec<UPoly> = (0..n)
        .map(|i| {
            if p[i].is_zero() {
                UPoly::zero()
            } else {
                p[i].reversed((a[i] as i64 + b) as usize)
            }
        })
        .collect();
    if proportionality(&reversed, q).is_none() {
        return Err(Error::ChartDisagreement(
            "chart at infinity is not the reversal of chart 0".into(),
        ));
    }

    let g0 = gcd_all(p);
    let ginf = gcd_all(q);
    let mut equation: Vec<UPoly> = p
        .iter()
        .map(|h| {
            if h.is_zero() {
                UPoly::zero()
            } else {
                h.exact_div(&g0)
            }
        })
        .collect();
    let lead = equation
        .iter()
        .find(|h| !h.is_zero())
        .and_then(|h| h.leading().cloned())
        .unwrap();
    equation = equation.iter().map(|h| h.scale(&lead.recip())).collect();

    let mut components = vec![DivisorComponent::Horizontal {
        coefficients: equation.clone(),
        multiplicity: 1,
    }];
    components.extend(
        g0.squarefree_decomposition()
            .into_iter()
            .map(|(factor, multiplicity)| DivisorComponent::Fibers {
                factor,
                multiplicity,
            }),
    );
    if let Some(m) = ginf.valuation().filter(|&m| m > 0) {
        components.push(DivisorComponent::FiberAtInfinity {
            multiplicity: m as u32,
        });
    }

    Ok(report(Some(Divisor {
        class: DivisorClass { a: 1, b },
        equation,
        components,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::Moduli;
    use crate::formulas::{inflectional_class, ScrollParams};

    fn scroll(d: &[u32]) -> DecomposableScroll {
        DecomposableScroll::new(d.to_vec()).unwrap()
    }

    fn formula(x: &DecomposableScroll) -> ChowClass<BigRational> {
        let p = ScrollParams::new(x.n(), x.ambient()).unwrap();
        inflectional_class(&p, &Moduli::integral(x.degree() as i64, 0))
    }

    #[test]
    fn case_one_surface() {
        let x = scroll(&[1, 2]);
        let r = determinant_divisor(&x, 2).unwrap();
        assert_eq!(r.charts[0].display(2), "-2*v2");
        let d = r.divisor.unwrap();
        assert_eq!(d.class, DivisorClass { a: 1, b: -2 });
        assert_eq!(d.class.to_string(), "L - 2*F");
        assert_eq!(d.class.to_chow(2), formula(&x));
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].to_string(), "{w2 = 0} x1");
    }

    #[test]
    fn case_one_threefold() {
        let x = scroll(&[1, 1, 2]);
        let r = determinant_divisor(&x, 2).unwrap();
        let d = r.divisor.unwrap();
        assert_eq!(d.class.to_string(), "L - 2*F");
        assert_eq!(d.class.to_chow(3), formula(&x));
        assert_eq!(
            d.components,
            vec![DivisorComponent::Horizontal {
                coefficients: vec![UPoly::zero(), UPoly::zero(), UPoly::one()],
                multiplicity: 1
            }]
        );
    }

    #[test]
    fn rational_normal_curves() {
        for dd in 2..=5u32 {
            let x = scroll(&[dd]);
            let d = determinant_divisor(&x, dd).unwrap().divisor.unwrap();
            assert_eq!(d.class.to_chow(1), formula(&x));
            assert_eq!(
                d.class
                    .to_chow(1)
                    .degree(&BigRational::from_integer(dd.into()))
                    .unwrap(),
                BigRational::zero()
            );
        }
    }

    #[test]
    fn degenerate_and_rejected() {
        assert!(determinant_divisor(&scroll(&[1, 4]), 3)
            .unwrap()
            .generic_rank_fails());
        assert!(matches!(
            determinant_divisor(&scroll(&[2, 2]), 2),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn determinants_are_linear_in_fiber_coordinates() {
        for x in [
            scroll(&[1, 2]),
            scroll(&[2, 3]),
            scroll(&[1, 1, 2]),
            scroll(&[3, 4]),
        ] {
            let k = (x.ambient() / x.n()) as u32;
            let r = determinant_divisor(&x, k).unwrap();
            for c in &r.charts {
                assert!(c.det.terms().all(|(e, _)| e[1..].iter().sum::<u32>() <= 1));
            }
        }
    }
}
