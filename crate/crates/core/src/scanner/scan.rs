use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::RankCertificate;
use crate::rat;
use crate::scroll::{BaseChart, DecomposableScroll, ScrollPoint};

pub const DEFAULT_SEED: u64 = 1729;
pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleSource {
    /// Pseudo-random `u` and pseudo-random nonzero values on the fiber
    /// coordinates outside the zero pattern.
    Random,
    /// `u` in `{0, 1, -1, 2, -2}` or the point at infinity, with all other
    /// fiber coordinates 1.
    Structured,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub point: ScrollPoint,
    pub source: SampleSource,
    /// Indices (in `0..n`) of the fiber coordinates forced to zero.
    pub zero_pattern: Vec<usize>,
    pub rank: usize,
    pub corank: usize,
    /// Present for inflected points only.
    pub certificate: Option<RankCertificate>,
}

impl Evaluation {
    pub fn is_inflected(&self) -> bool {
        self.corank > 0
    }

    /// Dimension of the coordinate stratum `{w_j = 0, j in pattern}` when the
    /// point is a generic sample of it, i.e. for random samples.
    pub fn stratum_dim(&self, n: usize) -> Option<usize> {
        (self.source == SampleSource::Random).then(|| n - self.zero_pattern.len())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub scroll: DecomposableScroll,
    pub k: u32,
    pub spec: SampleSpec,
    pub evaluations: Vec<Evaluation>,
}

impl ScanReport {
    pub fn inflected(&self) -> impl Iterator<Item = &Evaluation> {
        self.evaluations.iter().filter(|e| e.is_inflected())
    }

    pub fn inflected_count(&self) -> usize {
        self.inflected().count()
    }

    /// Probabilistic lower bound on `dim Phi_k`: an inflected random sample
    /// of an irreducible stratum puts the whole stratum in the closed locus,
    /// barring an unlucky draw.
    pub fn dimension_lower_bound(&self) -> Option<usize> {
        let n = self.scroll.n();
        self.inflected()
            .map(|e| e.stratum_dim(n).unwrap_or(0))
            .max()
    }

    pub fn conclusion(&self) -> String {
        match self.dimension_lower_bound() {
            None => "no inflected sample found".to_string(),
            Some(dim) => format!(
                "{} of {} points inflected; locus has dimension at least {dim}",
                self.inflected_count(),
                self.evaluations.len()
            ),
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> BigRational {
    loop {
        let p: i64 = rng.gen_range(-20..=20);
        if nonzero && p == 0 {
            continue;
        }
        let q: i64 = rng.gen_range(1..=9);
        return BigRational::new(BigInt::from(p), BigInt::from(q));
    }
}

fn fiber_values(
    n: usize,
    iota: usize,
    pattern: u32,
    mut value: impl FnMut() -> BigRational,
) -> (Vec<BigRational>, Vec<usize>) {
    let others: Vec<usize> = (0..n).filter(|&j| j != iota).collect();
    let mut zeros = Vec::new();
    let v = others
        .iter()
        .enumerate()
        .map(|(bit, &j)| {
            if pattern >> bit & 1 == 1 {
                zeros.push(j);
                BigRational::zero()
            } else {
                value()
            }
        })
        .collect();
    (v, zeros)
}

fn structured_points(x: &DecomposableScroll) -> Vec<(ScrollPoint, Vec<usize>)> {
    let n = x.n();
    let bases: Vec<(BaseChart, BigRational)> = [0, 1, -1, 2, -2]
        .into_iter()
        .map(|u| (BaseChart::Zero, rat(u)))
        .chain(std::iter::once((BaseChart::Infinity, rat(0))))
        .collect();
    let mut out = Vec::new();
    for (base, u) in &bases {
        for iota in 0..n {
            for pattern in 0..1u32 << (n - 1) {
                let (v, zeros) = fiber_values(n, iota, pattern, || rat(1));
                out.push((ScrollPoint::new(*base, u.clone(), iota, v), zeros));
            }
        }
    }
    out
}

/// Evaluates the jet rank at the structured points and at `spec.samples`
/// seeded random points spread over all charts. Sample `s` zeroes the
/// fiber coordinates selected by the bits of `s mod 2^(n-1)`.
pub fn rank_scan(x: &DecomposableScroll, k: u32, spec: SampleSpec) -> Result<ScanReport> {
    x.check_jet_order(k)?;
    let n = x.n();
    let full = k as usize * n + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut points: Vec<(ScrollPoint, Vec<usize>, SampleSource)> = structured_points(x)
        .into_iter()
        .map(|(p, z)| (p, z, SampleSource::Structured))
        .collect();
    let patterns = 1u32 << (n - 1);
    for s in 0..spec.samples {
        let base = if rng.gen_bool(0.5) {
            BaseChart::Zero
        } else {
            BaseChart::Infinity
        };
        let iota = rng.gen_range(0..n);
        let u = random_rational(&mut rng, false);
        let (v, zeros) = fiber_values(n, iota, s as u32 % patterns, || {
            random_rational(&mut rng, true)
        });
        points.push((
            ScrollPoint::new(base, u, iota, v),
            zeros,
            SampleSource::Random,
        ));
    }

    let evaluations = points
        .into_iter()
        .map(|(point, zero_pattern, source)| {
            let m = x.jet_matrix(k, &point)?;
            let cert = m.rank_certificate();
            let rank = cert.rank;
            Ok(Evaluation {
                point,
                source,
                zero_pattern,
                rank,
                corank: full - rank,
                certificate: (rank < full).then_some(cert),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport {
        scroll: x.clone(),
        k,
        spec,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scroll(d: &[u32]) -> DecomposableScroll {
        DecomposableScroll::new(d.to_vec()).unwrap()
    }

    #[test]
    fn balanced_surface_is_clean() {
        let r = rank_scan(&scroll(&[2, 2]), 2, SampleSpec::default()).unwrap();
        assert_eq!(r.evaluations.len(), 200 + 6 * 2 * 2);
        assert_eq!(r.inflected_count(), 0);
        assert_eq!(r.conclusion(), "no inflected sample found");
    }

    #[test]
    fn unbalanced_surface_is_inflected_along_the_directrix() {
        let x = scroll(&[1, 3]);
        let r = rank_scan(
            &x,
            2,
            SampleSpec {
                samples: 100,
                seed: 3,
            },
        )
        .unwrap();
        for e in &r.evaluations {
            let w = e.point.fiber_coords();
            let on_directrix = w[1].is_zero();
            assert_eq!(e.is_inflected(), on_directrix, "{}", e.point);
            if let Some(c) = &e.certificate {
                assert!(c.verify(&x.jet_matrix(2, &e.point).unwrap().entries));
                assert_eq!(e.corank, 1);
            }
        }
        assert_eq!(r.dimension_lower_bound(), Some(1));
    }

    #[test]
    fn deterministic_for_a_seed() {
        let x = scroll(&[1, 2, 2]);
        let a = rank_scan(
            &x,
            1,
            SampleSpec {
                samples: 30,
                seed: 11,
            },
        )
        .unwrap();
        let b = rank_scan(
            &x,
            1,
            SampleSpec {
                samples: 30,
                seed: 11,
            },
        )
        .unwrap();
        assert_eq!(a, b);
        let c = rank_scan(
            &x,
            1,
            SampleSpec {
                samples: 30,
                seed: 12,
            },
        )
        .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_large_jet_order() {
        assert!(rank_scan(&scroll(&[2, 2]), 3, SampleSpec::default()).is_err());
    }
}
