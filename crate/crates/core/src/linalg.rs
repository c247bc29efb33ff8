//! Exact linear algebra over Q and over polynomial rings.

use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Result of an exact rank computation, together with a witness that can be
/// checked without redoing the elimination: a nonsingular `rank x rank`
/// minor proves `rank >= r`, and `cols - rank` independent kernel vectors
/// prove `rank <= r`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankCertificate {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
    /// Column-kernel basis; vector `t` is 1 on the t-th free column and 0 on
    /// the other free columns.
    pub kernel: Vec<Vec<BigRational>>,
}

impl RankCertificate {
    pub fn free_cols(&self, cols: usize) -> Vec<usize> {
        (0..cols).filter(|c| !self.pivot_cols.contains(c)).collect()
    }

    /// Re-checks the certificate against `m` by matrix-vector products and a
    /// rational Gaussian determinant.
    pub fn verify(&self, m: &[Vec<BigRational>]) -> bool {
        let cols = m.first().map_or(0, Vec::len);
        if self.pivot_rows.len() != self.rank || self.pivot_cols.len() != self.rank {
            return false;
        }
        if self.pivot_rows.iter().any(|&r| r >= m.len())
            || self.pivot_cols.iter().any(|&c| c >= cols)
        {
            return false;
        }
        let free = self.free_cols(cols);
        if self.kernel.len() != free.len() {
            return false;
        }
        for (t, x) in self.kernel.iter().enumerate() {
            if x.len() != cols {
                return false;
            }
            for (s, &f) in free.iter().enumerate() {
                let want = if s == t {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                if x[f] != want {
                    return false;
                }
            }
            let kills = m.iter().all(|row| {
                row.iter()
                    .zip(x)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
                    .is_zero()
            });
            if !kills {
                return false;
            }
        }
        let minor: Vec<Vec<BigRational>> = self
            .pivot_rows
            .iter()
            .map(|&r| self.pivot_cols.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        !determinant_gauss(&minor).is_zero()
    }
}

fn integral_rows(m: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Exact rank by fraction-free (Bareiss) elimination on the row-scaled
/// integer matrix. Pivots are the first nonzero entry in each column, so
/// the result is deterministic.
pub fn rank_certificate(m: &[Vec<BigRational>]) -> RankCertificate {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = integral_rows(m);
    let mut order: Vec<usize> = (0..rows).collect();
    let mut prev = BigInt::one();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        order.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss step was not exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    let rank = r;

    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for i in (0..rank).rev() {
                let pc = pivot_cols[i];
                let s = (pc + 1..cols).fold(BigRational::zero(), |acc, j| {
                    acc + BigRational::from_integer(a[i][j].clone()) * &x[j]
                });
                x[pc] = -s / BigRational::from_integer(a[i][pc].clone());
            }
            x
        })
        .collect();

    let mut pivot_rows = order[..rank].to_vec();
    pivot_rows.sort_unstable();

    RankCertificate {
        rank,
        pivot_rows,
        pivot_cols,
        kernel,
    }
}

pub fn rank(m: &[Vec<BigRational>]) -> usize {
    rank_certificate(m).rank
}

/// Determinant by ordinary Gaussian elimination over Q.
pub fn determinant_gauss(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    assert!(
        m.iter().all(|r| r.len() == n),
        "determinant of a non-square matrix"
    );
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] / &pivot;
            let (upper, lower) = a.split_at_mut(i);
            for (x, y) in lower[0][c..].iter_mut().zip(&upper[c][c..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

/// Division-free determinant over any commutative ring, by expansion along
/// rows with the partial results memoised on the set of used columns.
/// Cost is `O(2^n n)` ring operations, fine for the matrices met here
/// (n <= 16).
pub fn determinant_expansion<T>(m: &[Vec<T>]) -> T
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    let n = m.len();
    assert!(
        m.iter().all(|r| r.len() == n),
        "determinant of a non-square matrix"
    );
    assert!(n <= 20, "matrix too large for subset expansion");
    assert!(n > 0, "determinant of an empty matrix");
    let full = (1usize << n) - 1;
    let mut partial: Vec<Option<T>> = vec![None; 1 << n];
    for (c, entry) in m[0].iter().enumerate() {
        if !entry.is_zero() {
            partial[1 << c] = Some(entry.clone());
        }
    }
    for mask in 1..full {
        let row = mask.count_ones() as usize;
        let acc = match &partial[mask] {
            Some(v) if !v.is_zero() => v.clone(),
            _ => continue,
        };
        for (c, entry) in m[row].iter().enumerate() {
            if mask & (1 << c) != 0 || entry.is_zero() {
                continue;
            }
            let mut term = acc.clone() * entry.clone();
            // placing column c after the used columns above it
            if (mask >> (c + 1)).count_ones() % 2 == 1 {
                term = -term;
            }
            let slot = &mut partial[mask | (1 << c)];
            *slot = Some(match slot.take() {
                Some(prev) => prev + term,
                None => term,
            });
        }
    }
    partial[full].take().unwrap_or_else(T::zero)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::poly::MPoly;
    use crate::rat;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    /// Leibniz formula, summing over all permutations.
    fn leibniz(m: &[Vec<BigRational>]) -> BigRational {
        fn go(
            m: &[Vec<BigRational>],
            row: usize,
            used: &mut Vec<bool>,
            sign: i64,
            acc: BigRational,
            out: &mut BigRational,
        ) {
            let n = m.len();
            if row == n {
                *out += acc * rat(sign);
                return;
            }
            for c in 0..n {
                if used[c] {
                    continue;
                }
                let inv = (c + 1..n).filter(|&j| used[j]).count() as i64;
                used[c] = true;
                let s = if inv % 2 == 1 { -sign } else { sign };
                go(m, row + 1, used, s, acc.clone() * &m[row][c], out);
                used[c] = false;
            }
        }
        let mut out = BigRational::zero();
        go(
            m,
            0,
            &mut vec![false; m.len()],
            1,
            BigRational::one(),
            &mut out,
        );
        out
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&mat(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&mat(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]])), 2);
        let c = rank_certificate(&mat(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]]));
        assert_eq!(c.pivot_cols, vec![0, 1]);
        assert_eq!(c.kernel, vec![vec![rat(0), rat(-2), rat(1)]]);
    }

    #[test]
    fn bad_certificates_are_rejected() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        let mut c = rank_certificate(&m);
        assert!(c.verify(&m));
        c.kernel[0][0] = rat(5);
        assert!(!c.verify(&m));
        let mut c = rank_certificate(&m);
        c.rank = 2;
        assert!(!c.verify(&m));
    }

    #[test]
    fn determinants_agree_on_jet_example() {
        // the (1,2) surface scroll at u = 3, v = 5
        let (u, v) = (3, 5);
        let m = mat(&[
            &[1, 0, 0, 0, 0],
            &[u, 1, 0, 0, 0],
            &[v, 0, 1, 0, 0],
            &[v * u, v, u, 0, 1],
            &[v * u * u, 2 * u * v, u * u, 2 * v, 2 * u],
        ]);
        assert_eq!(leibniz(&m), rat(-2 * v));
        assert_eq!(determinant_gauss(&m), rat(-2 * v));
        assert_eq!(determinant_expansion(&m), rat(-2 * v));
    }

    #[test]
    fn polynomial_determinant() {
        // [[u, 1], [v, u]] has determinant u^2 - v
        let u = MPoly::monomial(2, 1, vec![1, 0]);
        let v = MPoly::monomial(2, 1, vec![0, 1]);
        let one = MPoly::constant_in(2, 1);
        let det = determinant_expansion(&[vec![u.clone(), one], vec![v.clone(), u.clone()]]);
        assert_eq!(det, u.clone() * u + (-v));
    }

    fn square(n: usize) -> impl Strategy<Value = Vec<Vec<BigRational>>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), n).prop_map(|rows| {
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect()
        })
    }

    fn rect() -> impl Strategy<Value = Vec<Vec<BigRational>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec((-2i64..=2, 1i64..=3), c), r).prop_map(
                |rows| {
                    rows.into_iter()
                        .map(|r| {
                            r.into_iter()
                                .map(|(p, q)| BigRational::new(p.into(), q.into()))
                                .collect()
                        })
                        .collect()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn determinant_routes_agree(m in (1usize..6).prop_flat_map(square)) {
            let want = leibniz(&m);
            prop_assert_eq!(determinant_gauss(&m), want.clone());
            prop_assert_eq!(determinant_expansion(&m), want);
        }

        #[test]
        fn certificates_verify(m in rect()) {
            let c = rank_certificate(&m);
            prop_assert!(c.verify(&m));
            prop_assert!(c.rank <= m.len().min(m[0].len()));
        }

        #[test]
        fn square_rank_matches_determinant(m in (1usize..6).prop_flat_map(square)) {
            let full = rank(&m) == m.len();
            prop_assert_eq!(full, !leibniz(&m).is_zero());
        }
    }
}
