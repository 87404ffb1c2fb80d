use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;

use super::PolarizationData;
use crate::error::{invalid, Result};
use crate::exact::{binomial, rat, CRational, Rational};
use crate::report::ser_bigint;

/// Curvature of the bundle of level-`q` eigensections over the parameter
/// torus. The 2-form coefficients are `pi * coefficients[a][b]`, so only the
/// rational multiple of `pi` is stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleCurvatureReport {
    pub n: usize,
    pub q: u64,
    pub delta: Vec<u64>,
    pub coefficients_over_pi: Vec<Vec<CRational>>,
    #[serde(serialize_with = "ser_bigint")]
    pub rank: BigInt,
}

impl BundleCurvatureReport {
    pub fn is_hermitian(&self) -> bool {
        is_hermitian(&self.coefficients_over_pi)
    }

    /// Largest eigenvalue of the coefficient matrix (in units of `pi`).
    pub fn max_eigenvalue(&self) -> f64 {
        let n = self.n;
        let m = DMatrix::<Complex64>::from_fn(n, n, |a, b| self.coefficients_over_pi[a][b].to_complex());
        m.symmetric_eigenvalues().iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_negative_semidefinite(&self, tol: f64) -> bool {
        self.max_eigenvalue() <= tol
    }
}

fn is_hermitian(m: &[Vec<CRational>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(a, row)| row.iter().enumerate().all(|(b, x)| *x == m[b][a].conj()))
}

/// `C_{ab} = -pi W_{ab} delta_a delta_b / delta_n^2`, acting as a scalar on a
/// bundle of rank `C(n+q-1, q) * prod(delta)`.
pub fn spectral_bundle_curvature(
    w: &[Vec<CRational>],
    delta: &PolarizationData,
    q: u64,
) -> Result<BundleCurvatureReport> {
    let n = delta.dim();
    if w.len() != n || w.iter().any(|r| r.len() != n) {
        return invalid(format!("W must be {n} x {n}"));
    }
    if !is_hermitian(w) {
        return invalid("W is not Hermitian");
    }
    let d = delta.divisors();
    let dn2 = rat(d[n - 1] as i64) * rat(d[n - 1] as i64);
    let coefficients_over_pi = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let s: Rational = -(rat(d[a] as i64) * rat(d[b] as i64)) / &dn2;
                    w[a][b].scale(&s)
                })
                .collect()
        })
        .collect();
    Ok(BundleCurvatureReport {
        n,
        q,
        delta: d.to_vec(),
        coefficients_over_pi,
        rank: binomial(n as u64 + q - 1, q) * delta.product(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use proptest::prelude::*;

    fn c(n: i64) -> CRational {
        CRational::from_int(n)
    }

    #[test]
    fn examples() {
        let d = PolarizationData::new(vec![3]).unwrap();
        for q in 0..4 {
            let r = spectral_bundle_curvature(&[vec![c(5)]], &d, q).unwrap();
            assert_eq!(r.coefficients_over_pi, vec![vec![c(-5)]]);
            assert_eq!(r.rank, BigInt::from(3));
        }

        let d = PolarizationData::new(vec![1, 2]).unwrap();
        let id = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
        let r = spectral_bundle_curvature(&id, &d, 1).unwrap();
        assert_eq!(r.coefficients_over_pi[0][0], CRational::real(ratio(-1, 4)));
        assert_eq!(r.coefficients_over_pi[1][1], c(-1));
        assert_eq!(r.coefficients_over_pi[0][1], c(0));
        assert_eq!(r.rank, BigInt::from(4));
        assert_eq!(spectral_bundle_curvature(&id, &d, 0).unwrap().rank, d.product());
    }

    #[test]
    fn rejects_non_hermitian() {
        let d = PolarizationData::new(vec![1, 1]).unwrap();
        let w = vec![vec![c(1), CRational::i()], vec![CRational::i(), c(1)]];
        assert!(spectral_bundle_curvature(&w, &d, 0).is_err());
        assert!(spectral_bundle_curvature(&[vec![c(1)]], &d, 0).is_err());
    }

    proptest! {
        #[test]
        fn psd_weight_gives_nsd_curvature(
            entries in proptest::collection::vec((-6i64..=6, -6i64..=6), 9),
            k in 0u32..3,
            q in 0u64..4,
        ) {
            // W = A A^* is Hermitian positive semidefinite.
            let a: Vec<Vec<CRational>> = entries
                .chunks(3)
                .map(|r| r.iter().map(|&(x, y)| CRational::new(rat(x), rat(y))).collect())
                .collect();
            let w: Vec<Vec<CRational>> = (0..3)
                .map(|i| (0..3).map(|j| {
                    (0..3).fold(CRational::zero(), |acc, t| &acc + &(&a[i][t] * &a[j][t].conj()))
                }).collect())
                .collect();
            let d = PolarizationData::new(vec![1, 2u64.pow(k), 2u64.pow(k + 1)]).unwrap();
            let r = spectral_bundle_curvature(&w, &d, q).unwrap();
            prop_assert!(r.is_hermitian());
            let scale = 1.0 + w.iter().flatten().map(|x| x.to_complex().norm()).sum::<f64>();
            prop_assert!(r.is_negative_semidefinite(1e-12 * scale));
        }
    }
}
