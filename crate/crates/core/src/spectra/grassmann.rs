//! Curvature of the Grassmannian `G(mu, nu)` at the origin and its first two
//! `Delta_0` eigenvalues.
//!
//! Tangent vectors are `mu x nu` matrices; the coordinate direction `E_{ii'}`
//! is labelled by a [`GrassmannIndex`]. The curvature tensor in these
//! coordinates takes values in `{0, 1, 2}`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{default_c, Multiplicity, ParamValue, Space, SpectrumRow, SpectrumTable};
use crate::error::{invalid, Result};
use crate::exact::{rat, Rational};

/// One-based matrix position `(i, i')` with `1 <= i <= mu`, `1 <= i' <= nu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GrassmannIndex {
    pub row: usize,
    pub col: usize,
}

impl GrassmannIndex {
    pub fn new(mu: usize, nu: usize, row: usize, col: usize) -> Result<Self> {
        if row == 0 || row > mu || col == 0 || col > nu {
            return invalid(format!("index ({row},{col}) outside 1..={mu} x 1..={nu}"));
        }
        Ok(Self { row, col })
    }

    fn all(mu: usize, nu: usize) -> Vec<Self> {
        (1..=mu)
            .flat_map(|row| (1..=nu).map(move |col| Self { row, col }))
            .collect()
    }
}

fn kron(a: usize, b: usize) -> u8 {
    u8::from(a == b)
}

fn curvature(i: GrassmannIndex, j: GrassmannIndex, k: GrassmannIndex, l: GrassmannIndex) -> u8 {
    kron(i.row, j.row) * kron(k.row, l.row) * kron(i.col, l.col) * kron(j.col, k.col)
        + kron(i.row, l.row) * kron(k.row, j.row) * kron(i.col, j.col) * kron(k.col, l.col)
}

/// `R_{I Jbar K Lbar}`. The tensor is real, so this is also `R_{Ibar J Kbar L}`.
pub fn grassmann_curvature(
    mu: usize,
    nu: usize,
    i: GrassmannIndex,
    j: GrassmannIndex,
    k: GrassmannIndex,
    l: GrassmannIndex,
) -> Result<u8> {
    for x in [i, j, k, l] {
        GrassmannIndex::new(mu, nu, x.row, x.col)?;
    }
    Ok(curvature(i, j, k, l))
}

pub fn grassmann_eigenvalues_with_c(mu: usize, nu: usize, b: i64, c: &Rational) -> Result<(Rational, Rational)> {
    if mu == 0 || nu == 0 {
        return invalid("Grassmannian needs mu, nu >= 1");
    }
    if b >= 0 {
        return invalid(format!(
            "Grassmannian eigenvalues are established only for B <= -1 (got {b}); for B >= 0 \
             -B + (c/2)(mu+nu) may be the lowest eigenvalue and is not reported"
        ));
    }
    if !c.is_positive() {
        return invalid("curvature constant c must be positive");
    }
    let second = rat(-b) + c / rat(2) * rat((mu + nu) as i64);
    Ok((Rational::zero(), second))
}

/// First and second eigenvalues `(0, -B + mu + nu)` for `B <= -1`.
pub fn grassmann_eigenvalues(mu: usize, nu: usize, b: i64) -> Result<(Rational, Rational)> {
    grassmann_eigenvalues_with_c(mu, nu, b, &default_c())
}

pub fn grassmann_spectrum_with_c(mu: usize, nu: usize, b: i64, c: &Rational) -> Result<SpectrumTable> {
    let (first, second) = grassmann_eigenvalues_with_c(mu, nu, b, c)?;
    let mut table = SpectrumTable::new(Space::Grassmannian)
        .param("mu", ParamValue::Int(mu as i64))
        .param("nu", ParamValue::Int(nu as i64))
        .param("B", ParamValue::Int(b))
        .param("c", ParamValue::Rational(c.clone()));
    for (q, ev) in [(0, first), (1, second)] {
        table.rows.push(SpectrumRow {
            q,
            eigenvalue: ev,
            multiplicity: Multiplicity::Unknown,
            flags: Vec::new(),
        });
    }
    Ok(table)
}

pub fn grassmann_spectrum(mu: usize, nu: usize, b: i64) -> Result<SpectrumTable> {
    grassmann_spectrum_with_c(mu, nu, b, &default_c())
}

type Tuple = [GrassmannIndex; 4];

struct Pattern {
    label: &'static str,
    hypothesis: &'static str,
    applies: fn(&Tuple) -> bool,
}

const PATTERNS: [Pattern; 4] = [
    Pattern {
        label: "I=J, K!=L",
        hypothesis: "I = J and K != L",
        applies: |[i, j, k, l]| i == j && k != l,
    },
    Pattern {
        label: "I!=J, I!=L, K=J",
        hypothesis: "I != J, I != L and K = J",
        applies: |[i, j, k, l]| i != j && i != l && k == j,
    },
    Pattern {
        label: "I!=J, I=L, K!=J",
        hypothesis: "I != J, I = L and K != J",
        applies: |[i, j, k, l]| i != j && i == l && k != j,
    },
    Pattern {
        label: "I!=J, I!=L, K!=J",
        hypothesis: "I != J, I != L and K != J",
        applies: |[i, j, k, l]| i != j && i != l && k != j,
    },
];

/// Outcome of scanning every index tuple against one vanishing pattern
/// `hypothesis => R_{Ibar J Kbar L} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternCheck {
    pub label: &'static str,
    pub hypothesis: &'static str,
    pub tuples_tested: usize,
    pub violations: usize,
    /// First violating `(I, J, K, L)` in lexicographic order, with its value.
    pub counterexample: Option<(Tuple, u8)>,
}

impl PatternCheck {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Kernel of `H_X(V, W) = R_{X Xbar V Wbar}` for one coordinate direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NullityCheck {
    pub direction: GrassmannIndex,
    pub nullity: usize,
    pub expected: usize,
    /// Every `E_{jj'}` with `j != i`, `j' != i'` lies in the kernel.
    pub expected_span_in_kernel: bool,
}

impl NullityCheck {
    pub fn holds(&self) -> bool {
        self.nullity == self.expected && self.expected_span_in_kernel
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrassmannReport {
    pub mu: usize,
    pub nu: usize,
    pub patterns: Vec<PatternCheck>,
    pub nullities: Vec<NullityCheck>,
    /// `R_{I Jbar K Lbar} = R_{K Jbar I Lbar}` over all tuples.
    pub symmetric: bool,
}

impl GrassmannReport {
    pub fn patterns_hold(&self) -> bool {
        self.patterns.iter().all(PatternCheck::holds)
    }

    pub fn nullities_hold(&self) -> bool {
        self.nullities.iter().all(NullityCheck::holds)
    }

    pub fn pass(&self) -> bool {
        self.patterns_hold() && self.nullities_hold() && self.symmetric
    }
}

/// Rank of a small dense rational matrix by fraction-exact elimination.
fn exact_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot_row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Brute-force check of the four vanishing patterns, the `I <-> K` symmetry
/// and the nullity `(mu-1)(nu-1)` at every coordinate direction.
pub fn grassmann_structure_check(mu: usize, nu: usize) -> Result<GrassmannReport> {
    if !(1..=5).contains(&mu) || !(1..=5).contains(&nu) {
        return invalid(format!("structure check needs 1 <= mu, nu <= 5 (got {mu}, {nu})"));
    }
    let idx = GrassmannIndex::all(mu, nu);
    let mut patterns: Vec<PatternCheck> = PATTERNS
        .iter()
        .map(|p| PatternCheck {
            label: p.label,
            hypothesis: p.hypothesis,
            tuples_tested: 0,
            violations: 0,
            counterexample: None,
        })
        .collect();
    let mut symmetric = true;
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                for &l in &idx {
                    let t = [i, j, k, l];
                    let r = curvature(i, j, k, l);
                    symmetric &= r == curvature(k, j, i, l);
                    for (check, pat) in patterns.iter_mut().zip(&PATTERNS) {
                        if (pat.applies)(&t) {
                            check.tuples_tested += 1;
                            if r != 0 {
                                check.violations += 1;
                                check.counterexample.get_or_insert((t, r));
                            }
                        }
                    }
                }
            }
        }
    }

    let expected = (mu - 1) * (nu - 1);
    let nullities = idx
        .iter()
        .map(|&x| {
            let h: Vec<Vec<Rational>> = idx
                .iter()
                .map(|&v| idx.iter().map(|&w| rat(curvature(x, x, v, w).into())).collect())
                .collect();
            let span_ok = idx
                .iter()
                .enumerate()
                .filter(|(_, v)| v.row != x.row && v.col != x.col)
                .all(|(a, _)| h.iter().all(|row| row[a].is_zero()));
            NullityCheck {
                direction: x,
                nullity: idx.len() - exact_rank(h),
                expected,
                expected_span_in_kernel: span_ok,
            }
        })
        .collect();

    Ok(GrassmannReport {
        mu,
        nu,
        patterns,
        nullities,
        symmetric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(row: usize, col: usize) -> GrassmannIndex {
        GrassmannIndex { row, col }
    }

    #[test]
    fn curvature_examples() {
        let r = |i, j, k, l| grassmann_curvature(2, 2, i, j, k, l).unwrap();
        assert_eq!(r(gi(1, 1), gi(1, 1), gi(1, 1), gi(1, 1)), 2);
        assert_eq!(r(gi(1, 1), gi(1, 1), gi(2, 2), gi(2, 2)), 0);
        assert_eq!(r(gi(1, 1), gi(1, 1), gi(1, 2), gi(1, 2)), 1);
        assert!(grassmann_curvature(2, 2, gi(3, 1), gi(1, 1), gi(1, 1), gi(1, 1)).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(grassmann_eigenvalues(2, 2, -1).unwrap(), (rat(0), rat(5)));
        assert_eq!(grassmann_eigenvalues(3, 1, -2).unwrap(), (rat(0), rat(6)));
        assert_eq!(grassmann_eigenvalues(1, 1, -1).unwrap(), (rat(0), rat(3)));
        assert!(grassmann_eigenvalues(2, 2, 0).is_err());
        let t = grassmann_spectrum(2, 2, -1).unwrap();
        assert!(t.rows.iter().all(|r| r.multiplicity == Multiplicity::Unknown));
    }

    #[test]
    fn nullity_examples() {
        for (mu, nu, expect) in [(2, 2, 1), (3, 2, 2), (1, 3, 0), (1, 1, 0), (4, 3, 6)] {
            let rep = grassmann_structure_check(mu, nu).unwrap();
            assert!(rep.nullities_hold(), "mu={mu} nu={nu}");
            assert!(rep.nullities.iter().all(|c| c.nullity == expect));
        }
    }

    #[test]
    fn symmetry_up_to_four() {
        for mu in 1..=4 {
            for nu in 1..=4 {
                assert!(grassmann_structure_check(mu, nu).unwrap().symmetric);
            }
        }
    }

    #[test]
    fn first_three_patterns_hold() {
        for mu in 1..=4 {
            for nu in 1..=4 {
                let rep = grassmann_structure_check(mu, nu).unwrap();
                assert!(rep.patterns[..3].iter().all(PatternCheck::holds), "mu={mu} nu={nu}");
            }
        }
    }

    #[test]
    fn fourth_pattern_fails_once_both_sides_exceed_one() {
        let rep = grassmann_structure_check(2, 2).unwrap();
        let p = &rep.patterns[3];
        assert!(!p.holds());
        let (t, v) = p.counterexample.unwrap();
        assert_eq!(v, curvature(t[0], t[1], t[2], t[3]));
        assert_eq!(curvature(gi(1, 1), gi(1, 2), gi(2, 2), gi(2, 1)), 1);
        for nu in 1..=4 {
            assert!(grassmann_structure_check(1, nu).unwrap().patterns[3].holds());
        }
    }

    #[test]
    fn exact_rank_small() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(exact_rank(m), 1);
        assert_eq!(exact_rank(vec![vec![rat(0); 3]; 3]), 0);
    }
}
