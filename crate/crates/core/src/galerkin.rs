//! Exact Rayleigh-Ritz discretisation of `Delta_0` and `Delta^0` on sections
//! of `O(B)` over `P^1` with the Fubini-Study metric (`c = 2`).
//!
//! In the standard affine chart the metric weight is `h = rho^{-B}` with
//! `rho = 1 + |z|^2`, the volume form is `rho^{-2} dx dy` and
//! `g^{z zbar} = rho^2`. Trial functions are `psi_{jk} = z^j zbar^k rho^{-m}`.
//! Every inner product reduces to the moments
//!
//! ```text
//! (1/pi) int_C |z|^{2p} rho^{-s} dx dy = p! (s-p-2)! / (s-1)!
//! ```
//!
//! so all matrices are exact rationals, with the common factor `pi` dropped.
//! Rotations `z -> e^{i theta} z` split the problem into blocks labelled by
//! the angular momentum `j - k`.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exact::{factorial, rat, to_f64, Rational};
use crate::spectra::{Multiplicity, ParamValue, Space, SpectrumRow, SpectrumTable};

/// `p! (s-p-2)! / (s-1)!`, defined for `s >= p + 2`.
pub fn moment(p: u32, s: u32) -> Result<Rational> {
    if s < p + 2 {
        return invalid(format!("moment ({p}, {s}) diverges: need s >= p + 2"));
    }
    Ok(Rational::new(
        factorial(p.into()) * factorial((s - p - 2).into()),
        factorial((s - 1).into()),
    ))
}

/// Memoised [`moment`] values.
#[derive(Debug, Default)]
pub struct MomentTable {
    cache: HashMap<(u32, u32), Rational>,
}

impl MomentTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, p: u32, s: u32) -> Result<Rational> {
        if let Some(v) = self.cache.get(&(p, s)) {
            return Ok(v.clone());
        }
        let v = moment(p, s)?;
        self.cache.insert((p, s), v.clone());
        Ok(v)
    }
}

/// `P(z, zbar) rho^{-s}` with integer coefficients, `P` keyed by the
/// exponents of `z` and `zbar`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RhoFunction {
    poly: BTreeMap<(u32, u32), i64>,
    s: u32,
}

impl RhoFunction {
    fn add_term(&mut self, a: u32, b: u32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.poly.entry((a, b)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.poly.remove(&(a, b));
        }
    }

    fn basis(j: u32, k: u32, m: u32) -> Self {
        let mut f = Self {
            poly: BTreeMap::new(),
            s: m,
        };
        f.add_term(j, k, 1);
        f
    }

    /// `d/dzbar (z^j zbar^k rho^{-m}) = z^j zbar^{k-1} rho^{-m-1} [k + (k-m)|z|^2]`.
    fn dbar_of_basis(j: u32, k: u32, m: u32) -> Self {
        let mut f = Self {
            poly: BTreeMap::new(),
            s: m + 1,
        };
        if k > 0 {
            f.add_term(j, k - 1, i64::from(k));
        }
        f.add_term(j + 1, k, i64::from(k) - i64::from(m));
        f
    }

    /// `(d/dz - B zbar / rho)(z^j zbar^k rho^{-m})
    ///   = z^{j-1} zbar^k rho^{-m-1} [j + (j-m-B)|z|^2]`.
    fn nabla_of_basis(j: u32, k: u32, m: u32, b: u32) -> Self {
        let mut f = Self {
            poly: BTreeMap::new(),
            s: m + 1,
        };
        if j > 0 {
            f.add_term(j - 1, k, i64::from(j));
        }
        f.add_term(j, k + 1, i64::from(j) - i64::from(m) - i64::from(b));
        f
    }
}

fn angular_momentum(j: u32, k: u32) -> i64 {
    i64::from(j) - i64::from(k)
}

/// Trial space for `O(B)` over `P^1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisSpec {
    pub b: u32,
    pub m: u32,
    pub d: Option<u32>,
    pub functions: Vec<(u32, u32)>,
}

impl BasisSpec {
    /// All `psi_{jk}` with `j, k <= d` of finite energy: `j + k < 2m + B`,
    /// together with `psi_{m+B, m}`, the only function on the line
    /// `j + k = 2m + B` whose `dbar`-derivative is square-integrable.
    pub fn standard(b: u32, m: u32, d: u32) -> Result<Self> {
        if b == 0 {
            return invalid("B must be at least 1");
        }
        let mut functions: Vec<(u32, u32)> = (0..=d)
            .flat_map(|j| (0..=d).map(move |k| (j, k)))
            .filter(|&(j, k)| j + k < 2 * m + b || (j == m + b && k == m))
            .collect();
        functions.sort_by_key(|&(j, k)| (angular_momentum(j, k), k));
        Ok(Self {
            b,
            m,
            d: Some(d),
            functions,
        })
    }

    /// An arbitrary list of `(j, k)` pairs. Assembly reports the first pair
    /// that needs a divergent moment.
    pub fn custom(b: u32, m: u32, functions: Vec<(u32, u32)>) -> Result<Self> {
        if b == 0 {
            return invalid("B must be at least 1");
        }
        if functions.is_empty() {
            return invalid("basis is empty");
        }
        Ok(Self {
            b,
            m,
            d: None,
            functions,
        })
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }
}

/// One angular-momentum block. `stiffness_dbar` is the quadratic form of
/// `Delta_0`, `stiffness_nabla` that of `Delta^0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GalerkinBlock {
    pub angular_momentum: i64,
    pub basis: Vec<(u32, u32)>,
    pub gram: Vec<Vec<Rational>>,
    pub stiffness_dbar: Vec<Vec<Rational>>,
    pub stiffness_nabla: Vec<Vec<Rational>>,
}

impl GalerkinBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Form {
    /// `<dbar f, dbar g>`, the form of `Delta_0`.
    Dbar,
    /// `<nabla f, nabla g>`, the form of `Delta^0`.
    Nabla,
}

struct Integrator {
    moments: MomentTable,
}

impl Integrator {
    /// `(1/pi) int f conj(g) rho^{-w} dx dy` for real-coefficient `f`, `g`.
    /// `None` signals a divergent monomial.
    fn pair(&mut self, f: &RhoFunction, g: &RhoFunction, w: u32) -> Result<std::result::Result<Rational, String>> {
        let s = f.s + g.s + w;
        // z^a zbar^b * conj(z^c zbar^d) = z^{a+d} zbar^{b+c}; only a+d = b+c survives.
        let mut radial: BTreeMap<u32, i64> = BTreeMap::new();
        for (&(a, b), &cf) in &f.poly {
            for (&(c, d), &cg) in &g.poly {
                if a + d == b + c {
                    *radial.entry(a + d).or_insert(0) += cf * cg;
                }
            }
        }
        let mut total = Rational::zero();
        for (e, c) in radial {
            if c == 0 {
                continue;
            }
            if s < e + 2 {
                return Ok(Err(format!("|z|^{} against rho^-{s}", 2 * e)));
            }
            total += rat(c) * self.moments.get(e, s)?;
        }
        Ok(Ok(total))
    }
}

/// Builds the Gram and stiffness matrices block by block, asserting that all
/// cross-block inner products vanish.
pub fn assemble(spec: &BasisSpec) -> Result<Vec<GalerkinBlock>> {
    let (b, m) = (spec.b, spec.m);
    let funcs: Vec<(u32, u32, RhoFunction, RhoFunction, RhoFunction)> = spec
        .functions
        .iter()
        .map(|&(j, k)| {
            (
                j,
                k,
                RhoFunction::basis(j, k, m),
                RhoFunction::dbar_of_basis(j, k, m),
                RhoFunction::nabla_of_basis(j, k, m, b),
            )
        })
        .collect();
    let mut integ = Integrator {
        moments: MomentTable::new(),
    };
    let mut blocks: BTreeMap<i64, GalerkinBlock> = BTreeMap::new();
    for (j, k, ..) in &funcs {
        blocks
            .entry(angular_momentum(*j, *k))
            .or_insert_with(|| GalerkinBlock {
                angular_momentum: angular_momentum(*j, *k),
                basis: Vec::new(),
                gram: Vec::new(),
                stiffness_dbar: Vec::new(),
                stiffness_nabla: Vec::new(),
            })
            .basis
            .push((*j, *k));
    }
    for block in blocks.values_mut() {
        let n = block.basis.len();
        block.gram = vec![vec![Rational::zero(); n]; n];
        block.stiffness_dbar = block.gram.clone();
        block.stiffness_nabla = block.gram.clone();
    }
    let position: HashMap<(u32, u32), usize> = blocks
        .values()
        .flat_map(|blk| blk.basis.iter().enumerate().map(|(i, &p)| (p, i)))
        .collect();

    for (x, (j, k, f, df, nf)) in funcs.iter().enumerate() {
        for (j2, k2, g, dg, ng) in funcs.iter().skip(x) {
            let fail = |detail: String| Error::DivergentMoment {
                j: *j,
                k: *k,
                j2: *j2,
                k2: *k2,
                detail,
            };
            let gram = integ.pair(f, g, b + 2)?.map_err(&fail)?;
            let a_dbar = integ.pair(df, dg, b)?.map_err(&fail)?;
            let a_nabla = integ.pair(nf, ng, b)?.map_err(&fail)?;
            let (l1, l2) = (angular_momentum(*j, *k), angular_momentum(*j2, *k2));
            if l1 != l2 {
                if !(gram.is_zero() && a_dbar.is_zero() && a_nabla.is_zero()) {
                    return Err(Error::Verification(format!(
                        "cross-block entry between ({j},{k}) and ({j2},{k2}) is nonzero"
                    )));
                }
                continue;
            }
            let blk = blocks.get_mut(&l1).expect("block exists");
            let (r, c) = (position[&(*j, *k)], position[&(*j2, *k2)]);
            for (mat, v) in [
                (&mut blk.gram, gram),
                (&mut blk.stiffness_dbar, a_dbar),
                (&mut blk.stiffness_nabla, a_nabla),
            ] {
                mat[r][c] = v.clone();
                mat[c][r] = v;
            }
        }
    }
    Ok(blocks.into_values().collect())
}

/// Sorted generalized eigenvalues of one block and the worst residual of
/// the reduced symmetric problem.
#[derive(Clone, Debug, Serialize)]
pub struct BlockSpectrum {
    pub angular_momentum: i64,
    pub eigenvalues: Vec<f64>,
    pub max_residual: f64,
}

pub const EIGEN_RESIDUAL_TOL: f64 = 1e-9;

/// Solves `A v = lambda M v`. The congruence `M = L D L^T` and
/// `C = L^{-1} A L^{-T}` are computed exactly; only the final symmetric
/// problem `D^{-1/2} C D^{-1/2}` is solved in floating point.
pub fn generalized_eigenvalues(a: &[Vec<Rational>], m: &[Vec<Rational>]) -> Result<(Vec<f64>, f64)> {
    let n = m.len();
    if a.len() != n || a.iter().chain(m).any(|r| r.len() != n) {
        return invalid("matrix shapes disagree");
    }
    let mut l = vec![vec![Rational::zero(); n]; n];
    let mut d = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = m[i][j].clone();
            for t in 0..j {
                s -= &l[i][t] * &l[j][t] * &d[t];
            }
            if i == j {
                if !s.is_positive() {
                    return Err(Error::Verification(format!(
                        "Gram matrix is not positive definite (pivot {i} is {s})"
                    )));
                }
                d[i] = s;
                l[i][i] = rat(1);
            } else {
                l[i][j] = s / &d[j];
            }
        }
    }
    // X = L^{-1} A, then C = L^{-1} X^T.
    let forward = |rhs: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        let mut x: Vec<Vec<Rational>> = rhs.to_vec();
        for i in 0..n {
            for t in 0..i {
                if l[i][t].is_zero() {
                    continue;
                }
                let (head, tail) = x.split_at_mut(i);
                for (xi, xt) in tail[0].iter_mut().zip(&head[t]) {
                    *xi -= &l[i][t] * xt;
                }
            }
        }
        x
    };
    let x = forward(a);
    let xt: Vec<Vec<Rational>> = (0..n).map(|c| (0..n).map(|r| x[r][c].clone()).collect()).collect();
    let c = forward(&xt);
    let sqrt_d: Vec<f64> = d.iter().map(|v| to_f64(v).sqrt()).collect();
    let s = DMatrix::<f64>::from_fn(n, n, |i, j| {
        let sym = (to_f64(&c[i][j]) + to_f64(&c[j][i])) / 2.0;
        sym / (sqrt_d[i] * sqrt_d[j])
    });
    let eig = SymmetricEigen::new(s.clone());
    let mut worst = 0.0f64;
    for (idx, lambda) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(idx);
        let r = (&s * v - v * *lambda).norm() / v.norm();
        worst = worst.max(r / (1.0 + lambda.abs()));
    }
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok((vals, worst))
}

pub fn block_spectrum(block: &GalerkinBlock, form: Form, k: usize) -> Result<BlockSpectrum> {
    let a = match form {
        Form::Dbar => &block.stiffness_dbar,
        Form::Nabla => &block.stiffness_nabla,
    };
    let (mut eigenvalues, max_residual) = generalized_eigenvalues(a, &block.gram)?;
    if max_residual > EIGEN_RESIDUAL_TOL {
        return Err(Error::Precision(format!(
            "block {} eigen-residual {max_residual:e} exceeds {EIGEN_RESIDUAL_TOL:e}",
            block.angular_momentum
        )));
    }
    eigenvalues.truncate(k);
    Ok(BlockSpectrum {
        angular_momentum: block.angular_momentum,
        eigenvalues,
        max_residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelCheck {
    pub q: u32,
    pub target: f64,
    pub center: Option<f64>,
    pub count: usize,
    pub expected_count: u64,
    pub relative_error: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct P1Report {
    pub b: u32,
    pub m: u32,
    pub d: u32,
    pub basis_size: usize,
    pub blocks: usize,
    pub table: SpectrumTable,
    pub levels: Vec<LevelCheck>,
    pub max_residual: f64,
    pub pass: bool,
}

pub const P1_RELATIVE_TOL: f64 = 1e-8;

/// Groups sorted values into clusters split at gaps larger than `gap`.
pub fn cluster(sorted: &[f64], gap: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for &v in sorted {
        match out.last_mut() {
            Some(c) if v - c.last().copied().unwrap_or(v) <= gap => c.push(v),
            _ => out.push(vec![v]),
        }
    }
    out
}

/// Solves every block, merges and clusters the spectrum, and compares the
/// first `q_max + 1` clusters with `q(B+q+1)` and multiplicity `B+2q+1`.
pub fn p1_spectrum_report(b: u32, m: u32, d: u32, q_max: u32) -> Result<P1Report> {
    if m < q_max + 1 {
        return invalid(format!("need m >= q_max + 1 (m = {m}, q_max = {q_max})"));
    }
    if d < b + 2 * m {
        return invalid(format!("need d >= B + 2m (d = {d}, B + 2m = {})", b + 2 * m));
    }
    let spec = BasisSpec::standard(b, m, d)?;
    let blocks = assemble(&spec)?;
    let mut all = Vec::new();
    let mut max_residual = 0.0f64;
    for blk in &blocks {
        let sp = block_spectrum(blk, Form::Dbar, blk.dim())?;
        max_residual = max_residual.max(sp.max_residual);
        all.extend(sp.eigenvalues);
    }
    all.sort_by(f64::total_cmp);
    let clusters = cluster(&all, 1.0);

    let mut table = SpectrumTable::new(Space::ProjectiveSpace)
        .param("n", ParamValue::Int(1))
        .param("B", ParamValue::Int(b.into()))
        .param("m", ParamValue::Int(m.into()))
        .param("d", ParamValue::Int(d.into()))
        .param("c", ParamValue::Rational(rat(2)));
    let mut levels = Vec::new();
    for q in 0..=q_max {
        let target_exact = i64::from(q) * i64::from(b + q + 1);
        let target = target_exact as f64;
        let expected_count = u64::from(b + 2 * q + 1);
        let c = clusters.get(q as usize);
        let center = c.map(|c| c.iter().sum::<f64>() / c.len() as f64);
        let relative_error = c.map(|c| {
            c.iter()
                .map(|v| (v - target).abs() / target.max(1.0))
                .fold(0.0, f64::max)
        });
        let count = c.map_or(0, Vec::len);
        let pass = relative_error.is_some_and(|e| e <= P1_RELATIVE_TOL) && count as u64 == expected_count;
        table.rows.push(SpectrumRow {
            q: q.into(),
            eigenvalue: rat(target_exact),
            multiplicity: Multiplicity::Known(BigInt::from(count)),
            flags: if pass { Vec::new() } else { vec!["mismatch".into()] },
        });
        levels.push(LevelCheck {
            q,
            target,
            center,
            count,
            expected_count,
            relative_error,
            pass,
        });
    }
    let pass = levels.iter().all(|l| l.pass);
    Ok(P1Report {
        b,
        m,
        d,
        basis_size: spec.len(),
        blocks: blocks.len(),
        table,
        levels,
        max_residual,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct KodairaReport {
    pub blocks: usize,
    pub entries_checked: usize,
}

/// Asserts `A_nabla - A_dbar = B M` entry by entry in exact arithmetic.
pub fn kodaira_difference_check(spec: &BasisSpec) -> Result<KodairaReport> {
    let blocks = assemble(spec)?;
    let b = rat(spec.b.into());
    let mut entries = 0;
    for blk in &blocks {
        for i in 0..blk.dim() {
            for j in 0..blk.dim() {
                let lhs = &blk.stiffness_nabla[i][j] - &blk.stiffness_dbar[i][j];
                let rhs = &b * &blk.gram[i][j];
                if lhs != rhs {
                    return Err(Error::Verification(format!(
                        "A_nabla - A_dbar != B M at {:?} x {:?}: {lhs} vs {rhs}",
                        blk.basis[i], blk.basis[j]
                    )));
                }
                entries += 1;
            }
        }
    }
    Ok(KodairaReport {
        blocks: blocks.len(),
        entries_checked: entries,
    })
}

/// Largest denominator among all assembled entries, and whether every
/// denominator divides `(B + 2m + 1)!`.
pub fn denominator_bound_check(spec: &BasisSpec) -> Result<bool> {
    let bound = factorial(u64::from(spec.b + 2 * spec.m + 1));
    let blocks = assemble(spec)?;
    Ok(blocks.iter().all(|blk| {
        [&blk.gram, &blk.stiffness_dbar, &blk.stiffness_nabla]
            .iter()
            .flat_map(|m| m.iter().flatten())
            .all(|v| (&bound % v.denom()).is_zero())
    }))
}

/// Number of basis functions per block, for diagnostics.
pub fn block_sizes(blocks: &[GalerkinBlock]) -> Vec<(i64, usize)> {
    blocks.iter().map(|b| (b.angular_momentum, b.dim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn quad_moment(p: u32, s: u32) -> f64 {
        // int_0^inf u^p (1+u)^{-s} du with u = t/(1-t), composite Simpson on (0, 1).
        let n = 20_000;
        let h = 1.0 / n as f64;
        // After the substitution the integrand is t^p (1-t)^{s-p-2}.
        let f = |t: f64| t.powi(p as i32) * (1.0 - t).powi((s - p - 2) as i32);
        let mut acc = f(0.0) + f(1.0);
        for i in 1..n {
            acc += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * h / 3.0
    }

    #[test]
    fn moment_examples() {
        assert_eq!(moment(0, 2).unwrap(), rat(1));
        assert_eq!(moment(1, 4).unwrap(), ratio(1, 6));
        assert_eq!(moment(2, 5).unwrap(), ratio(1, 12));
        assert!(moment(2, 3).is_err());
        for (p, s) in [(0, 2), (1, 4), (2, 5), (3, 7), (0, 6)] {
            let exact = to_f64(&moment(p, s).unwrap());
            assert!((exact - quad_moment(p, s)).abs() < 1e-6, "p={p} s={s}");
        }
    }

    #[test]
    fn gram_example() {
        let spec = BasisSpec::custom(2, 0, vec![(0, 0), (1, 0), (2, 0)]).unwrap();
        let blocks = assemble(&spec).unwrap();
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks.iter().find(|b| b.angular_momentum == 0).unwrap().gram[0][0], ratio(1, 3));
        for blk in &blocks {
            assert!(blk.stiffness_dbar.iter().flatten().all(Zero::is_zero));
        }
    }

    #[test]
    fn standard_basis_filter() {
        let spec = BasisSpec::standard(2, 1, 4).unwrap();
        assert!(spec.functions.contains(&(3, 1)));
        assert!(!spec.functions.contains(&(2, 2)));
        assert!(!spec.functions.contains(&(4, 0)));
        assert!(spec.functions.iter().all(|&(j, k)| j + k < 4 || (j, k) == (3, 1)));
    }

    #[test]
    fn divergent_basis_reports_pair() {
        let spec = BasisSpec::custom(1, 0, vec![(0, 0), (2, 0)]).unwrap();
        match assemble(&spec) {
            Err(Error::DivergentMoment { j, k, .. }) => assert_eq!((j, k), (2, 0)),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn generalized_trivial_cases() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        let (vals, _) = generalized_eigenvalues(&m, &m).unwrap();
        assert!(vals.iter().all(|v| (v - 1.0).abs() < 1e-14));
        let z = vec![vec![rat(0); 2]; 2];
        let (vals, _) = generalized_eigenvalues(&z, &m).unwrap();
        assert!(vals.iter().all(|v| v.abs() < 1e-14));
        let indefinite = vec![vec![rat(1), rat(2)], vec![rat(2), rat(1)]];
        assert!(generalized_eigenvalues(&z, &indefinite).is_err());
    }

    #[test]
    fn holomorphic_direction_in_zero_block() {
        let spec = BasisSpec::standard(2, 3, 8).unwrap();
        let blocks = assemble(&spec).unwrap();
        let blk = blocks.iter().find(|b| b.angular_momentum == 0).unwrap();
        let sp = block_spectrum(blk, Form::Dbar, 1).unwrap();
        assert!(sp.eigenvalues[0].abs() < 1e-10);
    }

    #[test]
    fn p1_examples() {
        let rep = p1_spectrum_report(2, 3, 8, 2).unwrap();
        assert!(rep.pass, "{:#?}", rep.levels);
        let counts: Vec<usize> = rep.levels.iter().map(|l| l.count).collect();
        assert_eq!(counts, vec![3, 5, 7]);
    }

    #[test]
    fn kodaira_examples() {
        for (b, m, d) in [(1, 2, 4), (4, 3, 10), (2, 0, 2)] {
            let spec = BasisSpec::standard(b, m, d).unwrap();
            assert!(kodaira_difference_check(&spec).is_ok(), "B={b} m={m} d={d}");
        }
        let single = BasisSpec::custom(3, 2, vec![(0, 0)]).unwrap();
        let rep = kodaira_difference_check(&single).unwrap();
        assert_eq!(rep.entries_checked, 1);
    }

    #[test]
    fn denominators_are_bounded() {
        for (b, m, d) in [(1, 2, 5), (3, 2, 7), (2, 3, 8)] {
            assert!(denominator_bound_check(&BasisSpec::standard(b, m, d).unwrap()).unwrap());
        }
    }
}
