//! Gauge-link discretisation of `Delta_0 = dbar^* dbar` on a flat square
//! torus carrying `delta` flux quanta.
//!
//! The torus has side `l` with `l^2 = 2 pi delta / B` and an `N x N` grid of
//! spacing `h = l / N`. Links are in Landau gauge: `U_x = 1` except on one
//! seam column, `U_y(m, k) = exp(2 pi i delta m / N^2)`. Every plaquette
//! carries the phase `2 pi delta / N^2`, so the field strength is `B`.
//!
//! The covariant forward difference is
//! `D_mu psi(x) = (conj(U_mu(x)) psi(x + mu) - psi(x)) / h`, which tends to
//! `d_mu - i A_mu` with `A = B x dy`. Then `dbar = (D_x + i D_y) / 2` and in
//! the continuum `dbar^* dbar = (-D^2 - B) / 4` has Landau levels `qB/2`.
//! The lattice operator is therefore compared with `Delta_0` through
//! `Delta_0 = KAPPA * dbar^* dbar`, `KAPPA = 2`, whose levels are `qB`; the
//! forward-difference stencil adds an `O(h)` error.
//!
//! The symbol of the forward-difference `dbar` also vanishes at
//! `(p_x, p_y) = (pi/2, -pi/2) / h`. Any local first-order `dbar` has such a
//! second zero, because the winding numbers of the zeros of a map from the
//! Brillouin torus to `C` add up to zero. Near it `dbar` behaves like `d/dz`,
//! which adds `delta` spurious states to every level `q >= 1`. The operator
//! handed to the eigensolver is therefore
//!
//! ```text
//! dbar^* dbar + WILSON h^2 L^2,    L = sum_mu D_mu^* D_mu,
//! ```
//!
//! which stays positive semidefinite, lifts the doubler to about `1/h^2` and
//! moves the physical levels by `O(h^2)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Ratio between the continuum `Delta_0` and the lattice `dbar^* dbar`.
pub const KAPPA: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorusLatticeConfig {
    pub n: usize,
    pub b: f64,
    pub delta: u64,
    /// Grid point where the Landau gauge potential vanishes.
    pub gauge_origin: (usize, usize),
    /// Side length used when `delta = 0`.
    zero_field_side: Option<f64>,
}

impl TorusLatticeConfig {
    pub fn new(n: usize, b: f64, delta: u64) -> Result<Self> {
        if n < 8 {
            return invalid(format!("grid size N = {n} is below 8"));
        }
        if !(b.is_finite() && b > 0.0) {
            return invalid(format!("B must be positive and finite (got {b})"));
        }
        if delta == 0 {
            return invalid("flux delta must be at least 1");
        }
        Ok(Self {
            n,
            b,
            delta,
            gauge_origin: (0, 0),
            zero_field_side: None,
        })
    }

    /// Flux-free torus of side `side`: the links are all trivial.
    pub fn zero_field(n: usize, side: f64) -> Result<Self> {
        if n < 8 || !(side.is_finite() && side > 0.0) {
            return invalid("zero-field torus needs N >= 8 and a positive side");
        }
        Ok(Self {
            n,
            b: 0.0,
            delta: 0,
            gauge_origin: (0, 0),
            zero_field_side: Some(side),
        })
    }

    pub fn with_gauge_origin(mut self, m0: usize, k0: usize) -> Self {
        self.gauge_origin = (m0 % self.n, k0 % self.n);
        self
    }

    pub fn side(&self) -> f64 {
        self.zero_field_side
            .unwrap_or_else(|| (2.0 * PI * self.delta as f64 / self.b).sqrt())
    }

    pub fn spacing(&self) -> f64 {
        self.side() / self.n as f64
    }

    fn site(&self, m: usize, k: usize) -> usize {
        (m % self.n) * self.n + (k % self.n)
    }
}

/// Link variables `U_x(m, k)` and `U_y(m, k)`, indexed by site.
#[derive(Clone, Debug)]
pub struct Links {
    n: usize,
    pub ux: Vec<Complex64>,
    pub uy: Vec<Complex64>,
}

fn phase(numer: u64, denom: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (numer % denom) as f64 / denom as f64)
}

impl Links {
    /// Landau-gauge links. Phases are formed from integer numerators so the
    /// flux is exact up to a single rounding per link.
    pub fn landau(cfg: &TorusLatticeConfig) -> Self {
        let n = cfg.n;
        let nn = (n * n) as u64;
        let (m0, k0) = cfg.gauge_origin;
        let mut ux = vec![Complex64::new(1.0, 0.0); n * n];
        let mut uy = vec![Complex64::new(1.0, 0.0); n * n];
        for m in 0..n {
            let mr = ((m + n - m0) % n) as u64;
            for k in 0..n {
                let kr = ((k + n - k0) % n) as u64;
                let s = cfg.site(m, k);
                uy[s] = phase(cfg.delta * mr, nn);
                if mr == n as u64 - 1 {
                    ux[s] = phase(n as u64 - (cfg.delta * kr) % n as u64, n as u64);
                }
            }
        }
        Self { n, ux, uy }
    }

    /// Gauge transform `U_mu(x) -> conj(g(x)) U_mu(x) g(x + mu)` with
    /// `g = exp(i theta)`.
    pub fn gauge_transformed(&self, theta: &[f64]) -> Self {
        let n = self.n;
        let g: Vec<Complex64> = theta.iter().map(|t| Complex64::from_polar(1.0, *t)).collect();
        let mut out = self.clone();
        for m in 0..n {
            for k in 0..n {
                let s = m * n + k;
                let sx = ((m + 1) % n) * n + k;
                let sy = m * n + (k + 1) % n;
                out.ux[s] = g[s].conj() * self.ux[s] * g[sx];
                out.uy[s] = g[s].conj() * self.uy[s] * g[sy];
            }
        }
        out
    }

    /// Largest deviation of any plaquette product from `target`.
    pub fn plaquette_deviation(&self, target: Complex64) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for m in 0..n {
            for k in 0..n {
                let s = m * n + k;
                let sx = ((m + 1) % n) * n + k;
                let sy = m * n + (k + 1) % n;
                let p = self.ux[s] * self.uy[sx] * self.ux[sy].conj() * self.uy[s].conj();
                worst = worst.max((p - target).norm());
            }
        }
        worst
    }
}

/// Sparse complex matrix in compressed-row form.
#[derive(Clone, Debug)]
pub struct LatticeOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
    pub hermitian: bool,
}

impl LatticeOperator {
    /// Sums duplicate `(row, col)` entries.
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (usize, usize, Complex64)>, hermitian: bool) -> Self {
        let mut rows: Vec<BTreeMap<usize, Complex64>> = vec![BTreeMap::new(); dim];
        for (r, c, v) in triplets {
            *rows[r].entry(c).or_default() += v;
        }
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in rows {
            for (c, v) in row {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Self {
            dim,
            row_ptr,
            cols,
            vals,
            hermitian,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn max_row_nnz(&self) -> usize {
        self.row_ptr.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()].iter().copied().zip(self.vals[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.row(r).find(|(cc, _)| *cc == c).map_or(Complex64::new(0.0, 0.0), |(_, v)| v)
    }

    /// Bitwise check that `A[r][c] == conj(A[c][r])` for every stored entry.
    pub fn is_exactly_hermitian(&self) -> bool {
        (0..self.dim).all(|r| self.row(r).all(|(c, v)| self.get(c, r) == v.conj()))
    }

    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (r, out) in y.iter_mut().enumerate() {
            *out = self.row(r).map(|(c, v)| v * x[c]).sum();
        }
    }

    fn apply_block(&self, x: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let mut y = DMatrix::zeros(x.nrows(), x.ncols());
        for j in 0..x.ncols() {
            let (xc, mut yc) = (x.column(j), y.column_mut(j));
            for r in 0..self.dim {
                yc[r] = self.row(r).map(|(c, v)| v * xc[c]).sum();
            }
        }
        y
    }

    fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                m[(r, c)] = v;
            }
        }
        m
    }

    /// Gershgorin upper bound on the spectrum.
    fn gershgorin_max(&self) -> f64 {
        (0..self.dim)
            .map(|r| {
                self.row(r)
                    .map(|(c, v)| if c == r { v.re } else { v.norm() })
                    .sum::<f64>()
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `dbar = (D_x + i D_y) / 2` built from explicit links.
pub fn build_dbar_from_links(cfg: &TorusLatticeConfig, links: &Links) -> LatticeOperator {
    let n = cfg.n;
    let inv = 1.0 / (2.0 * cfg.spacing());
    let i = Complex64::i();
    let mut trips = Vec::with_capacity(3 * n * n);
    for m in 0..n {
        for k in 0..n {
            let s = cfg.site(m, k);
            trips.push((s, s, -(1.0 + i) * inv));
            trips.push((s, cfg.site(m + 1, k), links.ux[s].conj() * inv));
            trips.push((s, cfg.site(m, k + 1), i * links.uy[s].conj() * inv));
        }
    }
    LatticeOperator::from_triplets(n * n, trips, false)
}

pub fn build_dbar(cfg: &TorusLatticeConfig) -> LatticeOperator {
    build_dbar_from_links(cfg, &Links::landau(cfg))
}

/// `dbar^* dbar`, Hermitian bit for bit. Rows have seven entries.
pub fn dbar_dagger_dbar(dbar: &LatticeOperator) -> LatticeOperator {
    LatticeOperator::from_triplets(dbar.dim, adjoint_product(dbar, 1.0), true)
}

/// Weight of the doubler-suppressing term; `16 * WILSON = 1` puts the
/// doubler at `1/h^2`.
pub const WILSON: f64 = 1.0 / 16.0;

/// `op^* op`, assembled from the upper triangle and mirrored so that the
/// result is Hermitian bit for bit.
fn adjoint_product(op: &LatticeOperator, weight: f64) -> Vec<(usize, usize, Complex64)> {
    let dim = op.dim;
    let mut upper: Vec<BTreeMap<usize, Complex64>> = vec![BTreeMap::new(); dim];
    for r in 0..dim {
        let row: Vec<(usize, Complex64)> = op.row(r).collect();
        for &(i, a) in &row {
            for &(j, b) in &row {
                if i <= j {
                    *upper[i].entry(j).or_default() += a.conj() * b * weight;
                }
            }
        }
    }
    let mut trips = Vec::new();
    for (i, row) in upper.into_iter().enumerate() {
        for (j, v) in row {
            if i == j {
                trips.push((i, i, Complex64::new(v.re, 0.0)));
            } else {
                trips.push((i, j, v));
                trips.push((j, i, v.conj()));
            }
        }
    }
    trips
}

/// Covariant lattice Laplacian `sum_mu D_mu^* D_mu` (five-point stencil).
pub fn covariant_laplacian(cfg: &TorusLatticeConfig, links: &Links) -> LatticeOperator {
    let n = cfg.n;
    let inv = 1.0 / cfg.spacing();
    let mut trips = Vec::new();
    for (dir, u) in [(0usize, &links.ux), (1, &links.uy)] {
        let mut d = Vec::with_capacity(2 * n * n);
        for m in 0..n {
            for k in 0..n {
                let s = cfg.site(m, k);
                let t = if dir == 0 { cfg.site(m + 1, k) } else { cfg.site(m, k + 1) };
                d.push((s, s, Complex64::new(-inv, 0.0)));
                d.push((s, t, u[s].conj() * inv));
            }
        }
        trips.extend(adjoint_product(&LatticeOperator::from_triplets(n * n, d, false), 1.0));
    }
    LatticeOperator::from_triplets(n * n, trips, true)
}

/// The lattice `Delta_0 / KAPPA`: `dbar^* dbar + WILSON h^2 L^2`.
pub fn delta0_operator_from_links(cfg: &TorusLatticeConfig, links: &Links) -> LatticeOperator {
    let dbar = build_dbar_from_links(cfg, links);
    let lap = covariant_laplacian(cfg, links);
    let h = cfg.spacing();
    let mut trips = adjoint_product(&dbar, 1.0);
    trips.extend(adjoint_product(&lap, WILSON * h * h));
    LatticeOperator::from_triplets(cfg.n * cfg.n, trips, true)
}

pub fn delta0_operator(cfg: &TorusLatticeConfig) -> LatticeOperator {
    delta0_operator_from_links(cfg, &Links::landau(cfg))
}

/// Dense solves are used up to this dimension.
pub const DENSE_MAX_DIM: usize = 24 * 24;
/// Required `||A v - lambda v|| / ||v||` for every reported pair.
pub const RESIDUAL_TOL: f64 = 1e-8;
const FILTER_DEGREE: usize = 24;
const MAX_ITERATIONS: usize = 2000;
const SOLVER_SEED: u64 = 0x5eed_1a77;

#[derive(Clone, Debug, Serialize)]
pub struct LowSpectrum {
    pub eigenvalues: Vec<f64>,
    pub max_residual: f64,
    pub method: &'static str,
    pub iterations: usize,
}

fn orthonormalize(x: DMatrix<Complex64>) -> DMatrix<Complex64> {
    // Two passes keep the basis orthonormal after strong filtering.
    let q = x.qr().q();
    q.qr().q()
}

fn rayleigh_ritz(op: &LatticeOperator, v: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>, DMatrix<Complex64>) {
    let av = op.apply_block(v);
    let h = v.adjoint() * &av;
    let h = (&h + h.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let theta: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let y = DMatrix::from_columns(&order.iter().map(|&i| eig.eigenvectors.column(i)).collect::<Vec<_>>());
    (theta, v * &y, av * y)
}

/// Scaled Chebyshev filter damping `[lo, hi]` and normalised at `scale`.
fn chebyshev_filter(op: &LatticeOperator, x: &DMatrix<Complex64>, lo: f64, hi: f64, scale: f64) -> DMatrix<Complex64> {
    let e = (hi - lo) / 2.0;
    let c = (hi + lo) / 2.0;
    let mut sigma = e / (scale - c);
    let tau = 2.0 / sigma;
    let mut x_prev = x.clone();
    let mut y = (op.apply_block(x) - x * Complex64::new(c, 0.0)) * Complex64::new(sigma / e, 0.0);
    for _ in 1..FILTER_DEGREE {
        let sigma_new = 1.0 / (tau - sigma);
        let y_new = (op.apply_block(&y) - &y * Complex64::new(c, 0.0)) * Complex64::new(2.0 * sigma_new / e, 0.0)
            - &x_prev * Complex64::new(sigma * sigma_new, 0.0);
        x_prev = y;
        y = y_new;
        sigma = sigma_new;
    }
    y
}

/// The `k` smallest eigenvalues of a Hermitian operator, each with
/// residual at most [`RESIDUAL_TOL`].
pub fn low_spectrum(op: &LatticeOperator, k: usize) -> Result<LowSpectrum> {
    if !op.hermitian {
        return invalid("low_spectrum needs a Hermitian operator");
    }
    if k == 0 || k > op.dim {
        return invalid(format!("cannot compute {k} eigenvalues of a {}-dimensional operator", op.dim));
    }
    if op.dim <= DENSE_MAX_DIM {
        return dense_low_spectrum(op, k);
    }
    let p = (k + 8).min(op.dim);
    let mut rng = ChaCha8Rng::seed_from_u64(SOLVER_SEED);
    let x = DMatrix::from_fn(op.dim, p, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    let mut v = orthonormalize(x);
    let upper = op.gershgorin_max();
    let mut worst = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let (theta, vr, avr) = rayleigh_ritz(op, &v);
        worst = (0..k)
            .map(|j| (avr.column(j) - vr.column(j) * Complex64::new(theta[j], 0.0)).norm())
            .fold(0.0, f64::max);
        if worst <= RESIDUAL_TOL {
            return Ok(LowSpectrum {
                eigenvalues: theta[..k].to_vec(),
                max_residual: worst,
                method: "chebyshev-subspace",
                iterations: it,
            });
        }
        let cutoff = theta[p - 1];
        let scale = theta[0] - 1e-3 * (cutoff - theta[0]).abs().max(1e-12);
        v = orthonormalize(chebyshev_filter(op, &vr, cutoff, upper, scale));
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
        worst_residual: worst,
    })
}

fn dense_low_spectrum(op: &LatticeOperator, k: usize) -> Result<LowSpectrum> {
    let a = op.to_dense();
    let eig = SymmetricEigen::new(a.clone());
    let mut order: Vec<usize> = (0..op.dim).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let mut worst = 0.0f64;
    let mut vals = Vec::with_capacity(k);
    for &i in order.iter().take(k) {
        let v = eig.eigenvectors.column(i);
        let lambda = eig.eigenvalues[i];
        worst = worst.max((&a * v - v * Complex64::new(lambda, 0.0)).norm() / v.norm());
        vals.push(lambda);
    }
    if worst > RESIDUAL_TOL {
        return Err(Error::Precision(format!("dense eigensolver residual {worst:e}")));
    }
    Ok(LowSpectrum {
        eigenvalues: vals,
        max_residual: worst,
        method: "dense",
        iterations: 1,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Cluster {
    pub center: f64,
    pub count: usize,
    pub spread: f64,
}

/// Greedy clustering of sorted values: a new cluster starts whenever the
/// gap to the previous value exceeds `gap`.
pub fn cluster_values(sorted: &[f64], gap: f64) -> Vec<Cluster> {
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for &v in sorted {
        match groups.last_mut() {
            Some(g) if v - g[g.len() - 1] <= gap => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    groups
        .into_iter()
        .map(|g| Cluster {
            center: g.iter().sum::<f64>() / g.len() as f64,
            count: g.len(),
            spread: g[g.len() - 1] - g[0],
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelCheck {
    pub q: u64,
    pub target: f64,
    pub center: Option<f64>,
    /// `|center - qB| / (qB)` for `q >= 1`, `|center| / B` for `q = 0`.
    pub error: Option<f64>,
    pub count: usize,
    pub expected_count: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClusterReport {
    pub n: usize,
    pub b: f64,
    pub delta: u64,
    pub kappa: f64,
    pub eigenvalues: Vec<f64>,
    pub clusters: Vec<Cluster>,
    pub levels: Vec<LevelCheck>,
    pub max_residual: f64,
    pub method: &'static str,
    pub pass: bool,
}

pub const LOWEST_LEVEL_TOL: f64 = 0.02;
pub const LEVEL_RELATIVE_TOL: f64 = 0.05;

/// Compares the rescaled lattice spectrum with the levels `qB`,
/// `q = 0..=q_max`, each of multiplicity `delta`.
pub fn landau_report(cfg: &TorusLatticeConfig, q_max: u64) -> Result<ClusterReport> {
    if cfg.delta == 0 {
        return invalid("Landau levels need positive flux");
    }
    let k = ((q_max + 2) * cfg.delta) as usize;
    let spec = low_spectrum(&delta0_operator(cfg), k)?;
    let eigenvalues: Vec<f64> = spec.eigenvalues.iter().map(|v| KAPPA * v).collect();
    let clusters = cluster_values(&eigenvalues, cfg.b / 2.0);
    let levels: Vec<LevelCheck> = (0..=q_max)
        .map(|q| {
            let target = q as f64 * cfg.b;
            let c = clusters.get(q as usize);
            let error = c.map(|c| {
                if q == 0 {
                    c.center.abs() / cfg.b
                } else {
                    (c.center - target).abs() / target
                }
            });
            let tol = if q == 0 { LOWEST_LEVEL_TOL } else { LEVEL_RELATIVE_TOL };
            let count = c.map_or(0, |c| c.count);
            LevelCheck {
                q,
                target,
                center: c.map(|c| c.center),
                error,
                count,
                expected_count: cfg.delta,
                pass: error.is_some_and(|e| e < tol) && count as u64 == cfg.delta,
            }
        })
        .collect();
    let pass = levels.iter().all(|l| l.pass);
    Ok(ClusterReport {
        n: cfg.n,
        b: cfg.b,
        delta: cfg.delta,
        kappa: KAPPA,
        eigenvalues,
        clusters,
        levels,
        max_residual: spec.max_residual,
        method: spec.method,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeCheck {
    pub seed: u64,
    pub eigenvalues: usize,
    pub max_difference: f64,
    pub pass: bool,
}

pub const GAUGE_TOL: f64 = 1e-10;

/// Compares the low spectrum before and after a random lattice gauge
/// transformation. Seed 0 is the identity transformation.
pub fn gauge_invariance_check(cfg: &TorusLatticeConfig, seed: u64, k: usize) -> Result<GaugeCheck> {
    let links = Links::landau(cfg);
    let theta: Vec<f64> = if seed == 0 {
        vec![0.0; cfg.n * cfg.n]
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..cfg.n * cfg.n).map(|_| rng.random::<f64>() * 2.0 * PI).collect()
    };
    let before = low_spectrum(&delta0_operator_from_links(cfg, &links), k)?;
    let after = low_spectrum(&delta0_operator_from_links(cfg, &links.gauge_transformed(&theta)), k)?;
    let max_difference = before
        .eigenvalues
        .iter()
        .zip(&after.eigenvalues)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(GaugeCheck {
        seed,
        eigenvalues: k,
        max_difference,
        pass: max_difference <= GAUGE_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plaquettes_are_uniform() {
        for (n, delta, origin) in [(8, 1, (0, 0)), (12, 3, (5, 7)), (16, 5, (15, 1))] {
            let cfg = TorusLatticeConfig::new(n, 1.0, delta).unwrap().with_gauge_origin(origin.0, origin.1);
            let links = Links::landau(&cfg);
            let target = phase(delta, (n * n) as u64);
            assert!(links.plaquette_deviation(target) < 1e-13, "n={n} delta={delta}");
        }
    }

    #[test]
    fn zero_field_annihilates_constants() {
        let cfg = TorusLatticeConfig::zero_field(8, 1.0).unwrap();
        let d = build_dbar(&cfg);
        let ones = vec![Complex64::new(1.0, 0.0); 64];
        let mut out = vec![Complex64::new(0.0, 0.0); 64];
        d.apply(&ones, &mut out);
        assert!(out.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn laplacian_is_exactly_hermitian_and_sparse() {
        let cfg = TorusLatticeConfig::new(10, 2.0, 3).unwrap();
        let a = dbar_dagger_dbar(&build_dbar(&cfg));
        assert!(a.is_exactly_hermitian());
        assert_eq!(a.max_row_nnz(), 7);
        let full = delta0_operator(&cfg);
        assert!(full.is_exactly_hermitian());
        assert_eq!(full.max_row_nnz(), 13);
    }

    #[test]
    fn forward_dbar_has_a_doubler() {
        // Without the Wilson term every level q >= 1 is doubled.
        let cfg = TorusLatticeConfig::new(20, 1.0, 1).unwrap();
        let bare = low_spectrum(&dbar_dagger_dbar(&build_dbar(&cfg)), 5).unwrap();
        let levels = cluster_values(&bare.eigenvalues.iter().map(|v| KAPPA * v).collect::<Vec<_>>(), 0.5);
        assert_eq!(levels.iter().map(|c| c.count).collect::<Vec<_>>(), vec![1, 2, 2]);
        let fixed = low_spectrum(&delta0_operator(&cfg), 5).unwrap();
        let levels = cluster_values(&fixed.eigenvalues.iter().map(|v| KAPPA * v).collect::<Vec<_>>(), 0.5);
        assert_eq!(levels.iter().map(|c| c.count).collect::<Vec<_>>(), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn trivial_spectra() {
        let z = LatticeOperator::from_triplets(5, [(0, 0, Complex64::new(0.0, 0.0))], true);
        assert_eq!(low_spectrum(&z, 3).unwrap().eigenvalues, vec![0.0; 3]);
        let diag = LatticeOperator::from_triplets(
            4,
            [3.0, -1.0, 7.0, 2.0].iter().enumerate().map(|(i, v)| (i, i, Complex64::new(*v, 0.0))),
            true,
        );
        let got = low_spectrum(&diag, 2).unwrap().eigenvalues;
        assert!((got[0] + 1.0).abs() < 1e-14 && (got[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn iterative_matches_dense() {
        // A diagonal operator above the dense threshold with known spectrum.
        let dim = DENSE_MAX_DIM + 100;
        let diag = LatticeOperator::from_triplets(
            dim,
            (0..dim).map(|i| (i, i, Complex64::new((i / 2) as f64 * 0.5 + 0.25, 0.0))),
            true,
        );
        let got = low_spectrum(&diag, 6).unwrap();
        assert_eq!(got.method, "chebyshev-subspace");
        for (v, e) in got.eigenvalues.iter().zip([0.25, 0.25, 0.75, 0.75, 1.25, 1.25]) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn small_torus_levels() {
        let cfg = TorusLatticeConfig::new(24, 1.0, 2).unwrap();
        let rep = landau_report(&cfg, 2).unwrap();
        assert!(rep.pass, "{:#?}", rep.levels);
    }

    #[test]
    fn doubling_b_doubles_centers() {
        let a = landau_report(&TorusLatticeConfig::new(20, 1.0, 1).unwrap(), 2).unwrap();
        let b = landau_report(&TorusLatticeConfig::new(20, 2.0, 1).unwrap(), 2).unwrap();
        for (x, y) in a.clusters.iter().zip(&b.clusters).skip(1).take(2) {
            assert!((y.center / x.center - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn gauge_and_translation_invariance() {
        let cfg = TorusLatticeConfig::new(16, 1.5, 2).unwrap();
        let id = gauge_invariance_check(&cfg, 0, 8).unwrap();
        assert_eq!(id.max_difference, 0.0);
        assert!(gauge_invariance_check(&cfg, 7, 8).unwrap().pass);
        let base = low_spectrum(&delta0_operator(&cfg), 8).unwrap();
        let moved_cfg = cfg.clone().with_gauge_origin(5, 11);
        let moved = low_spectrum(&delta0_operator(&moved_cfg), 8).unwrap();
        for (a, b) in base.eigenvalues.iter().zip(&moved.eigenvalues) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn spectrum_is_nonnegative() {
        let cfg = TorusLatticeConfig::new(12, 3.0, 1).unwrap();
        let s = low_spectrum(&delta0_operator(&cfg), 10).unwrap();
        assert!(s.eigenvalues.iter().all(|v| *v >= -1e-12));
    }
}
