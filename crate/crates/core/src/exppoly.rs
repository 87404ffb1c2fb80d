//! Exact symbolic sections on the universal cover of a square elliptic curve.
//!
//! A section is a finite sum
//!
//! ```text
//! e^{gamma z^2} * sum c(l) z^p zbar^r exp(a(l) z + b(l) zbar + w(l))
//! ```
//!
//! where `l` is the lattice side length, carried as a formal variable: the
//! coefficients `c`, the rates `a`, `b` and the log-weight `w` are
//! polynomials in `l` over the Gaussian rationals ([`LPoly`]). Theta functions
//! need rates proportional to `l`, which is irrational; keeping `l` symbolic
//! makes every operator identity an exact polynomial identity. Numbers only
//! appear when a section is evaluated or integrated.
//!
//! The hermitian metric is `h = e^{-B|z|^2}`, so the Chern connection is
//! `cov_dz = d/dz - B zbar` and the two Laplacians are
//! `delta0 = -cov_dz . d/dzbar` and `delta_up0 = -d/dzbar . cov_dz`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exact::{rat, ratio, to_f64, CRational, Rational};

/// Polynomial in the side length `l` with Gaussian-rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LPoly(BTreeMap<u32, CRational>);

impl LPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: CRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn rational(q: Rational) -> Self {
        Self::constant(CRational::real(q))
    }

    pub fn monomial(c: CRational, degree: u32) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(degree, c);
        }
        Self(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, degree: u32) -> CRational {
        self.0.get(&degree).cloned().unwrap_or_default()
    }

    fn accumulate(&mut self, degree: u32, c: &CRational) {
        let e = self.0.entry(degree).or_default();
        *e = &*e + c;
        if e.is_zero() {
            self.0.remove(&degree);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &o.0 {
            out.accumulate(*d, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|(d, c)| (*d, -c)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (d1, c1) in &self.0 {
            for (d2, c2) in &o.0 {
                out.accumulate(d1 + d2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, k: &CRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self(self.0.iter().map(|(d, c)| (*d, c * k)).collect())
    }

    pub fn eval(&self, ell: f64) -> Complex64 {
        self.0
            .iter()
            .map(|(d, c)| c.to_complex() * ell.powi(*d as i32))
            .sum()
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(d, c)| match d {
                0 => format!("({c})"),
                1 => format!("({c})l"),
                _ => format!("({c})l^{d}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Exponential factor `exp(a z + b zbar + w)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpClass {
    pub a: LPoly,
    pub b: LPoly,
    pub w: LPoly,
}

impl ExpClass {
    pub fn new(a: LPoly, b: LPoly, w: LPoly) -> Self {
        Self { a, b, w }
    }

    /// `exp(a z + b zbar)` with constant rates and no weight.
    pub fn rates(a: CRational, b: CRational) -> Self {
        Self::new(LPoly::constant(a), LPoly::constant(b), LPoly::zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct TermKey {
    class: ExpClass,
    p: u32,
    r: u32,
}

/// One term `coeff * z^p * zbar^r * exp(a z + b zbar + w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPolyTerm {
    pub coeff: LPoly,
    pub p: u32,
    pub r: u32,
    pub class: ExpClass,
}

/// A section of `L^B (x) T^k` in canonical form: terms are keyed by
/// `(class, p, r)` and zero coefficients never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPolySection {
    b: Rational,
    gaussian: Rational,
    tensor_level: i64,
    terms: BTreeMap<TermKey, LPoly>,
}

impl ExpPolySection {
    pub fn new(b: Rational, gaussian: Rational, tensor_level: i64) -> Result<Self> {
        if !b.is_positive() {
            return invalid(format!("curvature constant B must be positive (got {b})"));
        }
        Ok(Self {
            b,
            gaussian,
            tensor_level,
            terms: BTreeMap::new(),
        })
    }

    /// Builds a section from loose terms, merging duplicates.
    pub fn from_terms(
        b: Rational,
        gaussian: Rational,
        tensor_level: i64,
        terms: impl IntoIterator<Item = ExpPolyTerm>,
    ) -> Result<Self> {
        let mut s = Self::new(b, gaussian, tensor_level)?;
        for t in terms {
            s.push(t.class, t.p, t.r, &t.coeff);
        }
        Ok(s)
    }

    fn empty_like(&self) -> Self {
        Self {
            b: self.b.clone(),
            gaussian: self.gaussian.clone(),
            tensor_level: self.tensor_level,
            terms: BTreeMap::new(),
        }
    }

    fn push(&mut self, class: ExpClass, p: u32, r: u32, coeff: &LPoly) {
        if coeff.is_zero() {
            return;
        }
        let key = TermKey { class, p, r };
        let merged = match self.terms.get(&key) {
            Some(c) => c.add(coeff),
            None => coeff.clone(),
        };
        if merged.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, merged);
        }
    }

    pub fn curvature(&self) -> &Rational {
        &self.b
    }

    pub fn gaussian(&self) -> &Rational {
        &self.gaussian
    }

    pub fn tensor_level(&self) -> i64 {
        self.tensor_level
    }

    pub fn with_tensor_level(mut self, k: i64) -> Self {
        self.tensor_level = k;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> Vec<ExpPolyTerm> {
        self.terms
            .iter()
            .map(|(k, c)| ExpPolyTerm {
                coeff: c.clone(),
                p: k.p,
                r: k.r,
                class: k.class.clone(),
            })
            .collect()
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.b != o.b || self.gaussian != o.gaussian {
            return invalid("sections live in different line bundles");
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.push(k.class.clone(), k.p, k.r, c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&CRational::from_int(-1)))
    }

    pub fn scale(&self, k: &CRational) -> Self {
        let mut out = self.empty_like();
        for (key, c) in &self.terms {
            out.push(key.class.clone(), key.p, key.r, &c.scale(k));
        }
        out
    }

    /// Pointwise product, a section of the tensor product bundle.
    pub fn product(&self, o: &Self) -> Self {
        let mut out = Self {
            b: &self.b + &o.b,
            gaussian: &self.gaussian + &o.gaussian,
            tensor_level: self.tensor_level + o.tensor_level,
            terms: BTreeMap::new(),
        };
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let class = ExpClass::new(
                    k1.class.a.add(&k2.class.a),
                    k1.class.b.add(&k2.class.b),
                    k1.class.w.add(&k2.class.w),
                );
                out.push(class, k1.p + k2.p, k1.r + k2.r, &c1.mul(c2));
            }
        }
        out
    }

    fn d_z(&self) -> Self {
        let two_gamma = LPoly::rational(rat(2) * &self.gaussian);
        let mut out = self.empty_like();
        for (k, c) in &self.terms {
            if k.p > 0 {
                out.push(k.class.clone(), k.p - 1, k.r, &c.scale(&CRational::from_int(k.p.into())));
            }
            out.push(k.class.clone(), k.p + 1, k.r, &c.mul(&two_gamma));
            out.push(k.class.clone(), k.p, k.r, &c.mul(&k.class.a));
        }
        out
    }

    fn d_zbar(&self) -> Self {
        let mut out = self.empty_like();
        for (k, c) in &self.terms {
            if k.r > 0 {
                out.push(k.class.clone(), k.p, k.r - 1, &c.scale(&CRational::from_int(k.r.into())));
            }
            out.push(k.class.clone(), k.p, k.r, &c.mul(&k.class.b));
        }
        out
    }

    fn times_zbar(&self, k: &Rational) -> Self {
        let mut out = self.empty_like();
        let k = CRational::real(k.clone());
        for (key, c) in &self.terms {
            out.push(key.class.clone(), key.p, key.r + 1, &c.scale(&k));
        }
        out
    }

    fn cov_dz(&self) -> Self {
        let mut out = self.d_z();
        for (k, c) in &self.times_zbar(&-self.b.clone()).terms {
            out.push(k.class.clone(), k.p, k.r, c);
        }
        out
    }

    /// Compiles the section for repeated floating-point evaluation at the
    /// given side length.
    pub fn numeric(&self, ell: f64) -> NumericSection {
        NumericSection {
            b: to_f64(&self.b),
            gaussian: to_f64(&self.gaussian),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| NumTerm {
                    coeff: c.eval(ell),
                    p: k.p as i32,
                    r: k.r as i32,
                    a: k.class.a.eval(ell),
                    b: k.class.b.eval(ell),
                    w: k.class.w.eval(ell),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OperatorKind {
    Dz,
    Dzbar,
    CovDz,
    Delta0,
    DeltaUp0,
}

pub fn apply_operator(kind: OperatorKind, s: &ExpPolySection) -> ExpPolySection {
    let minus = CRational::from_int(-1);
    match kind {
        OperatorKind::Dz => s.d_z(),
        OperatorKind::Dzbar => s.d_zbar(),
        OperatorKind::CovDz => s.cov_dz(),
        OperatorKind::Delta0 => s.d_zbar().cov_dz().scale(&minus),
        OperatorKind::DeltaUp0 => s.cov_dz().d_zbar().scale(&minus),
    }
}

/// `cov_dz` applied `q` times; the tensor level drops by `q`.
pub fn ladder_up(t: &ExpPolySection, q: u32) -> ExpPolySection {
    let mut s = t.clone();
    for _ in 0..q {
        s = s.cov_dz();
    }
    s.with_tensor_level(t.tensor_level - i64::from(q))
}

/// `-d/dzbar` applied `k` times; the tensor level rises by `k`.
pub fn ladder_down(s: &ExpPolySection, k: u32) -> ExpPolySection {
    let minus = CRational::from_int(-1);
    let mut out = s.clone();
    for _ in 0..k {
        out = out.d_zbar().scale(&minus);
    }
    out.with_tensor_level(s.tensor_level + i64::from(k))
}

/// `delta0(s) - lambda s`; empty exactly when `s` is an eigensection.
pub fn eigen_residual(s: &ExpPolySection, lambda: &Rational) -> ExpPolySection {
    apply_operator(OperatorKind::Delta0, s)
        .sub(&s.scale(&CRational::real(lambda.clone())))
        .expect("same bundle")
}

/// `delta0(cov_dz s) - cov_dz(delta0 s) - B cov_dz s`.
pub fn bk_residual(s: &ExpPolySection) -> ExpPolySection {
    let ds = s.cov_dz();
    let lhs = apply_operator(OperatorKind::Delta0, &ds);
    let rhs = apply_operator(OperatorKind::Delta0, s).cov_dz();
    lhs.sub(&rhs)
        .and_then(|x| x.sub(&ds.scale(&CRational::real(s.b.clone()))))
        .expect("same bundle")
}

#[derive(Clone, Debug)]
struct NumTerm {
    coeff: Complex64,
    p: i32,
    r: i32,
    a: Complex64,
    b: Complex64,
    w: Complex64,
}

/// Floating-point image of an [`ExpPolySection`] at a fixed side length.
#[derive(Clone, Debug)]
pub struct NumericSection {
    b: f64,
    gaussian: f64,
    terms: Vec<NumTerm>,
}

impl NumericSection {
    fn eval_shifted(&self, z: Complex64, log_shift: f64) -> Complex64 {
        let zb = z.conj();
        let base = self.gaussian * z * z + log_shift;
        self.terms
            .iter()
            .map(|t| t.coeff * z.powi(t.p) * zb.powi(t.r) * (t.a * z + t.b * zb + t.w + base).exp())
            .sum()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_shifted(z, 0.0)
    }

    /// `s(z) e^{-B|z|^2/2}`, whose modulus is the pointwise norm of the
    /// section. The weight is folded into each exponent before
    /// exponentiating.
    pub fn eval_unitary(&self, z: Complex64) -> Complex64 {
        self.eval_shifted(z, -0.5 * self.b * z.norm_sqr())
    }
}

/// Parameters of a theta basis element on the square torus of side `l`
/// with `B l^2 = pi delta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaSpec {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub b: Rational,
    pub delta: u64,
    pub j: u64,
    pub truncation: u32,
}

/// Tail threshold for the theta series, relative to the dominant term.
pub const THETA_TAIL: f64 = 1e-16;

impl ThetaSpec {
    /// Picks the smallest truncation `M >= 2` whose Gaussian tail falls
    /// below [`THETA_TAIL`].
    pub fn new(b: Rational, delta: u64, j: u64) -> Result<Self> {
        if !b.is_positive() {
            return invalid(format!("B must be positive (got {b})"));
        }
        if delta == 0 {
            return invalid("delta must be at least 1");
        }
        if j >= delta {
            return invalid(format!("basis index j = {j} must be below delta = {delta}"));
        }
        // Relative to the largest term on the closed fundamental domain,
        // index t contributes at most exp(-pi delta (|t| - 1)^2); the tail
        // past M is bounded by twice its first term.
        let mut m = 2u32;
        while 2.0 * (-PI * delta as f64 * f64::from(m - 1).powi(2)).exp() >= THETA_TAIL {
            m += 1;
        }
        Ok(Self {
            b,
            delta,
            j,
            truncation: m,
        })
    }

    pub fn with_truncation(mut self, m: u32) -> Self {
        self.truncation = m;
        self
    }

    pub fn ell(&self) -> f64 {
        (PI * self.delta as f64 / to_f64(&self.b)).sqrt()
    }

    /// Series indices `t = j/delta + m` with `|t| <= M`.
    fn indices(&self) -> Vec<Rational> {
        let m = i64::from(self.truncation);
        let d = self.delta as i64;
        (-m - 1..=m)
            .map(|k| ratio(self.j as i64, d) + rat(k))
            .filter(|t| t.abs() <= rat(m))
            .collect()
    }
}

/// Measured automorphy of a theta function at seeded sample points.
#[derive(Clone, Debug, Serialize)]
pub struct AutomorphyReport {
    pub points: usize,
    pub chi_x: [f64; 2],
    pub chi_y: [f64; 2],
    pub residual_x: f64,
    pub residual_y: f64,
    pub truncation: u32,
}

#[derive(Clone, Debug)]
pub struct ThetaFunction {
    pub section: ExpPolySection,
    pub spec: ThetaSpec,
    pub automorphy: AutomorphyReport,
}

pub const AUTOMORPHY_TOL: f64 = 1e-10;
const AUTOMORPHY_POINTS: usize = 32;

/// `e^{-Bz^2/2} sum_t exp(2 B l t z - B l^2 t^2)` over `t in j/delta + Z`,
/// which satisfies `f(z+l) = e^{B(lz + l^2/2)} f(z)` and
/// `f(z+il) = e^{B(-ilz + l^2/2)} f(z)`. Both multipliers are measured at
/// seeded points before the section is returned.
pub fn theta_basis(spec: &ThetaSpec) -> Result<ThetaFunction> {
    let mut spec = spec.clone();
    loop {
        let section = theta_section(&spec)?;
        let automorphy = measure_automorphy(&section, &spec);
        if automorphy.residual_x <= AUTOMORPHY_TOL && automorphy.residual_y <= AUTOMORPHY_TOL {
            return Ok(ThetaFunction {
                section,
                spec,
                automorphy,
            });
        }
        if spec.truncation >= 64 {
            return Err(Error::Verification(format!(
                "theta automorphy residual {:e}/{:e} above {AUTOMORPHY_TOL:e} at truncation {}",
                automorphy.residual_x, automorphy.residual_y, spec.truncation
            )));
        }
        spec.truncation += 2;
    }
}

fn theta_section(spec: &ThetaSpec) -> Result<ExpPolySection> {
    let b = &spec.b;
    let gaussian = -(b / rat(2));
    let mut s = ExpPolySection::new(b.clone(), gaussian, 0)?;
    for t in spec.indices() {
        let a = LPoly::monomial(CRational::real(rat(2) * b * &t), 1);
        let w = LPoly::monomial(CRational::real(-(b * &t * &t)), 2);
        s.push(ExpClass::new(a, LPoly::zero(), w), 0, 0, &LPoly::constant(CRational::one()));
    }
    Ok(s)
}

fn measure_automorphy(section: &ExpPolySection, spec: &ThetaSpec) -> AutomorphyReport {
    let ell = spec.ell();
    let b = to_f64(&spec.b);
    let f = section.numeric(ell);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e7a ^ (spec.delta << 16) ^ spec.j);
    let pts: Vec<Complex64> = (0..AUTOMORPHY_POINTS)
        .map(|_| Complex64::new(rng.random::<f64>() * ell, rng.random::<f64>() * ell))
        .collect();
    let i = Complex64::i();
    let shifts = [Complex64::new(ell, 0.0), Complex64::new(0.0, ell)];
    let mut out = [(Complex64::new(0.0, 0.0), 0.0); 2];
    for (slot, shift) in out.iter_mut().zip(shifts) {
        // Compare unitary values so the check is uniform across the domain.
        let mut ratios = Complex64::new(0.0, 0.0);
        let mut scale = 0.0f64;
        let mut vals = Vec::with_capacity(pts.len());
        for &z in &pts {
            let log_factor = if shift.im == 0.0 {
                b * (ell * z + 0.5 * ell * ell)
            } else {
                b * (-i * ell * z + 0.5 * ell * ell)
            };
            let lhs = f.eval_unitary(z + shift);
            // e^{-B|z+s|^2/2} * factor * e^{B|z|^2/2} f_unitary(z)
            let w = -0.5 * b * ((z + shift).norm_sqr() - z.norm_sqr());
            let rhs = (log_factor + w).exp() * f.eval_unitary(z);
            scale = scale.max(lhs.norm()).max(rhs.norm());
            if rhs.norm() > 0.0 {
                ratios += lhs / rhs;
            }
            vals.push((lhs, rhs));
        }
        let chi = ratios / pts.len() as f64;
        let chi = chi / chi.norm();
        let resid = vals
            .iter()
            .map(|(l, r)| (l - chi * r).norm())
            .fold(0.0, f64::max)
            / scale.max(f64::MIN_POSITIVE);
        *slot = (chi, resid);
    }
    AutomorphyReport {
        points: pts.len(),
        chi_x: [out[0].0.re, out[0].0.im],
        chi_y: [out[1].0.re, out[1].0.im],
        residual_x: out[0].1,
        residual_y: out[1].1,
        truncation: spec.truncation,
    }
}

pub const PERIODICITY_TOL: f64 = 1e-8;

/// `integral over [0,l)^2 of s conj(t) e^{-B|z|^2} dx dy` by the trapezoid
/// rule on an `n x n` periodic grid. The integrand is checked for
/// lattice periodicity at eight seeded points first.
pub fn l2_inner(s: &ExpPolySection, t: &ExpPolySection, spec: &ThetaSpec, n: usize) -> Result<Complex64> {
    s.compatible(t)?;
    if n == 0 {
        return invalid("quadrature grid must be non-empty");
    }
    let ell = spec.ell();
    let (fs, ft) = (s.numeric(ell), t.numeric(ell));
    let density = |z: Complex64| fs.eval_unitary(z) * ft.eval_unitary(z).conj();

    let mut rng = ChaCha8Rng::seed_from_u64(0x1a2b);
    for _ in 0..8 {
        let z = Complex64::new(rng.random::<f64>() * ell, rng.random::<f64>() * ell);
        let base = density(z);
        for shift in [Complex64::new(ell, 0.0), Complex64::new(0.0, ell)] {
            let shifted = density(z + shift);
            let scale = base.norm().max(shifted.norm()).max(1e-300);
            if (shifted - base).norm() > PERIODICITY_TOL * scale {
                return Err(Error::Verification(format!(
                    "integrand is not lattice periodic at z = {z} (mismatch {:e})",
                    (shifted - base).norm() / scale
                )));
            }
        }
    }

    let h = ell / n as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for a in 0..n {
        let mut row = Complex64::new(0.0, 0.0);
        for c in 0..n {
            row += density(Complex64::new(a as f64 * h, c as f64 * h));
        }
        total += row;
    }
    Ok(total * h * h)
}

/// Random section with constant rational rates and no Gaussian factor, used
/// to exercise the operator identities.
pub fn random_section(seed: u64, n_terms: usize, b: &Rational) -> Result<ExpPolySection> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| ratio(rng.random_range(-6..=6), rng.random_range(1..=3));
    let mut s = ExpPolySection::new(b.clone(), Rational::zero(), 0)?;
    for _ in 0..n_terms {
        let class = ExpClass::rates(
            CRational::new(small(&mut rng), small(&mut rng)),
            CRational::new(small(&mut rng), small(&mut rng)),
        );
        let coeff = LPoly::constant(CRational::new(small(&mut rng), small(&mut rng)));
        let p = rng.random_range(0..=3);
        let r = rng.random_range(0..=3);
        s.push(class, p, r, &coeff);
    }
    Ok(s)
}
