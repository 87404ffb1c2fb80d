//! Characteristic-class arithmetic in `H*(P^n, Q) = Q[w]/(w^{n+1})`.
//!
//! Everything here is exact. The Chern roots of `T P^n` are the `n` roots of
//! `(1 + y)^{n+1} - y^{n+1}` after `x = -1/y`, i.e. `1 - exp(2 pi i j/(n+1))`;
//! they are never touched numerically except in [`closed_form_dimension`].
//! Instead we work with their power sums, which are integers obtained by
//! Newton's identities from the elementary symmetric values `C(n+1, i)`.

use std::ops::{Add, Mul};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exact::{as_integer, binomial, factorial, rat, RatPoly, Rational};

/// Truncated polynomial `sum a_i w^i`, `i <= n`, in the cohomology ring of `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    n: usize,
    coeffs: Vec<Rational>,
}

impl CohomologyClass {
    pub fn new(n: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(n + 1, Rational::zero());
        Self { n, coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, Vec::new())
    }

    pub fn one(n: usize) -> Self {
        Self::new(n, vec![Rational::one()])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> &Rational {
        &self.coeffs[degree]
    }

    /// `exp(t w)` truncated at degree `n`.
    pub fn exp_hyperplane(n: usize, t: &Rational) -> Self {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut term = Rational::one();
        for k in 0..=n {
            if k > 0 {
                term = term * t / rat(k as i64);
            }
            coeffs.push(term.clone());
        }
        Self::new(n, coeffs)
    }

    /// Exponential of a class with vanishing degree-0 part (a nilpotent element).
    pub fn exp_nilpotent(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp_nilpotent needs a_0 = 0");
        let mut out = Self::one(self.n);
        let mut power = Self::one(self.n);
        for m in 1..=self.n {
            power = &power * self;
            out = &out + &power.scale(&Rational::new(BigInt::one(), factorial(m as u64)));
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.n, self.coeffs.iter().map(|c| c * k).collect())
    }

    /// The integral `int_{P^n}`: the coefficient of the top class `w^n`.
    pub fn integrate(&self) -> &Rational {
        &self.coeffs[self.n]
    }
}

impl Add for &CohomologyClass {
    type Output = CohomologyClass;
    fn add(self, o: &CohomologyClass) -> CohomologyClass {
        assert_eq!(self.n, o.n, "classes live on different P^n");
        CohomologyClass::new(
            self.n,
            self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Mul for &CohomologyClass {
    type Output = CohomologyClass;
    fn mul(self, o: &CohomologyClass) -> CohomologyClass {
        assert_eq!(self.n, o.n, "classes live on different P^n");
        let n = self.n;
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        CohomologyClass::new(n, out)
    }
}

/// Power sums `p_m = sum_j lambda_j^m` of the Chern roots of `T P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernRootData {
    pub n: usize,
    pub power_sums: Vec<BigInt>,
}

impl ChernRootData {
    /// Elementary symmetric values `e_1..e_count` recovered from the power sums.
    pub fn elementary_symmetric(&self, count: usize) -> Vec<BigInt> {
        assert!(count <= self.power_sums.len());
        // m e_m = sum_{i=1}^m (-1)^{i-1} e_{m-i} p_i
        let mut e = vec![Rational::one()];
        for m in 1..=count {
            let mut acc = Rational::zero();
            for i in 1..=m {
                let term = &e[m - i] * Rational::from_integer(self.power_sums[i - 1].clone());
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            e.push(acc / rat(m as i64));
        }
        e[1..]
            .iter()
            .map(|q| as_integer(q).expect("elementary symmetric values of integer power sums are integral"))
            .collect()
    }
}

fn elementary_of_tangent(n: usize, i: usize) -> BigInt {
    if i == 0 {
        BigInt::one()
    } else if i <= n {
        binomial(n as u64 + 1, i as u64)
    } else {
        BigInt::zero()
    }
}

/// Integer power sums `p_1..p_{m_max}` of the Chern roots via Newton's identities.
pub fn chern_power_sums(n: usize, m_max: usize) -> Result<ChernRootData> {
    if n < 1 {
        return invalid("chern_power_sums needs n >= 1");
    }
    if m_max < 1 {
        return invalid("chern_power_sums needs m_max >= 1");
    }
    let mut p: Vec<BigInt> = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        // p_m = sum_{i=1}^{m-1} (-1)^{i-1} e_i p_{m-i} + (-1)^{m-1} m e_m
        let mut acc = BigInt::zero();
        for i in 1..m {
            let term = elementary_of_tangent(n, i) * &p[m - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let last = elementary_of_tangent(n, m) * BigInt::from(m);
        if m % 2 == 1 {
            acc += last;
        } else {
            acc -= last;
        }
        p.push(acc);
    }
    Ok(ChernRootData { n, power_sums: p })
}

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Bernoulli number `B_k` with the `B_1 = -1/2` convention, cached across calls.
pub fn bernoulli(k: usize) -> Rational {
    let mut cache = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= k {
        let m = cache.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = Rational::zero();
        for (j, b) in cache.iter().enumerate() {
            acc += Rational::from_integer(binomial(m as u64 + 1, j as u64)) * b;
        }
        cache.push(-acc / rat(m as i64 + 1));
    }
    cache[k].clone()
}

/// Todd class of `T P^n`.
///
/// `log(x / (1 - e^{-x})) = -sum_{k>=1} B_k x^k / (k * k!)`, so summing over the
/// Chern roots gives `log td = -sum_k B_k p_k w^k / (k * k!)`.
pub fn todd_class(n: usize) -> Result<CohomologyClass> {
    if n < 1 {
        return invalid("todd_class needs n >= 1");
    }
    let roots = chern_power_sums(n, n)?;
    let mut log_td = vec![Rational::zero(); n + 1];
    for k in 1..=n {
        let denom = Rational::from_integer(factorial(k as u64) * BigInt::from(k));
        log_td[k] = -(bernoulli(k) * Rational::from_integer(roots.power_sums[k - 1].clone())) / denom;
    }
    Ok(CohomologyClass::new(n, log_td).exp_nilpotent())
}

/// `ch(Sym^q T P^n)`, the complete homogeneous polynomial `h_q` in the
/// line-bundle classes `u_j = exp(lambda_j w)`.
///
/// Uses `q h_q = sum_{m=1}^q P_m h_{q-m}` where `P_m = sum_j exp(m lambda_j w)`
/// has degree-`k` coefficient `m^k p_k / k!` (and `p_0 = n`).
pub fn ch_sym_power(n: usize, q: usize) -> Result<CohomologyClass> {
    if n < 1 {
        return invalid("ch_sym_power needs n >= 1");
    }
    let roots = chern_power_sums(n, n)?;
    let p = |k: usize| -> Rational {
        if k == 0 {
            rat(n as i64)
        } else {
            Rational::from_integer(roots.power_sums[k - 1].clone())
        }
    };
    let power_class = |m: usize| -> CohomologyClass {
        let coeffs = (0..=n)
            .map(|k| {
                let mk = Rational::from_integer(BigInt::from(m).pow(k as u32));
                mk * p(k) / Rational::from_integer(factorial(k as u64))
            })
            .collect();
        CohomologyClass::new(n, coeffs)
    };
    let sums: Vec<CohomologyClass> = (1..=q).map(power_class).collect();
    let mut h = vec![CohomologyClass::one(n)];
    for k in 1..=q {
        let mut acc = CohomologyClass::zero(n);
        for m in 1..=k {
            acc = &acc + &(&sums[m - 1] * &h[k - m]);
        }
        h.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
    }
    Ok(h.swap_remove(q))
}

/// `B >= 1`, except that the trivial bundle (`B = 0`, `q = 0`) is allowed.
fn check_dimension_args(n: usize, b: i64, q: usize) -> Result<()> {
    if n < 1 {
        return invalid("dimension formulas need n >= 1");
    }
    if b < 1 && !(b == 0 && q == 0) {
        return invalid(format!("line bundle degree must be positive (got B = {b}, q = {q})"));
    }
    Ok(())
}

/// `h^0(P^n, O(B) (x) Sym^q T)` as the top coefficient of `td(T) e^{Bw} ch(Sym^q T)`.
pub fn hrr_dimension(n: usize, b: i64, q: usize) -> Result<BigInt> {
    check_dimension_args(n, b, q)?;
    let integrand = &(&todd_class(n)? * &CohomologyClass::exp_hyperplane(n, &rat(b))) * &ch_sym_power(n, q)?;
    let top = integrand.integrate();
    as_integer(top).ok_or_else(|| {
        Error::Verification(format!(
            "HRR integral for (n={n}, B={b}, q={q}) is {top}, not an integer"
        ))
    })
}

/// Lexicographic stream of compositions `k_1 + ... + k_parts = total`, `k_i >= 0`.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Vec<usize>,
    total: usize,
    done: bool,
}

impl Compositions {
    pub fn new(parts: usize, total: usize) -> Self {
        assert!(parts >= 1);
        let mut current = vec![0; parts];
        current[parts - 1] = total;
        Self {
            current,
            total,
            done: false,
        }
    }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let parts = self.current.len();
        // Advance: find the rightmost position before the tail that can grow.
        let mut advanced = false;
        for i in (0..parts.saturating_sub(1)).rev() {
            let prefix: usize = self.current[..=i].iter().sum();
            if prefix < self.total {
                self.current[i] += 1;
                for c in &mut self.current[i + 1..] {
                    *c = 0;
                }
                let used: usize = self.current[..parts - 1].iter().sum();
                self.current[parts - 1] = self.total - used;
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.done = true;
        }
        Some(out)
    }
}

/// Generalized binomial coefficient `a (a-1) ... (a-n+1) / n!` for complex `a`.
pub fn complex_binomial(a: Complex64, n: usize) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, i| {
        acc * (a - i as f64) / (i as f64 + 1.0)
    })
}

/// Float evaluation of the sum over compositions of generalized binomials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedFormValue {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub value: BigInt,
    pub imag_residual: f64,
    pub integrality_residual: f64,
}

pub const CLOSED_FORM_GATE: f64 = 1e-6;

/// `sum_{k_1+..+k_n=q} C(y + n + B, n)` with `y = sum k_j lambda_j` and
/// `lambda_j = 1 - exp(2 pi i j / (n+1))`, summed in fixed lexicographic order
/// with compensated summation.
pub fn closed_form_dimension(n: usize, b: i64, q: usize) -> Result<ClosedFormValue> {
    check_dimension_args(n, b, q)?;
    let lambdas: Vec<Complex64> = (1..=n)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / (n as f64 + 1.0);
            Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, theta)
        })
        .collect();
    let shift = (n as i64 + b) as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for k in Compositions::new(n, q) {
        let y: Complex64 = k.iter().zip(&lambdas).map(|(&kj, l)| l * kj as f64).sum();
        let term = complex_binomial(y + shift, n) - comp;
        let next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    let rounded = sum.re.round();
    let out = ClosedFormValue {
        value: BigInt::from(rounded.to_i128().ok_or_else(|| {
            Error::Precision(format!("closed form value {} out of range", sum.re))
        })?),
        imag_residual: sum.im.abs(),
        integrality_residual: (sum.re - rounded).abs(),
    };
    if out.imag_residual >= CLOSED_FORM_GATE || out.integrality_residual >= CLOSED_FORM_GATE {
        return Err(Error::Precision(format!(
            "closed form for (n={n}, B={b}, q={q}) = {sum}: imaginary residual {:e}, integrality residual {:e}",
            out.imag_residual, out.integrality_residual
        )));
    }
    Ok(out)
}

/// The explicit `n = 2` formula `(q+1)/2 (B^2 + 3(q+1)B + 2(q+1)^2)`.
pub fn p2_closed_form(b: i64, q: usize) -> Result<BigInt> {
    check_dimension_args(2, b, q)?;
    let b = BigInt::from(b);
    let q1 = BigInt::from(q + 1);
    let product = &q1 * (&b * &b + BigInt::from(3) * &q1 * &b + BigInt::from(2) * &q1 * &q1);
    assert!(
        (&product % BigInt::from(2)).is_zero(),
        "(q+1)(B^2 + 3(q+1)B + 2(q+1)^2) is always even"
    );
    Ok(product / BigInt::from(2))
}

/// Both sides of `int_{P^n} td(T) e^{z w} = C(z+n, n)` as polynomials in `z`.
pub fn binom_poly_sides(n: usize) -> Result<(RatPoly, RatPoly)> {
    if !(1..=8).contains(&n) {
        return invalid("binom_poly_identity_check is defined for 1 <= n <= 8");
    }
    let td = todd_class(n)?;
    // int td * sum_k z^k w^k / k!  =  sum_k td_{n-k} z^k / k!
    let lhs = RatPoly::new(
        (0..=n)
            .map(|k| td.coeff(n - k) / Rational::from_integer(factorial(k as u64)))
            .collect(),
    );
    let rhs = (1..=n)
        .fold(RatPoly::constant(Rational::one()), |acc, i| {
            &acc * &RatPoly::shifted_z(rat(i as i64))
        })
        .scale(&Rational::new(BigInt::one(), factorial(n as u64)));
    Ok((lhs, rhs))
}

pub fn binom_poly_identity_check(n: usize) -> Result<bool> {
    let (lhs, rhs) = binom_poly_sides(n)?;
    Ok(lhs == rhs)
}

/// Three independent evaluations of `h^0(P^n, O(B) (x) Sym^q T)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionReport {
    pub n: usize,
    #[serde(rename = "B")]
    pub b: i64,
    pub q: usize,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub exact_hrr: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub closed_form: BigInt,
    pub closed_form_imag_residual: f64,
    #[serde(serialize_with = "crate::report::ser_opt_bigint")]
    pub n2_formula: Option<BigInt>,
}

impl DimensionReport {
    pub fn compute(n: usize, b: i64, q: usize) -> Result<Self> {
        let exact_hrr = hrr_dimension(n, b, q)?;
        let closed = closed_form_dimension(n, b, q)?;
        let n2_formula = if n == 2 { Some(p2_closed_form(b, q)?) } else { None };
        Ok(Self {
            n,
            b,
            q,
            exact_hrr,
            closed_form: closed.value,
            closed_form_imag_residual: closed.imag_residual,
            n2_formula,
        })
    }

    pub fn agree(&self) -> bool {
        self.exact_hrr == self.closed_form
            && self.closed_form_imag_residual < CLOSED_FORM_GATE
            && self.n2_formula.as_ref().is_none_or(|v| *v == self.exact_hrr)
            && self.exact_hrr.is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    /// Weyl dimension of the GL(n+1) irrep with highest weight
    /// `(B + 2q, q, ..., q, 0)`, which is `H^0(P^n, O(B) (x) Sym^q T)` by Borel-Weil.
    fn weyl_oracle(n: usize, b: i64, q: usize) -> BigInt {
        // Sym^q T (B) has GL(n+1) highest weight (B + 2q, q, ..., q, 0).
        let mut lambda = vec![q as i64; n + 1];
        lambda[0] = b + 2 * q as i64;
        lambda[n] = 0;
        let mut num = Rational::one();
        for i in 0..=n {
            for j in i + 1..=n {
                num *= ratio(lambda[i] - lambda[j] + (j - i) as i64, (j - i) as i64);
            }
        }
        as_integer(&num).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn power_sums_examples() {
        assert_eq!(chern_power_sums(1, 3).unwrap().power_sums, ints(&[2, 4, 8]));
        assert_eq!(chern_power_sums(2, 2).unwrap().power_sums, ints(&[3, 3]));
        assert_eq!(chern_power_sums(2, 1).unwrap().power_sums, ints(&[3]));
        assert!(chern_power_sums(0, 2).is_err());
    }

    #[test]
    fn power_sums_match_float_roots() {
        for n in 1..=6usize {
            let data = chern_power_sums(n, 8).unwrap();
            for m in 1..=8 {
                let s: Complex64 = (1..=n)
                    .map(|j| {
                        let l = Complex64::new(1.0, 0.0)
                            - Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / (n as f64 + 1.0));
                        l.powu(m as u32)
                    })
                    .sum();
                let p = data.power_sums[m - 1].to_f64().unwrap();
                assert!((s.re - p).abs() < 1e-8 * p.abs().max(1.0), "n={n} m={m}");
                assert!(s.im.abs() < 1e-8 * p.abs().max(1.0));
            }
        }
    }

    #[test]
    fn newton_round_trip() {
        for n in 1..=8usize {
            let data = chern_power_sums(n, n + 2).unwrap();
            let e = data.elementary_symmetric(n + 2);
            for (i, ei) in e.iter().enumerate() {
                assert_eq!(*ei, elementary_of_tangent(n, i + 1), "n={n} i={}", i + 1);
            }
            assert_eq!(data.power_sums[0], BigInt::from(n + 1));
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(3), rat(0));
        assert_eq!(bernoulli(4), ratio(-1, 30));
        assert_eq!(bernoulli(12), ratio(-691, 2730));
    }

    #[test]
    fn todd_examples() {
        assert_eq!(todd_class(2).unwrap().coeffs(), &[rat(1), ratio(3, 2), rat(1)]);
        assert_eq!(todd_class(1).unwrap().coeffs(), &[rat(1), rat(1)]);
        for n in 1..=8 {
            assert_eq!(*todd_class(n).unwrap().coeff(0), rat(1));
        }
        // td(P^n) = (w/(1-e^{-w}))^{n+1} mod w^{n+1}; its top coefficient is 1.
        for n in 1..=8 {
            assert_eq!(*todd_class(n).unwrap().integrate(), rat(1), "n={n}");
        }
    }

    #[test]
    fn sym_power_examples() {
        assert_eq!(ch_sym_power(2, 1).unwrap().coeffs(), &[rat(2), rat(3), ratio(3, 2)]);
        assert_eq!(ch_sym_power(2, 2).unwrap().coeffs(), &[rat(3), rat(9), ratio(21, 2)]);
        for n in 1..=5 {
            assert_eq!(ch_sym_power(n, 0).unwrap(), CohomologyClass::one(n));
        }
        // paper family (q+1) + 3q(q+1)/2 w + q(q+1)(4q-1)/4 w^2 on P^2
        for q in 0..=10i64 {
            let ch = ch_sym_power(2, q as usize).unwrap();
            assert_eq!(ch.coeffs()[1], ratio(3 * q * (q + 1), 2));
            assert_eq!(ch.coeffs()[2], ratio(q * (q + 1) * (4 * q - 1), 4));
        }
    }

    #[test]
    fn sym_power_rank() {
        for n in 1..=5usize {
            for q in 0..=8usize {
                let rank = binomial((n + q - 1) as u64, q as u64);
                assert_eq!(*ch_sym_power(n, q).unwrap().coeff(0), Rational::from_integer(rank));
            }
        }
    }

    #[test]
    fn hrr_examples() {
        assert_eq!(hrr_dimension(2, 1, 1).unwrap(), BigInt::from(15));
        assert_eq!(hrr_dimension(1, 3, 2).unwrap(), BigInt::from(8));
        assert_eq!(hrr_dimension(3, 1, 0).unwrap(), BigInt::from(4));
        assert!(matches!(hrr_dimension(2, 0, 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn hrr_matches_weyl_dimension() {
        for n in 1..=5usize {
            for b in 1..=6i64 {
                for q in 0..=5usize {
                    assert_eq!(hrr_dimension(n, b, q).unwrap(), weyl_oracle(n, b, q), "n={n} B={b} q={q}");
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_dimension(1, 3, 2).unwrap().value, BigInt::from(8));
        assert_eq!(closed_form_dimension(2, 1, 2).unwrap().value, BigInt::from(42));
        for n in 1..=4usize {
            for b in 1..=5i64 {
                let v = closed_form_dimension(n, b, 0).unwrap();
                assert_eq!(v.value, binomial((b + n as i64) as u64, n as u64));
            }
        }
    }

    #[test]
    fn p2_examples() {
        assert_eq!(p2_closed_form(1, 0).unwrap(), BigInt::from(3));
        assert_eq!(p2_closed_form(1, 1).unwrap(), BigInt::from(15));
        assert_eq!(p2_closed_form(2, 1).unwrap(), BigInt::from(24));
        assert_eq!(hrr_dimension(2, 2, 1).unwrap(), BigInt::from(24));
    }

    #[test]
    fn compositions_are_lexicographic_and_complete() {
        let all: Vec<Vec<usize>> = Compositions::new(3, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0, 2],
                vec![0, 1, 1],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0]
            ]
        );
        assert_eq!(Compositions::new(1, 4).count(), 1);
        assert_eq!(Compositions::new(4, 0).count(), 1);
        for parts in 1..=5usize {
            for total in 0..=6usize {
                let expected = binomial((total + parts - 1) as u64, (parts - 1) as u64);
                assert_eq!(BigInt::from(Compositions::new(parts, total).count()), expected);
            }
        }
    }

    #[test]
    fn binom_identity() {
        let (lhs, rhs) = binom_poly_sides(1).unwrap();
        assert_eq!(lhs.coeffs(), &[rat(1), rat(1)]);
        assert_eq!(lhs, rhs);
        let (lhs, _) = binom_poly_sides(2).unwrap();
        assert_eq!(lhs.coeffs(), &[rat(1), ratio(3, 2), ratio(1, 2)]);
        for n in 1..=8 {
            assert!(binom_poly_identity_check(n).unwrap(), "n={n}");
        }
        assert!(binom_poly_identity_check(9).is_err());
    }

    #[test]
    fn report_three_way() {
        let r = DimensionReport::compute(2, 1, 1).unwrap();
        assert!(r.agree());
        assert_eq!(r.n2_formula, Some(BigInt::from(15)));
        let r = DimensionReport::compute(3, 2, 2).unwrap();
        assert!(r.agree());
        assert_eq!(r.n2_formula, None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn class(n: usize) -> impl Strategy<Value = CohomologyClass> {
            prop::collection::vec((-20i64..20, 1i64..6), n + 1).prop_map(move |v| {
                CohomologyClass::new(n, v.into_iter().map(|(a, b)| ratio(a, b)).collect())
            })
        }

        proptest! {
            #[test]
            fn ring_is_commutative_and_associative(
                (a, b, c) in (1usize..6).prop_flat_map(|n| (class(n), class(n), class(n)))
            ) {
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }
        }
    }
}
