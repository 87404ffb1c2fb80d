//! Closed-form eigenvalue and multiplicity tables.
//!
//! Flat tori carry the equally spaced levels `qB` with multiplicity
//! `C(n+q-1, q) * prod(delta)`. On `P^n` with Fubini-Study constant `c` the
//! level-`q` eigenvalue of `Delta_0` is `N_{q,0}` where
//! `N_{k,l} = (k-l)B + (c/2)[(k^2 - l^2) + n(k-l)]`, and the multiplicity is
//! `h^0(P^n, O(B) (x) Sym^q T)` from [`crate::charclass`].

mod bundle;
mod grassmann;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::charclass::hrr_dimension;
use crate::error::{invalid, Error, Result};
use crate::exact::{binomial, factorial, rat, Rational};
use crate::report::RationalJson;

pub use bundle::{spectral_bundle_curvature, BundleCurvatureReport};
pub use grassmann::{
    grassmann_curvature, grassmann_eigenvalues, grassmann_eigenvalues_with_c, grassmann_spectrum,
    grassmann_spectrum_with_c, grassmann_structure_check, GrassmannIndex, GrassmannReport, NullityCheck, PatternCheck,
};

/// The Fubini-Study curvature constant used throughout unless overridden.
pub fn default_c() -> Rational {
    rat(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Space {
    AbelianVariety,
    ProjectiveSpace,
    Grassmannian,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::AbelianVariety => "abelian",
            Space::ProjectiveSpace => "pn",
            Space::Grassmannian => "grassmann",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Known(BigInt),
    Unknown,
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Known(m) => s.serialize_str(&m.to_string()),
            Multiplicity::Unknown => s.serialize_str("unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumRow {
    pub q: u64,
    pub eigenvalue: Rational,
    pub multiplicity: Multiplicity,
    pub flags: Vec<String>,
}

impl Serialize for SpectrumRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SpectrumRow", 4)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("eigenvalue", &RationalJson(&self.eigenvalue))?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.serialize_field("flags", &self.flags)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Int(i64),
    Rational(Rational),
    List(Vec<u64>),
}

impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ParamValue::Int(v) => s.serialize_i64(*v),
            ParamValue::Rational(v) => RationalJson(v).serialize(s),
            ParamValue::List(v) => v.serialize(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumTable {
    pub space: Space,
    pub params: BTreeMap<String, ParamValue>,
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumTable {
    pub(crate) fn new(space: Space) -> Self {
        Self {
            space,
            params: BTreeMap::new(),
            rows: Vec::new(),
        }
    }

    pub(crate) fn param(mut self, key: &str, value: ParamValue) -> Self {
        self.params.insert(key.to_owned(), value);
        self
    }

    pub fn row(&self, q: u64) -> Option<&SpectrumRow> {
        self.rows.iter().find(|r| r.q == q)
    }

    /// Plain CSV: `q,eigenvalue,multiplicity,flags`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,eigenvalue,multiplicity,flags\n");
        for r in &self.rows {
            let mult = match &r.multiplicity {
                Multiplicity::Known(m) => m.to_string(),
                Multiplicity::Unknown => "unknown".into(),
            };
            out.push_str(&format!("{},{},{},{}\n", r.q, r.eigenvalue, mult, r.flags.join(";")));
        }
        out
    }
}

/// Elementary divisors `delta_1 | delta_2 | ... | delta_n` of a polarization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationData {
    delta: Vec<u64>,
}

impl PolarizationData {
    pub fn new(delta: Vec<u64>) -> Result<Self> {
        if delta.is_empty() {
            return invalid("polarization needs at least one elementary divisor");
        }
        if delta.contains(&0) {
            return invalid("elementary divisors must be positive");
        }
        if let Some(w) = delta.windows(2).find(|w| w[1] % w[0] != 0) {
            return invalid(format!("divisibility chain broken: {} does not divide {}", w[0], w[1]));
        }
        Ok(Self { delta })
    }

    pub fn divisors(&self) -> &[u64] {
        &self.delta
    }

    pub fn dim(&self) -> usize {
        self.delta.len()
    }

    /// `h^0(L) = delta_1 ... delta_n`.
    pub fn product(&self) -> BigInt {
        self.delta.iter().map(|&d| BigInt::from(d)).product()
    }
}

fn require_positive(b: &Rational) -> Result<()> {
    if !b.is_positive() {
        return invalid(format!("B must be positive (got {b})"));
    }
    Ok(())
}

/// Flat-torus levels. With `dual_k > 0` the rows describe the dual ladder
/// eigenvalues `(q + n + k)B` whose multiplicities are not tabulated.
pub fn abelian_spectrum(
    n: usize,
    b: &Rational,
    delta: &PolarizationData,
    q_max: u64,
    dual_k: u64,
) -> Result<SpectrumTable> {
    require_positive(b)?;
    if n != delta.dim() {
        return invalid(format!("n = {n} but {} elementary divisors given", delta.dim()));
    }
    let mut table = SpectrumTable::new(Space::AbelianVariety)
        .param("n", ParamValue::Int(n as i64))
        .param("B", ParamValue::Rational(b.clone()))
        .param("delta", ParamValue::List(delta.divisors().to_vec()))
        .param("dual_k", ParamValue::Int(dual_k as i64));
    let h0 = delta.product();
    for q in 0..=q_max {
        let row = if dual_k == 0 {
            SpectrumRow {
                q,
                eigenvalue: rat(q as i64) * b,
                multiplicity: Multiplicity::Known(binomial(n as u64 + q - 1, q) * &h0),
                flags: Vec::new(),
            }
        } else {
            SpectrumRow {
                q,
                eigenvalue: rat((q + n as u64 + dual_k) as i64) * b,
                multiplicity: Multiplicity::Unknown,
                flags: vec![format!("dual-level-{dual_k}")],
            }
        };
        table.rows.push(row);
    }
    Ok(table)
}

/// `N_{q,k} = (q-k)B + (c/2)[(q^2 - k^2) + n(q-k)]` for `0 <= k <= q`.
pub fn intermediate_eigenvalue_with_c(n: u64, b: &Rational, q: u64, k: u64, c: &Rational) -> Result<Rational> {
    if k > q {
        return invalid(format!("N_(q,k) needs k <= q (got q={q}, k={k})"));
    }
    let (qi, ki, ni) = (q as i64, k as i64, n as i64);
    let half_c = c / rat(2);
    Ok(rat(qi - ki) * b + half_c * rat(qi * qi - ki * ki + ni * (qi - ki)))
}

pub fn intermediate_eigenvalue(n: u64, b: &Rational, q: u64, k: u64) -> Result<Rational> {
    intermediate_eigenvalue_with_c(n, b, q, k, &default_c())
}

pub fn pn_spectrum_with_c(n: usize, b: i64, q_max: u64, c: &Rational) -> Result<SpectrumTable> {
    if n < 1 {
        return invalid("P^n needs n >= 1");
    }
    if b < 1 {
        return invalid(format!("P^n spectrum needs B >= 1 (got {b})"));
    }
    if !c.is_positive() {
        return invalid("curvature constant c must be positive");
    }
    let bq = rat(b);
    let mut table = SpectrumTable::new(Space::ProjectiveSpace)
        .param("n", ParamValue::Int(n as i64))
        .param("B", ParamValue::Int(b))
        .param("c", ParamValue::Rational(c.clone()));
    for q in 0..=q_max {
        table.rows.push(SpectrumRow {
            q,
            eigenvalue: intermediate_eigenvalue_with_c(n as u64, &bq, q, 0, c)?,
            multiplicity: Multiplicity::Known(hrr_dimension(n, b, q as usize)?),
            flags: Vec::new(),
        });
    }
    Ok(table)
}

pub fn pn_spectrum(n: usize, b: i64, q_max: u64) -> Result<SpectrumTable> {
    pn_spectrum_with_c(n, b, q_max, &default_c())
}

pub const ANTI_HOLOMORPHIC: &str = "anti-holomorphic";

/// Dual ladder on `P^n`: starting from a level-`q` eigensection of `Delta^0`,
/// the `k`-th image has eigenvalue `(q+n+k)(B + q - k)` (with `c = 2`). It is
/// anti-holomorphic at `k = B + q` and vanishes beyond, so those rows are
/// omitted.
pub fn pn_dual_ladder(n: u64, b: i64, q: u64, k_max: u64) -> Result<SpectrumTable> {
    if n < 1 || b < 1 {
        return invalid("dual ladder needs n >= 1 and B >= 1");
    }
    let threshold = b as u64 + q;
    let mut table = SpectrumTable::new(Space::ProjectiveSpace)
        .param("n", ParamValue::Int(n as i64))
        .param("B", ParamValue::Int(b))
        .param("q", ParamValue::Int(q as i64))
        .param("c", ParamValue::Rational(default_c()));
    for k in 0..=k_max.min(threshold) {
        let ev = rat((q + n + k) as i64) * (rat(b) + rat(q as i64 - k as i64));
        let mut flags = vec!["dual-ladder".to_owned()];
        if k == threshold {
            debug_assert!(ev.is_zero());
            flags.push(ANTI_HOLOMORPHIC.to_owned());
        }
        table.rows.push(SpectrumRow {
            q: k,
            eigenvalue: ev,
            multiplicity: Multiplicity::Unknown,
            flags,
        });
    }
    Ok(table)
}

/// Constant `K` with `A_q A_0^# = K * Id` on holomorphic sections:
/// `q! B^q` on a flat torus and `prod_{k<q} N_{q,k}` on `P^n`.
pub fn ladder_constant(space: Space, n: u64, b: &Rational, q: u64) -> Result<Rational> {
    require_positive(b)?;
    match space {
        Space::AbelianVariety => {
            let mut bq = Rational::one();
            for _ in 0..q {
                bq *= b;
            }
            Ok(Rational::from_integer(factorial(q)) * bq)
        }
        Space::ProjectiveSpace => (0..q).try_fold(Rational::one(), |acc, k| {
            Ok(acc * intermediate_eigenvalue(n, b, q, k)?)
        }),
        Space::Grassmannian => Err(Error::InvalidInput(
            "no ladder constant is established on Grassmannians beyond the first level".into(),
        )),
    }
}
