use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use spectral_bundles::exact::Rational;
use spectral_bundles::{galerkin, lattice};

#[derive(Debug, Parser)]
#[command(
    name = "spectral-bundles",
    version,
    about = "Spectra of Bochner-Kodaira Laplacians on positive line bundles",
    long_about = "Computes eigenvalue and multiplicity tables on flat tori, projective spaces and \
                  Grassmannians, and cross-checks them against exact symbolic ladders and two \
                  numerical eigensolvers.\n\nExit status: 0 when every check passes, 1 when a \
                  verification fails, 2 on invalid usage."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for every randomized step; recorded in the output.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of H^0(P^n, O(B) (x) Sym^q T).
    Hrr(HrrArgs),
    /// Closed-form eigenvalue tables.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Sample a torus ladder eigensection on a grid (CSV for plotting).
    Ladder(LadderArgs),
}

#[derive(Debug, Args)]
pub struct HrrArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'B', allow_negative_numbers = true)]
    pub b: i64,
    #[arg(short = 'q', default_value_t = 0)]
    pub q: usize,
    /// Also evaluate the complex closed form (and the n = 2 formula).
    #[arg(long)]
    pub all_methods: bool,
}

#[derive(Debug, Subcommand)]
pub enum SpectrumCmd {
    /// Flat torus of dimension n with polarization type delta.
    Abelian(AbelianArgs),
    /// Complex projective space with the Fubini-Study metric.
    Pn(PnArgs),
    /// First two eigenvalues on the Grassmannian G(mu, nu).
    Grassmann(GrassmannArgs),
}

#[derive(Debug, Args)]
pub struct AbelianArgs {
    #[arg(short = 'n')]
    pub n: usize,
    /// Curvature B as an integer, fraction (3/2) or decimal (6.283185).
    #[arg(short = 'B', value_parser = parse_rational, allow_negative_numbers = true)]
    pub b: Rational,
    /// Elementary divisors, comma separated; defaults to all ones.
    #[arg(long, value_delimiter = ',')]
    pub delta: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    pub qmax: u64,
    /// Tabulate the k-th dual ladder instead of the holomorphic levels.
    #[arg(long, default_value_t = 0)]
    pub dual_k: u64,
}

#[derive(Debug, Args)]
pub struct PnArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'B', allow_negative_numbers = true)]
    pub b: i64,
    #[arg(long, default_value_t = 3)]
    pub qmax: u64,
    /// Fubini-Study curvature constant.
    #[arg(long, value_parser = parse_rational, default_value = "2")]
    pub c: Rational,
    /// Tabulate the dual ladder starting at this level (rows k = 0..=qmax).
    #[arg(long)]
    pub dual_ladder: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GrassmannArgs {
    #[arg(long)]
    pub mu: usize,
    #[arg(long)]
    pub nu: usize,
    #[arg(short = 'B', allow_negative_numbers = true)]
    pub b: i64,
    /// Fubini-Study curvature constant.
    #[arg(long, value_parser = parse_rational, default_value = "2")]
    pub c: Rational,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Lattice magnetic Laplacian on the torus against the levels qB.
    Torus(TorusArgs),
    /// Galerkin spectrum on P^1 against q(B+q+1).
    P1(P1Args),
    /// Exact theta-function ladder identities.
    Ladder(LadderSuiteArgs),
    /// Exact operator identities on random sections.
    Identities(IdentitiesArgs),
    /// Curvature vanishing patterns and nullities of G(mu, nu).
    Grassmann(GrassmannCheckArgs),
}

#[derive(Debug, Args)]
pub struct TorusArgs {
    /// Grid points per side.
    #[arg(long = "N", default_value_t = 64)]
    pub n: usize,
    #[arg(short = 'B')]
    pub b: f64,
    /// Number of flux quanta.
    #[arg(long, default_value_t = 1)]
    pub delta: u64,
    /// Highest level checked.
    #[arg(long, default_value_t = 3)]
    pub levels: u64,
    /// Bound on |lowest cluster center| / B.
    #[arg(long, value_parser = positive_f64, default_value_t = lattice::LOWEST_LEVEL_TOL)]
    pub lowest_tol: f64,
    /// Bound on |center - qB| / (qB) for q >= 1.
    #[arg(long, value_parser = positive_f64, default_value_t = lattice::LEVEL_RELATIVE_TOL)]
    pub level_tol: f64,
    /// Bound on the eigenvalue shift under a random gauge transformation.
    #[arg(long, value_parser = positive_f64, default_value_t = lattice::GAUGE_TOL)]
    pub gauge_tol: f64,
}

#[derive(Debug, Args)]
pub struct P1Args {
    #[arg(short = 'B')]
    pub b: u32,
    /// Weight exponent of the trial functions.
    #[arg(short = 'm', default_value_t = 4)]
    pub m: u32,
    /// Polynomial degree cap; defaults to B + 2m.
    #[arg(short = 'd')]
    pub d: Option<u32>,
    /// Highest level checked.
    #[arg(long, default_value_t = 3)]
    pub levels: u32,
    /// Relative eigenvalue tolerance.
    #[arg(long, value_parser = positive_f64, default_value_t = galerkin::P1_RELATIVE_TOL)]
    pub rel_tol: f64,
}

#[derive(Debug, Args)]
pub struct LadderSuiteArgs {
    #[arg(short = 'B', value_parser = parse_rational, default_value = "1")]
    pub b: Rational,
    /// Largest flux delta; every basis index j < delta is checked.
    #[arg(long, default_value_t = 4)]
    pub delta: u64,
    #[arg(long, default_value_t = 5)]
    pub qmax: u32,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    /// Number of random sections, seeded from --seed upwards.
    #[arg(long, default_value_t = 100)]
    pub seeds: u64,
    #[arg(short = 'B', value_parser = parse_rational, default_value = "3/2")]
    pub b: Rational,
    /// Terms per random section.
    #[arg(long, default_value_t = 10)]
    pub terms: usize,
}

#[derive(Debug, Args)]
pub struct GrassmannCheckArgs {
    /// Check every G(mu', nu') with mu' <= mu.
    #[arg(long, default_value_t = 4)]
    pub mu: usize,
    /// Check every G(mu', nu') with nu' <= nu.
    #[arg(long, default_value_t = 4)]
    pub nu: usize,
}

#[derive(Debug, Args)]
pub struct LadderArgs {
    #[arg(short = 'B', value_parser = parse_rational, default_value = "1")]
    pub b: Rational,
    #[arg(long, default_value_t = 1)]
    pub delta: u64,
    /// Theta basis index, below delta.
    #[arg(short = 'j', default_value_t = 0)]
    pub j: u64,
    /// Landau level of the sampled section.
    #[arg(short = 'q', default_value_t = 1)]
    pub q: u32,
    /// Samples per side of the fundamental domain.
    #[arg(long, default_value_t = 32)]
    pub grid: usize,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive and finite (got {s})"))
    }
}

/// Parses `7`, `-3/2` or `6.283185` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let bad = || format!("`{s}` is not an integer, fraction or decimal");
    let int = |t: &str| t.parse::<BigInt>().map_err(|_| bad());
    if let Some((num, den)) = s.split_once('/') {
        let den = int(den)?;
        if den.is_zero() {
            return Err(format!("`{s}` has a zero denominator"));
        }
        return Ok(Rational::new(int(num)?, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole = if whole.is_empty() || whole == "-" { BigInt::zero() } else { int(whole)? };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac = Rational::new(int(frac)?, scale);
        let whole = Rational::from_integer(whole.abs());
        let v = whole + frac;
        return Ok(if negative { -v } else { v });
    }
    Ok(Rational::from_integer(int(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use spectral_bundles::exact::ratio;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("7").unwrap(), ratio(7, 1));
        assert_eq!(parse_rational("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("6.25").unwrap(), ratio(25, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        for bad in ["", "1/0", "x", "1.", "1.2.3", "1/2/3", "1.-2"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
