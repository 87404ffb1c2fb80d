use num_complex::Complex64;
use serde_json::{json, Value};
use spectral_bundles::charclass::{hrr_dimension, DimensionReport};
use spectral_bundles::exact::{rat, CRational, Rational};
use spectral_bundles::exppoly::{
    apply_operator, bk_residual, eigen_residual, ladder_down, ladder_up, random_section, theta_basis, OperatorKind,
    ThetaSpec, AUTOMORPHY_TOL,
};
use spectral_bundles::galerkin::{kodaira_difference_check, p1_spectrum_report, BasisSpec};
use spectral_bundles::lattice::{gauge_invariance_check, landau_report, TorusLatticeConfig};
use spectral_bundles::report::RationalJson;
use spectral_bundles::spectra::{
    abelian_spectrum, default_c, grassmann_spectrum_with_c, grassmann_structure_check, ladder_constant,
    pn_dual_ladder, pn_spectrum_with_c, GrassmannIndex, PolarizationData, Space, SpectrumTable,
};
use spectral_bundles::Error;

use crate::args::*;
use crate::output::Envelope;
use crate::CliError;

type Outcome = Result<Envelope, CliError>;

pub fn run(cli: &Cli) -> Outcome {
    let seed = cli.global.seed;
    match &cli.command {
        Command::Hrr(a) => hrr(a, seed),
        Command::Spectrum(SpectrumCmd::Abelian(a)) => abelian(a, seed),
        Command::Spectrum(SpectrumCmd::Pn(a)) => pn(a, seed),
        Command::Spectrum(SpectrumCmd::Grassmann(a)) => grassmann(a, seed),
        Command::Verify(VerifyCmd::Torus(a)) => verify_torus(a, seed),
        Command::Verify(VerifyCmd::P1(a)) => verify_p1(a, seed),
        Command::Verify(VerifyCmd::Ladder(a)) => verify_ladder(a, seed),
        Command::Verify(VerifyCmd::Identities(a)) => verify_identities(a, seed),
        Command::Verify(VerifyCmd::Grassmann(a)) => verify_grassmann(a, seed),
        Command::Ladder(a) => ladder_samples(a, seed),
    }
}

fn hrr(a: &HrrArgs, seed: u64) -> Outcome {
    let mut env = Envelope::new("hrr", seed);
    env.param("n", a.n)?;
    env.param("B", a.b)?;
    env.param("q", a.q)?;
    env.param("all_methods", a.all_methods)?;
    if a.all_methods {
        let report = DimensionReport::compute(a.n, a.b, a.q)?;
        env.residual("closed_form_imag", report.closed_form_imag_residual)?;
        env.pass = report.agree();
        env.push_row(&report)?;
    } else {
        let dim = hrr_dimension(a.n, a.b, a.q)?;
        env.push_row(json!({"n": a.n, "B": a.b, "q": a.q, "exact_hrr": dim.to_string()}))?;
    }
    Ok(env)
}

fn table_envelope(table: &SpectrumTable, seed: u64) -> Outcome {
    let mut env = Envelope::new(&format!("spectrum {}", table.space), seed);
    for (k, v) in &table.params {
        env.param(k, v)?;
    }
    for row in &table.rows {
        env.push_row(row)?;
    }
    Ok(env)
}

fn abelian(a: &AbelianArgs, seed: u64) -> Outcome {
    let delta = if a.delta.is_empty() { vec![1; a.n] } else { a.delta.clone() };
    let pol = PolarizationData::new(delta)?;
    table_envelope(&abelian_spectrum(a.n, &a.b, &pol, a.qmax, a.dual_k)?, seed)
}

fn pn(a: &PnArgs, seed: u64) -> Outcome {
    let table = match a.dual_ladder {
        Some(_) if a.c != default_c() => {
            return Err(Error::InvalidInput("the dual ladder is tabulated for c = 2 only".into()).into())
        }
        Some(q) => pn_dual_ladder(a.n as u64, a.b, q, a.qmax)?,
        None => pn_spectrum_with_c(a.n, a.b, a.qmax, &a.c)?,
    };
    table_envelope(&table, seed)
}

fn grassmann(a: &GrassmannArgs, seed: u64) -> Outcome {
    table_envelope(&grassmann_spectrum_with_c(a.mu, a.nu, a.b, &a.c)?, seed)
}

fn verify_torus(a: &TorusArgs, seed: u64) -> Outcome {
    let cfg = TorusLatticeConfig::new(a.n, a.b, a.delta)?;
    let report = landau_report(&cfg, a.levels)?;
    let gauge = gauge_invariance_check(&cfg, seed, ((a.levels + 2) * a.delta) as usize)?;

    let mut env = Envelope::new("verify torus", seed);
    env.param("N", a.n)?;
    env.param("B", a.b)?;
    env.param("delta", a.delta)?;
    env.param("levels", a.levels)?;
    env.param("side", cfg.side())?;
    env.param("kappa", report.kappa)?;
    env.param("method", report.method)?;
    env.param("lowest_tol", a.lowest_tol)?;
    env.param("level_tol", a.level_tol)?;
    env.param("gauge_tol", a.gauge_tol)?;

    let mut all_levels = true;
    let mut worst_error = 0.0f64;
    for level in &report.levels {
        let tol = if level.q == 0 { a.lowest_tol } else { a.level_tol };
        let pass = level.error.is_some_and(|e| e < tol) && level.count as u64 == level.expected_count;
        all_levels &= pass;
        worst_error = worst_error.max(level.error.unwrap_or(f64::INFINITY));
        let mut row = serde_json::to_value(level)?;
        row["pass"] = Value::Bool(pass);
        env.push_row(row)?;
    }
    let gauge_pass = gauge.max_difference <= a.gauge_tol;
    env.residual("eigensolver", report.max_residual)?;
    env.residual("worst_level_error", worst_error)?;
    env.residual("gauge_max_difference", gauge.max_difference)?;
    env.pass = all_levels && gauge_pass;
    Ok(env)
}

fn verify_p1(a: &P1Args, seed: u64) -> Outcome {
    let d = a.d.unwrap_or(a.b + 2 * a.m);
    let report = p1_spectrum_report(a.b, a.m, d, a.levels)?;
    let kodaira = match kodaira_difference_check(&BasisSpec::standard(a.b, a.m, d)?) {
        Ok(k) => Ok(k),
        Err(Error::Verification(msg)) => Err(msg),
        Err(e) => return Err(e.into()),
    };

    let mut env = Envelope::new("verify p1", seed);
    env.param("B", a.b)?;
    env.param("m", a.m)?;
    env.param("d", d)?;
    env.param("levels", a.levels)?;
    env.param("basis_size", report.basis_size)?;
    env.param("blocks", report.blocks)?;
    env.param("rel_tol", a.rel_tol)?;

    let mut all_levels = true;
    let mut worst = 0.0f64;
    for (level, row) in report.levels.iter().zip(&report.table.rows) {
        let pass = level.relative_error.is_some_and(|e| e <= a.rel_tol) && level.count as u64 == level.expected_count;
        all_levels &= pass;
        worst = worst.max(level.relative_error.unwrap_or(f64::INFINITY));
        let mut v = serde_json::to_value(level)?;
        v["eigenvalue"] = serde_json::to_value(RationalJson(&row.eigenvalue))?;
        v["pass"] = Value::Bool(pass);
        env.push_row(v)?;
    }
    env.residual("eigensolver", report.max_residual)?;
    env.residual("worst_relative_error", worst)?;
    match &kodaira {
        Ok(k) => env.residual("kodaira_entries_checked", k.entries_checked)?,
        Err(msg) => env.residual("kodaira_failure", msg)?,
    }
    env.pass = all_levels && kodaira.is_ok();
    Ok(env)
}

fn verify_ladder(a: &LadderSuiteArgs, seed: u64) -> Outcome {
    let mut env = Envelope::new("verify ladder", seed);
    env.param("B", RationalJson(&a.b))?;
    env.param("delta", a.delta)?;
    env.param("qmax", a.qmax)?;
    let mut worst_automorphy = 0.0f64;
    let mut residual_terms = 0usize;
    for delta in 1..=a.delta {
        for j in 0..delta {
            let theta = theta_basis(&ThetaSpec::new(a.b.clone(), delta, j)?)?;
            worst_automorphy = worst_automorphy
                .max(theta.automorphy.residual_x)
                .max(theta.automorphy.residual_y);
            let f = &theta.section;
            let holomorphic = ladder_down(f, 1).is_zero();
            for q in 0..=a.qmax {
                let level = rat(q.into()) * &a.b;
                let up = ladder_up(f, q);
                let residual = eigen_residual(&up, &level);
                residual_terms += residual.len();
                let constant = ladder_constant(Space::AbelianVariety, 1, &a.b, q.into())?;
                let round_trip = ladder_down(&up, q)
                    == f.scale(&CRational::real(constant.clone())).with_tensor_level(f.tensor_level());
                let intermediate = (0..=q).all(|k| {
                    eigen_residual(&ladder_down(&up, k), &(rat((q - k).into()) * &a.b)).is_zero()
                });
                let pass = holomorphic && residual.is_zero() && round_trip && intermediate;
                env.pass &= pass;
                env.push_row(json!({
                    "delta": delta,
                    "j": j,
                    "q": q,
                    "eigenvalue": RationalJson(&level),
                    "residual_terms": residual.len(),
                    "constant": RationalJson(&constant),
                    "round_trip": round_trip,
                    "intermediate_levels": intermediate,
                    "pass": pass,
                }))?;
            }
        }
    }
    env.residual("eigen_residual_terms", residual_terms)?;
    env.residual("theta_automorphy", worst_automorphy)?;
    Ok(env)
}

fn verify_identities(a: &IdentitiesArgs, seed: u64) -> Outcome {
    let mut env = Envelope::new("verify identities", seed);
    env.param("B", RationalJson(&a.b))?;
    env.param("seeds", a.seeds)?;
    env.param("terms", a.terms)?;
    let shift = CRational::real(a.b.clone());
    let (mut bk_total, mut diff_total) = (0usize, 0usize);
    for s in (0..a.seeds).map(|i| seed.wrapping_add(i)) {
        let section = random_section(s, a.terms, &a.b)?;
        let bk = bk_residual(&section);
        let diff = apply_operator(OperatorKind::DeltaUp0, &section)
            .sub(&apply_operator(OperatorKind::Delta0, &section))?
            .sub(&section.scale(&shift))?;
        bk_total += bk.len();
        diff_total += diff.len();
        let pass = bk.is_zero() && diff.is_zero();
        env.pass &= pass;
        env.push_row(json!({
            "seed": s,
            "terms": section.len(),
            "bk_residual_terms": bk.len(),
            "difference_residual_terms": diff.len(),
            "pass": pass,
        }))?;
    }
    env.residual("bk_residual_terms", bk_total)?;
    env.residual("difference_residual_terms", diff_total)?;
    Ok(env)
}

fn show_index(i: &GrassmannIndex) -> String {
    format!("({},{})", i.row, i.col)
}

fn verify_grassmann(a: &GrassmannCheckArgs, seed: u64) -> Outcome {
    let mut env = Envelope::new("verify grassmann", seed);
    env.param("mu_max", a.mu)?;
    env.param("nu_max", a.nu)?;
    let mut failures = 0usize;
    for mu in 1..=a.mu {
        for nu in 1..=a.nu {
            let report = grassmann_structure_check(mu, nu)?;
            for p in &report.patterns {
                let counterexample = p.counterexample.as_ref().map(|(t, r)| {
                    format!(
                        "I={} J={} K={} L={} R={r}",
                        show_index(&t[0]),
                        show_index(&t[1]),
                        show_index(&t[2]),
                        show_index(&t[3])
                    )
                });
                failures += usize::from(!p.holds());
                env.push_row(json!({
                    "mu": mu,
                    "nu": nu,
                    "check": p.label,
                    "tested": p.tuples_tested,
                    "violations": p.violations,
                    "detail": counterexample,
                    "pass": p.holds(),
                }))?;
            }
            let bad: Vec<&_> = report.nullities.iter().filter(|n| !n.holds()).collect();
            failures += usize::from(!bad.is_empty());
            env.push_row(json!({
                "mu": mu,
                "nu": nu,
                "check": "nullity = (mu-1)(nu-1)",
                "tested": report.nullities.len(),
                "violations": bad.len(),
                "detail": bad.first().map(|n| format!(
                    "direction {} nullity {} expected {}", show_index(&n.direction), n.nullity, n.expected
                )),
                "pass": bad.is_empty(),
            }))?;
            failures += usize::from(!report.symmetric);
            env.push_row(json!({
                "mu": mu,
                "nu": nu,
                "check": "I <-> K symmetry",
                "tested": 1,
                "violations": usize::from(!report.symmetric),
                "detail": Value::Null,
                "pass": report.symmetric,
            }))?;
            env.pass &= report.pass();
        }
    }
    env.residual("failed_checks", failures)?;
    Ok(env)
}

fn ladder_samples(a: &LadderArgs, seed: u64) -> Outcome {
    if a.grid == 0 {
        return Err(Error::InvalidInput("grid must be positive".into()).into());
    }
    let theta = theta_basis(&ThetaSpec::new(a.b.clone(), a.delta, a.j)?)?;
    let level: Rational = rat(a.q.into()) * &a.b;
    let section = ladder_up(&theta.section, a.q);
    let exact = eigen_residual(&section, &level).is_zero();
    let ell = theta.spec.ell();

    let mut env = Envelope::new("ladder", seed);
    env.param("B", RationalJson(&a.b))?;
    env.param("delta", a.delta)?;
    env.param("j", a.j)?;
    env.param("q", a.q)?;
    env.param("eigenvalue", RationalJson(&level))?;
    env.param("grid", a.grid)?;
    env.param("side", ell)?;
    env.param("truncation", theta.spec.truncation)?;

    let numeric = section.numeric(ell);
    let h = ell / a.grid as f64;
    for ix in 0..a.grid {
        for iy in 0..a.grid {
            let (x, y) = (ix as f64 * h, iy as f64 * h);
            let v = numeric.eval_unitary(Complex64::new(x, y));
            env.push_row(json!({"x": x, "y": y, "re": v.re, "im": v.im, "abs": v.norm()}))?;
        }
    }
    env.residual("eigen_residual_terms", eigen_residual(&section, &level).len())?;
    env.residual("automorphy_x", theta.automorphy.residual_x)?;
    env.residual("automorphy_y", theta.automorphy.residual_y)?;
    env.pass = exact
        && theta.automorphy.residual_x <= AUTOMORPHY_TOL
        && theta.automorphy.residual_y <= AUTOMORPHY_TOL;
    Ok(env)
}
