use num_traits::Zero;
use proptest::prelude::*;
use spectral_bundles::exact::{factorial, rat, ratio, CRational, Rational};
use spectral_bundles::exppoly::{
    apply_operator, bk_residual, eigen_residual, l2_inner, ladder_down, ladder_up, random_section, theta_basis,
    OperatorKind, ThetaSpec,
};

fn curvature_strategy() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn bochner_kodaira_identity(seed in any::<u64>(), b in curvature_strategy()) {
        let s = random_section(seed, 10, &b).unwrap();
        prop_assert!(bk_residual(&s).is_zero());
    }

    #[test]
    fn laplacians_differ_by_b(seed in any::<u64>(), b in curvature_strategy()) {
        let s = random_section(seed, 10, &b).unwrap();
        let diff = apply_operator(OperatorKind::DeltaUp0, &s)
            .sub(&apply_operator(OperatorKind::Delta0, &s))
            .unwrap();
        prop_assert_eq!(diff, s.scale(&CRational::real(b)));
    }

    #[test]
    fn mixed_partials_commute(seed in any::<u64>()) {
        let s = random_section(seed, 8, &rat(2)).unwrap();
        let a = apply_operator(OperatorKind::Dzbar, &apply_operator(OperatorKind::Dz, &s));
        let b = apply_operator(OperatorKind::Dz, &apply_operator(OperatorKind::Dzbar, &s));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn operators_are_linear(s1 in any::<u64>(), s2 in any::<u64>(), k in -5i64..=5) {
        let b = ratio(3, 2);
        let (f, g) = (random_section(s1, 6, &b).unwrap(), random_section(s2, 6, &b).unwrap());
        let kc = CRational::new(rat(k), ratio(1, 3));
        let comb = f.add(&g.scale(&kc)).unwrap();
        for op in [OperatorKind::Dz, OperatorKind::Dzbar, OperatorKind::CovDz, OperatorKind::Delta0, OperatorKind::DeltaUp0] {
            let lhs = apply_operator(op, &comb);
            let rhs = apply_operator(op, &f).add(&apply_operator(op, &g).scale(&kc)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn leibniz_rule(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (f, g) = (random_section(s1, 4, &rat(1)).unwrap(), random_section(s2, 4, &rat(2)).unwrap());
        for op in [OperatorKind::Dz, OperatorKind::Dzbar] {
            let lhs = apply_operator(op, &f.product(&g));
            let rhs = apply_operator(op, &f).product(&g).add(&f.product(&apply_operator(op, &g))).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn theta_ladders_are_exact() {
    let b = ratio(3, 2);
    for delta in 1..=4u64 {
        for j in 0..delta {
            let f = theta_basis(&ThetaSpec::new(b.clone(), delta, j).unwrap()).unwrap().section;
            assert!(eigen_residual(&f, &Rational::zero()).is_zero());
            assert!(!eigen_residual(&f, &b).is_zero());
            assert!(ladder_down(&f, 1).is_zero());
            for q in 0..=5u32 {
                let up = ladder_up(&f, q);
                let level = rat(q.into()) * &b;
                assert!(eigen_residual(&up, &level).is_zero(), "delta={delta} j={j} q={q}");
                let constant = Rational::from_integer(factorial(q.into())) * b.pow(q as i32);
                assert_eq!(ladder_down(&up, q), f.scale(&CRational::real(constant)).with_tensor_level(f.tensor_level()));
                for k in 0..=q {
                    let partial = ladder_down(&up, k);
                    assert_eq!(partial.tensor_level(), f.tensor_level() - i64::from(q) + i64::from(k));
                    assert!(eigen_residual(&partial, &(rat((q - k).into()) * &b)).is_zero());
                }
            }
        }
    }
}

#[test]
fn covariant_derivative_is_adjoint_to_minus_dbar() {
    let spec = ThetaSpec::new(rat(2), 2, 1).unwrap();
    let f = theta_basis(&spec).unwrap().section;
    let s = ladder_up(&f, 1);
    let t = ladder_up(&f, 2);
    let lhs = l2_inner(&apply_operator(OperatorKind::CovDz, &s), &t, &spec, 128).unwrap();
    let minus_dbar_t = apply_operator(OperatorKind::Dzbar, &t).scale(&CRational::from_int(-1));
    let rhs = l2_inner(&s, &minus_dbar_t, &spec, 128).unwrap();
    assert!((lhs - rhs).norm() / lhs.norm() < 1e-6, "{lhs} vs {rhs}");
}

#[test]
fn theta_levels_are_orthogonal() {
    let spec = ThetaSpec::new(rat(1), 2, 0).unwrap();
    let f = theta_basis(&spec).unwrap().section;
    let ups: Vec<_> = (0..=3).map(|q| ladder_up(&f, q)).collect();
    let norms: Vec<f64> = ups.iter().map(|u| l2_inner(u, u, &spec, 128).unwrap().re.sqrt()).collect();
    for a in 0..ups.len() {
        for b in a + 1..ups.len() {
            let ip = l2_inner(&ups[a], &ups[b], &spec, 128).unwrap();
            assert!(ip.norm() / (norms[a] * norms[b]) < 1e-6, "q={a} q'={b}");
        }
    }
}
