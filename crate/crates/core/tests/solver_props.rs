//! Property tests for the analysis, solvers, oracle and generators.

use proptest::prelude::*;

use ave_core::analysis::{condition_profile, is_strictly_diag_dominant, neq_set};
use ave_core::linalg::{max_abs_diff, norm_inf, Matrix};
use ave_core::prelude::*;
use ave_core::rng::InstanceRng;
use ave_core::sge::SgeState;

fn condition_class() -> impl Strategy<Value = MatrixClass> {
    prop::sample::select(MatrixClass::CONDITIONS.to_vec())
}

fn any_matrix(max_n: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-1.0f64..1.0, n * n)
            .prop_map(move |data| Matrix::new(n, n, data).unwrap())
    })
}

fn signature(n: usize, seed: u64) -> Signature {
    Signature::from_mask(n, seed % (1 << n))
}

fn matches(z: &[f64], truth: &[f64]) -> bool {
    max_abs_diff(z, truth) <= 1e-8 * (1.0 + norm_inf(truth))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rho_sr_is_invariant_under_signature_similarity(a in any_matrix(5), mask in any::<u64>()) {
        let s = signature(a.nrows(), mask);
        let r = rho_sr_enum(&a, 1e-12).unwrap();
        let r_sim = rho_sr_enum(&s.left_mul(&s.right_mul(&a)), 1e-12).unwrap();
        let r_neg = rho_sr_enum(&a.scale(-1.0), 1e-12).unwrap();
        prop_assert!((r - r_sim).abs() <= 1e-8 * (1.0 + r));
        prop_assert!((r - r_neg).abs() <= 1e-8 * (1.0 + r));
    }

    #[test]
    fn rho_sr_is_bounded_by_norms(a in any_matrix(5)) {
        let r = rho_sr_enum(&a, 1e-12).unwrap();
        prop_assert!(r <= a.norm_inf().min(a.norm_one()) + 1e-9);
        prop_assert!(r >= rho0(&a, 1e-12).unwrap() - 1e-9);
    }

    #[test]
    fn enumeration_and_bisection_agree(a in any_matrix(5)) {
        let e = rho_sr_enum(&a, 1e-12).unwrap();
        let b = rho_sr_bisect(&a, 1e-8).unwrap();
        prop_assert!((e - b).abs() <= 2e-8, "{e} vs {b}");
    }

    #[test]
    fn small_rho_means_one_solution(a in any_matrix(4), seed in any::<u64>()) {
        let r = rho_sr_enum(&a, 1e-12).unwrap();
        prop_assume!((r - 1.0).abs() > 1e-6);
        let det_ok = det_positive_all_signatures(&a).unwrap();
        prop_assert_eq!(det_ok, r < 1.0);
        if r < 1.0 {
            let b = InstanceRng::new(seed).vector(a.nrows(), -1.0, 1.0);
            let p = AveProblem::new(a, b).unwrap();
            prop_assert_eq!(enumerate_solutions(&p).unwrap().count(), 1);
        }
    }

    #[test]
    fn sge_matches_oracle_with_correct_signs(
        class in condition_class(),
        n in 2usize..8,
        seed in any::<u64>(),
    ) {
        let (p, _) = gen_instance(class, n, seed).unwrap();
        let truth = unique_solution(&p).unwrap();
        let r = sge_solve(&p, &SgeOptions::default()).unwrap();
        prop_assert!(matches(&r.z, &truth), "{class}: {:?} vs {truth:?}", r.z);
        prop_assert!(!r.no_convergence_guarantee);
        for rec in r.elimination_trace().unwrap() {
            let zk = truth[rec.index];
            prop_assert!(zk == 0.0 || f64::from(rec.sign) * zk > 0.0, "{class}: wrong sign at {}", rec.index);
        }
        prop_assert!(r.iterations <= n);
    }

    #[test]
    fn elimination_preserves_conditions_1_and_3(
        use_sdd in any::<bool>(),
        n in 2usize..8,
        seed in any::<u64>(),
    ) {
        let class = if use_sdd { MatrixClass::SddTwoThirds } else { MatrixClass::NormLtHalf };
        let (p, _) = gen_instance(class, n, seed).unwrap();
        let mut st = SgeState::new(&p);
        let mut round = 0;
        while st.active().len() > 1 {
            let b = st.b_work();
            let bmax = st.active().iter().fold(0.0f64, |m, &i| m.max(b[i].abs()));
            prop_assume!(bmax > 0.0);
            let picks: Vec<(usize, i8)> = st
                .active()
                .iter()
                .filter(|&&i| b[i].abs() >= bmax)
                .map(|&i| (i, if b[i] >= 0.0 { 1 } else { -1 }))
                .collect();
            for (k, s) in picks {
                st.elim_step(k, s, round).unwrap();
                let sub = st.active_submatrix();
                if sub.nrows() == 0 {
                    continue;
                }
                if use_sdd {
                    prop_assert!(is_strictly_diag_dominant(&sub));
                    prop_assert!(sub.norm_inf() <= 2.0 / 3.0 + 1e-12);
                } else {
                    prop_assert!(sub.norm_inf() < 0.5 + 1e-12);
                }
            }
            round += 1;
        }
        prop_assert!(round <= n);
        prop_assert_eq!(st.trace().len(), n - st.active().len());
    }

    #[test]
    fn zero_rhs_gives_zero_solution(class in condition_class(), n in 2usize..8, seed in any::<u64>()) {
        let a = gen_class(class, n, seed).unwrap();
        let p = AveProblem::new(a, vec![0.0; n]).unwrap();
        let r = sge_solve(&p, &SgeOptions::default()).unwrap();
        prop_assert_eq!(r.z, vec![0.0; n]);
        let r = newton_solve(&p, &NewtonOptions::default());
        prop_assert_eq!(r.status, Status::Converged);
        prop_assert_eq!(r.z, vec![0.0; n]);
    }

    #[test]
    fn neq_is_empty_under_the_conditions(class in condition_class(), n in 2usize..8, seed in any::<u64>()) {
        let (p, z) = gen_instance(class, n, seed).unwrap();
        prop_assert!(neq_set(p.b(), &z, 0.0).is_empty());
    }

    #[test]
    fn newton_converges_within_n_plus_one_solves(
        class in condition_class(),
        n in 2usize..8,
        seed in any::<u64>(),
        mask in any::<u64>(),
    ) {
        let (p, z) = gen_instance(class, n, seed).unwrap();
        let opts = NewtonOptions { start: Start::Signature(signature(n, mask)), max_iter: None };
        let r = newton_solve(&p, &opts);
        prop_assert_eq!(r.status, Status::Converged);
        prop_assert!(r.iterations <= n + 1);
        prop_assert!(matches(&r.z, &z));
    }

    #[test]
    fn newton_error_and_residual_never_grow_below_one_third(
        n in 2usize..8,
        seed in any::<u64>(),
        mask in any::<u64>(),
    ) {
        let (p, z) = gen_instance(MatrixClass::NormLtThird, n, seed).unwrap();
        let opts = NewtonOptions { start: Start::Signature(signature(n, mask)), max_iter: Some(4 * (n + 1)) };
        let r = newton_solve(&p, &opts);
        prop_assert_eq!(r.status, Status::Converged);
        let iterates = &r.newton_trace().unwrap().iterates;
        let slack = 1e-12 * (1.0 + norm_inf(&z));
        for w in iterates.windows(2) {
            prop_assert!(max_abs_diff(&w[1], &z) <= max_abs_diff(&w[0], &z) + slack);
            prop_assert!(p.residual(&w[1]) <= p.residual(&w[0]) + slack);
        }
    }

    #[test]
    fn newton_is_deterministic_and_fixed_points_are_solutions(
        a in any_matrix(5),
        seed in any::<u64>(),
        mask in any::<u64>(),
    ) {
        let n = a.nrows();
        let b = InstanceRng::new(seed).vector(n, -1.0, 1.0);
        let p = AveProblem::new(a, b).unwrap();
        let opts = NewtonOptions { start: Start::Signature(signature(n, mask)), max_iter: Some(50) };
        let first = newton_solve(&p, &opts);
        prop_assert_eq!(&first, &newton_solve(&p, &opts));
        if first.status == Status::Converged {
            let trace = first.newton_trace().unwrap();
            prop_assert_eq!(&Signature::of(&first.z), trace.signatures.last().unwrap());
            let scale = 1.0 + p.a().norm_inf() * norm_inf(&first.z) + norm_inf(p.b());
            prop_assert!(first.residual <= 1e-10 * scale);
        }
    }

    #[test]
    fn solution_count_is_permutation_invariant(a in any_matrix(4), seed in any::<u64>()) {
        let mut rng = InstanceRng::new(seed);
        let n = a.nrows();
        let p = AveProblem::new(a, rng.vector(n, -1.0, 1.0)).unwrap();
        let perm = rng.permutation(n);
        let c1 = enumerate_solutions(&p).unwrap();
        let c2 = enumerate_solutions(&p.permuted(&perm)).unwrap();
        prop_assume!(c1.singular_signatures.is_empty());
        prop_assert_eq!(c1.count(), c2.count());
    }

    #[test]
    fn generators_are_sound_and_deterministic(
        class in condition_class(),
        n in 1usize..9,
        seed in any::<u64>(),
    ) {
        prop_assume!(n >= class.min_dim());
        let a = gen_class(class, n, seed).unwrap();
        prop_assert!(class.accepts(&a), "{class} rejected {a:?}");
        prop_assert!(condition_profile(&a).any);
        prop_assert_eq!(&a, &gen_class(class, n, seed).unwrap());
        let (p, z) = gen_instance(class, n, seed).unwrap();
        prop_assert_eq!(p.a(), &a);
        prop_assert!(p.residual(&z) <= 1e-14);
    }

    #[test]
    fn from_solution_round_trips(a in any_matrix(5), seed in any::<u64>()) {
        let z = InstanceRng::new(seed).vector(a.nrows(), -3.0, 3.0);
        let p = AveProblem::from_solution(a, &z).unwrap();
        prop_assert!(p.residual(&z) <= 1e-14 * (1.0 + p.a().norm_inf() * norm_inf(&z)));
        if rho_sr_enum(p.a(), 1e-12).unwrap() < 1.0 - 1e-6 {
            let found = unique_solution(&p).unwrap();
            prop_assert!(matches(&found, &z), "{found:?} vs {z:?}");
        }
    }
}

#[test]
fn equilibrium_reduction_recovers_the_equilibrium() {
    let mut rng = InstanceRng::new(0xE0);
    for trial in 0..100 {
        let n = 1 + rng.below(6);
        let mut b = Matrix::new(n, n, rng.vector(n * n, -1.0, 1.0)).unwrap();
        let norm = b.norm_inf();
        if norm > 0.0 {
            b = b.scale(rng.uniform(0.0, 0.2) / norm);
        }
        let x = rng.vector(n, -1.0, 1.0);
        let bx = b.mul_vec(&x);
        let c: Vec<f64> = bx.iter().zip(&x).map(|(v, xi)| v + xi.max(0.0)).collect();
        let eq = EquilibriumProblem::new(b, c).unwrap();
        let red = from_equilibrium(&eq).unwrap();
        let found = enumerate_solutions(&red.problem).unwrap();
        assert!(
            found
                .solutions
                .iter()
                .any(|(_, z)| max_abs_diff(&red.recover(z), &x) <= 1e-9),
            "trial {trial}: x not recovered"
        );
        for (_, z) in &found.solutions {
            assert!(eq.residual(&red.recover(z)) <= 1e-9);
        }
    }
}
