mod common;

use orbitlimits::conj::partitions_of;
use orbitlimits::exact::{inverse, vec_is_zero, Matrix, Ring};
use orbitlimits::lie::{bracket, lie_coordinates};
use orbitlimits::limits::{
    expand_orbit_curve, limit_algebra, limit_algebra_by_conjugation, limit_model, same_subspace, star_action,
};
use orbitlimits::Error;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, max_global_rejects: 4096, ..ProptestConfig::default() })]

    #[test]
    fn k0_is_a_subalgebra_of_h_annihilating_fb(seed in any::<u64>()) {
        let (s, lam) = common::random_form_and_ps(&mut common::rng(seed));
        let exp = expand_orbit_curve(&s, &lam).unwrap();
        prop_assume!(exp.transverse);
        let d = limit_algebra(&s, &lam).unwrap();
        for a in &d.k0 {
            prop_assert!(vec_is_zero(&s.rep.act(a, &exp.g)), "K0 ⊄ H");
            for b in &d.k0 {
                prop_assert!(lie_coordinates(&d.k0, &bracket(a, b).unwrap()).is_some(), "K0 not closed");
            }
        }
        if let Some(fb) = &exp.f_b {
            let model = limit_model(&exp, &lam).unwrap();
            for k in &d.k0 {
                prop_assert!(vec_is_zero(&star_action(&model, k, fb).unwrap()), "k ⋆ f_b ≠ 0");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 25, max_global_rejects: 4096, ..ProptestConfig::default() })]

    #[test]
    fn kernel_and_conjugation_routes_agree(seed in any::<u64>()) {
        let (s, lam) = common::random_form_and_ps(&mut common::rng(seed));
        let b = limit_algebra_by_conjugation(&s, &lam).unwrap();
        match limit_algebra(&s, &lam) {
            Ok(a) => {
                prop_assert!(same_subspace(&a.k0, &b.k0));
                prop_assert_eq!(a.graded_dims, b.graded_dims);
            }
            Err(Error::NotTransverse(_)) => prop_assume!(false),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn local_model_reconstruction(seed in any::<u64>(), which in 0usize..4) {
        let models = common::reconstruction_models();
        let (_, m) = &models[which];
        let (n, dv) = common::random_slice_pair(&mut common::rng(seed), m);
        let one_plus_theta = Matrix::identity(m.rep.dim()).plus(&m.theta_matrix(&n));
        match m.solve_decomposition(&n, &dv) {
            Ok(d) => {
                let xn: Vec<_> = m.x.iter().zip(&n).map(|(a, b)| a.plus(b)).collect();
                let lhs: Vec<_> = m.rep.act(&m.s_element(&d.s), &xn).iter().zip(m.n_vector(&d.n_prime)).map(|(a, b)| a.plus(&b)).collect();
                prop_assert_eq!(lhs, dv);
            }
            Err(Error::Singular) => prop_assert!(inverse(&one_plus_theta).is_err()),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn dominance_is_a_partial_order_reversed_by_transpose() {
    for n in 1..=8 {
        let ps = partitions_of(n);
        for a in &ps {
            assert!(a.dominates(a).unwrap());
            for b in &ps {
                let ab = a.dominates(b).unwrap();
                if ab && b.dominates(a).unwrap() {
                    assert_eq!(a, b);
                }
                assert_eq!(ab, b.transpose().dominates(&a.transpose()).unwrap());
                for c in &ps {
                    if ab && b.dominates(c).unwrap() {
                        assert!(a.dominates(c).unwrap());
                    }
                }
            }
        }
    }
}
