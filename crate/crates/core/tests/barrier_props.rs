use proptest::prelude::*;
use subforge::barrier::{
    barrier_bound, hm_bound, kastza_bound, mrr_bound, optimize_barrier, refined_potential_bound,
    shifted_min_bound, SpectralProfile,
};
use subforge::random::{real_rooted, trial_rng};
use subforge::{Phi, RealRootedPoly};

fn unit_roots() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..=1.0, 2..=40)
}

#[test]
fn barrier_bounds_dominate_true_max_roots() {
    for t in 0..500 {
        let mut rng = trial_rng(21, t);
        let n = 2 + (t as usize * 7) % 59;
        let p = real_rooted(&mut rng, n, 0.0, 1.0);
        let k = 1 + (t as usize * 13) % (n - 1);
        let truth = p.nth_derivative(k).unwrap().max_root();
        for phi in [0.1, 1.0, n as f64, 10.0 * n as f64, 1e4] {
            let b = barrier_bound(&p, k, Phi::Finite(phi)).unwrap();
            assert!(b >= truth - 1e-9, "trial {t}: φ={phi} bound {b} < {truth}");
        }
        let r = optimize_barrier(&p, k).unwrap();
        assert!(r.bound >= truth - 1e-9, "trial {t}: optimum {} < {truth}", r.bound);
    }
}

proptest! {
    #[test]
    fn hm_dominates_potential(roots in unit_roots()) {
        let p = RealRootedPoly::from_roots(roots).unwrap();
        let prof = SpectralProfile::of_roots(&p).unwrap();
        for b in [1.01, 1.1, 2.0, 10.0] {
            prop_assert!(p.potential(b).unwrap() <= hm_bound(&prof, b).unwrap() + 1e-9);
        }
    }

    #[test]
    fn refined_dominates_potential_and_sharpens_hm(roots in unit_roots()) {
        let p = RealRootedPoly::from_roots(roots).unwrap();
        let prof = SpectralProfile::of_roots(&p).unwrap();
        prop_assume!(prof.alpha < 1.0 - 1e-9);
        for b in [1.01, 1.1, 2.0, 10.0] {
            let refined = refined_potential_bound(&prof, b).unwrap();
            prop_assert!(p.potential(b).unwrap() <= refined + 1e-9 * refined.max(1.0));
            prop_assert!(refined <= hm_bound(&prof, b).unwrap() + 1e-9);
        }
    }

    #[test]
    fn kastza_equals_shifted_min(tr_b in 0.05f64..1.0, ratio in 0.05f64..1.0, delta in 0.05f64..1.0) {
        // tr(B²) between tr(B)² and tr(B).
        let tr_b2 = tr_b * tr_b + ratio * (tr_b - tr_b * tr_b);
        let c = delta * tr_b * tr_b / tr_b2;
        let direct = kastza_bound(tr_b, delta, c).unwrap();
        let via = shifted_min_bound((delta - c) / delta, 1.0 - c, 1.0 - delta * tr_b / c).unwrap();
        prop_assert!((direct - via).abs() <= 1e-10, "{direct} vs {via}");
    }

    #[test]
    fn mrr_is_below_one_inside_range(alpha in 0.0f64..0.99, t in 0.01f64..1.0) {
        let c = alpha + t * (1.0 - alpha);
        prop_assert!(mrr_bound(alpha, c).unwrap() < 1.0);
    }
}

#[test]
fn optimum_matches_mrr_on_two_point_spectrum() {
    let mut roots = vec![0.0; 20];
    roots.extend(vec![1.0; 20]);
    let r = optimize_barrier(&RealRootedPoly::from_roots(roots).unwrap(), 30).unwrap();
    assert!((r.bound - 0.9330127018922193).abs() <= 1e-6);
    // The report reproduces its own bound.
    let again = barrier_bound(
        &RealRootedPoly::from_roots([vec![0.0; 20], vec![1.0; 20]].concat()).unwrap(),
        30,
        r.optimal_phi,
    )
    .unwrap();
    assert!((again - r.bound).abs() <= 1e-10);
}
