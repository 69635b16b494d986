use num_complex::Complex64;
use proptest::prelude::*;
use subforge::gausslucas::{
    check_chain, check_pereira, complex_roots, disc_containment, gl_area_ratio, hull, rr_spread_ratio,
    sharpness_experiment, ComplexPoly,
};
use subforge::random::{centered_disc_roots, disc_roots, trial_rng};
use subforge::RealRootedPoly;

fn poly_strategy() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4..=12)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derivative_roots_stay_in_hull_and_keep_centroid(roots in poly_strategy()) {
        let p = ComplexPoly::from_roots(&roots);
        let h = hull(&complex_roots(&p).unwrap());
        let q = p.derivative(1);
        let rq = complex_roots(&q).unwrap();
        let span = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for z in &rq.roots {
            prop_assert!(h.contains(*z, 1e-7 * span));
        }
        let hq = hull(&rq);
        prop_assert!((hq.centroid[0] - h.centroid[0]).abs() <= 1e-8);
        prop_assert!((hq.centroid[1] - h.centroid[1]).abs() <= 1e-8);
    }

    #[test]
    fn first_majorization_holds(roots in poly_strategy()) {
        prop_assert!(check_pereira(&ComplexPoly::from_roots(&roots)).unwrap());
    }
}

#[test]
fn hulls_nest_along_derivatives() {
    for t in 0..10 {
        let p = ComplexPoly::from_roots(&disc_roots(&mut trial_rng(51, t), 14));
        let mut prev = hull(&complex_roots(&p).unwrap());
        for k in 1..12 {
            let rs = complex_roots(&p.derivative(k)).unwrap();
            for z in &rs.roots {
                assert!(prev.contains(*z, 1e-7), "trial {t} k {k}");
            }
            prev = hull(&rs);
        }
    }
}

#[test]
fn chain_on_random_polynomials() {
    for t in 0..30 {
        let n = 4 + (t as usize % 12);
        let p = ComplexPoly::from_roots(&disc_roots(&mut trial_rng(52, t), n));
        assert!(check_chain(&p, n - 2).unwrap(), "trial {t}");
    }
}

#[test]
fn area_ratio_on_random_polynomials() {
    for t in 0..20 {
        let n = 8 + (t as usize % 17);
        let p = ComplexPoly::from_roots(&disc_roots(&mut trial_rng(53, t), n));
        for c in [0.5, 0.6, 0.75, 0.9] {
            let r = gl_area_ratio(&p, c).unwrap();
            assert!(r.holds, "trial {t} c {c}: {} > {}", r.ratio, r.bound);
        }
    }
}

#[test]
fn disc_containment_at_seven_tenths() {
    for t in 0..10 {
        let p = ComplexPoly::from_roots(&centered_disc_roots(&mut trial_rng(54, t), 20));
        let r = disc_containment(&p, 0.7).unwrap();
        assert!(r.holds, "{} > {}", r.max_modulus, r.bound);
        assert_eq!(r.derivative_order, 14);
    }
}

#[test]
fn spread_of_two_point_family() {
    for m in 5..=20 {
        let roots = [vec![-1.0; m], vec![1.0; m]].concat();
        let p = RealRootedPoly::from_roots(roots).unwrap();
        for c in [0.5, 2.0 / 3.0, 0.8] {
            let r = rr_spread_ratio(&p, c).unwrap();
            assert!(r.holds);
            assert!(r.ratio >= (1.0 - c).sqrt() - 0.15, "m {m} c {c}: {}", r.ratio);
        }
    }
}

#[test]
fn sharpness_family_sits_between_bounds() {
    for m in [8, 10, 12] {
        for c in [0.5, 2.0 / 3.0] {
            let r = sharpness_experiment(m, c).unwrap();
            assert!(r.ratio >= r.asymptotic - 0.05, "m {m} c {c}: {} vs {}", r.ratio, r.asymptotic);
            assert!(r.ratio <= r.upper + 1e-6);
        }
    }
}
