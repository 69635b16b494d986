use proptest::prelude::*;
use subforge::oracle::{coefficient_derivative_roots, CoeffPoly};
use subforge::random::{real_rooted, trial_rng};
use subforge::{Phi, RealRootedPoly};

fn stratified(rng: &mut impl rand::Rng, n: usize) -> RealRootedPoly {
    let w = 2.0 / n as f64;
    RealRootedPoly::from_roots(
        (0..n).map(|i| -1.0 + w * (i as f64 + 0.1 + 0.8 * rng.random::<f64>())).collect(),
    )
    .unwrap()
}

fn roots_strategy(max_n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, 2..=max_n)
}

proptest! {
    #[test]
    fn derivative_interlaces(roots in roots_strategy(30)) {
        let p = RealRootedPoly::from_roots(roots).unwrap();
        let d = p.derivative().unwrap();
        let (l, m) = (p.roots(), d.roots());
        for i in 0..m.len() {
            prop_assert!(l[i] - 1e-12 <= m[i] && m[i] <= l[i + 1] + 1e-12);
        }
    }

    #[test]
    fn derivative_preserves_mean(roots in roots_strategy(40), k in 1usize..10) {
        let p = RealRootedPoly::from_roots(roots).unwrap();
        prop_assume!(k < p.degree());
        let q = p.nth_derivative(k).unwrap();
        prop_assert!((q.mean() - p.mean()).abs() <= 1e-9);
        prop_assert!(q.min_root() >= p.min_root() - 1e-12);
        prop_assert!(q.max_root() <= p.max_root() + 1e-12);
    }

    #[test]
    fn smax_is_decreasing_in_phi(roots in roots_strategy(20), a in 0.01f64..50.0, f in 1.01f64..10.0) {
        let p = RealRootedPoly::from_roots(roots).unwrap();
        let s1 = p.smax(Phi::Finite(a)).unwrap();
        let s2 = p.smax(Phi::Finite(a * f)).unwrap();
        prop_assert!(s1 > s2);
        prop_assert!((p.potential(s1).unwrap() - a).abs() <= 1e-9 * a);
    }

    #[test]
    fn barrier_moves_by_one_over_phi(roots in roots_strategy(30), phi in 0.05f64..200.0) {
        let p = RealRootedPoly::from_roots(roots).unwrap();
        let lhs = p.derivative().unwrap().smax(Phi::Finite(phi)).unwrap();
        let rhs = p.smax(Phi::Finite(phi)).unwrap() - 1.0 / phi;
        prop_assert!(lhs <= rhs + 1e-8, "{lhs} > {rhs}");
    }
}

#[test]
fn smax_tends_to_max_root() {
    for t in 0..20 {
        let p = real_rooted(&mut trial_rng(3, t), 25, -1.0, 1.0);
        let s = p.smax(Phi::Finite(1e8)).unwrap();
        assert!(s > p.max_root() && s - p.max_root() < 1e-6 * 25.0);
        assert_eq!(p.smax(Phi::Infinite).unwrap(), p.max_root());
    }
}

#[test]
fn agrees_with_coefficient_oracle() {
    for t in 0..200 {
        let mut rng = trial_rng(11, t);
        let n = 2 + (t as usize % 11);
        // Stratified roots: coefficient-space root finding on tight clusters
        // is ill-conditioned beyond the oracle's accuracy.
        let p = stratified(&mut rng, n);
        let cp = CoeffPoly { coeffs: p.to_coeffs() };
        for k in 0..n {
            let fast = p.nth_derivative(k).unwrap();
            let slow = coefficient_derivative_roots(&cp, k).unwrap();
            for (a, b) in fast.roots().iter().zip(&slow) {
                assert!((a - b).abs() <= 1e-7, "trial {t}, k {k}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn multiple_roots_follow_the_multiplicity_rule() {
    let p = RealRootedPoly::from_roots(vec![-1.0, -1.0, -1.0, 2.0, 2.0, 5.0]).unwrap();
    let d = p.derivative().unwrap();
    assert_eq!(d.degree(), 5);
    assert_eq!(d.roots().iter().filter(|&&x| x == -1.0).count(), 2);
    assert_eq!(d.roots().iter().filter(|&&x| x == 2.0).count(), 1);
}
