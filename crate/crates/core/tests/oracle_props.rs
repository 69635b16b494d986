use subforge::barrier::{refined_potential_bound, SpectralProfile};
use subforge::oracle::{brute_force_best_subset, charpoly_coeffs, grid_search_potential, grid_slack, CoeffPoly};
use subforge::random::{hermitian, trial_rng};

fn add(acc: &mut [f64], p: &CoeffPoly) {
    for (a, c) in acc.iter_mut().zip(&p.coeffs) {
        *a += c;
    }
}

#[test]
fn sum_of_minor_charpolys_is_the_derivative() {
    for t in 0..30 {
        let n = 2 + (t as usize % 11);
        let a = hermitian(&mut trial_rng(61, t), n);
        let deriv = charpoly_coeffs(&a).unwrap().derivative();
        let mut sum = vec![0.0; n];
        for k in 0..n {
            add(&mut sum, &charpoly_coeffs(&a.without(k)).unwrap());
        }
        let scale = deriv.coeffs.iter().map(|c| c.abs()).fold(1.0, f64::max);
        for (x, y) in sum.iter().zip(&deriv.coeffs) {
            assert!((x - y).abs() <= 1e-8 * scale, "n {n}: {x} vs {y}");
        }
    }
}

#[test]
fn exhaustive_search_on_diagonal() {
    let a = subforge::HermitianMatrix::diag(&[3.0, 1.0, 2.0, 0.5]).unwrap();
    let (s, v) = brute_force_best_subset(&a, 2).unwrap();
    assert_eq!(s, vec![1, 3]);
    assert_eq!(v, 1.0);
}

#[test]
fn grid_never_beats_refined_bound() {
    let pairs = [(0.5, 0.3), (0.25, 0.1), (0.5, 0.45), (0.75, 0.6), (0.3, 0.2)];
    for b in [1.5, 2.0, 5.0] {
        for (alpha, beta) in pairs {
            let grid = grid_search_potential(alpha, beta, b, 4, 40).unwrap();
            let prof = SpectralProfile::new(4, alpha, beta).unwrap();
            let bound = refined_potential_bound(&prof, b).unwrap();
            assert!(grid <= bound + grid_slack(4, 40, b), "b {b} α {alpha} β {beta}: {grid} > {bound}");
        }
    }
}
