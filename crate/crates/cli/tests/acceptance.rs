//! One test per acceptance criterion; each prints a single PASS/FAIL line.

use std::process::Command;
use std::time::{Duration, Instant};

use subforge::barrier::optimize_barrier;
use subforge::gausslucas::{
    check_chain, complex_roots, gl_area_ratio, hull, rr_spread_ratio, sharpness_experiment,
};
use subforge::random::{
    disc_roots, gaussian_operator, hermitian, positive_contraction, real_rooted, traceless, trial_rng,
};
use subforge::submatrix::{charpoly_as_roots, select_columns, select_invertible, select_low_norm, select_smax_greedy};
use subforge::{ComplexPoly, RealRootedPoly};
use subforge_cli::verify;
use subforge_cli::RunReport;

fn report(id: u32, name: &str, pass: bool, detail: String) {
    println!("criterion {id:>2} {} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

fn within(start: Instant, cap: Duration) -> bool {
    start.elapsed() < cap
}

#[test]
fn criterion_01_thompson_identity() {
    let start = Instant::now();
    let s = verify::thompson(1, 100).unwrap();
    let worst = s.results.iter().map(|r| r.value).fold(0.0, f64::max);
    let fast = within(start, Duration::from_secs(10));
    report(1, "thompson identity", s.passed && fast, format!("worst residual {worst:.2e} over 100 matrices, {:?}", start.elapsed()));
}

#[test]
fn criterion_02_existence() {
    let start = Instant::now();
    let s = verify::existence(2, 50).unwrap();
    let fast = within(start, Duration::from_secs(30));
    report(2, "existence", s.passed && fast, format!("min slack {:.3e} over 50 matrices, {:?}", s.worst_margin, start.elapsed()));
}

#[test]
fn criterion_03_greedy_descent() {
    let (n, keep) = (20, 10);
    let mut worst = f64::INFINITY;
    let mut sound = true;
    for t in 0..50 {
        let a = hermitian(&mut trial_rng(3, t), n);
        let chi = charpoly_as_roots(&a).unwrap();
        let phi = optimize_barrier(&chi, n - keep).unwrap().optimal_phi.finite().unwrap();
        let cert = select_smax_greedy(&a, keep, phi).unwrap();
        sound &= cert.holds();
        for w in cert.round_scores.windows(2) {
            worst = worst.min(w[0] - w[1] - 1.0 / phi);
        }
    }
    report(3, "greedy soundness and descent", sound && worst >= -1e-8, format!("min excess descent {worst:.3e}"));
}

#[test]
fn criterion_04_traceless_norm() {
    let start = Instant::now();
    let bound = 3f64.sqrt() / 2.0;
    let mut worst = f64::NEG_INFINITY;
    for t in 0..20 {
        let a = traceless(&mut trial_rng(4, t), 40);
        let cert = select_low_norm(&a, 10).unwrap();
        worst = worst.max(cert.achieved_extreme);
    }
    let fast = within(start, Duration::from_secs(120));
    report(4, "traceless norm at c = 3/4", worst <= bound + 1e-6 && fast, format!("max λmax {worst:.6} vs {bound:.6}, {:?}", start.elapsed()));
}

#[test]
fn criterion_05_restricted_invertibility() {
    let mut worst = f64::INFINITY;
    for t in 0..20 {
        let a = positive_contraction(&mut trial_rng(5, t), 30);
        for delta in [0.5, 0.9] {
            let cert = select_invertible(&a, delta).unwrap();
            worst = worst.min(cert.achieved_extreme - cert.certified_bound);
        }
    }
    report(5, "restricted invertibility", worst >= -1e-6, format!("min λmin − bound {worst:.3e}"));
}

#[test]
fn criterion_06_column_restriction() {
    let mut worst = f64::INFINITY;
    for t in 0..10 {
        let op = gaussian_operator(&mut trial_rng(6, t), 20, 40);
        let cert = select_columns(&op, 0.8).unwrap();
        worst = worst.min(cert.achieved_extreme - cert.certified_bound);
    }
    report(6, "column restriction", worst >= -1e-6, format!("min smin − bound {worst:.3e}"));
}

#[test]
fn criterion_07_barrier_vs_truth() {
    let mut worst = f64::INFINITY;
    for t in 0..500 {
        let mut rng = trial_rng(7, t);
        let n = 2 + (t as usize * 7) % 59;
        let p = real_rooted(&mut rng, n, -1.0, 1.0);
        let k = 1 + (t as usize * 13) % (n - 1);
        let truth = p.nth_derivative(k).unwrap().max_root();
        worst = worst.min(optimize_barrier(&p, k).unwrap().bound - truth);
    }
    let two_point = RealRootedPoly::from_roots([vec![0.0; 20], vec![1.0; 20]].concat()).unwrap();
    let b = optimize_barrier(&two_point, 30).unwrap().bound;
    let exact = 0.9330127018922193;
    let ok = worst >= -1e-9 && (b - exact).abs() <= 1e-6;
    report(7, "barrier vs truth", ok, format!("min bound − root {worst:.3e}; two-point bound {b:.7} vs {exact:.7}"));
}

#[test]
fn criterion_08_appendix_dominance() {
    let s = verify::appendix(8).unwrap();
    report(8, "grid vs refined potential", s.passed, format!("min slack {:.4} over {} cases", s.worst_margin, s.trials));
}

#[test]
fn criterion_09_area_ratio() {
    let mut worst = f64::INFINITY;
    let mut invariants = true;
    for t in 0..100 {
        let n = 8 + (t as usize % 17);
        let roots = disc_roots(&mut trial_rng(9, t), n);
        let p = ComplexPoly::from_roots(&roots);
        let base = complex_roots(&p).unwrap();
        let h = hull(&base);
        for c in [0.5, 0.6, 0.75, 0.9] {
            let r = gl_area_ratio(&p, c).unwrap();
            worst = worst.min(r.bound - r.ratio);
            if r.derivative_order >= n {
                continue;
            }
            let d = complex_roots(&p.derivative(r.derivative_order)).unwrap();
            invariants &= d.roots.iter().all(|z| h.contains(*z, 1e-7));
            invariants &= (d.mean() - base.mean()).norm() <= 1e-8;
        }
    }
    report(9, "area ratio", worst >= -1e-6 && invariants, format!("min bound − ratio {worst:.3e}; nesting/centroid {invariants}"));
}

#[test]
fn criterion_10_sharpness() {
    let mut ok = true;
    let mut lines = Vec::new();
    for m in [8, 10, 12] {
        for c in [0.5, 2.0 / 3.0] {
            let r = sharpness_experiment(m, c).unwrap();
            ok &= r.ratio >= r.asymptotic - 0.05 && r.ratio <= r.upper;
            let line = RealRootedPoly::from_roots([vec![-1.0; m], vec![1.0; m]].concat()).unwrap();
            let s = rr_spread_ratio(&line, c).unwrap();
            ok &= s.ratio >= (1.0 - c).sqrt() - 0.05 && s.ratio <= s.bound;
            lines.push(format!("m={m} c={c:.3} area {:.4} spread {:.4}", r.ratio, s.ratio));
        }
    }
    report(10, "sharpness family", ok, lines.join("; "));
}

#[test]
fn criterion_11_majorization_chain() {
    let mut ok = true;
    for t in 0..200 {
        let n = 4 + (t as usize % 12);
        let k = 1 + (t as usize / 12) % (n - 2);
        let p = ComplexPoly::from_roots(&disc_roots(&mut trial_rng(11, t), n));
        ok &= check_chain(&p, k).unwrap();
    }
    report(11, "majorization chain", ok, "200 polynomials, degrees 4–15".into());
}

fn verify_all() -> RunReport {
    let out = Command::new(env!("CARGO_BIN_EXE_subforge"))
        .args(["verify", "--suite", "all", "--seed", "7"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    serde_json::from_slice(&out.stdout).expect("report JSON")
}

#[test]
fn criterion_12_determinism() {
    let (a, b) = (verify_all(), verify_all());
    let same = serde_json::to_string(&a.without_timings()).unwrap() == serde_json::to_string(&b.without_timings()).unwrap();
    report(12, "determinism", same, format!("inputs digest {}", &a.inputs_digest[..12]));
}
