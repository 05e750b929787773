//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).

use std::process::Command;

use geoqkd::bb84::{run_protocol, theoretical_qber, BasisPolicy, EveStrategy, RngState};
use geoqkd::codes::{decode_index, decode_profile, encode, family_state, EncoderConfig};
use geoqkd::entanglement::{
    analytic_e_twisted, make_twist_global, von_neumann_entropy, Functional, GeoKey,
};
use geoqkd::error::Error;
use geoqkd::geometry::{
    classify_step, decompose, directional_derivative, fs_distance, fs_gradient, g_fs,
    ClassifierThresholds, MoveLabel,
};
use geoqkd::hilbert::{partial_trace_b, BipartiteSplit, DensityMatrix, Ray, StateVector};
use geoqkd::selfcheck::{random_qubit_unitary, random_ray, random_tangent};
use num_complex::Complex64;

fn report(n: u32, desc: &str, passed: bool, detail: &str) {
    let status = if passed { "PASS" } else { "FAIL" };
    println!("{status}  [{n:>2}] {desc}: {detail}");
    assert!(passed, "criterion {n} failed: {detail}");
}

const SPLIT: BipartiteSplit = BipartiteSplit { dim_a: 2, dim_b: 2 };

/// Random functional from {StandardVN, TwistedGlobal, QubitHeight} with its
/// state dimension.
fn random_functional(rng: &mut RngState) -> (Functional, usize) {
    match rng.next_u64() % 3 {
        0 => (Functional::standard_vn(SPLIT), 4),
        1 => {
            let theta = 0.2 + rng.next_f64();
            (
                Functional::twisted_global(SPLIT, make_twist_global(theta)).unwrap(),
                4,
            )
        }
        _ => loop {
            let v = [
                rng.next_f64() * 2.0 - 1.0,
                rng.next_f64() * 2.0 - 1.0,
                rng.next_f64() * 2.0 - 1.0,
            ];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 1e-3 {
                return (
                    Functional::qubit_height([v[0] / n, v[1] / n, v[2] / n]).unwrap(),
                    2,
                );
            }
        },
    }
}

#[test]
fn criterion_01_metric_axioms() {
    let mut worst_tri = f64::NEG_INFINITY;
    let mut worst_sym: f64 = 0.0;
    let mut in_range = true;
    for dim in [2usize, 4] {
        let mut rng = RngState::for_round(2024, dim as u64, 0);
        for _ in 0..1000 {
            let x = random_ray(dim, &mut rng);
            let y = random_ray(dim, &mut rng);
            let z = random_ray(dim, &mut rng);
            let dxy = fs_distance(&x, &y).unwrap();
            worst_sym = worst_sym.max((dxy - fs_distance(&y, &x).unwrap()).abs());
            worst_tri = worst_tri
                .max(fs_distance(&x, &z).unwrap() - dxy - fs_distance(&y, &z).unwrap());
            in_range &= (0.0..=std::f64::consts::FRAC_PI_2 + 1e-15).contains(&dxy);
        }
    }
    report(
        1,
        "metric axioms",
        worst_sym == 0.0 && worst_tri <= 1e-12 && in_range,
        &format!("symmetry dev {worst_sym:.1e}, triangle excess {worst_tri:.1e}"),
    );
}

#[test]
fn criterion_02_gradient_consistency() {
    let h = 1e-5;
    let mut rng = RngState::for_round(2024, 2, 0);
    let mut worst: f64 = 0.0;
    let mut n = 0;
    while n < 50 {
        let (e, dim) = random_functional(&mut rng);
        let x = random_ray(dim, &mut rng);
        let grad = fs_gradient(&e, &x, h).unwrap();
        if grad.fs_norm() < 1e-3 {
            continue;
        }
        let v = random_tangent(&x, &mut rng);
        let lhs = g_fs(&grad, &v);
        let rhs = directional_derivative(&e, &x, &v, h).unwrap();
        worst = worst.max((lhs - rhs).abs());
        n += 1;
    }
    report(
        2,
        "gradient consistency",
        worst <= 1e-4,
        &format!("max |g(grad,v) - D_v E| = {worst:.2e} over 50 triples"),
    );
}

#[test]
fn criterion_03_tangential_quadratic_decay() {
    let mut rng = RngState::for_round(2024, 3, 0);
    let ts = [1e-2, 1e-3, 1e-4];
    let mut fitted = Vec::new();
    let mut attempts = 0;
    while fitted.len() < 20 && attempts < 2000 {
        attempts += 1;
        let (e, dim) = random_functional(&mut rng);
        let x = random_ray(dim, &mut rng);
        let grad = match fs_gradient(&e, &x, 1e-5) {
            Ok(g) => g,
            Err(_) => continue,
        };
        if grad.fs_norm() < 0.3 {
            continue;
        }
        let w = random_tangent(&x, &mut rng);
        let (_, w_par) = match decompose(&w, &grad) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if w_par.fs_norm() < 1e-3 {
            continue;
        }
        let e0 = e.evaluate(&x).unwrap();
        let deltas: Vec<f64> = ts
            .iter()
            .map(|&t| (e.evaluate(&w_par.exp_step(t).unwrap()).unwrap() - e0).abs())
            .collect();
        // skip degenerate cases where the quadratic coefficient vanishes
        if deltas[0] < 1e-6 || deltas.iter().any(|&d| d < 1e-14) {
            continue;
        }
        // least-squares slope of ln|dE| vs ln t
        let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
        let ys: Vec<f64> = deltas.iter().map(|d| d.ln()).collect();
        let mx = xs.iter().sum::<f64>() / 3.0;
        let my = ys.iter().sum::<f64>() / 3.0;
        let slope = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (x - mx) * (y - my))
            .sum::<f64>()
            / xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
        fitted.push(slope);
    }
    let min_slope = fitted.iter().cloned().fold(f64::INFINITY, f64::min);
    report(
        3,
        "tangential first-order preservation",
        fitted.len() == 20 && min_slope >= 1.8,
        &format!("min fitted exponent {min_slope:.3} over {} instances", fitted.len()),
    );
}

#[test]
fn criterion_04_local_unitary_invariance() {
    let mut rng = RngState::for_round(2024, 4, 0);
    let std_e = Functional::standard_vn(SPLIT);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let psi = random_ray(4, &mut rng);
        let w = random_qubit_unitary(&mut rng);
        let local = Functional::twisted_local(SPLIT, w).unwrap();
        worst = worst.max((local.evaluate(&psi).unwrap() - std_e.evaluate(&psi).unwrap()).abs());
    }
    report(
        4,
        "local-unitary invariance (the local twist is value-preserving)",
        worst <= 1e-10,
        &format!("max |E_local - E_std| = {worst:.2e} over 100 samples"),
    );
}

#[test]
fn criterion_05_family_triviality() {
    let delta = std::f64::consts::PI / 16.0;
    let e = Functional::standard_vn(SPLIT);
    let mut worst: f64 = 0.0;
    for j in 0..=16 {
        worst = worst.max(e.evaluate(&family_state(j, delta)).unwrap());
    }
    report(
        5,
        "rotation family lies on the trivial leaf",
        worst <= 1e-12,
        &format!("max E_std(psi_j) = {worst:.2e} for j in [0, 16]"),
    );
}

#[test]
fn criterion_06_twisted_profile_oracle() {
    let delta = std::f64::consts::PI / 32.0;
    let mut worst: f64 = 0.0;
    for &theta in &[0.1, 0.4, std::f64::consts::FRAC_PI_4, 1.2] {
        let e = Functional::twisted_global(SPLIT, make_twist_global(theta)).unwrap();
        for j in 0..=16 {
            worst = worst
                .max((e.evaluate(&family_state(j, delta)).unwrap()
                    - analytic_e_twisted(j, delta, theta))
                .abs());
        }
    }
    // strict monotonicity on j delta in (0, pi/2) at theta = pi/4
    let delta = std::f64::consts::PI / 16.0;
    let theta = std::f64::consts::FRAC_PI_4;
    let monotone = (1..8).all(|j| {
        analytic_e_twisted(j, delta, theta) > analytic_e_twisted(j - 1, delta, theta)
    });
    report(
        6,
        "twisted-profile oracle equivalence",
        worst <= 1e-9 && monotone,
        &format!("max |numerical - analytic| = {worst:.2e}; monotone = {monotone}"),
    );
}

#[test]
fn criterion_07_coding_round_trip() {
    let mut rng = RngState::for_round(2024, 7, 0);
    let key = GeoKey::twisted_global(std::f64::consts::FRAC_PI_4);
    let th = ClassifierThresholds::default();
    let mut all_ok = true;
    let mut wrong_key_ok = true;
    for _ in 0..1000 {
        let base = EncoderConfig::default();
        let j0 = base.j_min + (rng.next_u64() % (base.j_max - base.j_min + 1) as u64) as i64;
        let cfg = EncoderConfig { j0, ..base };
        let len = (rng.next_u64() % 33) as usize;
        let mut j = j0;
        let bits: Vec<u8> = (0..len)
            .map(|_| {
                let b = if j == cfg.j_min {
                    1
                } else if j == cfg.j_max {
                    0
                } else {
                    rng.next_bit()
                };
                j += if b == 1 { 1 } else { -1 };
                b
            })
            .collect();
        let traj = encode(&bits, &cfg).unwrap();
        all_ok &= decode_index(&traj, &cfg).unwrap() == bits;
        if !bits.is_empty() {
            let decoded = decode_profile(&traj, &key, &th).unwrap();
            all_ok &= decoded.iter().map(|b| b.unwrap()).collect::<Vec<u8>>() == bits;
            wrong_key_ok &= matches!(
                decode_profile(&traj, &GeoKey::standard_vn(), &th),
                Err(Error::Undecodable { erasures, steps }) if erasures == steps
            );
        }
    }
    report(
        7,
        "coding round trip (index and profile decoders)",
        all_ok && wrong_key_ok,
        &format!("1000 messages; wrong key fully erased = {wrong_key_ok}"),
    );
}

#[test]
fn criterion_08_classifier_correctness() {
    let mut rng = RngState::for_round(2024, 8, 0);
    let th = ClassifierThresholds::default();
    let mut counts = [0u32; 3];
    let mut n = 0;
    while n < 100 {
        let (e, dim) = random_functional(&mut rng);
        let x = random_ray(dim, &mut rng);
        let grad = match fs_gradient(&e, &x, 1e-5) {
            Ok(g) => g,
            Err(_) => continue,
        };
        if grad.fs_norm() < 0.3 {
            continue;
        }
        let up = grad.exp_step(0.01).unwrap();
        let down = grad.exp_step(-0.01).unwrap();
        let w = random_tangent(&x, &mut rng);
        let (_, w_par) = match decompose(&w, &grad) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if w_par.fs_norm() < 1e-3 {
            continue;
        }
        let tangential = w_par.exp_step(1e-3).unwrap();
        if classify_step(&x, &up, &e, &th).unwrap().0 == MoveLabel::U {
            counts[0] += 1;
        }
        if classify_step(&x, &down, &e, &th).unwrap().0 == MoveLabel::D {
            counts[1] += 1;
        }
        if classify_step(&x, &tangential, &e, &th).unwrap().0 == MoveLabel::T {
            counts[2] += 1;
        }
        n += 1;
    }
    report(
        8,
        "classifier labels gradient/tangential steps as U/D/T",
        counts == [100, 100, 100],
        &format!("U {}/100, D {}/100, T {}/100", counts[0], counts[1], counts[2]),
    );
}

#[test]
fn criterion_09_bb84_no_eve() {
    let (stats, _) = run_protocol(10_000, EveStrategy::NoEve, 7);
    let sift_ok = (stats.sift_rate - 0.5).abs() <= 0.02;
    report(
        9,
        "BB84 without Eve",
        stats.qber == 0.0 && sift_ok,
        &format!("qber = {}, sift rate = {}", stats.qber, stats.sift_rate),
    );
}

#[test]
fn criterion_10_bb84_disturbance() {
    let mut ok = true;
    let mut details = Vec::new();
    for (policy, label) in [
        (BasisPolicy::Uniform, "uniform"),
        (BasisPolicy::FixedZ, "fixed-Z"),
        (BasisPolicy::FixedX, "fixed-X"),
    ] {
        let strategy = EveStrategy::InterceptResend(policy);
        let oracle = theoretical_qber(strategy);
        let (stats, _) = run_protocol(10_000, strategy, 11);
        ok &= (stats.qber - oracle).abs() <= 0.02;
        details.push(format!("{label}: {:.4} vs oracle {oracle}", stats.qber));
    }
    report(
        10,
        "BB84 intercept-resend disturbance",
        ok,
        &details.join("; "),
    );
}

#[test]
fn criterion_11_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_geoqkd");
    let bb84 = |seed: &str| {
        Command::new(bin)
            .args(["bb84", "--rounds", "200", "--eve", "intercept", "--seed", seed])
            .output()
            .unwrap()
    };
    let a = bb84("9");
    let b = bb84("9");
    let bb84_same = a.status.success() && a.stdout == b.stdout;

    let dir = std::env::temp_dir();
    let encode_run = |path: &str| {
        let out = Command::new(bin)
            .args(["encode", "10110", "--out", path])
            .output()
            .unwrap();
        assert!(out.status.success());
        std::fs::read(path).unwrap()
    };
    let p1 = dir.join("geoqkd_det_1.json");
    let p2 = dir.join("geoqkd_det_2.json");
    let e1 = encode_run(p1.to_str().unwrap());
    let e2 = encode_run(p2.to_str().unwrap());
    let encode_same = e1 == e2;
    report(
        11,
        "CLI determinism (byte-identical outputs for equal seeds)",
        bb84_same && encode_same,
        &format!("bb84 identical = {bb84_same}, encode identical = {encode_same}"),
    );
}

#[test]
fn criterion_12_entropy_anchors() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = StateVector::from_reals(&[s, 0.0, 0.0, s]).unwrap();
    let bell_e = von_neumann_entropy(&partial_trace_b(&bell, SPLIT).unwrap()).unwrap();

    let mut rng = RngState::for_round(2024, 12, 0);
    let mut product_worst: f64 = 0.0;
    for _ in 0..50 {
        let a = random_ray(2, &mut rng);
        let b = random_ray(2, &mut rng);
        let prod = a.representative().tensor(b.representative());
        product_worst = product_worst
            .max(von_neumann_entropy(&partial_trace_b(&prod, SPLIT).unwrap()).unwrap());
    }

    let z = Complex64::new(0.0, 0.0);
    let skew = DensityMatrix::new(
        2,
        vec![Complex64::new(0.75, 0.0), z, z, Complex64::new(0.25, 0.0)],
    )
    .unwrap();
    let skew_e = von_neumann_entropy(&skew).unwrap();

    let ok = (bell_e - 1.0).abs() <= 1e-12
        && product_worst <= 1e-12
        && (skew_e - 0.811278).abs() <= 1e-6;
    report(
        12,
        "entropy anchors",
        ok,
        &format!("Bell {bell_e:.15}, max product {product_worst:.2e}, diag(3/4,1/4) {skew_e:.6}"),
    );
}
