//! Built-in invariant suite behind the `selfcheck` and `gradcheck`
//! subcommands: metric axioms on sampled rays, gradient/derivative
//! consistency, local-unitary invariance of the entropy, and oracle
//! equivalence for the twisted profile.

use serde::Serialize;

use crate::bb84::RngState;
use crate::entanglement::{analytic_e_twisted, make_twist_global, Functional};
use crate::error::Result;
use crate::geometry::{directional_derivative, fs_distance, fs_gradient, g_fs, TangentVector};
use crate::hilbert::{rotation_y, BipartiteSplit, Ray, StateVector, Unitary};
use num_complex::Complex64;

/// Outcome of one invariant group.
#[derive(Debug, Clone, Serialize)]
pub struct GroupResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfcheckReport {
    pub groups: Vec<GroupResult>,
    pub passed: bool,
}

/// Deterministic random ray via a Gaussian-ish sum of uniforms per
/// component.
pub fn random_ray(dim: usize, rng: &mut RngState) -> Ray {
    loop {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| {
                Complex64::new(
                    rng.next_f64() * 2.0 - 1.0,
                    rng.next_f64() * 2.0 - 1.0,
                )
            })
            .collect();
        let v = StateVector::new(amps).unwrap();
        if v.norm() > 1e-3 {
            return Ray::new(&v).unwrap();
        }
    }
}

/// Random single-qubit unitary: composed y- and phase-like rotations.
pub fn random_qubit_unitary(rng: &mut RngState) -> Unitary {
    let a = rng.next_f64() * std::f64::consts::TAU;
    let b = rng.next_f64() * std::f64::consts::TAU;
    let c = rng.next_f64() * std::f64::consts::TAU;
    let phase = |t: f64| {
        Unitary::new(
            2,
            vec![
                Complex64::from_polar(1.0, -t / 2.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::from_polar(1.0, t / 2.0),
            ],
        )
        .unwrap()
    };
    phase(a)
        .compose(&rotation_y(b))
        .unwrap()
        .compose(&phase(c))
        .unwrap()
}

fn metric_axioms(seed: u64) -> Result<GroupResult> {
    let mut worst_tri: f64 = f64::NEG_INFINITY;
    let mut worst_sym: f64 = 0.0;
    for dim in [2usize, 4] {
        let mut rng = RngState::for_round(seed, 10 + dim as u64, 0);
        for _ in 0..1000 {
            let x = random_ray(dim, &mut rng);
            let y = random_ray(dim, &mut rng);
            let z = random_ray(dim, &mut rng);
            let dxy = fs_distance(&x, &y)?;
            let dyx = fs_distance(&y, &x)?;
            let dyz = fs_distance(&y, &z)?;
            let dxz = fs_distance(&x, &z)?;
            worst_sym = worst_sym.max((dxy - dyx).abs());
            worst_tri = worst_tri.max(dxz - dxy - dyz);
            if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-15).contains(&dxy) {
                return Ok(GroupResult {
                    name: "metric_axioms".into(),
                    passed: false,
                    detail: format!("distance {dxy} out of range"),
                });
            }
        }
    }
    let passed = worst_sym == 0.0 && worst_tri <= 1e-12;
    Ok(GroupResult {
        name: "metric_axioms".into(),
        passed,
        detail: format!("max symmetry dev {worst_sym:.2e}, max triangle excess {worst_tri:.2e}"),
    })
}

/// Draws a random functional for the gradient check.
fn random_functional(rng: &mut RngState) -> (Functional, usize) {
    match rng.next_u64() % 3 {
        0 => (
            Functional::standard_vn(BipartiteSplit::two_qubits()),
            4,
        ),
        1 => {
            let theta = 0.2 + rng.next_f64();
            (
                Functional::twisted_global(
                    BipartiteSplit::two_qubits(),
                    make_twist_global(theta),
                )
                .unwrap(),
                4,
            )
        }
        _ => {
            // random unit axis
            loop {
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
            }
        }
    }
}

pub fn random_tangent(x: &Ray, rng: &mut RngState) -> TangentVector {
    let dim = x.dim();
    loop {
        let raw: Vec<Complex64> = (0..dim)
            .map(|_| {
                Complex64::new(
                    rng.next_f64() * 2.0 - 1.0,
                    rng.next_f64() * 2.0 - 1.0,
                )
            })
            .collect();
        let t = TangentVector::project(x.clone(), &raw);
        if t.fs_norm() > 1e-3 {
            return t.normalized().unwrap();
        }
    }
}

fn gradient_consistency(seed: u64, h: f64) -> Result<GroupResult> {
    let mut rng = RngState::for_round(seed, 20, 0);
    let mut worst: f64 = 0.0;
    let mut n = 0;
    while n < 50 {
        let (e, dim) = random_functional(&mut rng);
        let x = random_ray(dim, &mut rng);
        let grad = fs_gradient(&e, &x, h)?;
        // skip near-critical points where both sides vanish
        if grad.fs_norm() < 1e-3 {
            continue;
        }
        let v = random_tangent(&x, &mut rng);
        let lhs = g_fs(&grad, &v);
        let rhs = directional_derivative(&e, &x, &v, h)?;
        worst = worst.max((lhs - rhs).abs());
        n += 1;
    }
    Ok(GroupResult {
        name: "gradient_consistency".into(),
        passed: worst <= 1e-4,
        detail: format!("max |g(grad,v) - D_v E| = {worst:.2e} over 50 samples (h={h:.0e})"),
    })
}

fn local_unitary_invariance(seed: u64) -> Result<GroupResult> {
    let mut rng = RngState::for_round(seed, 30, 0);
    let split = BipartiteSplit::two_qubits();
    let std_e = Functional::standard_vn(split);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let psi = random_ray(4, &mut rng);
        let w = random_qubit_unitary(&mut rng);
        let local = Functional::twisted_local(split, w)?;
        worst = worst.max((local.evaluate(&psi)? - std_e.evaluate(&psi)?).abs());
    }
    Ok(GroupResult {
        name: "local_unitary_invariance".into(),
        passed: worst <= 1e-10,
        detail: format!("max |E_local - E_std| = {worst:.2e} over 100 samples"),
    })
}

fn oracle_equivalence(_seed: u64) -> Result<GroupResult> {
    let delta = std::f64::consts::PI / 32.0;
    let mut worst: f64 = 0.0;
    for &theta in &[0.1, 0.4, std::f64::consts::FRAC_PI_4, 1.2] {
        let e = Functional::twisted_global(
            BipartiteSplit::two_qubits(),
            make_twist_global(theta),
        )?;
        for j in 0..=16 {
            let psi = crate::codes::family_state(j, delta);
            worst = worst.max((e.evaluate(&psi)? - analytic_e_twisted(j, delta, theta)).abs());
        }
    }
    Ok(GroupResult {
        name: "oracle_equivalence".into(),
        passed: worst <= 1e-9,
        detail: format!("max |numerical - analytic| = {worst:.2e} on the (j, theta) grid"),
    })
}

/// Runs every invariant group with the given seed and finite-difference
/// step.
pub fn run(seed: u64, h: f64) -> Result<SelfcheckReport> {
    let groups = vec![
        metric_axioms(seed)?,
        gradient_consistency(seed, h)?,
        local_unitary_invariance(seed)?,
        oracle_equivalence(seed)?,
    ];
    let passed = groups.iter().all(|g| g.passed);
    Ok(SelfcheckReport { groups, passed })
}
