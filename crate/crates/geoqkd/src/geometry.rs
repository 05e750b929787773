//! Fubini-Study distance, numerical FS gradients, the normal/tangential
//! decomposition relative to a functional's level sets, and the T/U/D step
//! classifier.
//!
//! Conventions: the FS distance is `arccos |<psi|phi>|` with range
//! `[0, pi/2]`. On the Bloch sphere this is half the Bloch angle. Gradients
//! are computed numerically by central differences over an orthonormal frame
//! of the horizontal space, which works uniformly for every functional in the
//! family, entropy compositions included.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entanglement::Functional;
use crate::error::{Error, Result};
use crate::hilbert::{Ray, StateVector};

/// Default finite-difference step for gradients and directional derivatives.
pub const DEFAULT_H: f64 = 1e-5;

/// FS distance `arccos(clamp(|<psi|phi>|, 0, 1))`, in `[0, pi/2]`.
pub fn fs_distance(r1: &Ray, r2: &Ray) -> Result<f64> {
    let ip = r1.representative().inner(r2.representative())?;
    Ok(ip.norm().clamp(0.0, 1.0).acos())
}

/// A horizontal tangent vector at a ray: orthogonal to the base
/// representative under the complex inner product.
#[derive(Debug, Clone)]
pub struct TangentVector {
    base: Ray,
    vector: Vec<Complex64>,
}

impl TangentVector {
    /// Validates `<base|vector> = 0` within 1e-10.
    pub fn new(base: Ray, vector: Vec<Complex64>) -> Result<Self> {
        let overlap = inner_raw(base.representative().amplitudes(), &vector).norm();
        if overlap > 1e-10 {
            return Err(Error::NotHorizontal { overlap });
        }
        Ok(TangentVector { base, vector })
    }

    /// Projects out the component along the base, then constructs.
    pub fn project(base: Ray, vector: &[Complex64]) -> Self {
        let psi = base.representative().amplitudes();
        let ip = inner_raw(psi, vector);
        let vector = vector
            .iter()
            .zip(psi)
            .map(|(v, p)| v - ip * p)
            .collect();
        TangentVector { base, vector }
    }

    pub fn base(&self) -> &Ray {
        &self.base
    }

    pub fn components(&self) -> &[Complex64] {
        &self.vector
    }

    /// FS norm `sqrt(<v|v>)`.
    pub fn fs_norm(&self) -> f64 {
        self.vector.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rescales to unit FS norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.fs_norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(TangentVector {
            base: self.base.clone(),
            vector: self.vector.iter().map(|v| v / n).collect(),
        })
    }

    pub fn scale(&self, t: f64) -> Self {
        TangentVector {
            base: self.base.clone(),
            vector: self.vector.iter().map(|v| v * t).collect(),
        }
    }

    pub fn add(&self, other: &TangentVector) -> Self {
        TangentVector {
            base: self.base.clone(),
            vector: self
                .vector
                .iter()
                .zip(&other.vector)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// The ray reached by moving along the unit-speed great circle through
    /// this direction for FS time `t` (direction taken at unit FS norm).
    pub fn exp_step(&self, t: f64) -> Result<Ray> {
        let unit = self.normalized()?;
        step_along(&unit.base, &unit.vector, t)
    }
}

/// Real (Riemannian) inner product `Re<u|v>` on horizontal vectors.
pub fn g_fs(u: &TangentVector, v: &TangentVector) -> f64 {
    u.vector
        .iter()
        .zip(&v.vector)
        .map(|(a, b)| (a.conj() * b).re)
        .sum()
}

fn inner_raw(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `cos(t) psi + sin(t) v`, renormalized and projected to a ray. For a
/// unit-FS-norm horizontal `v` this is the unit-speed FS geodesic through
/// the base.
fn step_along(base: &Ray, unit_v: &[Complex64], t: f64) -> Result<Ray> {
    let psi = base.representative().amplitudes();
    let amps: Vec<Complex64> = psi
        .iter()
        .zip(unit_v)
        .map(|(p, v)| p * t.cos() + v * t.sin())
        .collect();
    Ray::new(&StateVector::new(amps)?)
}

/// Central-difference directional derivative of `E` at `x` along the
/// unit-FS-norm direction of `v`, with step `h`.
pub fn directional_derivative(
    e: &Functional,
    x: &Ray,
    v: &TangentVector,
    h: f64,
) -> Result<f64> {
    let unit = v.normalized()?;
    let fwd = e.evaluate(&step_along(x, &unit.vector, h)?)?;
    let bwd = e.evaluate(&step_along(x, &unit.vector, -h)?)?;
    Ok((fwd - bwd) / (2.0 * h))
}

/// Orthonormal completion of the base representative: `d - 1` complex
/// vectors orthogonal to psi and to each other.
fn horizontal_frame(x: &Ray) -> Vec<Vec<Complex64>> {
    let psi = x.representative().amplitudes();
    let d = psi.len();
    let mut frame: Vec<Vec<Complex64>> = vec![psi.to_vec()];
    for k in 0..d {
        if frame.len() == d {
            break;
        }
        let mut v: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); d];
        v[k] = Complex64::new(1.0, 0.0);
        for u in &frame {
            let ip = inner_raw(u, &v);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= ip * ui;
            }
        }
        let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-8 {
            for vi in v.iter_mut() {
                *vi /= n;
            }
            frame.push(v);
        }
    }
    frame.remove(0);
    frame
}

/// Numerical FS gradient: directional derivatives over the `2(d-1)` real
/// orthonormal horizontal directions `{v_k, i v_k}`, summed back into a
/// tangent vector. Satisfies `g_fs(grad, v) ~= D_v E`.
pub fn fs_gradient(e: &Functional, x: &Ray, h: f64) -> Result<TangentVector> {
    let d = x.dim();
    let frame = horizontal_frame(x);
    let mut grad = vec![Complex64::new(0.0, 0.0); d];
    for v in &frame {
        for factor in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
            let dir: Vec<Complex64> = v.iter().map(|a| a * factor).collect();
            let fwd = e.evaluate(&step_along(x, &dir, h)?)?;
            let bwd = e.evaluate(&step_along(x, &dir, -h)?)?;
            let deriv = (fwd - bwd) / (2.0 * h);
            for (g, a) in grad.iter_mut().zip(&dir) {
                *g += a * deriv;
            }
        }
    }
    TangentVector::new(x.clone(), grad)
}

/// Splits `w` into its component along `grad` and the leaf-tangential rest,
/// using the real inner product.
pub fn decompose(
    w: &TangentVector,
    grad: &TangentVector,
) -> Result<(TangentVector, TangentVector)> {
    let gg = g_fs(grad, grad);
    if gg.sqrt() <= 1e-8 {
        return Err(Error::DegenerateDecomposition);
    }
    let coeff = g_fs(w, grad) / gg;
    let w_perp = grad.scale(coeff);
    let w_par = w.add(&w_perp.scale(-1.0));
    Ok((w_perp, w_par))
}

/// Classifier thresholds; requires `0 < eps_tan < eps_norm`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ClassifierThresholds {
    pub eps_tan: f64,
    pub eps_norm: f64,
}

impl ClassifierThresholds {
    pub fn new(eps_tan: f64, eps_norm: f64) -> Result<Self> {
        if !(0.0 < eps_tan && eps_tan < eps_norm) {
            return Err(Error::InvalidThresholds { eps_tan, eps_norm });
        }
        Ok(ClassifierThresholds { eps_tan, eps_norm })
    }
}

impl Default for ClassifierThresholds {
    fn default() -> Self {
        ClassifierThresholds {
            eps_tan: 0.05,
            eps_norm: 0.2,
        }
    }
}

/// One symbol of the geometric move alphabet. `M` covers the intermediate
/// regime between tangential and normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveLabel {
    T,
    U,
    D,
    M,
}

impl std::fmt::Display for MoveLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = match self {
            MoveLabel::T => 'T',
            MoveLabel::U => 'U',
            MoveLabel::D => 'D',
            MoveLabel::M => 'M',
        };
        write!(f, "{c}")
    }
}

/// FS step length and functional increment for one trajectory step.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct StepMetrics {
    pub delta_s: f64,
    pub delta_e: f64,
}

/// Classifies a step by the ratio `delta_e / delta_s` against the
/// thresholds. Zero-length steps are tangential by convention (the identity
/// move travels no FS distance).
pub fn classify_step(
    x_k: &Ray,
    x_k1: &Ray,
    e: &Functional,
    th: &ClassifierThresholds,
) -> Result<(MoveLabel, StepMetrics)> {
    let delta_s = fs_distance(x_k, x_k1)?;
    let delta_e = e.evaluate(x_k1)? - e.evaluate(x_k)?;
    let metrics = StepMetrics { delta_s, delta_e };
    let label = if delta_s == 0.0 || delta_e.abs() / delta_s < th.eps_tan {
        MoveLabel::T
    } else if delta_e / delta_s > th.eps_norm {
        MoveLabel::U
    } else if delta_e / delta_s < -th.eps_norm {
        MoveLabel::D
    } else {
        MoveLabel::M
    };
    Ok((label, metrics))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::Functional;
    use crate::hilbert::{ket0, ket1, ket_plus, BipartiteSplit, StateVector};
    use num_complex::Complex64;

    fn ray(v: &StateVector) -> Ray {
        Ray::new(v).unwrap()
    }

    #[test]
    fn fs_distance_basics() {
        let r0 = ray(&ket0());
        let r1 = ray(&ket1());
        let rp = ray(&ket_plus());
        assert_eq!(fs_distance(&r0, &r0).unwrap(), 0.0);
        assert!((fs_distance(&r0, &r1).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((fs_distance(&r0, &rp).unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn fs_distance_rejects_dim_mismatch() {
        let r2 = ray(&ket0());
        let r4 = ray(&StateVector::basis(4, 0));
        assert!(fs_distance(&r2, &r4).is_err());
    }

    #[test]
    fn directional_derivative_of_constant_is_zero() {
        // StandardVN on the product family has a flat landscape at |00>.
        let e = Functional::standard_vn(BipartiteSplit::two_qubits());
        let x = ray(&ket0().tensor(&ket0()));
        let v = TangentVector::project(x.clone(), StateVector::basis(4, 1).amplitudes());
        let d = directional_derivative(&e, &x, &v, 1e-5).unwrap();
        assert!(d.abs() < 1e-6, "{d}");
    }

    #[test]
    fn qubit_height_derivative_at_equator() {
        // E_Z along the great circle toward |0>: at |+>, |dE/ds| = 1.
        let e = Functional::qubit_height([0.0, 0.0, 1.0]).unwrap();
        let x = ray(&ket_plus());
        let dir: Vec<_> = ket0()
            .amplitudes()
            .iter()
            .zip(ket1().amplitudes())
            .map(|(a, b)| (a - b) * std::f64::consts::FRAC_1_SQRT_2)
            .collect();
        let v = TangentVector::project(x.clone(), &dir);
        let d = directional_derivative(&e, &x, &v, 1e-5).unwrap();
        assert!((d.abs() - 1.0).abs() < 1e-6, "{d}");
    }

    #[test]
    fn gradient_norm_at_equator_and_pole() {
        let e = Functional::qubit_height([0.0, 0.0, 1.0]).unwrap();
        let h = 1e-5;

        let x = ray(&ket_plus());
        let grad = fs_gradient(&e, &x, h).unwrap();
        assert!((grad.fs_norm() - 1.0).abs() < 1e-6, "{}", grad.fs_norm());
        // pointing toward |0> along the great circle: moving along it raises E
        let up = grad.exp_step(0.1).unwrap();
        assert!(e.evaluate(&up).unwrap() > e.evaluate(&x).unwrap());

        // critical point at the pole
        let x = ray(&ket0());
        let grad = fs_gradient(&e, &x, h).unwrap();
        assert!(grad.fs_norm() < 10.0 * h, "{}", grad.fs_norm());
    }

    #[test]
    fn decompose_recovers_components() {
        let e = Functional::qubit_height([0.0, 0.0, 1.0]).unwrap();
        let x = ray(&ket_plus());
        let grad = fs_gradient(&e, &x, 1e-5).unwrap();

        // w parallel to grad
        let (wp, wt) = decompose(&grad, &grad).unwrap();
        assert!((g_fs(&wp, &wp) - g_fs(&grad, &grad)).abs() < 1e-12);
        assert!(g_fs(&wt, &wt).sqrt() < 1e-10);

        // w = grad + t with t orthogonal to grad
        let t_dir = TangentVector::project(
            x.clone(),
            &[Complex64::new(0.0, 0.3), Complex64::new(0.0, -0.3)],
        );
        let (_, t_orth) = decompose(&t_dir, &grad).unwrap();
        let w = grad.add(&t_orth);
        let (wp, wt) = decompose(&w, &grad).unwrap();
        assert!(g_fs(&wt, &grad).abs() < 1e-10);
        let diff_p = wp.add(&grad.scale(-1.0));
        assert!(g_fs(&diff_p, &diff_p).sqrt() < 1e-10);
        let diff_t = wt.add(&t_orth.scale(-1.0));
        assert!(g_fs(&diff_t, &diff_t).sqrt() < 1e-10);
    }

    #[test]
    fn decompose_rejects_vanishing_gradient() {
        let e = Functional::standard_vn(BipartiteSplit::two_qubits());
        let x = ray(&ket0().tensor(&ket0()));
        let grad = fs_gradient(&e, &x, 1e-5).unwrap();
        let w = TangentVector::project(x.clone(), StateVector::basis(4, 1).amplitudes());
        assert!(matches!(
            decompose(&w, &grad),
            Err(Error::DegenerateDecomposition)
        ));
    }

    #[test]
    fn classify_identity_step_is_tangential() {
        let e = Functional::qubit_height([0.0, 0.0, 1.0]).unwrap();
        let x = ray(&ket_plus());
        let th = ClassifierThresholds::default();
        let (label, m) = classify_step(&x, &x, &e, &th).unwrap();
        assert_eq!(label, MoveLabel::T);
        assert_eq!(m.delta_s, 0.0);
        assert_eq!(m.delta_e, 0.0);
    }

    #[test]
    fn classify_gradient_steps() {
        let e = Functional::qubit_height([0.0, 0.0, 1.0]).unwrap();
        let x = ray(&ket_plus());
        let th = ClassifierThresholds::default();
        let grad = fs_gradient(&e, &x, 1e-5).unwrap();
        let up = grad.exp_step(0.01).unwrap();
        let down = grad.exp_step(-0.01).unwrap();
        assert_eq!(classify_step(&x, &up, &e, &th).unwrap().0, MoveLabel::U);
        assert_eq!(classify_step(&x, &down, &e, &th).unwrap().0, MoveLabel::D);
    }

    #[test]
    fn thresholds_validation() {
        assert!(ClassifierThresholds::new(0.05, 0.2).is_ok());
        assert!(ClassifierThresholds::new(0.2, 0.05).is_err());
        assert!(ClassifierThresholds::new(0.0, 0.1).is_err());
    }
}
