//! The keyed family of scalar functionals on the state manifold: standard
//! von Neumann entanglement entropy, twisted variants, and single-qubit
//! height functions, plus the closed-form oracle for the twisted profile.
//!
//! Entropy is measured in bits (log base 2), so a Bell state scores exactly
//! 1 and a product state 0. Eigenvalues within the numerical tolerance below
//! zero are clamped before the logarithm, with the convention 0 log 0 = 0.
//!
//! Two twist variants exist. `TwistedLocal` composes the standard entropy
//! with a local unitary on subsystem A; since the entropy is invariant under
//! local unitaries, this functional is identical to `StandardVN` (a property
//! the test suite demonstrates). `TwistedGlobal` composes with a genuinely
//! entangling unitary `exp(-i theta sigma_z x sigma_x)` and is the default
//! key family: it is non-constant on the rotation family of states whenever
//! `sin(2 theta) != 0`, with a closed-form profile.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    exp_involution, partial_trace_b, pauli_axis, rotation_y, sigma_x, sigma_z, BipartiteSplit,
    DensityMatrix, Ray, Unitary, TOL,
};

/// Von Neumann entropy in bits: `-sum l_i log2 l_i`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eigs = rho.eigenvalues()?;
    let mut s = 0.0;
    for l in eigs {
        if l < -TOL.eigen_negative {
            return Err(Error::NotDensityMatrix {
                reason: format!("negative eigenvalue {l}"),
            });
        }
        let l = l.max(0.0);
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    Ok(s)
}

/// One member of the functional family `{E_theta}`.
#[derive(Debug, Clone)]
pub enum Functional {
    /// Entanglement entropy of the reduced state of A.
    StandardVN { split: BipartiteSplit },
    /// Entropy after a local unitary on A. Provably equal to `StandardVN`.
    TwistedLocal { split: BipartiteSplit, w: Unitary },
    /// Entropy after a global unitary on the full space.
    TwistedGlobal { split: BipartiteSplit, v: Unitary },
    /// `(1 + n . r) / 2` on the Bloch sphere, a height function along `n`.
    QubitHeight { axis: [f64; 3] },
}

impl Functional {
    pub fn standard_vn(split: BipartiteSplit) -> Self {
        Functional::StandardVN { split }
    }

    pub fn twisted_local(split: BipartiteSplit, w: Unitary) -> Result<Self> {
        if w.dim() != split.dim_a {
            return Err(Error::DimMismatch {
                expected: split.dim_a,
                got: w.dim(),
            });
        }
        Ok(Functional::TwistedLocal { split, w })
    }

    pub fn twisted_global(split: BipartiteSplit, v: Unitary) -> Result<Self> {
        if v.dim() != split.total() {
            return Err(Error::DimMismatch {
                expected: split.total(),
                got: v.dim(),
            });
        }
        Ok(Functional::TwistedGlobal { split, v })
    }

    pub fn qubit_height(axis: [f64; 3]) -> Result<Self> {
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if (norm - 1.0).abs() > TOL.axis_unit {
            return Err(Error::NotUnitAxis { norm });
        }
        Ok(Functional::QubitHeight { axis })
    }

    /// Evaluates the functional at a ray.
    pub fn evaluate(&self, x: &Ray) -> Result<f64> {
        match self {
            Functional::StandardVN { split } => {
                von_neumann_entropy(&partial_trace_b(x.representative(), *split)?)
            }
            Functional::TwistedLocal { split, w } => {
                let full = w.tensor(&Unitary::identity(split.dim_b));
                let psi = full.apply(x.representative())?;
                von_neumann_entropy(&partial_trace_b(&psi, *split)?)
            }
            Functional::TwistedGlobal { split, v } => {
                let psi = v.apply(x.representative())?;
                von_neumann_entropy(&partial_trace_b(&psi, *split)?)
            }
            Functional::QubitHeight { axis } => {
                let r = x.representative().bloch_vector()?;
                Ok((1.0 + axis[0] * r[0] + axis[1] * r[1] + axis[2] * r[2]) / 2.0)
            }
        }
    }
}

/// The global twist `V(theta) = exp(-i theta sigma_z x sigma_x)` on two
/// qubits. At theta = 0 this is the identity; the induced functional is
/// non-constant on the rotation family whenever `sin(2 theta) != 0`.
pub fn make_twist_global(theta: f64) -> Unitary {
    let g = sigma_z().tensor(&sigma_x());
    exp_involution(&g, theta).expect("sigma_z x sigma_x is an involution")
}

fn binary_entropy(l: f64) -> f64 {
    let mut s = 0.0;
    for p in [l, 1.0 - l] {
        if p > 0.0 {
            s -= p * p.log2();
        }
    }
    s
}

/// Closed-form profile of the global twist on the rotation family
/// `psi_j = cos(j d / 2)|00> + sin(j d / 2)|10>`:
/// concurrence `C = |sin(j d) sin(2 theta)|`, Schmidt weight
/// `l = (1 + sqrt(1 - C^2)) / 2`, entropy `h2(l)`.
pub fn analytic_e_twisted(j: i64, delta: f64, theta: f64) -> f64 {
    let c = ((j as f64 * delta).sin() * (2.0 * theta).sin()).abs();
    let l = (1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0;
    binary_entropy(l)
}

// ---------------------------------------------------------------------------
// Keys

/// Which functional family a key selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    StandardVn,
    TwistedLocal,
    TwistedGlobal,
    QubitHeight,
}

/// The decoding key: a family identifier (public form) plus the secret
/// parameter `theta` and auxiliary data.
///
/// Serialized as `{"family": "...", "theta": f, "generator": "zx",
/// "axis": [x, y, z], "split": {"dim_a": a, "dim_b": b}}` with the optional
/// fields present only where the family uses them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeoKey {
    pub family: FamilyTag,
    #[serde(default)]
    pub theta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<BipartiteSplit>,
}

impl GeoKey {
    /// The default key family: the global twist with generator `zx`.
    pub fn twisted_global(theta: f64) -> Self {
        GeoKey {
            family: FamilyTag::TwistedGlobal,
            theta,
            generator: Some("zx".into()),
            axis: None,
            split: Some(BipartiteSplit::two_qubits()),
        }
    }

    pub fn standard_vn() -> Self {
        GeoKey {
            family: FamilyTag::StandardVn,
            theta: 0.0,
            generator: None,
            axis: None,
            split: Some(BipartiteSplit::two_qubits()),
        }
    }

    /// Materializes the functional this key selects.
    pub fn functional(&self) -> Result<Functional> {
        if !self.theta.is_finite() {
            return Err(Error::InvalidKey {
                reason: "theta is not finite".into(),
            });
        }
        let split = self.split.unwrap_or_else(BipartiteSplit::two_qubits);
        match self.family {
            FamilyTag::StandardVn => Ok(Functional::standard_vn(split)),
            FamilyTag::TwistedLocal => {
                Functional::twisted_local(split, rotation_y(self.theta))
            }
            FamilyTag::TwistedGlobal => {
                match self.generator.as_deref() {
                    Some("zx") | None => {}
                    Some(other) => {
                        return Err(Error::InvalidKey {
                            reason: format!("unknown generator tag {other:?}"),
                        })
                    }
                }
                Functional::twisted_global(split, make_twist_global(self.theta))
            }
            FamilyTag::QubitHeight => {
                let axis = self.axis.ok_or_else(|| Error::InvalidKey {
                    reason: "qubit_height key requires an axis".into(),
                })?;
                Functional::qubit_height(axis)
            }
        }
    }

    pub fn pauli_observable(&self) -> Result<Unitary> {
        let axis = self.axis.ok_or_else(|| Error::InvalidKey {
            reason: "no axis in key".into(),
        })?;
        pauli_axis(axis)
    }
}
