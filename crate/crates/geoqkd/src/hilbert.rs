//! Finite-dimensional complex state vectors, rays, unitaries, tensor
//! structure, partial trace, and a small Hermitian eigensolver.
//!
//! All types are immutable values after construction and every operation is
//! pure, so everything here is safe to share across threads.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Numerical tolerances used by the validation checks in this module.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Norm deviation allowed after `normalize`.
    pub norm: f64,
    /// Entrywise deviation allowed in the U'U = I check.
    pub unitarity: f64,
    /// Entrywise deviation allowed in the Hermiticity check.
    pub hermiticity: f64,
    /// Off-diagonal Frobenius norm at which the Jacobi sweep stops.
    pub eigen_offdiag: f64,
    /// Entrywise deviation allowed in the G^2 = I involution check.
    pub involution: f64,
    /// Deviation from unit length allowed for observable axes.
    pub axis_unit: f64,
    /// Eigenvalues of a density matrix may dip this far below zero.
    pub eigen_negative: f64,
}

pub const TOL: Tolerances = Tolerances {
    norm: 1e-12,
    unitarity: 1e-10,
    hermiticity: 1e-12,
    eigen_offdiag: 1e-12,
    involution: 1e-10,
    axis_unit: 1e-10,
    eigen_negative: 1e-12,
};

// ---------------------------------------------------------------------------
// StateVector

#[derive(Serialize, Deserialize)]
struct StateVectorRepr {
    dim: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// A complex vector in a finite-dimensional Hilbert space.
///
/// Serialized as `{"dim": d, "amplitudes": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateVectorRepr", into = "StateVectorRepr")]
pub struct StateVector {
    dim: usize,
    amplitudes: Vec<Complex64>,
}

impl TryFrom<StateVectorRepr> for StateVector {
    type Error = Error;
    fn try_from(r: StateVectorRepr) -> Result<Self> {
        if r.amplitudes.len() != r.dim {
            return Err(Error::DimMismatch {
                expected: r.dim,
                got: r.amplitudes.len(),
            });
        }
        StateVector::new(r.amplitudes.iter().map(|a| Complex64::new(a[0], a[1])).collect())
    }
}

impl From<StateVector> for StateVectorRepr {
    fn from(v: StateVector) -> Self {
        StateVectorRepr {
            dim: v.dim,
            amplitudes: v.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

impl StateVector {
    /// Builds a state vector, checking finiteness and `dim >= 2`.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim < 2 {
            return Err(Error::DimTooSmall(dim));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(StateVector { dim, amplitudes })
    }

    /// The computational basis state `|k>` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim && dim >= 2);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        StateVector { dim, amplitudes }
    }

    pub fn from_reals(re: &[f64]) -> Result<Self> {
        Self::new(re.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Returns the unit-norm vector with the same direction.
    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(StateVector {
            dim: self.dim,
            amplitudes: self.amplitudes.iter().map(|a| a / n).collect(),
        })
    }

    /// Inner product `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Kronecker product; index ordering is `i_a * dim_b + i_b`.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amplitudes = Vec::with_capacity(self.dim * other.dim);
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        StateVector {
            dim: self.dim * other.dim,
            amplitudes,
        }
    }

    pub fn scale(&self, c: Complex64) -> StateVector {
        StateVector {
            dim: self.dim,
            amplitudes: self.amplitudes.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(StateVector {
            dim: self.dim,
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Bloch vector `(<sx>, <sy>, <sz>)` of a normalized qubit state.
    pub fn bloch_vector(&self) -> Result<[f64; 3]> {
        if self.dim != 2 {
            return Err(Error::DimMismatch {
                expected: 2,
                got: self.dim,
            });
        }
        let a = self.amplitudes[0];
        let b = self.amplitudes[1];
        let cross = a.conj() * b;
        Ok([2.0 * cross.re, 2.0 * cross.im, a.norm_sqr() - b.norm_sqr()])
    }
}

/// `|0>` in dimension 2.
pub fn ket0() -> StateVector {
    StateVector::basis(2, 0)
}

/// `|1>` in dimension 2.
pub fn ket1() -> StateVector {
    StateVector::basis(2, 1)
}

/// `|+> = (|0> + |1>)/sqrt(2)`.
pub fn ket_plus() -> StateVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::from_reals(&[s, s]).unwrap()
}

/// `|-> = (|0> - |1>)/sqrt(2)`.
pub fn ket_minus() -> StateVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::from_reals(&[s, -s]).unwrap()
}

// ---------------------------------------------------------------------------
// Ray

/// A point of projective Hilbert space: a normalized state vector with the
/// global phase fixed by convention.
///
/// The canonical representative makes the first amplitude of largest modulus
/// real and nonnegative, so two vectors differing by a global phase produce
/// identical representatives.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ray {
    rep: StateVector,
}

impl Ray {
    pub fn new(v: &StateVector) -> Result<Self> {
        let v = v.normalize()?;
        let mut pivot = 0;
        let mut best = 0.0;
        for (k, a) in v.amplitudes().iter().enumerate() {
            let m = a.norm();
            if m > best + 1e-15 {
                best = m;
                pivot = k;
            }
        }
        let a = v.amplitudes()[pivot];
        let phase = a / a.norm();
        Ok(Ray {
            rep: v.scale(phase.conj()),
        })
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// The canonical normalized representative.
    pub fn representative(&self) -> &StateVector {
        &self.rep
    }

    /// Ray equality: overlap modulus within `tol` of 1.
    pub fn approx_eq(&self, other: &Ray, tol: f64) -> bool {
        match self.rep.inner(&other.rep) {
            Ok(ip) => (1.0 - ip.norm()).abs() <= tol,
            Err(_) => false,
        }
    }
}

// ---------------------------------------------------------------------------
// Unitary

#[derive(Serialize, Deserialize)]
struct UnitaryRepr {
    dim: usize,
    rows: Vec<Vec<[f64; 2]>>,
}

/// A `dim x dim` unitary matrix, row-major.
///
/// Serialized as `{"dim": d, "rows": [[[re, im], ...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "UnitaryRepr", into = "UnitaryRepr")]
pub struct Unitary {
    dim: usize,
    elems: Vec<Complex64>,
}

impl TryFrom<UnitaryRepr> for Unitary {
    type Error = Error;
    fn try_from(r: UnitaryRepr) -> Result<Self> {
        if r.rows.len() != r.dim || r.rows.iter().any(|row| row.len() != r.dim) {
            return Err(Error::Parse("unitary rows do not match dim".into()));
        }
        let elems = r
            .rows
            .iter()
            .flat_map(|row| row.iter().map(|a| Complex64::new(a[0], a[1])))
            .collect();
        Unitary::new(r.dim, elems)
    }
}

impl From<Unitary> for UnitaryRepr {
    fn from(u: Unitary) -> Self {
        UnitaryRepr {
            dim: u.dim,
            rows: (0..u.dim)
                .map(|i| (0..u.dim).map(|j| [u.elems[i * u.dim + j].re, u.elems[i * u.dim + j].im]).collect())
                .collect(),
        }
    }
}

impl Unitary {
    /// Builds a unitary, checking `U'U = I` entrywise within tolerance.
    pub fn new(dim: usize, elems: Vec<Complex64>) -> Result<Self> {
        assert_eq!(elems.len(), dim * dim);
        let u = Unitary { dim, elems };
        let max_dev = u.unitarity_deviation();
        if max_dev > TOL.unitarity {
            return Err(Error::NotUnitary {
                tol: TOL.unitarity,
                max_dev,
            });
        }
        Ok(u)
    }

    fn unitarity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut max_dev: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    s += self.elems[k * d + i].conj() * self.elems[k * d + j];
                }
                let expected = if i == j { 1.0 } else { 0.0 };
                max_dev = max_dev.max((s - expected).norm());
            }
        }
        max_dev
    }

    pub fn identity(dim: usize) -> Self {
        let mut elems = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            elems[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Unitary { dim, elems }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elems(&self) -> &[Complex64] {
        &self.elems
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.elems[i * self.dim + j]
    }

    /// Applies the matrix to a state; norm is preserved.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if self.dim != psi.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: psi.dim(),
            });
        }
        let d = self.dim;
        let amplitudes = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| self.elems[i * d + j] * psi.amplitudes()[j])
                    .sum()
            })
            .collect();
        Ok(StateVector { dim: d, amplitudes })
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Unitary) -> Result<Unitary> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let d = self.dim;
        let mut elems = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    s += self.elems[i * d + k] * other.elems[k * d + j];
                }
                elems[i * d + j] = s;
            }
        }
        Ok(Unitary { dim: d, elems })
    }

    pub fn dagger(&self) -> Unitary {
        let d = self.dim;
        let mut elems = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                elems[i * d + j] = self.elems[j * d + i].conj();
            }
        }
        Unitary { dim: d, elems }
    }

    /// Kronecker product of two matrices.
    pub fn tensor(&self, other: &Unitary) -> Unitary {
        let da = self.dim;
        let db = other.dim;
        let d = da * db;
        let mut elems = vec![Complex64::new(0.0, 0.0); d * d];
        for ia in 0..da {
            for ja in 0..da {
                for ib in 0..db {
                    for jb in 0..db {
                        elems[(ia * db + ib) * d + (ja * db + jb)] =
                            self.elems[ia * da + ja] * other.elems[ib * db + jb];
                    }
                }
            }
        }
        Unitary { dim: d, elems }
    }
}

/// `R_y(alpha) = exp(-i alpha sigma_y / 2)`.
pub fn rotation_y(alpha: f64) -> Unitary {
    let c = (alpha / 2.0).cos();
    let s = (alpha / 2.0).sin();
    Unitary {
        dim: 2,
        elems: vec![
            Complex64::new(c, 0.0),
            Complex64::new(-s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(c, 0.0),
        ],
    }
}

pub fn sigma_x() -> Unitary {
    Unitary {
        dim: 2,
        elems: vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    }
}

pub fn sigma_y() -> Unitary {
    Unitary {
        dim: 2,
        elems: vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    }
}

pub fn sigma_z() -> Unitary {
    Unitary {
        dim: 2,
        elems: vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ],
    }
}

/// Pauli observable `n . sigma` for a unit axis `n`; Hermitian with
/// eigenvalues +-1 (hence also unitary).
pub fn pauli_axis(n: [f64; 3]) -> Result<Unitary> {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if (norm - 1.0).abs() > TOL.axis_unit {
        return Err(Error::NotUnitAxis { norm });
    }
    Ok(Unitary {
        dim: 2,
        elems: vec![
            Complex64::new(n[2], 0.0),
            Complex64::new(n[0], -n[1]),
            Complex64::new(n[0], n[1]),
            Complex64::new(-n[2], 0.0),
        ],
    })
}

/// `exp(-i theta G)` for an involution `G` (`G^2 = I`), via the closed form
/// `cos(theta) I - i sin(theta) G`.
pub fn exp_involution(g: &Unitary, theta: f64) -> Result<Unitary> {
    let d = g.dim;
    let sq = g.compose(g)?;
    let mut max_dev: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let expected = if i == j { 1.0 } else { 0.0 };
            max_dev = max_dev.max((sq.elems[i * d + j] - expected).norm());
        }
    }
    if max_dev > TOL.involution {
        return Err(Error::NotInvolution { max_dev });
    }
    let c = Complex64::new(theta.cos(), 0.0);
    let ms = Complex64::new(0.0, -theta.sin());
    let mut elems = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            let id = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            elems[i * d + j] = c * id + ms * g.elems[i * d + j];
        }
    }
    Unitary::new(d, elems)
}

// ---------------------------------------------------------------------------
// Bipartite structure and density matrices

/// A tensor factorization `dim = dim_a * dim_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteSplit {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BipartiteSplit {
    pub fn new(dim_a: usize, dim_b: usize) -> Self {
        BipartiteSplit { dim_a, dim_b }
    }

    pub fn total(&self) -> usize {
        self.dim_a * self.dim_b
    }

    /// The standard two-qubit split.
    pub fn two_qubits() -> Self {
        BipartiteSplit { dim_a: 2, dim_b: 2 }
    }
}

/// A Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dim: usize,
    elems: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace, and eigenvalue nonnegativity.
    pub fn new(dim: usize, elems: Vec<Complex64>) -> Result<Self> {
        assert_eq!(elems.len(), dim * dim);
        let dev = hermiticity_deviation(dim, &elems);
        if dev > TOL.hermiticity {
            return Err(Error::NotHermitian {
                tol: TOL.hermiticity,
                max_dev: dev,
            });
        }
        let trace: Complex64 = (0..dim).map(|i| elems[i * dim + i]).sum();
        if (trace.re - 1.0).abs() > TOL.norm || trace.im.abs() > TOL.norm {
            return Err(Error::NotDensityMatrix {
                reason: format!("trace = {trace} is not 1"),
            });
        }
        let rho = DensityMatrix { dim, elems };
        let eigs = rho.eigenvalues()?;
        if eigs.iter().any(|&l| l < -TOL.eigen_negative) {
            return Err(Error::NotDensityMatrix {
                reason: format!("negative eigenvalue {}", eigs.last().unwrap()),
            });
        }
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elems(&self) -> &[Complex64] {
        &self.elems
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.elems[i * self.dim + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.elems[i * self.dim + i].re).sum()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(self.dim, &self.elems)
    }
}

fn hermiticity_deviation(dim: usize, elems: &[Complex64]) -> f64 {
    let mut max_dev: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            max_dev = max_dev.max((elems[i * dim + j] - elems[j * dim + i].conj()).norm());
        }
    }
    max_dev
}

/// Traces out subsystem B: `rho_A[i][i'] = sum_b psi[i,b] conj(psi[i',b])`.
pub fn partial_trace_b(psi: &StateVector, split: BipartiteSplit) -> Result<DensityMatrix> {
    if psi.dim() != split.total() {
        return Err(Error::DimMismatch {
            expected: split.total(),
            got: psi.dim(),
        });
    }
    let da = split.dim_a;
    let db = split.dim_b;
    let amps = psi.amplitudes();
    let mut elems = vec![Complex64::new(0.0, 0.0); da * da];
    for i in 0..da {
        for ip in 0..da {
            let mut s = Complex64::new(0.0, 0.0);
            for b in 0..db {
                s += amps[i * db + b] * amps[ip * db + b].conj();
            }
            elems[i * da + ip] = s;
        }
    }
    DensityMatrix::new(da, elems)
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

/// Eigenvalues of a Hermitian matrix, descending.
///
/// Uses the closed form `(tr +- sqrt(tr^2 - 4 det)) / 2` for 2x2 and cyclic
/// Jacobi rotations for larger dimensions, sweeping until the off-diagonal
/// Frobenius norm drops below tolerance.
pub fn hermitian_eigenvalues(dim: usize, elems: &[Complex64]) -> Result<Vec<f64>> {
    assert_eq!(elems.len(), dim * dim);
    let dev = hermiticity_deviation(dim, elems);
    if dev > TOL.hermiticity {
        return Err(Error::NotHermitian {
            tol: TOL.hermiticity,
            max_dev: dev,
        });
    }
    if dim == 2 {
        let tr = elems[0].re + elems[3].re;
        let det = elems[0].re * elems[3].re - elems[1].norm_sqr();
        let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
        return Ok(vec![(tr + disc) / 2.0, (tr - disc) / 2.0]);
    }
    hermitian_eigenvalues_jacobi(dim, elems)
}

/// Eigenvalues by cyclic Jacobi sweeps regardless of dimension. Kept
/// separate so the 2x2 closed form above can be cross-checked against it.
pub fn hermitian_eigenvalues_jacobi(dim: usize, elems: &[Complex64]) -> Result<Vec<f64>> {
    assert_eq!(elems.len(), dim * dim);
    let dev = hermiticity_deviation(dim, elems);
    if dev > TOL.hermiticity {
        return Err(Error::NotHermitian {
            tol: TOL.hermiticity,
            max_dev: dev,
        });
    }
    let mut a = elems.to_vec();
    let max_sweeps = 100;
    for _ in 0..max_sweeps {
        if offdiag_norm(dim, &a) < TOL.eigen_offdiag {
            let mut eigs: Vec<f64> = (0..dim).map(|i| a[i * dim + i].re).collect();
            eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
            return Ok(eigs);
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                jacobi_rotate(dim, &mut a, p, q);
            }
        }
    }
    if offdiag_norm(dim, &a) < TOL.eigen_offdiag {
        let mut eigs: Vec<f64> = (0..dim).map(|i| a[i * dim + i].re).collect();
        eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
        return Ok(eigs);
    }
    Err(Error::EigenNoConvergence { sweeps: max_sweeps })
}

fn offdiag_norm(dim: usize, a: &[Complex64]) -> f64 {
    let mut s = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                s += a[i * dim + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation zeroing a[p][q]: A <- J' A J with
/// J = I except J[pp]=c, J[pq]=s, J[qp]=-s e^{-i phi}, J[qq]=c e^{-i phi},
/// where a[p][q] = g e^{i phi}.
fn jacobi_rotate(dim: usize, a: &mut [Complex64], p: usize, q: usize) {
    let apq = a[p * dim + q];
    let g = apq.norm();
    if g < 1e-300 {
        return;
    }
    let phase = apq / g; // e^{i phi}
    let app = a[p * dim + p].re;
    let aqq = a[q * dim + q].re;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Column update: A <- A J
    let cc = Complex64::new(c, 0.0);
    let ss = Complex64::new(s, 0.0);
    let ph_conj = phase.conj();
    for k in 0..dim {
        let akp = a[k * dim + p];
        let akq = a[k * dim + q];
        a[k * dim + p] = akp * cc - akq * ph_conj * ss;
        a[k * dim + q] = akp * ss + akq * ph_conj * cc;
    }
    // Row update: A <- J' A
    for k in 0..dim {
        let apk = a[p * dim + k];
        let aqk = a[q * dim + k];
        a[p * dim + k] = cc * apk - phase * ss * aqk;
        a[q * dim + k] = ss * apk + phase * cc * aqk;
    }
}
