//! Geometric entanglement codes: the rotation family of two-qubit states,
//! elementary moves, bit-string encoding into trajectories, keyed decoding,
//! entanglement profiles, and the keyless eavesdropper view.
//!
//! Two decoders are provided. The index decoder reconstructs the walk from
//! the states alone and needs only public data. The profile decoder reads
//! the up/down pattern of the keyed functional and is the one that actually
//! requires the secret; with the wrong key (standard entropy) every step of
//! a family trajectory is tangential and the message is unreadable.

use serde::{Deserialize, Serialize};

use crate::entanglement::{Functional, GeoKey};
use crate::error::{Error, Result};
use crate::geometry::{classify_step, fs_distance, ClassifierThresholds, MoveLabel};
use crate::hilbert::{rotation_y, Ray, StateVector, Unitary};

/// FS tolerance for matching a state to a family state. Family states are
/// delta/2 apart, far above this for any sane delta.
pub const FAMILY_MATCH_TOL: f64 = 1e-6;

/// Public encoder parameters: angular step, start index, allowed window.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EncoderConfig {
    pub delta: f64,
    pub j0: i64,
    pub j_min: i64,
    pub j_max: i64,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        EncoderConfig {
            delta: std::f64::consts::PI / 16.0,
            j0: 4,
            j_min: 1,
            j_max: 7,
        }
    }
}

impl EncoderConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::InvalidEncoderConfig {
                reason: format!("delta must be positive, got {}", self.delta),
            });
        }
        if !(self.j_min <= self.j0 && self.j0 <= self.j_max) {
            return Err(Error::InvalidEncoderConfig {
                reason: format!(
                    "require j_min <= j0 <= j_max, got {} <= {} <= {}",
                    self.j_min, self.j0, self.j_max
                ),
            });
        }
        // keep the window inside the monotone region of the default key family
        if self.j_max as f64 * self.delta > std::f64::consts::FRAC_PI_2 + 1e-12 {
            return Err(Error::InvalidEncoderConfig {
                reason: format!(
                    "window exceeds the monotone region: j_max * delta = {} > pi/2",
                    self.j_max as f64 * self.delta
                ),
            });
        }
        Ok(())
    }
}

/// A discrete trajectory of rays, optionally annotated with the move tags
/// that produced it.
///
/// Serialized as `{"dim": d, "states": [...], "moves": ["U", "D", ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trajectory {
    pub dim: usize,
    pub states: Vec<Ray>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moves: Option<Vec<String>>,
}

impl Trajectory {
    pub fn new(states: Vec<Ray>, moves: Option<Vec<String>>) -> Result<Self> {
        let dim = states.first().map(|r| r.dim()).unwrap_or(4);
        if let Some(bad) = states.iter().find(|r| r.dim() != dim) {
            return Err(Error::DimMismatch {
                expected: dim,
                got: bad.dim(),
            });
        }
        if let Some(m) = &moves {
            if states.len() != m.len() + 1 {
                return Err(Error::Parse(format!(
                    "moves length {} does not match {} states",
                    m.len(),
                    states.len()
                )));
            }
        }
        Ok(Trajectory { dim, states, moves })
    }

    /// Number of steps (states minus one).
    pub fn steps(&self) -> usize {
        self.states.len().saturating_sub(1)
    }
}

/// The rotation family `psi_j = cos(j d / 2)|00> + sin(j d / 2)|10>`.
pub fn family_state(j: i64, delta: f64) -> Ray {
    let half = j as f64 * delta / 2.0;
    let v = StateVector::from_reals(&[half.cos(), 0.0, half.sin(), 0.0]).unwrap();
    Ray::new(&v).unwrap()
}

/// The three elementary moves: rotate the first qubit up or down by delta,
/// or do nothing.
#[derive(Debug, Clone)]
pub struct ElementaryMoves {
    pub u_plus: Unitary,
    pub u_minus: Unitary,
    pub t: Unitary,
}

pub fn elementary_moves(delta: f64) -> ElementaryMoves {
    let id = Unitary::identity(2);
    ElementaryMoves {
        u_plus: rotation_y(delta).tensor(&id),
        u_minus: rotation_y(-delta).tensor(&id),
        t: Unitary::identity(4),
    }
}

/// Encodes a bit string as an index walk: bit 1 steps up, bit 0 steps down.
/// The walk must stay inside the configured window; violations fail fast
/// with the offending step.
pub fn encode(bits: &[u8], cfg: &EncoderConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let mut j = cfg.j0;
    let mut states = vec![family_state(j, cfg.delta)];
    let mut moves = Vec::with_capacity(bits.len());
    for (k, &b) in bits.iter().enumerate() {
        let next = if b != 0 { j + 1 } else { j - 1 };
        if next < cfg.j_min || next > cfg.j_max {
            return Err(Error::EncodeRange {
                step: k,
                index: next,
                j_min: cfg.j_min,
                j_max: cfg.j_max,
            });
        }
        j = next;
        states.push(family_state(j, cfg.delta));
        moves.push(if b != 0 { "U".to_string() } else { "D".to_string() });
    }
    Trajectory::new(states, Some(moves))
}

fn nearest_family_index(state: &Ray, cfg: &EncoderConfig, position: usize) -> Result<i64> {
    let mut best: Option<(i64, f64)> = None;
    for j in cfg.j_min..=cfg.j_max {
        let d = fs_distance(state, &family_state(j, cfg.delta))
            .map_err(|_| Error::DecodeMismatch { position })?;
        if best.map_or(true, |(_, bd)| d < bd) {
            best = Some((j, d));
        }
    }
    match best {
        Some((j, d)) if d < FAMILY_MATCH_TOL => Ok(j),
        _ => Err(Error::DecodeMismatch { position }),
    }
}

/// Index decoder: match each state to the nearest family state and read the
/// bits off the sign of the index differences. Needs no secret.
pub fn decode_index(traj: &Trajectory, cfg: &EncoderConfig) -> Result<Vec<u8>> {
    cfg.validate()?;
    let indices: Vec<i64> = traj
        .states
        .iter()
        .enumerate()
        .map(|(k, s)| nearest_family_index(s, cfg, k))
        .collect::<Result<_>>()?;
    Ok(indices
        .windows(2)
        .map(|w| if w[1] > w[0] { 1 } else { 0 })
        .collect())
}

/// Profile decoder: classify each step with the keyed functional and map
/// U to 1 and D to 0. Tangential and mixed steps become erasures (`None`).
/// A trajectory whose steps are all erasures is undecodable.
pub fn decode_profile(
    traj: &Trajectory,
    key: &GeoKey,
    th: &ClassifierThresholds,
) -> Result<Vec<Option<u8>>> {
    let e = key.functional()?;
    let mut out = Vec::with_capacity(traj.steps());
    let mut erasures = 0usize;
    for w in traj.states.windows(2) {
        let (label, _) = classify_step(&w[0], &w[1], &e, th)?;
        out.push(match label {
            MoveLabel::U => Some(1),
            MoveLabel::D => Some(0),
            MoveLabel::T | MoveLabel::M => {
                erasures += 1;
                None
            }
        });
    }
    let steps = traj.steps();
    if steps > 0 && erasures == steps {
        return Err(Error::Undecodable { erasures, steps });
    }
    Ok(out)
}

/// The functional's value at every state of the trajectory.
pub fn profile(traj: &Trajectory, e: &Functional) -> Result<Vec<f64>> {
    traj.states.iter().map(|s| e.evaluate(s)).collect()
}

/// What an observer without the key sees: the standard-entropy profile and
/// the move string under default thresholds.
#[derive(Debug, Clone, Serialize)]
pub struct EavesdropperReport {
    pub profile: Vec<f64>,
    pub moves: String,
}

pub fn eavesdropper_view(traj: &Trajectory) -> Result<EavesdropperReport> {
    let e = GeoKey::standard_vn().functional()?;
    let values = profile(traj, &e)?;
    let th = ClassifierThresholds::default();
    let mut moves = String::with_capacity(traj.steps());
    for w in traj.states.windows(2) {
        let (label, _) = classify_step(&w[0], &w[1], &e, &th)?;
        moves.push_str(&label.to_string());
    }
    Ok(EavesdropperReport {
        profile: values,
        moves,
    })
}
