//! Geometric BB84 toy protocol: foliation-labeled preparation, measurement
//! decoding, sifting, intercept-resend eavesdropping, and QBER statistics.
//!
//! Bit/height orientation is fixed as bit 0 <-> "up" (height 1): `(Z,0)`
//! prepares `|0>` with `E_Z = 1`, `(X,1)` prepares `|->` with `E_X = 0`.
//! All four mappings live in [`prepare`] so the sign convention cannot
//! drift.
//!
//! Randomness is a counter-based deterministic stream keyed by
//! `(seed, party, round)`, so rounds are independent and the run is
//! reproducible regardless of evaluation order.

use serde::{Deserialize, Serialize};

use crate::entanglement::Functional;
use crate::error::{Error, Result};
use crate::geometry::fs_distance;
use crate::hilbert::{ket0, ket1, ket_minus, ket_plus, Ray};

/// Measurement basis / foliation label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    Z,
    X,
}

impl Basis {
    /// The height functional whose gradient points at this basis's
    /// +1 eigenstate.
    pub fn height(&self) -> Functional {
        let axis = match self {
            Basis::Z => [0.0, 0.0, 1.0],
            Basis::X => [1.0, 0.0, 0.0],
        };
        Functional::qubit_height(axis).unwrap()
    }

    /// Eigenstates ordered as (bit 0 / up, bit 1 / down).
    fn eigenstates(&self) -> (Ray, Ray) {
        match self {
            Basis::Z => (Ray::new(&ket0()).unwrap(), Ray::new(&ket1()).unwrap()),
            Basis::X => (Ray::new(&ket_plus()).unwrap(), Ray::new(&ket_minus()).unwrap()),
        }
    }
}

/// Eve's basis choice under intercept-resend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisPolicy {
    FixedZ,
    FixedX,
    Uniform,
}

/// Eavesdropping model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EveStrategy {
    NoEve,
    /// Measure each qubit in a basis chosen by the policy and resend the
    /// post-measurement eigenstate.
    InterceptResend(BasisPolicy),
}

/// One protocol round. Eve's fields are present only when she intercepts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoundRecord {
    pub alice_basis: Basis,
    pub alice_bit: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eve_basis: Option<Basis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eve_bit: Option<u8>,
    pub bob_basis: Basis,
    pub bob_bit: u8,
    pub sifted: bool,
}

/// Aggregated counters for one run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProtocolStats {
    pub n_rounds: u64,
    pub n_sifted: u64,
    pub n_errors: u64,
    pub qber: f64,
    pub sift_rate: f64,
}

// ---------------------------------------------------------------------------
// Deterministic RNG

/// Counter-based deterministic random stream (splitmix64 over a counter).
/// Identical seed and call sequence yield identical outputs.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    counter: u64,
}

const GOLDEN: u64 = 0x9e3779b97f4a7c15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        RngState { seed, counter: 0 }
    }

    /// A substream keyed by `(seed, party, round)`; disjoint for distinct
    /// keys, so per-round evaluation order cannot change results.
    pub fn for_round(seed: u64, party: u64, round: u64) -> Self {
        let sub = mix(seed ^ mix(party.wrapping_mul(GOLDEN) ^ round.wrapping_add(1)));
        RngState {
            seed: sub,
            counter: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix(self.seed.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_bit(&mut self) -> u8 {
        (self.next_u64() & 1) as u8
    }

    pub fn next_basis(&mut self) -> Basis {
        if self.next_bit() == 0 {
            Basis::Z
        } else {
            Basis::X
        }
    }
}

// ---------------------------------------------------------------------------
// Protocol primitives

/// BB84 preparation: `(Z,0) -> |0>`, `(Z,1) -> |1>`, `(X,0) -> |+>`,
/// `(X,1) -> |->`. Bit 0 is the "up" label (height 1) of the basis
/// foliation.
pub fn prepare(basis: Basis, bit: u8) -> Ray {
    let (up, down) = basis.eigenstates();
    if bit == 0 {
        up
    } else {
        down
    }
}

/// Projective measurement in a basis: outcome bit 0 with Born probability
/// `|<e_up|psi>|^2`, returning the post-measurement eigenstate.
pub fn measure(x: &Ray, basis: Basis, rng: &mut RngState) -> Result<(u8, Ray)> {
    if x.dim() != 2 {
        return Err(Error::DimMismatch {
            expected: 2,
            got: x.dim(),
        });
    }
    let (up, down) = basis.eigenstates();
    let p_up = x
        .representative()
        .inner(up.representative())?
        .norm_sqr();
    if rng.next_f64() < p_up {
        Ok((0, up))
    } else {
        Ok((1, down))
    }
}

/// Up/down label of a basis eigenstate under the basis height function.
/// Up corresponds to bit 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeightLabel {
    Up,
    Down,
}

pub fn height_label(x: &Ray, basis: Basis) -> Result<HeightLabel> {
    let (up, down) = basis.eigenstates();
    if fs_distance(x, &up)? < 1e-9 {
        Ok(HeightLabel::Up)
    } else if fs_distance(x, &down)? < 1e-9 {
        Ok(HeightLabel::Down)
    } else {
        Err(Error::NotEigenstate)
    }
}

const PARTY_ALICE: u64 = 0;
const PARTY_EVE: u64 = 1;
const PARTY_BOB: u64 = 2;

/// Runs the full prepare-transmit-measure-sift loop for `n_rounds` rounds.
pub fn run_protocol(
    n_rounds: u64,
    eve: EveStrategy,
    seed: u64,
) -> (ProtocolStats, Vec<RoundRecord>) {
    let mut records = Vec::with_capacity(n_rounds as usize);
    let mut n_sifted = 0u64;
    let mut n_errors = 0u64;
    for round in 0..n_rounds {
        let mut alice_rng = RngState::for_round(seed, PARTY_ALICE, round);
        let alice_basis = alice_rng.next_basis();
        let alice_bit = alice_rng.next_bit();
        let mut state = prepare(alice_basis, alice_bit);

        let (eve_basis, eve_bit) = match eve {
            EveStrategy::NoEve => (None, None),
            EveStrategy::InterceptResend(policy) => {
                let mut eve_rng = RngState::for_round(seed, PARTY_EVE, round);
                let basis = match policy {
                    BasisPolicy::FixedZ => Basis::Z,
                    BasisPolicy::FixedX => Basis::X,
                    BasisPolicy::Uniform => eve_rng.next_basis(),
                };
                let (bit, post) = measure(&state, basis, &mut eve_rng).unwrap();
                state = post;
                (Some(basis), Some(bit))
            }
        };

        let mut bob_rng = RngState::for_round(seed, PARTY_BOB, round);
        let bob_basis = bob_rng.next_basis();
        let (bob_bit, _post) = measure(&state, bob_basis, &mut bob_rng).unwrap();

        let sifted = alice_basis == bob_basis;
        if sifted {
            n_sifted += 1;
            if bob_bit != alice_bit {
                n_errors += 1;
            }
        }
        records.push(RoundRecord {
            alice_basis,
            alice_bit,
            eve_basis,
            eve_bit,
            bob_basis,
            bob_bit,
            sifted,
        });
    }
    let stats = ProtocolStats {
        n_rounds,
        n_sifted,
        n_errors,
        qber: if n_sifted > 0 {
            n_errors as f64 / n_sifted as f64
        } else {
            0.0
        },
        sift_rate: if n_rounds > 0 {
            n_sifted as f64 / n_rounds as f64
        } else {
            0.0
        },
    };
    (stats, records)
}

/// Exact expected sifted-key error rate by exhaustive enumeration over all
/// discrete choices with exact dyadic Born weights.
pub fn theoretical_qber(eve: EveStrategy) -> f64 {
    let bases = [Basis::Z, Basis::X];
    let bits = [0u8, 1u8];
    // |<e_b'(basis2) | e_b(basis1)>|^2 is 0/1 for equal bases, 1/2 otherwise
    let overlap = |b1: Basis, bit1: u8, b2: Basis, bit2: u8| -> f64 {
        if b1 == b2 {
            if bit1 == bit2 {
                1.0
            } else {
                0.0
            }
        } else {
            0.5
        }
    };
    let mut p_sift_err = 0.0;
    let mut p_sift = 0.0;
    for &ab in &bases {
        for &abit in &bits {
            let p_prep = 0.25; // uniform basis and bit
            let eve_choices: Vec<(Option<Basis>, f64)> = match eve {
                EveStrategy::NoEve => vec![(None, 1.0)],
                EveStrategy::InterceptResend(BasisPolicy::FixedZ) => vec![(Some(Basis::Z), 1.0)],
                EveStrategy::InterceptResend(BasisPolicy::FixedX) => vec![(Some(Basis::X), 1.0)],
                EveStrategy::InterceptResend(BasisPolicy::Uniform) => {
                    vec![(Some(Basis::Z), 0.5), (Some(Basis::X), 0.5)]
                }
            };
            for (eve_basis, p_eve) in eve_choices {
                // enumerate the state reaching Bob as (basis, bit, weight)
                let reaching: Vec<(Basis, u8, f64)> = match eve_basis {
                    None => vec![(ab, abit, 1.0)],
                    Some(eb) => bits
                        .iter()
                        .map(|&ebit| (eb, ebit, overlap(ab, abit, eb, ebit)))
                        .filter(|&(_, _, w)| w > 0.0)
                        .collect(),
                };
                for (sb, sbit, p_state) in reaching {
                    for &bb in &bases {
                        let p_bob_basis = 0.5;
                        if bb != ab {
                            continue; // not sifted
                        }
                        for &bbit in &bits {
                            let p_out = overlap(sb, sbit, bb, bbit);
                            if p_out == 0.0 {
                                continue;
                            }
                            let p = p_prep * p_eve * p_state * p_bob_basis * p_out;
                            p_sift += p;
                            if bbit != abit {
                                p_sift_err += p;
                            }
                        }
                    }
                }
            }
        }
    }
    if p_sift == 0.0 {
        0.0
    } else {
        p_sift_err / p_sift
    }
}
