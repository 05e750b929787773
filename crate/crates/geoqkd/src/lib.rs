//! Geometric entanglement codes on projective Hilbert space.
//!
//! The crate is organized around five layers:
//!
//! - [`hilbert`]: finite-dimensional state vectors, rays, unitaries, partial
//!   traces and a small Hermitian eigensolver;
//! - [`geometry`]: Fubini-Study distance, numerical FS gradients, the
//!   normal/tangential split relative to a functional's level sets, and the
//!   T/U/D step classifier;
//! - [`entanglement`]: the keyed family of scalar functionals (von Neumann
//!   entropy, twisted variants, single-qubit height functions);
//! - [`codes`]: the two-qubit state family, elementary moves, bit-string
//!   encoding into trajectories and keyed decoding;
//! - [`bb84`]: a single-qubit BB84 simulator with intercept-resend
//!   eavesdropping and QBER statistics.

pub mod bb84;
pub mod codes;
pub mod entanglement;
pub mod error;
pub mod geometry;
pub mod hilbert;
pub mod selfcheck;

pub use error::{Error, Result};
