//! C ABI for the geoqkd library.
//!
//! Conventions:
//! - Trajectories and keys are opaque handles created and destroyed here;
//!   never free them with `free()`.
//! - Every fallible function returns a [`GqStatus`]; on any status other
//!   than `GQ_STATUS_OK` a human-readable message is available from
//!   [`gq_last_error`] until the next failing call on the same thread.
//! - Strings returned through `char **` out-params are owned by the caller
//!   and must be released with [`gq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use geoqkd::bb84::{run_protocol, BasisPolicy, EveStrategy};
use geoqkd::codes::{decode_index, decode_profile, encode, EncoderConfig, Trajectory};
use geoqkd::entanglement::GeoKey;
use geoqkd::geometry::{ClassifierThresholds, DEFAULT_H};
use geoqkd::Error;

/// Status codes returned by every fallible entry point.
#[allow(non_camel_case_types)]
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GqStatus {
    /// The call succeeded.
    GQ_STATUS_OK = 0,
    /// A required pointer argument was null.
    GQ_STATUS_NULL_POINTER = 1,
    /// An argument failed validation (window bounds, thresholds, modes).
    GQ_STATUS_INVALID_ARGUMENT = 2,
    /// A JSON payload could not be parsed.
    GQ_STATUS_PARSE_ERROR = 3,
    /// The keyed decoder produced only erasures.
    GQ_STATUS_UNDECODABLE = 4,
    /// An output buffer was too small; required size is in the length
    /// out-param.
    GQ_STATUS_BUFFER_TOO_SMALL = 5,
    /// The built-in invariant suite reported a failure.
    GQ_STATUS_SELFCHECK_FAILED = 6,
}

use GqStatus::*;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: GqStatus, msg: impl std::fmt::Display) -> GqStatus {
    set_error(msg.to_string());
    status
}

fn status_for(err: &Error) -> GqStatus {
    match err {
        Error::Undecodable { .. } => GQ_STATUS_UNDECODABLE,
        Error::Parse(_) => GQ_STATUS_PARSE_ERROR,
        _ => GQ_STATUS_INVALID_ARGUMENT,
    }
}

/// Message describing the most recent failure on this thread, or null if
/// none has occurred. The pointer stays valid until the next failing call
/// on the same thread.
#[no_mangle]
pub extern "C" fn gq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null(), |c| c.as_ptr())
    })
}

/// Releases a string returned through a `char **` out-param.
///
/// # Safety
/// `s` must be a pointer previously returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn gq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// Encoder configuration

/// Public encoder parameters; obtain defaults from
/// [`gq_encoder_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GqEncoderConfig {
    /// Angular step (radians), must be positive.
    pub delta: f64,
    /// Public start index.
    pub j0: i64,
    /// Inclusive lower window bound.
    pub j_min: i64,
    /// Inclusive upper window bound.
    pub j_max: i64,
}

impl From<GqEncoderConfig> for EncoderConfig {
    fn from(c: GqEncoderConfig) -> Self {
        EncoderConfig {
            delta: c.delta,
            j0: c.j0,
            j_min: c.j_min,
            j_max: c.j_max,
        }
    }
}

/// The default encoder window (delta = pi/16, walk on [1, 7] starting
/// at 4).
#[no_mangle]
pub extern "C" fn gq_encoder_config_default() -> GqEncoderConfig {
    let d = EncoderConfig::default();
    GqEncoderConfig {
        delta: d.delta,
        j0: d.j0,
        j_min: d.j_min,
        j_max: d.j_max,
    }
}

// ---------------------------------------------------------------------------
// Opaque handles

/// Opaque trajectory handle.
pub struct GqTrajectory(Trajectory);

/// Opaque secret-key handle.
pub struct GqKey(GeoKey);

/// Releases a trajectory handle (null is a no-op).
///
/// # Safety
/// `t` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gq_trajectory_free(t: *mut GqTrajectory) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Releases a key handle (null is a no-op).
///
/// # Safety
/// `k` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gq_key_free(k: *mut GqKey) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

// ---------------------------------------------------------------------------
// Keys

/// Creates the keyed functional with twist angle `theta`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gq_key_twisted_global(
    theta: f64,
    out: *mut *mut GqKey,
) -> GqStatus {
    if out.is_null() {
        return fail(GQ_STATUS_NULL_POINTER, "out pointer is null");
    }
    if !theta.is_finite() {
        return fail(GQ_STATUS_INVALID_ARGUMENT, "theta must be finite");
    }
    *out = Box::into_raw(Box::new(GqKey(GeoKey::twisted_global(theta))));
    GQ_STATUS_OK
}

/// Creates the unkeyed (trivial-leaf) functional.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gq_key_standard_vn(out: *mut *mut GqKey) -> GqStatus {
    if out.is_null() {
        return fail(GQ_STATUS_NULL_POINTER, "out pointer is null");
    }
    *out = Box::into_raw(Box::new(GqKey(GeoKey::standard_vn())));
    GQ_STATUS_OK
}

/// Parses a key from its JSON wire form.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gq_key_from_json(
    json: *const c_char,
    out: *mut *mut GqKey,
) -> GqStatus {
    if json.is_null() || out.is_null() {
        return fail(GQ_STATUS_NULL_POINTER, "json or out pointer is null");
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(e) => return fail(GQ_STATUS_PARSE_ERROR, e),
    };
    match serde_json::from_str::<GeoKey>(text) {
        Ok(key) => {
            // materialize once so malformed keys are rejected here
            if let Err(e) = key.functional() {
                return fail(status_for(&e), e);
            }
            *out = Box::into_raw(Box::new(GqKey(key)));
            GQ_STATUS_OK
        }
        Err(e) => fail(GQ_STATUS_PARSE_ERROR, e),
    }
}

// ---------------------------------------------------------------------------
// Trajectories

/// Encodes `len` bits (each 0 or 1) into a trajectory.
///
/// # Safety
/// `bits` must point to `len` readable bytes and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gq_encode(
    bits: *const u8,
    len: usize,
    config: GqEncoderConfig,
    out: *mut *mut GqTrajectory,
) -> GqStatus {
    if out.is_null() || (bits.is_null() && len > 0) {
        return fail(GQ_STATUS_NULL_POINTER, "bits or out pointer is null");
    }
    let slice = if len == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(bits, len)
    };
    if let Some(b) = slice.iter().find(|&&b| b > 1) {
        return fail(GQ_STATUS_INVALID_ARGUMENT, format!("bit value {b} is not 0 or 1"));
    }
    match encode(slice, &config.into()) {
        Ok(traj) => {
            *out = Box::into_raw(Box::new(GqTrajectory(traj)));
            GQ_STATUS_OK
        }
        Err(e) => fail(status_for(&e), e),
    }
}

/// Parses a trajectory from its JSON wire form.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gq_trajectory_from_json(
    json: *const c_char,
    out: *mut *mut GqTrajectory,
) -> GqStatus {
    if json.is_null() || out.is_null() {
        return fail(GQ_STATUS_NULL_POINTER, "json or out pointer is null");
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(e) => return fail(GQ_STATUS_PARSE_ERROR, e),
    };
    match serde_json::from_str::<Trajectory>(text)
        .map_err(Error::from)
        .and_then(|t| Trajectory::new(t.states, t.moves))
    {
        Ok(traj) => {
            *out = Box::into_raw(Box::new(GqTrajectory(traj)));
            GQ_STATUS_OK
        }
        Err(e) => fail(status_for(&e), e),
    }
}

/// Serializes a trajectory to JSON; release the string with
/// [`gq_string_free`].
///
/// # Safety
/// `t` must be a live trajectory handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gq_trajectory_to_json(
    t: *const GqTrajectory,
    out: *mut *mut c_char,
) -> GqStatus {
    if t.is_null() || out.is_null() {
        return fail(GQ_STATUS_NULL_POINTER, "trajectory or out pointer is null");
    }
    match serde_json::to_string(&(*t).0) {
        Ok(text) => match CString::new(text) {
            Ok(c) => {
                *out = c.into_raw();
                GQ_STATUS_OK
            }
            Err(e) => fail(GQ_STATUS_PARSE_ERROR, e),
        },
        Err(e) => fail(GQ_STATUS_PARSE_ERROR, e),
    }
}

/// Number of steps (states minus one) in a trajectory; zero for a null
/// handle.
///
/// # Safety
/// `t` must be a live trajectory handle or null.
#[no_mangle]
pub unsafe extern "C" fn gq_trajectory_steps(t: *const GqTrajectory) -> usize {
    if t.is_null() {
        0
    } else {
        (*t).0.steps()
    }
}

// ---------------------------------------------------------------------------
// Decoders

/// Public index decoder. Writes up to `cap` bits into `out_bits` and the
/// message length into `out_len`. If `cap` is too small, returns
/// `GQ_STATUS_BUFFER_TOO_SMALL` with the required size in `out_len`.
///
/// # Safety
/// `t` must be a live trajectory handle; `out_bits` must hold `cap` bytes;
/// `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gq_decode_index(
    t: *const GqTrajectory,
    config: GqEncoderConfig,
    out_bits: *mut u8,
    cap: usize,
    out_len: *mut usize,
) -> GqStatus {
    if t.is_null() || out_len.is_null() || (out_bits.is_null() && cap > 0) {
        return fail(GQ_STATUS_NULL_POINTER, "trajectory or output pointer is null");
    }
    let bits = match decode_index(&(*t).0, &config.into()) {
        Ok(b) => b,
        Err(e) => return fail(status_for(&e), e),
    };
    *out_len = bits.len();
    if bits.len() > cap {
        return fail(
            GQ_STATUS_BUFFER_TOO_SMALL,
            format!("need {} bytes, have {cap}", bits.len()),
        );
    }
    ptr::copy_nonoverlapping(bits.as_ptr(), out_bits, bits.len());
    GQ_STATUS_OK
}

/// Keyed profile decoder. Each output symbol is 0, 1, or -1 for an
/// erasure. Thresholds follow the classifier defaults when
/// `eps_tan`/`eps_norm` are 0.
///
/// # Safety
/// `t` and `key` must be live handles; `out_symbols` must hold `cap`
/// bytes; `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gq_decode_profile(
    t: *const GqTrajectory,
    key: *const GqKey,
    eps_tan: f64,
    eps_norm: f64,
    out_symbols: *mut i8,
    cap: usize,
    out_len: *mut usize,
) -> GqStatus {
    if t.is_null() || key.is_null() || out_len.is_null() || (out_symbols.is_null() && cap > 0) {
        return fail(GQ_STATUS_NULL_POINTER, "trajectory, key, or output pointer is null");
    }
    let defaults = ClassifierThresholds::default();
    let th = match ClassifierThresholds::new(
        if eps_tan == 0.0 { defaults.eps_tan } else { eps_tan },
        if eps_norm == 0.0 { defaults.eps_norm } else { eps_norm },
    ) {
        Ok(th) => th,
        Err(e) => return fail(status_for(&e), e),
    };
    let symbols = match decode_profile(&(*t).0, &(*key).0, &th) {
        Ok(s) => s,
        Err(e) => return fail(status_for(&e), e),
    };
    *out_len = symbols.len();
    if symbols.len() > cap {
        return fail(
            GQ_STATUS_BUFFER_TOO_SMALL,
            format!("need {} bytes, have {cap}", symbols.len()),
        );
    }
    for (k, s) in symbols.iter().enumerate() {
        *out_symbols.add(k) = match s {
            Some(b) => *b as i8,
            None => -1,
        };
    }
    GQ_STATUS_OK
}

// ---------------------------------------------------------------------------
// BB84

/// Eavesdropper selection for [`gq_bb84_run`].
#[allow(non_camel_case_types)]
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GqEveMode {
    /// No eavesdropper on the channel.
    GQ_EVE_NONE = 0,
    /// Intercept-resend, always measuring in the computational basis.
    GQ_EVE_INTERCEPT_Z = 1,
    /// Intercept-resend, always measuring in the conjugate basis.
    GQ_EVE_INTERCEPT_X = 2,
    /// Intercept-resend with a uniformly random basis per round.
    GQ_EVE_INTERCEPT_RANDOM = 3,
}

/// Aggregated counters from one protocol run.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GqBb84Stats {
    pub n_rounds: u64,
    pub n_sifted: u64,
    pub n_errors: u64,
    pub qber: f64,
    pub sift_rate: f64,
}

/// Runs the BB84 simulation; identical seeds yield identical statistics.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gq_bb84_run(
    rounds: u64,
    eve: GqEveMode,
    seed: u64,
    out: *mut GqBb84Stats,
) -> GqStatus {
    if out.is_null() {
        return fail(GQ_STATUS_NULL_POINTER, "out pointer is null");
    }
    if rounds == 0 {
        return fail(GQ_STATUS_INVALID_ARGUMENT, "rounds must be at least 1");
    }
    let strategy = match eve {
        GqEveMode::GQ_EVE_NONE => EveStrategy::NoEve,
        GqEveMode::GQ_EVE_INTERCEPT_Z => EveStrategy::InterceptResend(BasisPolicy::FixedZ),
        GqEveMode::GQ_EVE_INTERCEPT_X => EveStrategy::InterceptResend(BasisPolicy::FixedX),
        GqEveMode::GQ_EVE_INTERCEPT_RANDOM => {
            EveStrategy::InterceptResend(BasisPolicy::Uniform)
        }
    };
    let (stats, _) = run_protocol(rounds, strategy, seed);
    *out = GqBb84Stats {
        n_rounds: stats.n_rounds,
        n_sifted: stats.n_sifted,
        n_errors: stats.n_errors,
        qber: stats.qber,
        sift_rate: stats.sift_rate,
    };
    GQ_STATUS_OK
}

// ---------------------------------------------------------------------------
// Selfcheck

/// Runs the built-in invariant suite with the default finite-difference
/// step.
#[no_mangle]
pub extern "C" fn gq_selfcheck(seed: u64) -> GqStatus {
    match geoqkd::selfcheck::run(seed, DEFAULT_H) {
        Ok(report) if report.passed => GQ_STATUS_OK,
        Ok(report) => {
            let failed: Vec<String> = report
                .groups
                .iter()
                .filter(|g| !g.passed)
                .map(|g| format!("{}: {}", g.name, g.detail))
                .collect();
            fail(GQ_STATUS_SELFCHECK_FAILED, failed.join("; "))
        }
        Err(e) => fail(status_for(&e), e),
    }
}
