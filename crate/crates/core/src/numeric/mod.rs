//! Midpoint–radius ("ball") arithmetic.
//!
//! A [`Ball`] holds a multiple-precision midpoint and a low-precision radius
//! that is always rounded up. Every operation returns a ball that contains the
//! exact image of every point of its inputs, so error placeholders of the form
//! `x + θ·e` with `θ ∈ [-1, 1]` become plain ball widening.

mod ball;
pub(crate) mod complex;
pub(crate) mod mag;

pub use ball::Ball;
pub(crate) use ball::{format_float, format_radius};

use std::sync::atomic::{AtomicU32, Ordering};

use thiserror::Error;

/// Mantissa bits used by constructors that do not take an explicit precision.
pub const DEFAULT_PRECISION: u32 = 128;

/// Smallest working precision accepted by [`set_precision`].
pub const MIN_PRECISION: u32 = 64;

static PRECISION: AtomicU32 = AtomicU32::new(DEFAULT_PRECISION);

/// Current working precision in bits.
pub fn precision() -> u32 {
    PRECISION.load(Ordering::Relaxed)
}

/// Sets the working precision. Intended to be called once at startup.
///
/// Values below [`MIN_PRECISION`] are clamped up.
pub fn set_precision(bits: u32) {
    PRECISION.store(bits.max(MIN_PRECISION), Ordering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("numeric: malformed decimal literal {0:?}")]
    Parse(String),
    #[error("numeric: {op} domain violation for {arg}")]
    Domain { op: &'static str, arg: String },
}
