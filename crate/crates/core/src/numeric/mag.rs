//! Upward-rounded `f64` helpers for ball radii.
//!
//! Hardware arithmetic rounds to nearest, so one `next_up` after each
//! operation yields an upper bound of the exact result.

use rug::float::Round;
use rug::Float;

#[inline]
pub(crate) fn up(x: f64) -> f64 {
    if x == 0.0 || x.is_nan() {
        x
    } else {
        x.next_up()
    }
}

#[inline]
pub(crate) fn down(x: f64) -> f64 {
    if x == 0.0 || x.is_nan() {
        x
    } else {
        x.next_down()
    }
}

#[inline]
pub(crate) fn add(a: f64, b: f64) -> f64 {
    up(a + b)
}

#[inline]
pub(crate) fn mul(a: f64, b: f64) -> f64 {
    up(a * b)
}

#[inline]
pub(crate) fn div(a: f64, b: f64) -> f64 {
    up(a / b)
}

/// Upper bound of `|x|` as an `f64`.
pub(crate) fn abs_up(x: &Float) -> f64 {
    if x.is_sign_negative() {
        -x.to_f64_round(Round::Down)
    } else {
        x.to_f64_round(Round::Up)
    }
}

/// Lower bound of `|x|` as an `f64`.
pub(crate) fn abs_down(x: &Float) -> f64 {
    if x.is_sign_negative() {
        -x.to_f64_round(Round::Up)
    } else {
        x.to_f64_round(Round::Down)
    }
}

/// `2^e` as an `f64`, saturating to the smallest subnormal or infinity.
pub(crate) fn pow2(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        f64::from_bits(1)
    } else {
        2f64.powi(e as i32)
    }
}

/// One unit in the last place of `x` at its own precision.
pub(crate) fn ulp(x: &Float) -> f64 {
    match x.get_exp() {
        Some(e) => pow2(i64::from(e) - i64::from(x.prec())),
        None => {
            if x.is_zero() {
                0.0
            } else {
                f64::INFINITY
            }
        }
    }
}
