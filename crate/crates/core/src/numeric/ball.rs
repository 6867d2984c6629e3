use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::{Assign, Float};

use super::mag;
use super::{precision, NumericError};

/// A real number enclosure `[mid - rad, mid + rad]`.
///
/// `mid` carries its own MPFR precision; binary operations run at the larger
/// of the two input precisions. `rad` is an `f64` that is only ever rounded
/// up, so it may overestimate but never underestimate the true error.
#[derive(Clone, Debug)]
pub struct Ball {
    mid: Float,
    rad: f64,
}

fn check_rad(rad: f64) -> f64 {
    if rad.is_nan() {
        f64::INFINITY
    } else {
        assert!(rad >= 0.0, "ball radius must be non-negative");
        rad
    }
}

impl Ball {
    pub fn new(mid: Float, rad: f64) -> Ball {
        Ball {
            mid,
            rad: check_rad(rad),
        }
    }

    pub fn exact(mid: Float) -> Ball {
        Ball { mid, rad: 0.0 }
    }

    pub fn zero() -> Ball {
        Ball::from_i64(0)
    }

    pub fn one() -> Ball {
        Ball::from_i64(1)
    }

    /// Exact ball at the working precision.
    pub fn from_f64(x: f64) -> Ball {
        Ball::from_f64_prec(x, precision())
    }

    pub fn from_f64_prec(x: f64, prec: u32) -> Ball {
        assert!(x.is_finite(), "ball midpoint must be finite");
        Ball::exact(Float::with_val(prec.max(53), x))
    }

    pub fn from_i64(x: i64) -> Ball {
        Ball::from_i64_prec(x, precision())
    }

    pub fn from_i64_prec(x: i64, prec: u32) -> Ball {
        let (mid, ord) = Float::with_val_round(prec, x, Round::Nearest);
        Ball::rounded(mid, ord)
    }

    /// Enclosure of the rational `num / den`.
    pub fn from_ratio(num: i64, den: i64) -> Ball {
        Ball::from_ratio_prec(num, den, precision())
    }

    pub fn from_ratio_prec(num: i64, den: i64, prec: u32) -> Ball {
        assert!(den != 0, "zero denominator");
        let q = rug::Rational::from((num, den));
        let (mid, ord) = Float::with_val_round(prec, &q, Round::Nearest);
        Ball::rounded(mid, ord)
    }

    pub fn from_rational(q: &rug::Rational, prec: u32) -> Ball {
        let (mid, ord) = Float::with_val_round(prec, q, Round::Nearest);
        Ball::rounded(mid, ord)
    }

    fn rounded(mid: Float, ord: Ordering) -> Ball {
        let rad = if ord == Ordering::Equal {
            0.0
        } else {
            mag::ulp(&mid)
        };
        Ball { mid, rad }
    }

    /// Parses a signed decimal literal such as `-0.0171594043070981495` or
    /// `1.5e-3`. The result contains the exact rational value of the text.
    pub fn from_decimal(s: &str) -> Result<Ball, NumericError> {
        Ball::from_decimal_prec(s, precision())
    }

    pub fn from_decimal_prec(s: &str, prec: u32) -> Result<Ball, NumericError> {
        let text = s.trim();
        if !is_decimal_literal(text) {
            return Err(NumericError::Parse(s.to_string()));
        }
        let parsed = Float::parse(text).map_err(|_| NumericError::Parse(s.to_string()))?;
        let (mid, ord) = Float::with_val_round(prec, parsed, Round::Nearest);
        Ok(Ball::rounded(mid, ord))
    }

    /// Smallest ball (up to rounding) containing `[lo, hi]`.
    pub fn from_interval(lo: &Float, hi: &Float) -> Ball {
        let prec = lo.prec().max(hi.prec());
        let mid = Float::with_val(prec, lo + hi) / 2u32;
        let r_hi = Float::with_val_round(prec + 2, hi - &mid, Round::Up).0;
        let r_lo = Float::with_val_round(prec + 2, &mid - lo, Round::Up).0;
        let rad = mag::abs_up(&r_hi).max(mag::abs_up(&r_lo));
        Ball::new(mid, mag::up(rad))
    }

    pub fn pi() -> Ball {
        Ball::pi_prec(precision())
    }

    pub fn pi_prec(prec: u32) -> Ball {
        let mid = Float::with_val(prec, Constant::Pi);
        let rad = mag::ulp(&mid);
        Ball { mid, rad }
    }

    pub fn two_pi() -> Ball {
        Ball::pi() * Ball::from_i64(2)
    }

    /// Euler's constant `C = 0.5772…`.
    pub fn euler_gamma() -> Ball {
        Ball::euler_gamma_prec(precision())
    }

    pub fn euler_gamma_prec(prec: u32) -> Ball {
        let mid = Float::with_val(prec, Constant::Euler);
        let rad = mag::ulp(&mid);
        Ball { mid, rad }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> f64 {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Same value re-rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Ball {
        let (mid, ord) = Float::with_val_round(prec, &self.mid, Round::Nearest);
        let extra = if ord == Ordering::Equal {
            0.0
        } else {
            mag::ulp(&mid)
        };
        Ball::new(mid, mag::add(self.rad, extra))
    }

    /// Ball with the same midpoint and the radius replaced by zero.
    pub fn midpoint(&self) -> Ball {
        Ball::exact(self.mid.clone())
    }

    /// Symmetric widening: the result contains `self + θ·err` for all `θ ∈ [-1, 1]`.
    pub fn widen(&self, err: f64) -> Ball {
        Ball::new(self.mid.clone(), mag::add(self.rad, check_rad(err)))
    }

    pub fn lower(&self) -> Float {
        Float::with_val_round(self.prec(), &self.mid - self.rad, Round::Down).0
    }

    pub fn upper(&self) -> Float {
        Float::with_val_round(self.prec(), &self.mid + self.rad, Round::Up).0
    }

    pub fn lower_f64(&self) -> f64 {
        mag::down(self.mid.to_f64_round(Round::Down) - self.rad)
    }

    pub fn upper_f64(&self) -> f64 {
        mag::up(self.mid.to_f64_round(Round::Up) + self.rad)
    }

    /// Upper bound of `|x|` over the ball.
    pub fn abs_upper_f64(&self) -> f64 {
        mag::add(mag::abs_up(&self.mid), self.rad)
    }

    /// Lower bound of `|x|` over the ball (zero if the ball touches zero).
    pub fn abs_lower_f64(&self) -> f64 {
        let m = mag::abs_down(&self.mid);
        let v = mag::down(m - self.rad);
        if v > 0.0 {
            v
        } else {
            0.0
        }
    }

    pub fn is_exact(&self) -> bool {
        self.rad == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    /// True iff `|v - mid| <= rad`.
    pub fn contains(&self, v: &Float) -> bool {
        if !self.is_finite() {
            return self.rad.is_infinite();
        }
        let prec = exact_sub_prec(&self.mid, v);
        let (d, _) = Float::with_val_round(prec, v - &self.mid, Round::Up);
        let d = d.abs();
        let (r, _) = Float::with_val_round(53, self.rad, Round::Down);
        d <= r
    }

    pub fn contains_f64(&self, v: f64) -> bool {
        self.contains(&Float::with_val(53, v))
    }

    /// True iff every point of `other` lies in `self`.
    pub fn contains_ball(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    /// True iff the two enclosures share at least one point.
    pub fn overlaps(&self, other: &Ball) -> bool {
        !(self.upper() < other.lower() || other.upper() < self.lower())
    }

    pub fn is_positive(&self) -> bool {
        self.lower() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.upper() < 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lower() >= 0
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    /// `Some(+1)` or `Some(-1)` when the sign is certain, `None` otherwise.
    pub fn sign(&self) -> Option<i32> {
        if self.is_positive() {
            Some(1)
        } else if self.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    /// Intersection of two enclosures, if non-empty.
    pub fn intersect(&self, other: &Ball) -> Option<Ball> {
        if !self.overlaps(other) {
            return None;
        }
        let lo = self.lower().max(&other.lower());
        let hi = self.upper().min(&other.upper());
        Some(Ball::from_interval(&lo, &hi))
    }

    /// Smallest ball containing both enclosures.
    pub fn union(&self, other: &Ball) -> Ball {
        let lo = self.lower().min(&other.lower());
        let hi = self.upper().max(&other.upper());
        Ball::from_interval(&lo, &hi)
    }

    fn finish(mid: Float, prop: f64) -> Ball {
        let rad = mag::add(prop, mag::ulp(&mid));
        Ball::new(mid, rad)
    }

    pub fn abs(&self) -> Ball {
        if self.contains_zero() {
            let hi = self.abs_upper_f64();
            let half = Float::with_val(self.prec(), hi) / 2u32;
            let r = mag::abs_up(&half);
            return Ball::finish(half, r);
        }
        Ball::new(self.mid.clone().abs(), self.rad)
    }

    pub fn sqr(&self) -> Ball {
        self * self
    }

    pub fn recip(&self) -> Result<Ball, NumericError> {
        Ball::from_i64_prec(1, self.prec()).checked_div(self)
    }

    pub fn checked_div(&self, rhs: &Ball) -> Result<Ball, NumericError> {
        let denom_lo = rhs.abs_lower_f64();
        if denom_lo <= 0.0 || rhs.contains_zero() {
            return Err(NumericError::Domain {
                op: "div",
                arg: rhs.to_string(),
            });
        }
        let prec = self.prec().max(rhs.prec());
        let mid = Float::with_val(prec, &self.mid / &rhs.mid);
        // |a/b - a0/b0| <= (ra + |a0| rb / |b0|) / (|b0| - rb)
        let a0 = mag::abs_up(&self.mid);
        let b0 = mag::abs_down(&rhs.mid);
        let num = mag::add(self.rad, mag::div(mag::mul(a0, rhs.rad), b0));
        let prop = if num == 0.0 {
            0.0
        } else {
            mag::div(num, denom_lo)
        };
        Ok(Ball::finish(mid, prop))
    }

    /// Square root. A ball that dips below zero is clipped to its
    /// non-negative part; a ball entirely below zero is a domain error.
    pub fn sqrt(&self) -> Result<Ball, NumericError> {
        if self.is_negative() {
            return Err(NumericError::Domain {
                op: "sqrt",
                arg: self.to_string(),
            });
        }
        let lo = self.lower_f64();
        if lo <= 0.0 {
            let hi = Float::with_val_round(self.prec(), self.upper().sqrt(), Round::Up).0;
            let half = Float::with_val(self.prec(), &hi / 2u32);
            let r = mag::abs_up(&half);
            return Ok(Ball::finish(half, r));
        }
        let mid = Float::with_val(self.prec(), self.mid.sqrt_ref());
        let prop = if self.rad == 0.0 {
            0.0
        } else {
            let denom = mag::down(mag::down(lo.sqrt()) + mag::abs_down(&mid));
            mag::div(self.rad, denom)
        };
        Ok(Ball::finish(mid, prop))
    }

    pub fn exp(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.exp_ref());
        let prop = if self.rad == 0.0 {
            0.0
        } else {
            // exp(m)(e^r - 1) bounds both sides since e^r - 1 >= 1 - e^-r.
            mag::mul(mag::abs_up(&mid), mag::up(mag::up(self.rad.exp_m1())))
        };
        Ball::finish(mid, prop)
    }

    /// Natural logarithm; the ball must be strictly positive.
    pub fn ln(&self) -> Result<Ball, NumericError> {
        let lo = self.lower_f64();
        if !(lo > 0.0) {
            return Err(NumericError::Domain {
                op: "log",
                arg: self.to_string(),
            });
        }
        let mid = Float::with_val(self.prec(), self.mid.ln_ref());
        let prop = if self.rad == 0.0 {
            0.0
        } else {
            mag::div(self.rad, lo)
        };
        Ok(Ball::finish(mid, prop))
    }

    pub fn sin_cos(&self) -> (Ball, Ball) {
        let mut s = Float::new(self.prec());
        let mut c = Float::new(self.prec());
        s.assign(&self.mid);
        s.sin_cos_mut(&mut c);
        let prop = self.rad.min(2.0);
        (Ball::finish(s, prop), Ball::finish(c, prop))
    }

    pub fn sin(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.sin_ref());
        Ball::finish(mid, self.rad.min(2.0))
    }

    pub fn cos(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.cos_ref());
        Ball::finish(mid, self.rad.min(2.0))
    }

    pub fn atan(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.atan_ref());
        Ball::finish(mid, self.rad)
    }

    /// Integer power by repeated squaring. Negative exponents need a ball
    /// that excludes zero.
    pub fn powi(&self, n: i64) -> Result<Ball, NumericError> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut base = self.clone();
        let mut acc = Ball::from_i64_prec(1, self.prec());
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        Ok(acc)
    }

    /// Real power `x^y = exp(y log x)` for a strictly positive base.
    pub fn pow(&self, y: &Ball) -> Result<Ball, NumericError> {
        Ok((y * &self.ln()?).exp())
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_2si(&self, k: i32) -> Ball {
        let mut mid = self.mid.clone();
        mid <<= k;
        let rad = self.rad * mag::pow2(i64::from(k));
        Ball::new(mid, rad)
    }

    /// Midpoint and radius as text with the midpoint printed to the number of
    /// digits the radius supports plus two guard digits.
    pub fn to_decimal_string(&self) -> String {
        let max_digits = ((f64::from(self.prec()) * std::f64::consts::LOG10_2).floor() as usize).max(1);
        let digits = if self.mid.is_zero() {
            1
        } else if self.rad == 0.0 {
            max_digits
        } else {
            let m = mag::abs_down(&self.mid).max(f64::MIN_POSITIVE);
            let ratio = (m / self.rad).log10();
            if ratio.is_finite() && ratio > 0.0 {
                ((ratio.ceil() as usize) + 2).min(max_digits)
            } else {
                2
            }
        };
        format_float(&self.mid, digits)
    }
}

/// Radius printed with two significant digits, rounded up.
pub(crate) fn format_radius(r: f64) -> String {
    if r == 0.0 {
        return "0".to_string();
    }
    if !r.is_finite() {
        return "inf".to_string();
    }
    let e = r.log10().floor() as i32;
    let scale = 10f64.powi(e - 1);
    let m = (r / scale).ceil() * scale;
    format!("{:.1e}", m)
}

/// Decimal rendering of `x` with `digits` significant digits. Fixed notation
/// is used for moderate exponents, scientific otherwise.
pub(crate) fn format_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (neg, ds, exp) = x.to_sign_string_exp(10, Some(digits.max(1)));
    let exp = exp.unwrap_or(0);
    let ds = ds.trim_end_matches('0');
    let ds = if ds.is_empty() { "0" } else { ds };
    let sign = if neg { "-" } else { "" };
    // value = 0.ds × 10^exp
    if (-8..=20).contains(&exp) {
        let body = if exp <= 0 {
            format!("0.{}{}", "0".repeat((-exp) as usize), ds)
        } else {
            let e = exp as usize;
            if ds.len() <= e {
                format!("{}{}", ds, "0".repeat(e - ds.len()))
            } else {
                format!("{}.{}", &ds[..e], &ds[e..])
            }
        };
        format!("{sign}{body}")
    } else {
        let (first, rest) = ds.split_at(1);
        let frac = if rest.is_empty() {
            String::new()
        } else {
            format!(".{rest}")
        };
        format!("{sign}{first}{frac}e{}", exp - 1)
    }
}

fn exact_sub_prec(a: &Float, b: &Float) -> u32 {
    match (a.get_exp(), b.get_exp()) {
        (Some(ea), Some(eb)) => {
            let span = (i64::from(ea) - i64::from(eb)).unsigned_abs();
            let p = u64::from(a.prec().max(b.prec())) + span + 2;
            p.min(1 << 20) as u32
        }
        _ => a.prec().max(b.prec()) + 2,
    }
}

fn is_decimal_literal(s: &str) -> bool {
    let b = s.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let int_start = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let mut n_digits = i - int_start;
    if i < b.len() && b[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        n_digits += i - frac_start;
    }
    if n_digits == 0 {
        return false;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return false;
        }
    }
    i == b.len()
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.to_decimal_string(), format_radius(self.rad))
    }
}

impl<'a> Add<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn add(self, rhs: &'a Ball) -> Ball {
        let prec = self.prec().max(rhs.prec());
        let mid = Float::with_val(prec, &self.mid + &rhs.mid);
        Ball::finish(mid, mag::add(self.rad, rhs.rad))
    }
}

impl<'a> Sub<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn sub(self, rhs: &'a Ball) -> Ball {
        let prec = self.prec().max(rhs.prec());
        let mid = Float::with_val(prec, &self.mid - &rhs.mid);
        Ball::finish(mid, mag::add(self.rad, rhs.rad))
    }
}

impl<'a> Mul<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn mul(self, rhs: &'a Ball) -> Ball {
        let prec = self.prec().max(rhs.prec());
        let mid = Float::with_val(prec, &self.mid * &rhs.mid);
        let prop = if self.rad == 0.0 && rhs.rad == 0.0 {
            0.0
        } else {
            let a = mag::abs_up(&self.mid);
            let b = mag::abs_up(&rhs.mid);
            mag::add(
                mag::add(mag::mul(a, rhs.rad), mag::mul(b, self.rad)),
                mag::mul(self.rad, rhs.rad),
            )
        };
        Ball::finish(mid, prop)
    }
}

/// Division panics if the divisor contains zero; use [`Ball::checked_div`]
/// where that can happen.
impl<'a> Div<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn div(self, rhs: &'a Ball) -> Ball {
        self.checked_div(rhs).expect("ball division by an enclosure of zero")
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::new(-self.mid.clone(), self.rad)
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::new(-self.mid, self.rad)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Ball> for Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Ball> for Ball {
            type Output = Ball;
            fn $m(self, rhs: &'a Ball) -> Ball {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Ball> for &'a Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                self.$m(&rhs)
            }
        }
        impl $tr<i64> for &Ball {
            type Output = Ball;
            fn $m(self, rhs: i64) -> Ball {
                self.$m(&Ball::from_i64_prec(rhs, self.prec()))
            }
        }
        impl $tr<i64> for Ball {
            type Output = Ball;
            fn $m(self, rhs: i64) -> Ball {
                (&self).$m(&Ball::from_i64_prec(rhs, self.prec()))
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<i64> for Ball {
    fn from(x: i64) -> Ball {
        Ball::from_i64(x)
    }
}

impl std::iter::Sum for Ball {
    fn sum<I: Iterator<Item = Ball>>(iter: I) -> Ball {
        iter.fold(Ball::zero(), |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: f64) -> Ball {
        Ball::from_f64(x)
    }

    #[test]
    fn decimal_half_is_exact() {
        let x = Ball::from_decimal("0.5").unwrap();
        assert_eq!(x.mid_f64(), 0.5);
        assert_eq!(x.rad(), 0.0);
    }

    #[test]
    fn decimal_tenth_contains_one_tenth() {
        let x = Ball::from_decimal("0.1").unwrap();
        let tenth = Float::with_val(1024, rug::Rational::from((1, 10)));
        assert!(x.contains(&tenth));
        assert!(x.rad() <= mag::ulp(x.mid()));
        assert!(x.rad() > 0.0);
    }

    #[test]
    fn decimal_constant_h() {
        let x = Ball::from_decimal("-0.0171594043070981495").unwrap();
        let exact = Float::with_val(
            1024,
            rug::Rational::from((-171594043070981495i64, 10_000_000_000_000_000_000u64)),
        );
        assert!(x.contains(&exact));
    }

    #[test]
    fn malformed_decimals_are_rejected() {
        for s in ["", "-", "1..2", "abc", "1e", "inf", "nan", "0x10", "1.2.3", "--1"] {
            assert!(Ball::from_decimal(s).is_err(), "{s:?} accepted");
        }
        for s in ["1", "-1.5", "+2.", ".5", "1e-3", "2.5E+10"] {
            assert!(Ball::from_decimal(s).is_ok(), "{s:?} rejected");
        }
    }

    #[test]
    fn arithmetic_examples() {
        assert!((b(2.0) * b(3.0)).contains_f64(6.0));
        let e = Ball::one().exp();
        assert!(e.ln().unwrap().contains_f64(1.0));
        let x = Ball::new(Float::with_val(128, 1), 0.1);
        assert!((&x + &x).rad() >= 0.2);
    }

    #[test]
    fn contains_examples() {
        let x = Ball::new(Float::with_val(128, 1), 0.5);
        assert!(x.contains_f64(1.4));
        assert!(!x.contains_f64(1.6));
        assert!(Ball::zero().contains_f64(0.0));
    }

    #[test]
    fn domain_errors() {
        let z = Ball::new(Float::with_val(128, 0), 0.1);
        assert!(Ball::one().checked_div(&z).is_err());
        assert!(z.ln().is_err());
        assert!(b(-1.0).ln().is_err());
        assert!(b(-1.0).sqrt().is_err());
        assert!(b(0.0).sqrt().unwrap().contains_f64(0.0));
    }

    #[test]
    fn sqrt_and_powers() {
        let two = b(2.0);
        let s = two.sqrt().unwrap();
        assert!(s.sqr().contains_f64(2.0));
        assert!(two.powi(10).unwrap().contains_f64(1024.0));
        assert!(two.powi(-2).unwrap().contains_f64(0.25));
        let p = two.pow(&b(0.5)).unwrap();
        assert!(p.overlaps(&s));
    }

    #[test]
    fn abs_of_straddling_ball() {
        let x = Ball::new(Float::with_val(128, 0.1), 0.5);
        let a = x.abs();
        assert!(a.contains_f64(0.0));
        assert!(a.contains_f64(0.6));
    }

    #[test]
    fn display_is_radius_justified() {
        let x = Ball::new(Float::with_val(128, 0.0231049931154), 1e-8);
        let s = x.to_string();
        assert!(s.starts_with("0.0231049931"), "{s}");
        assert!(s.contains("± 1.0e-8"), "{s}");
        let y = Ball::from_f64(-1234.5);
        assert!(y.to_string().starts_with("-1234.5"));
    }

    #[test]
    fn interval_and_intersection() {
        let lo = Float::with_val(128, 1);
        let hi = Float::with_val(128, 3);
        let x = Ball::from_interval(&lo, &hi);
        assert!(x.contains_f64(1.0) && x.contains_f64(3.0));
        let y = Ball::new(Float::with_val(128, 3.5), 1.0);
        let i = x.intersect(&y).unwrap();
        assert!(i.contains_f64(2.5) && i.contains_f64(3.0));
        assert!(x.intersect(&b(10.0)).is_none());
    }
}
