//! Weight functions `φ` on `[T₀, ∞)`: parsing, symbolic derivatives and the
//! admissibility conditions `φ ≥ 0`, `φ′ ≤ 0`, `φ″ ≥ 0`.
//!
//! Admissibility is checked on a geometric sampling grid, not proved. The grid
//! covers `[T₀, 10³·T₀]` at construction and is extended on demand to ten
//! times the largest point at which the weight is evaluated.

mod diff;
mod expr;
mod jet;
mod parse;

pub use diff::differentiate;
pub use expr::Expr;
pub use parse::parse_phi;

use std::fmt;
use std::sync::Mutex;

use rug::Rational;
use thiserror::Error;

use crate::numeric::{Ball, NumericError};

/// Points per admissibility sweep.
pub const GRID_POINTS: usize = 512;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhiError {
    #[error("phifunc: parse_phi: syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("phifunc: parse_phi: unknown identifier {name:?} at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("phifunc: make_phi: unknown builtin {0:?} (inv_power:<c>, inv_t, inv_square, inv_log_sq, inv_t2_plus_quarter)")]
    UnknownBuiltin(String),
    #[error("phifunc: make_phi: not admissible at t = {t}: {condition}")]
    Admissibility { t: f64, condition: String },
    #[error("phifunc: {op}: {detail}")]
    Domain { op: &'static str, detail: String },
    #[error("phifunc: eval: {op}: {detail}")]
    Eval { op: &'static str, detail: String },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Closed forms for `G` with `G′(t) = φ(t) log(t/2π)/2π`, used in place of
/// quadrature for the main integral.
#[derive(Debug, Clone, PartialEq)]
pub enum MainAntiderivative {
    /// `φ = t^{−c}`, `c ≠ 1`: `G = t^{1−c}((1−c) log(t/2π) − 1) / (2π(1−c)²)`.
    InvPower(Rational),
    /// `φ = 1/t`: `G = log²(t/2π)/4π`.
    InvT,
    /// `φ = 1/log²(t/2π)`: `G = li(t/2π)`.
    InvLogSq,
}

impl MainAntiderivative {
    /// Whether `G` has a finite limit at infinity (normalized to zero).
    pub fn converges_at_infinity(&self) -> bool {
        matches!(self, MainAntiderivative::InvPower(c) if *c > 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    InvPower(Rational),
    InvT,
    InvSquare,
    InvLogSq,
    InvT2PlusQuarter,
}

impl Builtin {
    /// Parses `name[:param]`, the part after `builtin:`.
    pub fn from_name(s: &str) -> Result<Builtin, PhiError> {
        let mut parts = s.splitn(2, ':');
        let name = parts.next().unwrap_or_default();
        let param = parts.next();
        let unknown = || PhiError::UnknownBuiltin(s.to_string());
        match (name, param) {
            ("inv_power", Some(p)) => match parse_phi(p) {
                Ok(Expr::Const(c)) if c > 0 => Ok(Builtin::InvPower(c)),
                _ => Err(PhiError::Domain {
                    op: "make_phi",
                    detail: format!("inv_power needs a positive decimal exponent, got {p:?}"),
                }),
            },
            ("inv_t", None) => Ok(Builtin::InvT),
            ("inv_square", None) => Ok(Builtin::InvSquare),
            ("inv_log_sq", None) => Ok(Builtin::InvLogSq),
            ("inv_t2_plus_quarter", None) => Ok(Builtin::InvT2PlusQuarter),
            _ => Err(unknown()),
        }
    }

    /// The weight as expression text.
    pub fn text(&self) -> String {
        match self {
            Builtin::InvPower(c) => format!("1/t^{}", Expr::Const(c.clone())),
            Builtin::InvT => "1/t".into(),
            Builtin::InvSquare => "1/t^2".into(),
            Builtin::InvLogSq => "1/(log(t/(2*pi)))^2".into(),
            Builtin::InvT2PlusQuarter => "1/(t^2 + 0.25)".into(),
        }
    }

    fn antiderivative(&self) -> Option<MainAntiderivative> {
        match self {
            Builtin::InvPower(c) if *c == 1 => Some(MainAntiderivative::InvT),
            Builtin::InvPower(c) => Some(MainAntiderivative::InvPower(c.clone())),
            Builtin::InvT => Some(MainAntiderivative::InvT),
            Builtin::InvSquare => Some(MainAntiderivative::InvPower(Rational::from(2))),
            Builtin::InvLogSq => Some(MainAntiderivative::InvLogSq),
            Builtin::InvT2PlusQuarter => None,
        }
    }

    /// Exponent `c` with `0 ≤ φ(t) ≤ t^{−c}` on the domain, when known.
    fn majorant(&self) -> Option<Rational> {
        match self {
            Builtin::InvPower(c) => Some(c.clone()),
            Builtin::InvT => Some(Rational::from(1)),
            Builtin::InvSquare | Builtin::InvT2PlusQuarter => Some(Rational::from(2)),
            Builtin::InvLogSq => None,
        }
    }

    /// Whether `∫^∞ φ(t)/t dt` converges.
    fn log_weighted_tail_converges(&self) -> bool {
        true
    }
}

/// Where a weight came from.
#[derive(Debug, Clone, PartialEq)]
pub enum PhiSource {
    Builtin(Builtin),
    Expression(String),
}

/// An admissible weight with its first two derivatives.
#[derive(Debug)]
pub struct PhiSpec {
    source: PhiSource,
    body: Expr,
    d1: Expr,
    d2: Expr,
    t0: Ball,
    antiderivative: Option<MainAntiderivative>,
    majorant: Option<Rational>,
    checked_upto: Mutex<f64>,
}

impl Clone for PhiSpec {
    fn clone(&self) -> Self {
        PhiSpec {
            source: self.source.clone(),
            body: self.body.clone(),
            d1: self.d1.clone(),
            d2: self.d2.clone(),
            t0: self.t0.clone(),
            antiderivative: self.antiderivative.clone(),
            majorant: self.majorant.clone(),
            checked_upto: Mutex::new(self.checked_upto()),
        }
    }
}

impl fmt::Display for PhiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

/// The domain start `2π` as a ball; also what `T₀` values within `10⁻¹²` of
/// `2π` (such as its `f64` rounding) are snapped to.
fn snap_t0(t0: f64) -> Result<Ball, PhiError> {
    let two_pi = std::f64::consts::TAU;
    if !(t0.is_finite()) || t0 < two_pi - 1e-12 {
        return Err(PhiError::Domain {
            op: "make_phi",
            detail: format!("T0 must be at least 2π, got {t0}"),
        });
    }
    if (t0 - two_pi).abs() <= 1e-12 {
        Ok(Ball::two_pi())
    } else {
        Ok(Ball::from_f64(t0))
    }
}

/// Builds a weight from `builtin:<name>[:<param>]` or expression text.
pub fn make_phi(text: &str, t0: f64) -> Result<PhiSpec, PhiError> {
    match text.strip_prefix("builtin:") {
        Some(name) => make_builtin(Builtin::from_name(name)?, t0),
        None => {
            let body = parse_phi(text)?;
            PhiSpec::build(PhiSource::Expression(text.to_string()), body, t0, None, None)
        }
    }
}

pub fn make_builtin(b: Builtin, t0: f64) -> Result<PhiSpec, PhiError> {
    let body = parse_phi(&b.text())?;
    let anti = b.antiderivative();
    let maj = b.majorant();
    PhiSpec::build(PhiSource::Builtin(b), body, t0, anti, maj)
}

impl PhiSpec {
    fn build(
        source: PhiSource,
        body: Expr,
        t0: f64,
        antiderivative: Option<MainAntiderivative>,
        majorant: Option<Rational>,
    ) -> Result<PhiSpec, PhiError> {
        let t0 = snap_t0(t0)?;
        let d1 = differentiate(&body);
        let d2 = differentiate(&d1);
        let spec = PhiSpec {
            source,
            body,
            d1,
            d2,
            t0,
            antiderivative,
            majorant,
            checked_upto: Mutex::new(0.0),
        };
        let lo = spec.t0.mid_f64();
        spec.check_range(lo, lo * 1e3)?;
        Ok(spec)
    }

    pub fn source(&self) -> &PhiSource {
        &self.source
    }

    pub fn body(&self) -> &Expr {
        &self.body
    }

    pub fn d1(&self) -> &Expr {
        &self.d1
    }

    pub fn d2(&self) -> &Expr {
        &self.d2
    }

    pub fn t0(&self) -> &Ball {
        &self.t0
    }

    pub fn antiderivative(&self) -> Option<&MainAntiderivative> {
        self.antiderivative.as_ref()
    }

    pub fn majorant(&self) -> Option<&Rational> {
        self.majorant.as_ref()
    }

    /// Whether `∫_{T₀}^∞ φ(t)/t dt < ∞` is known in closed form; `None` for
    /// expressions, which need a numerical diagnosis.
    pub fn log_weighted_tail_converges(&self) -> Option<bool> {
        match &self.source {
            PhiSource::Builtin(b) => Some(b.log_weighted_tail_converges()),
            PhiSource::Expression(_) => None,
        }
    }

    /// Upper end of the range already sampled for admissibility.
    pub fn checked_upto(&self) -> f64 {
        *self.checked_upto.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Samples `[lo, hi]` geometrically and fails on the first point where a
    /// condition is certainly violated.
    fn check_range(&self, lo: f64, hi: f64) -> Result<(), PhiError> {
        let ratio = (hi / lo).powf(1.0 / (GRID_POINTS - 1) as f64);
        let mut t = lo;
        for i in 0..GRID_POINTS {
            if i == GRID_POINTS - 1 {
                t = hi;
            }
            let tb = if i == 0 && t == self.t0.mid_f64() {
                self.t0.clone()
            } else {
                Ball::from_f64(t)
            };
            let fail = |condition: &str| PhiError::Admissibility {
                t,
                condition: condition.to_string(),
            };
            let f = self.body.eval(&tb).map_err(|e| fail(&format!("φ undefined ({e})")))?;
            if f.upper_f64() < 0.0 {
                return Err(fail(&format!("φ(t) = {f} < 0")));
            }
            let d1 = self.d1.eval(&tb).map_err(|e| fail(&format!("φ′ undefined ({e})")))?;
            if d1.lower_f64() > 0.0 {
                return Err(fail(&format!("φ′(t) = {d1} > 0 (φ must be non-increasing)")));
            }
            let d2 = self.d2.eval(&tb).map_err(|e| fail(&format!("φ″ undefined ({e})")))?;
            if d2.upper_f64() < 0.0 {
                return Err(fail(&format!("φ″(t) = {d2} < 0 (φ must be convex)")));
            }
            t *= ratio;
        }
        let mut guard = self.checked_upto.lock().unwrap_or_else(|e| e.into_inner());
        *guard = guard.max(hi);
        Ok(())
    }

    /// Extends the sampled range to cover `10·t`.
    pub fn ensure_checked(&self, t: f64) -> Result<(), PhiError> {
        let done = self.checked_upto();
        if 10.0 * t <= done {
            return Ok(());
        }
        self.check_range(done, 10.0 * t)
    }

    fn check_domain(&self, op: &'static str, t: &Ball) -> Result<(), PhiError> {
        let slack = Ball::from_f64(1e-30);
        if t.mid() < &(&self.t0.midpoint() - &slack).lower() {
            return Err(PhiError::Domain {
                op,
                detail: format!("t = {t} lies below T0 = {}", self.t0),
            });
        }
        self.ensure_checked(t.upper_f64())
    }

    pub fn eval_phi(&self, t: &Ball) -> Result<Ball, PhiError> {
        self.check_domain("eval_phi", t)?;
        self.body.eval(t)
    }

    pub fn eval_dphi(&self, t: &Ball) -> Result<Ball, PhiError> {
        self.check_domain("eval_dphi", t)?;
        self.d1.eval(t)
    }

    pub fn eval_d2phi(&self, t: &Ball) -> Result<Ball, PhiError> {
        self.check_domain("eval_d2phi", t)?;
        self.d2.eval(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_PI: f64 = std::f64::consts::TAU;

    #[test]
    fn builtins_are_admissible() {
        for name in ["inv_power:2", "inv_power:1.5", "inv_t", "inv_square", "inv_log_sq", "inv_t2_plus_quarter"] {
            let t0 = if name == "inv_log_sq" { TWO_PI * std::f64::consts::E } else { TWO_PI };
            let spec = make_phi(&format!("builtin:{name}"), t0).unwrap();
            spec.ensure_checked(1e6).unwrap();
            assert!(spec.checked_upto() >= 1e7, "{name}");
        }
    }

    #[test]
    fn rejects_increasing() {
        let err = make_phi("t", TWO_PI).unwrap_err();
        assert!(matches!(err, PhiError::Admissibility { .. }));
        assert!(err.to_string().contains("non-increasing"));
        assert!(matches!(make_phi("1/t", 3.0), Err(PhiError::Domain { .. })));
        assert!(matches!(make_phi("builtin:nope", TWO_PI), Err(PhiError::UnknownBuiltin(_))));
        // Concave beyond t = 10⁴: caught once evaluation reaches there.
        let spec = make_phi("1/t - t/1e12", TWO_PI).unwrap();
        assert!(spec.eval_phi(&Ball::from_f64(1e5)).is_err());
    }

    #[test]
    fn values() {
        let sq = make_phi("builtin:inv_square", TWO_PI).unwrap();
        let micro = Ball::from_decimal("0.000001").unwrap();
        assert!(sq.eval_phi(&Ball::from_i64(1000)).unwrap().overlaps(&micro));
        let inv = make_phi("builtin:inv_t", TWO_PI).unwrap();
        let v = inv.eval_phi(&Ball::two_pi()).unwrap();
        assert!(v.overlaps(&Ball::two_pi().recip().unwrap()));
        let ls = make_phi("builtin:inv_log_sq", TWO_PI * std::f64::consts::E).unwrap();
        let t = &Ball::two_pi() * &Ball::one().exp();
        assert!(ls.eval_phi(&t).unwrap().contains_f64(1.0));
        assert!(sq.eval_phi(&Ball::from_i64(5)).is_err());
    }

    #[test]
    fn t0_snaps_to_two_pi() {
        let spec = make_phi("builtin:inv_t", 6.283185307179586).unwrap();
        assert!(spec.t0().overlaps(&Ball::two_pi()));
        assert!(spec.eval_phi(&Ball::two_pi()).is_ok());
    }
}
