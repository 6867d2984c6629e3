//! Enclosures of integrals: the main term `(1/2π)∫φ(t) log(t/2π) dt` over
//! finite and semi-infinite ranges, and the logarithmic integral.
//!
//! Finite ranges are split adaptively into panels. Each panel uses the
//! 15-point Gauss–Legendre rule with certified nodes and weights. The rule is
//! exact for polynomials of degree 29, so expanding `f` to degree 15 about
//! the panel centre leaves only the Lagrange remainder. That remainder is
//! bounded by `sup |f⁽¹⁶⁾|/16!`, obtained from a Taylor jet evaluated on the
//! whole panel:
//!
//! `|∫f − GL(f)| ≤ sup|c₁₆| · h¹⁶ · (2h/17 + 2h)`
//!
//! where `h` is the half-width. Semi-infinite ranges are cut into dyadic
//! shells `[T·2ᵏ, T·2ᵏ⁺¹]`, i.e. dyadic panels of `u = T/t ∈ (0, 1]`.

mod gauss;
mod li;

pub use li::li;

use rug::{Float, Rational};
use thiserror::Error;

use crate::numeric::{precision, Ball, NumericError};
use crate::phifunc::{Expr, MainAntiderivative, PhiError, PhiSpec};

/// Points of the Gauss–Legendre rule.
const GL_POINTS: usize = 15;
/// Degree of the Taylor expansion whose remainder bounds the panel error.
const TAYLOR_DEGREE: usize = 15;
/// Panel budget per finite integral.
pub const MAX_PANELS: usize = 1 << 16;
/// Shell budget per tail integral.
const MAX_SHELLS: usize = 400;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("quadrature: {op}: {detail}")]
    Domain { op: &'static str, detail: String },
    #[error("quadrature: {op}: tolerance not reached: {detail}")]
    Convergence { op: &'static str, detail: String },
    #[error("quadrature: {op}: integral diverges: {detail}")]
    Divergence { op: &'static str, detail: String },
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadMethod {
    ClosedForm,
    Adaptive,
    TailSubstitution,
}

#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: Ball,
    pub subdivisions: usize,
    pub method: QuadMethod,
    /// False when the tail beyond the last shell was extrapolated from the
    /// decay of the shells rather than bounded by a known majorant.
    pub rigorous: bool,
}

/// A function that can be integrated with certified error bounds.
pub trait Integrand {
    fn eval(&self, t: &Ball) -> Result<Ball, QuadError>;
    /// Encloses `f⁽ᵏ⁾(ξ)/k!` for every `ξ` in the ball `t`.
    fn taylor_coefficient(&self, t: &Ball, k: usize) -> Result<Ball, QuadError>;
}

impl Integrand for Expr {
    fn eval(&self, t: &Ball) -> Result<Ball, QuadError> {
        Ok(Expr::eval(self, t)?)
    }

    fn taylor_coefficient(&self, t: &Ball, k: usize) -> Result<Ball, QuadError> {
        let mut jet = self.jet(t, k)?;
        Ok(jet.swap_remove(k))
    }
}

fn panel<F: Integrand + ?Sized>(f: &F, a: &Float, b: &Float, prec: u32) -> Result<Ball, QuadError> {
    let rule = gauss::rule(GL_POINTS, prec);
    let a = Ball::exact(Float::with_val(prec, a));
    let b = Ball::exact(Float::with_val(prec, b));
    let c = (&a + &b).mul_2si(-1);
    let h = (&b - &a).mul_2si(-1);
    let mut sum = Ball::from_i64_prec(0, prec);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let t = &c + &(&h * x);
        sum = &sum + &(w * &f.eval(&t)?);
    }
    let value = &sum * &h;

    let whole = Ball::from_interval(a.mid(), b.mid());
    let coef = f.taylor_coefficient(&whole, TAYLOR_DEGREE + 1)?;
    if !coef.is_finite() {
        return Err(QuadError::Convergence {
            op: "integrate_finite",
            detail: "non-finite derivative bound".into(),
        });
    }
    let factor = Ball::from_ratio_prec(2, TAYLOR_DEGREE as i64 + 2, prec) + 2;
    let bound = &(&Ball::from_f64_prec(coef.abs_upper_f64(), prec) * &h.powi(TAYLOR_DEGREE as i64 + 2)?) * &factor;
    Ok(value.widen(bound.upper_f64()))
}

/// Adaptive panels on `[lo, hi]`, processed depth-first left to right so
/// that the summation order is deterministic.
fn adaptive<F: Integrand + ?Sized>(
    f: &F,
    lo: &Float,
    hi: &Float,
    tol: f64,
    prec: u32,
    op: &'static str,
) -> Result<(Ball, usize), QuadError> {
    let total = Float::with_val(prec, hi - lo).to_f64();
    let min_width = total * 2f64.powi(-50);
    let mut stack = vec![(lo.clone(), hi.clone())];
    let mut acc = Ball::from_i64_prec(0, prec);
    let mut panels = 0usize;
    while let Some((a, b)) = stack.pop() {
        panels += 1;
        if panels > MAX_PANELS {
            return Err(QuadError::Convergence {
                op,
                detail: format!("more than {MAX_PANELS} panels on [{lo:.6e}, {hi:.6e}] for tolerance {tol:e}"),
            });
        }
        let width = Float::with_val(prec, &b - &a).to_f64();
        let share = tol * width / total;
        match panel(f, &a, &b, prec) {
            Ok(v) if v.rad() <= share => {
                acc = &acc + &v;
                continue;
            }
            Err(e @ (QuadError::Phi(_) | QuadError::Numeric(_))) if width <= min_width => return Err(e),
            _ if width <= min_width => {
                return Err(QuadError::Convergence {
                    op,
                    detail: format!("panel at {a:.6e} cannot be resolved"),
                })
            }
            _ => {}
        }
        let m = Float::with_val(prec, &a + &b) / 2u32;
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    Ok((acc, panels))
}

/// `∫_a^b f` with radius at most `tol`. Uncertainty in the endpoints is
/// charged as `sup|f|` over the endpoint ball times its radius.
pub fn integrate_finite<F: Integrand + ?Sized>(f: &F, a: &Ball, b: &Ball, tol: f64) -> Result<QuadResult, QuadError> {
    let prec = a.prec().max(b.prec()).max(precision());
    if !(tol > 0.0) {
        return Err(QuadError::Domain {
            op: "integrate_finite",
            detail: format!("tolerance must be positive, got {tol}"),
        });
    }
    if a.mid() > b.mid() {
        return Err(QuadError::Domain {
            op: "integrate_finite",
            detail: format!("requires a <= b, got a = {a}, b = {b}"),
        });
    }
    let mut endpoint = 0.0;
    for e in [a, b] {
        if e.rad() > 0.0 {
            let sup = f.eval(e)?.abs_upper_f64();
            endpoint += (Ball::from_f64(sup) * Ball::from_f64(e.rad())).upper_f64();
        }
    }
    if a.mid() == b.mid() {
        let v = Ball::from_i64_prec(0, prec).widen(endpoint);
        return Ok(QuadResult {
            value: v,
            subdivisions: 0,
            method: QuadMethod::Adaptive,
            rigorous: true,
        });
    }
    let budget = (tol - endpoint) * 0.999;
    if !(budget > 0.0) {
        return Err(QuadError::Convergence {
            op: "integrate_finite",
            detail: format!("endpoint uncertainty {endpoint:e} already exceeds tolerance {tol:e}"),
        });
    }
    let (v, panels) = adaptive(f, a.mid(), b.mid(), budget, prec, "integrate_finite")?;
    Ok(QuadResult {
        value: v.widen(endpoint),
        subdivisions: panels,
        method: QuadMethod::Adaptive,
        rigorous: true,
    })
}

/// `∫_T^∞ f` using the decay of dyadic shells to decide when to stop; the
/// remainder past the last shell is extrapolated geometrically.
pub fn integrate_tail<F: Integrand + ?Sized>(f: &F, t: &Ball, tol: f64) -> Result<QuadResult, QuadError> {
    integrate_tail_with(f, t, tol, None)
}

/// Rigorous bound on `∫_X^∞ |f|` as a function of `X`.
pub type TailBound<'a> = &'a dyn Fn(&Ball) -> Result<f64, QuadError>;

/// As [`integrate_tail`], but with a rigorous remainder bound when one is
/// supplied.
pub fn integrate_tail_with<F: Integrand + ?Sized>(
    f: &F,
    t: &Ball,
    tol: f64,
    bound: Option<TailBound<'_>>,
) -> Result<QuadResult, QuadError> {
    const OP: &str = "integrate_tail";
    if !t.is_positive() {
        return Err(QuadError::Domain {
            op: OP,
            detail: format!("requires T > 0, got {t}"),
        });
    }
    let mut acc = Ball::from_i64_prec(0, t.prec().max(precision()));
    let mut lo = t.clone();
    let mut prev: Option<f64> = None;
    let mut ratios: Vec<f64> = Vec::new();
    let mut flat_run = 0usize;
    let mut panels = 0usize;
    for k in 0..MAX_SHELLS {
        let hi = lo.midpoint().mul_2si(1);
        let shell_tol = tol * 2f64.powi(-((k as i32).min(60) + 2));
        let shell = integrate_finite(f, &lo, &hi, shell_tol)?;
        panels += shell.subdivisions;
        let size = shell.value.abs_upper_f64();
        acc = &acc + &shell.value;
        if let Some(p) = prev {
            let r = if p > 0.0 { size / p } else { 0.0 };
            ratios.push(r);
            if size >= 0.999 * p && size > 0.0 {
                flat_run += 1;
            } else {
                flat_run = 0;
            }
            if flat_run >= 8 {
                return Err(QuadError::Divergence {
                    op: OP,
                    detail: format!("dyadic shells stopped decreasing beyond t = {}", lo.mid_f64()),
                });
            }
        }
        prev = Some(size);
        lo = hi;

        let remainder = match bound {
            Some(b) => Some(b(&lo)?),
            None if ratios.len() >= 3 => {
                let r = ratios[ratios.len() - 3..].iter().cloned().fold(0.0, f64::max);
                (r < 0.9).then(|| 2.0 * size * r / (1.0 - r))
            }
            None => None,
        };
        if let Some(rem) = remainder {
            if rem <= tol / 2.0 && acc.rad() + rem <= tol {
                return Ok(QuadResult {
                    value: acc.widen(rem),
                    subdivisions: panels,
                    method: QuadMethod::TailSubstitution,
                    rigorous: bound.is_some(),
                });
            }
        }
    }
    Err(QuadError::Convergence {
        op: OP,
        detail: format!("tail not resolved within {MAX_SHELLS} dyadic shells"),
    })
}

/// Checks `∫_T^∞ f < ∞` numerically: shells must keep shrinking, and faster
/// than the shells of `1/(t log t)`.
///
/// The shell over `[X, 2X]` of `1/(t logᵖ t)` has size `∝ (log₂ X)^{−p}`, so
/// the local exponent of shell size against `log₂ X` separates the two sides
/// of the logarithmic borderline. Anything within 5% of `p = 1` is reported
/// as divergent; this is a heuristic, not a proof.
pub fn diagnose_tail<F: Integrand + ?Sized>(f: &F, t: &Ball) -> Result<(), QuadError> {
    const SHELLS: usize = 48;
    let divergent = |lo: &Ball, why: &str| QuadError::Divergence {
        op: "integrate_tail",
        detail: format!("dyadic shells {why} beyond t = {}", lo.mid_f64()),
    };
    let mut lo = t.clone();
    let mut prev: Option<f64> = None;
    let mut flat_run = 0;
    let mut history: Vec<(f64, f64)> = Vec::with_capacity(SHELLS);
    for _ in 0..SHELLS {
        let hi = lo.midpoint().mul_2si(1);
        let scale = f.eval(&lo)?.abs_upper_f64() * lo.mid_f64();
        let shell = integrate_finite(f, &lo, &hi, (scale * 1e-6).max(1e-300))?;
        let size = shell.value.abs_upper_f64();
        if let Some(p) = prev {
            flat_run = if size >= 0.999 * p && size > 0.0 { flat_run + 1 } else { 0 };
            if flat_run >= 8 {
                return Err(divergent(&lo, "stopped decreasing"));
            }
        }
        history.push((lo.mid_f64().log2(), size));
        prev = Some(size);
        lo = hi;
    }
    let (ja, sa) = history[SHELLS / 2 - 1];
    let (jb, sb) = history[SHELLS - 1];
    if sa > 0.0 && sb > 0.0 && ja > 0.0 {
        let p = (sa / sb).ln() / (jb / ja).ln();
        if p <= 1.05 {
            return Err(divergent(&lo, &format!("decay like (log t)^-{p:.2}, too slowly")));
        }
    }
    Ok(())
}

/// `φ(t) log(t/2π) / 2π` as an expression.
pub fn main_integrand(spec: &PhiSpec) -> Expr {
    let two_pi = || Expr::Mul(Box::new(Expr::int(2)), Box::new(Expr::Pi));
    let log = Expr::Log(Box::new(Expr::Div(Box::new(Expr::Var), Box::new(two_pi()))));
    Expr::Div(
        Box::new(Expr::Mul(Box::new(spec.body().clone()), Box::new(log))),
        Box::new(two_pi()),
    )
}

/// Closed-form antiderivative `G(t)` of the main integrand.
pub fn antiderivative(form: &MainAntiderivative, t: &Ball) -> Result<Ball, QuadError> {
    let prec = t.prec().max(precision());
    let two_pi = Ball::two_pi().with_prec(prec);
    let x = t.checked_div(&two_pi)?;
    Ok(match form {
        MainAntiderivative::InvT => {
            let l = x.ln()?;
            l.sqr().checked_div(&(&two_pi * 2))?
        }
        MainAntiderivative::InvLogSq => li(&x)?,
        MainAntiderivative::InvPower(c) => {
            // G = t^a (a log(t/2π) − 1) / (2π a²), a = 1 − c
            let a_q = Rational::from(1) - c;
            let a = Ball::from_rational(&a_q, prec);
            let ta = match a_q.denom().to_u32() {
                Some(1) => t.powi(a_q.numer().to_i64().unwrap_or(0))?,
                _ => t.pow(&a)?,
            };
            let l = x.ln()?;
            let num = &ta * &(&(&a * &l) - 1);
            num.checked_div(&(&two_pi * &a.sqr()))?
        }
    })
}

/// `(1/2π)∫_{T1}^{T2} φ(t) log(t/2π) dt`, with `T2 = None` meaning infinity.
pub fn main_integral(spec: &PhiSpec, t1: &Ball, t2: Option<&Ball>, tol: f64) -> Result<QuadResult, QuadError> {
    const OP: &str = "main_integral";
    spec.eval_phi(t1)?;
    if let Some(t2) = t2 {
        spec.eval_phi(t2)?;
        if t2.mid() < t1.mid() {
            return Err(QuadError::Domain {
                op: OP,
                detail: format!("requires T1 <= T2, got {t1} and {t2}"),
            });
        }
    }
    if let Some(form) = spec.antiderivative() {
        let g1 = antiderivative(form, t1)?;
        let value = match t2 {
            Some(t2) => &antiderivative(form, t2)? - &g1,
            None if form.converges_at_infinity() => -g1,
            None => {
                return Err(QuadError::Divergence {
                    op: OP,
                    detail: format!("∫ φ(t) log(t/2π) dt diverges for φ = {spec}"),
                })
            }
        };
        return Ok(QuadResult {
            value,
            subdivisions: 0,
            method: QuadMethod::ClosedForm,
            rigorous: true,
        });
    }
    let f = main_integrand(spec);
    match t2 {
        Some(t2) => integrate_finite(&f, t1, t2, tol),
        None => {
            let majorant = spec.majorant().filter(|c| **c > 1).cloned();
            match majorant {
                Some(c) => {
                    let form = MainAntiderivative::InvPower(c);
                    let bound = move |x: &Ball| -> Result<f64, QuadError> {
                        Ok((-antiderivative(&form, x)?).upper_f64())
                    };
                    integrate_tail_with(&f, t1, tol, Some(&bound))
                }
                None => integrate_tail(&f, t1, tol),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phifunc::{make_phi, parse_phi};

    fn b(s: &str) -> Ball {
        Ball::from_decimal(s).unwrap()
    }

    const TWO_PI: f64 = std::f64::consts::TAU;

    #[test]
    fn finite_examples() {
        let inv = parse_phi("1/t").unwrap();
        let e = Ball::one().exp();
        let r = integrate_finite(&inv, &Ball::one(), &e, 1e-25).unwrap();
        assert!(r.value.overlaps(&Ball::one()));
        assert!(r.value.rad() <= 1e-25);

        let f = parse_phi("log(t/(2*pi))/t/(2*pi)").unwrap();
        let two_pi = Ball::two_pi();
        let r = integrate_finite(&f, &two_pi, &(&two_pi * &e), 1e-20).unwrap();
        let expect = Ball::one().checked_div(&(&Ball::pi() * 4)).unwrap();
        assert!(r.value.overlaps(&expect));

        // mpmath: quad(t^-2 log(t/2π), [20, 500])
        let g = parse_phi("log(t/(2*pi))/t^2").unwrap();
        let r = integrate_finite(&g, &b("20"), &b("500"), 1e-20).unwrap();
        assert!(r.value.overlaps(&b("0.097139298293206582975576039627")), "{}", r.value);
    }

    #[test]
    fn tails() {
        let sq = parse_phi("1/t^2").unwrap();
        let r = integrate_tail(&sq, &b("10"), 1e-15).unwrap();
        assert!((r.value.mid_f64() - 0.1).abs() < 1e-14);
        assert!(!r.rigorous);

        let inv = parse_phi("1/t").unwrap();
        assert!(matches!(integrate_tail(&inv, &b("10"), 1e-10), Err(QuadError::Divergence { .. })));
        assert!(diagnose_tail(&inv, &b("10")).is_err());
        assert!(diagnose_tail(&sq, &b("10")).is_ok());
        // Either side of the logarithmic borderline.
        let loglog = parse_phi("1/(t*log(t))").unwrap();
        assert!(diagnose_tail(&loglog, &b("10")).is_err());
        let log2 = parse_phi("1/(t*log(t)^2)").unwrap();
        assert!(diagnose_tail(&log2, &b("10")).is_ok());
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let spec = make_phi("builtin:inv_square", TWO_PI).unwrap();
        let t = b("1000");
        let closed = main_integral(&spec, &t, None, 1e-20).unwrap();
        let x = (&t / &Ball::two_pi()).ln().unwrap();
        let expect = (&x + 1).checked_div(&(&Ball::two_pi() * 1000)).unwrap();
        assert!(closed.value.overlaps(&expect));
        let numeric = integrate_tail(&main_integrand(&spec), &t, 1e-16).unwrap();
        assert!(numeric.value.overlaps(&closed.value));

        let inv = make_phi("builtin:inv_t", TWO_PI).unwrap();
        let e2 = &Ball::two_pi() * &Ball::from_i64(2).exp();
        let r = main_integral(&inv, &Ball::two_pi(), Some(&e2), 1e-20).unwrap();
        assert!(r.value.overlaps(&Ball::pi().recip().unwrap()));
        assert!(matches!(main_integral(&inv, &e2, None, 1e-9), Err(QuadError::Divergence { .. })));

        let ls = make_phi("builtin:inv_log_sq", TWO_PI * std::f64::consts::E).unwrap();
        let lo = &Ball::two_pi() * &Ball::one().exp();
        let hi = b("5000");
        let closed = main_integral(&ls, &lo, Some(&hi), 1e-20).unwrap();
        let numeric = integrate_finite(&main_integrand(&ls), &lo, &hi, 1e-18).unwrap();
        assert!(closed.value.overlaps(&numeric.value));
    }

    #[test]
    fn majorant_tail_is_rigorous() {
        let spec = make_phi("builtin:inv_t2_plus_quarter", TWO_PI).unwrap();
        let r = main_integral(&spec, &b("1000"), None, 1e-14).unwrap();
        assert!(r.rigorous);
        assert!(r.value.rad() <= 1e-14);
        // mpmath: quad(log(t/2π)/(2π(t²+¼)), [1000, ∞])
        assert!(r.value.overlaps(&b("0.00096605104983444966409601781096")), "{}", r.value);
    }

    #[test]
    fn additivity() {
        let g = parse_phi("log(t/(2*pi))/(t^2 + 0.25)").unwrap();
        let (a, m, c) = (b("20"), b("73.5"), b("400"));
        let whole = integrate_finite(&g, &a, &c, 1e-20).unwrap().value;
        let left = integrate_finite(&g, &a, &m, 1e-20).unwrap().value;
        let right = integrate_finite(&g, &m, &c, 1e-20).unwrap().value;
        assert!(whole.overlaps(&(&left + &right)));
    }
}
