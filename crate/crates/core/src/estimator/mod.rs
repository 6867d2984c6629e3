//! Estimators for `Σ′ φ(γ)` over zeta-zero ordinates.
//!
//! With `N = L + Q` and Stieltjes integration, a finite sum splits as
//!
//! `Σ′_{T₁≤γ≤T₂} φ(γ) = (1/2π)∫_{T₁}^{T₂} φ(t) log(t/2π) dt
//!                     + φ(T₂)Q(T₂) − φ(T₁)Q(T₁) + E₂(T₁, T₂)`,
//!
//! `E₂(T₁, T₂) = −∫_{T₁}^{T₂} φ′(t) Q(t) dt`, and `|E₂|` is bounded
//! independently of `T₂` through the `S₁` bounds. Letting `T₂ → ∞` gives the
//! tail estimator for convergent sums and the limit estimator for divergent
//! ones; the boundary term `−φ(T)Q(T)` is what buys the extra factor of `T`
//! over the plain Lehman bound.
//!
//! Every [`SumEstimate`] keeps its pieces as signed contributions, so
//! `value = partial_sum + integral_term + boundary_term`, widened by
//! `error_bound`.

mod report;

pub use report::{table1_report, Table1Report, Table1Row, TABLE1_ROWS};

use std::fmt;

use rug::Rational;
use thiserror::Error;

use crate::numeric::{precision, Ball, NumericError};
use crate::phifunc::{make_builtin, Builtin, Expr, PhiError, PhiSpec};
use crate::quadrature::{self, QuadError};
use crate::zeros::{count_n, q_of, ZeroError, ZeroTable};

/// `c₁ = Σ_{γ>0} 1/γ²`, to 28 digits.
pub const C1_REFERENCE: &str = "0.0231049931154189707889338104";
/// `c₂ = lim (Σ′_{0<γ≤T} 1/log²(γ/2π) − li(T/2π))`, to 10 digits.
pub const C2_REFERENCE: &str = "-0.5276697875";
/// `H = lim (Σ_{0<γ≤T} 1/γ − log²(T/2π)/4π)`, to 19 digits.
pub const H_REFERENCE: &str = "-0.0171594043070981495";

/// Start of the domain used for `c₂`. The weight is singular at `2π`; any
/// `T₀ ∈ (2π, γ₁]` gives the same sums.
pub const C2_T0: f64 = 14.0;

/// Ratio of quadrature tolerance to the analytic error bound of a run.
const QUAD_TOL_FACTOR: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimatorError {
    #[error("estimator: {op}: {detail}")]
    Domain { op: &'static str, detail: String },
    #[error("estimator: {op}: φ not admissible for this method: {detail}")]
    Inadmissible { op: &'static str, detail: String },
    #[error(transparent)]
    Zeros(#[from] ZeroError),
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Absolute constants of the explicit bounds.
///
/// `|Q(T)| ≤ A log T` for `T ≥ 2πe`; `|S₁(T) − c₀| ≤ A₀ + A₁ log T`; and
/// `A₂` bounds `|Q − S|·t`. The constant `c₀ = S₁(168π)` itself cancels in
/// every bound and is never evaluated.
#[derive(Debug, Clone)]
pub struct ExplicitConstants {
    pub a: Ball,
    pub a0: Ball,
    pub a1: Ball,
    pub a2: Ball,
    pub euler_gamma: Ball,
}

impl Default for ExplicitConstants {
    fn default() -> Self {
        let dec = |s: &str| Ball::from_decimal(s).expect("constant literal");
        ExplicitConstants {
            a: dec("0.28"),
            a0: dec("2.067"),
            a1: dec("0.059"),
            a2: Ball::from_ratio(1, 150),
            euler_gamma: Ball::euler_gamma(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Lehman,
    Theorem1,
    Theorem4,
    Identity,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Lehman => "lehman",
            Method::Theorem1 => "theorem1",
            Method::Theorem4 => "theorem4",
            Method::Identity => "identity",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SumEstimate {
    pub value: Ball,
    pub partial_sum: Ball,
    pub integral_term: Ball,
    pub boundary_term: Ball,
    pub error_bound: Ball,
    pub t_used: Ball,
    pub n_zeros: usize,
    pub method: Method,
    /// False if some tail integral was extrapolated rather than bounded.
    pub rigorous: bool,
}

impl fmt::Display for SumEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "method         {}", self.method)?;
        writeln!(f, "T              {}", self.t_used)?;
        writeln!(f, "zeros used     {}", self.n_zeros)?;
        writeln!(f, "partial sum    {}", self.partial_sum)?;
        writeln!(f, "integral term  {}", self.integral_term)?;
        writeln!(f, "boundary term  {}", self.boundary_term)?;
        writeln!(f, "error bound    {}", format_bound(self.error_bound.upper_f64()))?;
        if !self.rigorous {
            writeln!(f, "note           tail integral extrapolated, not certified")?;
        }
        write!(f, "value          {}", self.value)
    }
}

/// Upper bound printed to four significant figures, rounded up.
pub fn format_bound(x: f64) -> String {
    format_upward(x, 4)
}

/// `x` to `sig` significant figures, rounded towards `+∞`.
pub fn format_upward(x: f64, sig: u32) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:e}");
    }
    let sig = sig.max(1);
    let e = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(e - sig as i32 + 1);
    let mut m = (x / scale).ceil();
    // Guard against the division landing just below an integer.
    if m * scale < x {
        m += 1.0;
    }
    let (m, e) = if m >= 10f64.powi(sig as i32) { (m / 10.0, e + 1) } else { (m, e) };
    let digits = (sig - 1) as usize;
    format!("{:.digits$}e{e}", m / 10f64.powi(sig as i32 - 1))
}

/// Lower end of the integral in a divergent-sum limit.
#[derive(Debug, Clone)]
pub enum LowerLimit {
    /// `(1/2π)∫_{T₀}^{T} …` as written.
    At(Ball),
    /// Use the closed-form antiderivative `G(T)` directly, for weights whose
    /// integral from the start of the domain is infinite (`li(T/2π)` for
    /// `1/log²(t/2π)`).
    Regularized,
}

fn check_start(op: &'static str, spec: &PhiSpec, t: &Ball) -> Result<(), EstimatorError> {
    spec.eval_phi(t).map(|_| ()).map_err(|e| match e {
        PhiError::Domain { detail, .. } => EstimatorError::Domain { op, detail },
        other => other.into(),
    })
}

/// `Σ′_{T1≤γ≤T2} φ(γ)`. Zeros whose enclosure overlaps an endpoint could be
/// on either side of it, so they contribute `[0, φ(γ)]`, i.e. `½φ(γ) ± ½φ(γ)`;
/// a zero whose enclosure *is* the endpoint contributes exactly `½φ(γ)`.
pub fn weighted_partial_sum(table: &ZeroTable, spec: &PhiSpec, t1: &Ball, t2: &Ball) -> Result<Ball, EstimatorError> {
    const OP: &str = "weighted_partial_sum";
    check_start(OP, spec, t1)?;
    if t2.upper_f64() > table.height_max() {
        return Err(ZeroError::OutOfRange {
            op: OP,
            t: t2.to_string(),
            height_max: table.height_max(),
        }
        .into());
    }
    let prec = t1.prec().max(precision());
    let mut acc = Ball::from_i64_prec(0, prec);
    if t2.mid() < t1.mid() {
        return Ok(acc);
    }
    let (lo, hi) = (t1.lower(), t2.upper());
    let start = table.ordinates().partition_point(|g| g.upper() < lo);
    for g in &table.ordinates()[start..] {
        if g.lower() > hi {
            break;
        }
        let phi = spec.eval_phi(&g.with_prec(prec))?;
        let same_point = |t: &Ball| t.mid() == g.mid() && t.rad() == g.rad();
        let touches = |t: &Ball| g.overlaps(t);
        let term = if same_point(t1) || same_point(t2) {
            phi.mul_2si(-1)
        } else if touches(t1) || touches(t2) {
            let half = phi.mul_2si(-1);
            half.widen(half.abs_upper_f64())
        } else {
            phi
        };
        acc = &acc + &term;
    }
    Ok(acc)
}


/// Error bound of the plain Lehman estimate:
/// `A (2φ(T) log T + ∫_T^{T2} φ(t)/t dt)`.
pub fn lehman_bound(spec: &PhiSpec, t: &Ball, t2: Option<&Ball>) -> Result<Ball, EstimatorError> {
    const OP: &str = "lehman_estimate";
    let c = ExplicitConstants::default();
    let two_pi_e = &Ball::two_pi() * &Ball::one().exp();
    if t.mid() < &two_pi_e.lower() {
        return Err(EstimatorError::Domain {
            op: OP,
            detail: format!("requires T >= 2πe ≈ 17.08, got {t}"),
        });
    }
    let phi = spec.eval_phi(t)?;
    let head = &(&phi * 2) * &t.ln()?;
    let integrand = Expr::Div(Box::new(spec.body().clone()), Box::new(Expr::Var));
    let tol = (head.abs_upper_f64() * 1e-9).max(1e-300);
    let integral = match t2 {
        Some(t2) => quadrature::integrate_finite(&integrand, t, t2, tol)?.value,
        None => {
            let majorant = spec.majorant().filter(|m| **m > 0).cloned();
            match majorant {
                // ∫_X^∞ t^{−c−1} dt = X^{−c}/c
                Some(m) => {
                    let bound = move |x: &Ball| -> Result<f64, QuadError> {
                        let mf = Ball::from_rational(&m, x.prec());
                        let v = (-(&mf * &x.ln()?)).exp();
                        Ok(v.checked_div(&mf)?.upper_f64())
                    };
                    quadrature::integrate_tail_with(&integrand, t, tol, Some(&bound))?.value
                }
                None => quadrature::integrate_tail(&integrand, t, tol)?.value,
            }
        }
    };
    Ok(&c.a * &(&head + &integral))
}

/// Lehman's estimate of `Σ′_{T≤γ≤T2} φ(γ)`: the main integral widened by
/// [`lehman_bound`]. Needs no zeros.
pub fn lehman_estimate(spec: &PhiSpec, t: &Ball, t2: Option<&Ball>) -> Result<SumEstimate, EstimatorError> {
    let bound = lehman_bound(spec, t, t2)?;
    let tol = bound.upper_f64() * QUAD_TOL_FACTOR;
    let main = quadrature::main_integral(spec, t, t2, tol)?;
    let prec = t.prec().max(precision());
    let value = main.value.widen(bound.upper_f64());
    Ok(SumEstimate {
        value,
        partial_sum: Ball::from_i64_prec(0, prec),
        integral_term: main.value,
        boundary_term: Ball::from_i64_prec(0, prec),
        error_bound: bound,
        t_used: t.clone(),
        n_zeros: 0,
        method: Method::Lehman,
        rigorous: main.rigorous,
    })
}

/// `2(A₀ + A₁ log T₁)|φ′(T₁)| + (A₁ + A₂)φ(T₁)/T₁`.
pub fn e2_bound(spec: &PhiSpec, t1: &Ball) -> Result<Ball, EstimatorError> {
    let two_pi = Ball::two_pi();
    if t1.mid() < &two_pi.lower() {
        return Err(EstimatorError::Domain {
            op: "e2_bound",
            detail: format!("requires T1 >= 2π, got {t1}"),
        });
    }
    let c = ExplicitConstants::default();
    let phi = spec.eval_phi(t1)?;
    let dphi = spec.eval_dphi(t1)?;
    let first = &(&(&c.a0 + &(&c.a1 * &t1.ln()?)) * 2) * &dphi.abs();
    let second = (&(&c.a1 + &c.a2) * &phi).checked_div(t1)?;
    Ok(&first + &second)
}

/// `L(t)` as an expression.
fn l_expr() -> Expr {
    let two_pi = || Expr::Mul(Box::new(Expr::int(2)), Box::new(Expr::Pi));
    let x = Expr::Div(Box::new(Expr::Var), Box::new(two_pi()));
    let log_minus_one = Expr::Sub(Box::new(Expr::Log(Box::new(x.clone()))), Box::new(Expr::int(1)));
    Expr::Add(
        Box::new(Expr::Mul(Box::new(x), Box::new(log_minus_one))),
        Box::new(Expr::Const(Rational::from((7, 8)))),
    )
}

/// Both sides of the finite identity on `[T1, T2]`. `tol` budgets the
/// quadrature error; uncertainty from zero enclosures comes on top.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    /// `Σ′ φ(γ) − (1/2π)∫ φ log(t/2π) − [φ Q]_{T1}^{T2}`.
    pub lhs: Ball,
    /// `−∫ φ′(t) Q(t) dt`, one quadrature per inter-zero interval.
    pub rhs: Ball,
    pub e2_bound: Ball,
    pub pieces: usize,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs.overlaps(&self.rhs)
    }
}

pub fn finite_identity(
    table: &ZeroTable,
    spec: &PhiSpec,
    t1: &Ball,
    t2: &Ball,
    tol: f64,
) -> Result<IdentityCheck, EstimatorError> {
    const OP: &str = "finite_identity";
    check_start(OP, spec, t1)?;
    if t2.mid() < t1.mid() {
        return Err(EstimatorError::Domain {
            op: OP,
            detail: format!("requires T1 <= T2, got {t1} and {t2}"),
        });
    }
    let q1 = q_of(table, t1)?;
    let q2 = q_of(table, t2)?;
    let phi1 = spec.eval_phi(t1)?;
    let phi2 = spec.eval_phi(t2)?;
    let bound = e2_bound(spec, t1)?;

    let sum = weighted_partial_sum(table, spec, t1, t2)?;
    let main = quadrature::main_integral(spec, t1, Some(t2), tol / 2.0)?.value;
    let boundary = &(&phi2 * &q2) - &(&phi1 * &q1);
    let lhs = &(&sum - &main) - &boundary;

    // Breakpoints: T1, the zeros strictly inside, T2.
    let (lo, hi) = (t1.upper(), t2.lower());
    let start = table.ordinates().partition_point(|g| g.upper() < lo);
    let mut points = vec![t1.clone()];
    for g in &table.ordinates()[start..] {
        if g.lower() > hi {
            break;
        }
        points.push(g.clone());
    }
    points.push(t2.clone());
    let pieces = points.len() - 1;
    let mut n = (count_n(table, t1)?.twice / 2) as i64;
    let prec = t1.prec().max(precision());
    let mut rhs = Ball::from_i64_prec(0, prec);
    let piece_tol = tol / (2.0 * pieces as f64);
    for w in points.windows(2) {
        let q = Expr::Sub(Box::new(Expr::int(n)), Box::new(l_expr()));
        let f = Expr::Mul(Box::new(spec.d1().clone()), Box::new(q));
        // Zero enclosures make the breakpoints uncertain; that part of the
        // radius is inherent and is allowed on top of the quadrature budget.
        let mut inherent = 0.0;
        for e in [&w[0], &w[1]] {
            if e.rad() > 0.0 {
                inherent += 2.0 * f.eval(e)?.abs_upper_f64() * e.rad();
            }
        }
        let piece = quadrature::integrate_finite(&f, &w[0], &w[1], piece_tol + inherent)?;
        rhs = &rhs - &piece.value;
        n += 1;
    }
    Ok(IdentityCheck {
        lhs,
        rhs,
        e2_bound: bound,
        pieces,
    })
}

/// `(γₙ + γₙ₊₁)/2`; for the last zero of the table, the midpoint between it
/// and the height up to which the table is complete.
fn midpoint_for(op: &'static str, table: &ZeroTable, n_use: usize) -> Result<Ball, EstimatorError> {
    if n_use >= 1 && n_use == table.len() {
        let last = table.ordinates()[n_use - 1].upper();
        let height = rug::Float::with_val(last.prec(), table.height_max());
        if last < height {
            return Ok(Ball::exact(rug::Float::with_val(last.prec() + 1, &last + &height)).mul_2si(-1));
        }
    }
    if n_use == 0 || n_use >= table.len() {
        return Err(EstimatorError::Domain {
            op,
            detail: format!(
                "n = {n_use} needs 1 <= n < {} (zeros in table, up to height {}); T sits between zeros n and n+1",
                table.len(),
                table.height_max()
            ),
        });
    }
    Ok(table.midpoint_after(n_use)?)
}

fn zeros_below(table: &ZeroTable, t: &Ball) -> Result<usize, EstimatorError> {
    Ok((count_n(table, t)?.twice / 2) as usize)
}

/// Convergent case: `Σ′_{γ≥T₀} φ(γ)` from the first `n_use` zeros, the tail
/// integral from `T = (γₙ + γₙ₊₁)/2` and the boundary term `−φ(T)Q(T)`.
pub fn convergent_total(table: &ZeroTable, spec: &PhiSpec, n_use: usize) -> Result<SumEstimate, EstimatorError> {
    convergent_total_at(table, spec, &midpoint_for("convergent_total", table, n_use)?)
}

/// As [`convergent_total`] with an explicit cutoff `T`, which must lie
/// strictly between zero enclosures.
pub fn convergent_total_at(table: &ZeroTable, spec: &PhiSpec, t: &Ball) -> Result<SumEstimate, EstimatorError> {
    const OP: &str = "convergent_total";
    let t = t.clone();
    let q = q_of(table, &t)?;
    let bound = e2_bound(spec, &t)?;
    let tol = bound.upper_f64() * QUAD_TOL_FACTOR;
    let tail = quadrature::main_integral(spec, &t, None, tol).map_err(|e| match e {
        QuadError::Divergence { detail, .. } => EstimatorError::Inadmissible {
            op: OP,
            detail: format!("the tail integral diverges ({detail}); use divergent_limit"),
        },
        other => other.into(),
    })?;
    let partial = weighted_partial_sum(table, spec, spec.t0(), &t)?;
    let boundary = -(&spec.eval_phi(&t)? * &q);
    let value = (&(&partial + &tail.value) + &boundary).widen(bound.upper_f64());
    Ok(SumEstimate {
        value,
        partial_sum: partial,
        integral_term: tail.value,
        boundary_term: boundary,
        error_bound: bound,
        n_zeros: zeros_below(table, &t)?,
        t_used: t,
        method: Method::Theorem1,
        rigorous: tail.rigorous,
    })
}

fn check_log_weighted_tail(op: &'static str, spec: &PhiSpec, t: &Ball) -> Result<(), EstimatorError> {
    let ok = match spec.log_weighted_tail_converges() {
        Some(known) => known,
        None => {
            let f = Expr::Div(Box::new(spec.body().clone()), Box::new(Expr::Var));
            match quadrature::diagnose_tail(&f, t) {
                Ok(()) => true,
                Err(QuadError::Divergence { .. }) => false,
                Err(e) => return Err(e.into()),
            }
        }
    };
    if ok {
        Ok(())
    } else {
        Err(EstimatorError::Inadmissible {
            op,
            detail: format!("∫ φ(t)/t dt diverges for φ = {spec}"),
        })
    }
}

struct DivergentParts {
    t: Ball,
    partial: Ball,
    integral: Ball,
    boundary: Ball,
    bound: Ball,
    rigorous: bool,
}

fn divergent_parts(
    op: &'static str,
    table: &ZeroTable,
    spec: &PhiSpec,
    lower: &LowerLimit,
    t: &Ball,
) -> Result<DivergentParts, EstimatorError> {
    let t = t.clone();
    let q = q_of(table, &t)?;
    check_log_weighted_tail(op, spec, &t)?;
    let bound = e2_bound(spec, &t)?;
    let tol = bound.upper_f64() * QUAD_TOL_FACTOR;
    let (start, integral, rigorous) = match lower {
        LowerLimit::At(t0) => {
            check_start(op, spec, t0)?;
            let q = quadrature::main_integral(spec, t0, Some(&t), tol)?;
            (t0.clone(), q.value, q.rigorous)
        }
        LowerLimit::Regularized => {
            let form = spec.antiderivative().ok_or_else(|| EstimatorError::Domain {
                op,
                detail: format!("no closed-form antiderivative for φ = {spec}; give an explicit T0"),
            })?;
            (spec.t0().clone(), quadrature::antiderivative(form, &t)?, true)
        }
    };
    let partial = weighted_partial_sum(table, spec, &start, &t)?;
    let boundary = -(&spec.eval_phi(&t)? * &q);
    Ok(DivergentParts {
        t,
        partial,
        integral,
        boundary,
        bound,
        rigorous,
    })
}

/// Divergent case: `F(T₀) = lim (Σ′_{T₀≤γ≤T} φ(γ) − (1/2π)∫_{T₀}^{T} φ log(t/2π))`
/// estimated at `T = (γₙ + γₙ₊₁)/2` with the boundary term `−φ(T)Q(T)`.
pub fn divergent_limit(
    table: &ZeroTable,
    spec: &PhiSpec,
    lower: &LowerLimit,
    n_use: usize,
) -> Result<SumEstimate, EstimatorError> {
    let t = midpoint_for("divergent_limit", table, n_use)?;
    divergent_limit_at(table, spec, lower, &t)
}

/// As [`divergent_limit`] with an explicit cutoff `T` between zeros.
pub fn divergent_limit_at(
    table: &ZeroTable,
    spec: &PhiSpec,
    lower: &LowerLimit,
    t: &Ball,
) -> Result<SumEstimate, EstimatorError> {
    let p = divergent_parts("divergent_limit", table, spec, lower, t)?;
    let integral_term = -p.integral;
    let value = (&(&p.partial + &integral_term) + &p.boundary).widen(p.bound.upper_f64());
    Ok(SumEstimate {
        value,
        partial_sum: p.partial,
        integral_term,
        boundary_term: p.boundary,
        error_bound: p.bound,
        n_zeros: zeros_below(table, &p.t)?,
        t_used: p.t,
        method: Method::Theorem4,
        rigorous: p.rigorous,
    })
}

/// The same limit without the boundary correction: `Σ′ − ∫` at the midpoint.
pub fn naive_divergent_estimate(
    table: &ZeroTable,
    spec: &PhiSpec,
    lower: &LowerLimit,
    n_use: usize,
) -> Result<Ball, EstimatorError> {
    const OP: &str = "naive_divergent_estimate";
    let p = divergent_parts(OP, table, spec, lower, &midpoint_for(OP, table, n_use)?)?;
    Ok(&p.partial - &p.integral)
}

pub fn inv_square() -> PhiSpec {
    make_builtin(Builtin::InvSquare, std::f64::consts::TAU).expect("builtin weight")
}

pub fn inv_t() -> PhiSpec {
    make_builtin(Builtin::InvT, std::f64::consts::TAU).expect("builtin weight")
}

pub fn inv_log_sq() -> PhiSpec {
    make_builtin(Builtin::InvLogSq, C2_T0).expect("builtin weight")
}

pub fn inv_t2_plus_quarter() -> PhiSpec {
    make_builtin(Builtin::InvT2PlusQuarter, std::f64::consts::TAU).expect("builtin weight")
}

/// `c₁ = Σ 1/γ²` from the first `n` zeros.
pub fn constant_c1(table: &ZeroTable, n: usize) -> Result<SumEstimate, EstimatorError> {
    convergent_total(table, &inv_square(), n)
}

/// `c₂`, regularized with `li(T/2π)`.
pub fn constant_c2(table: &ZeroTable, n: usize) -> Result<SumEstimate, EstimatorError> {
    divergent_limit(table, &inv_log_sq(), &LowerLimit::Regularized, n)
}

/// `H = F(2π)` for `φ = 1/t`.
pub fn constant_h(table: &ZeroTable, n: usize) -> Result<SumEstimate, EstimatorError> {
    divergent_limit(table, &inv_t(), &LowerLimit::At(Ball::two_pi()), n)
}

/// `Σ 1/(γ² + ¼)` from the first `n` zeros.
pub fn quarter_shifted_sum(table: &ZeroTable, n: usize) -> Result<SumEstimate, EstimatorError> {
    convergent_total(table, &inv_t2_plus_quarter(), n)
}

/// Closed form `1 + C/2 − log(4π)/2` of `Σ 1/(γ² + ¼)`, with `C` Euler's
/// constant.
pub fn quarter_shifted_closed_form() -> Ball {
    let c = ExplicitConstants::default();
    let log4pi = (&Ball::pi() * 4).ln().expect("log 4π");
    &(&Ball::one() + &c.euler_gamma.mul_2si(-1)) - &log4pi.mul_2si(-1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::{parse_zero_table, ZeroSource};

    fn b(s: &str) -> Ball {
        Ball::from_decimal(s).unwrap()
    }

    /// First fifteen zeros to 20 digits (mpmath `zetazero`).
    const ZEROS: [&str; 15] = [
        "14.134725141734693790",
        "21.022039638771554993",
        "25.010857580145688763",
        "30.424876125859513210",
        "32.935061587739189691",
        "37.586178158825671257",
        "40.918719012147495187",
        "43.327073280914999519",
        "48.005150881167159728",
        "49.773832477672302182",
        "52.970321477714460644",
        "56.446247697063394804",
        "59.347044002602353080",
        "60.831778524609809844",
        "65.112544048081606661",
    ];

    fn table() -> ZeroTable {
        let z = ZEROS.iter().map(|s| b(s).widen(1e-18)).collect();
        ZeroTable::new(z, ZeroSource::Imported, 65.2).unwrap()
    }

    #[test]
    fn example_one_bounds() {
        let spec = inv_square();
        let t = b("1000");
        let lehman = lehman_bound(&spec, &t, None).unwrap();
        // (0.14 + 0.56 log T)/T²
        let closed = (&b("0.14") + &(&b("0.56") * &t.ln().unwrap())).checked_div(&t.sqr()).unwrap();
        assert!(lehman.overlaps(&closed));
        assert_eq!(format_bound(lehman.upper_f64()), "4.009e-6");
        let e2 = e2_bound(&spec, &t).unwrap();
        assert!((e2.mid_f64() - 9.963899e-9).abs() < 1e-14);
        assert!(lehman.mid_f64() / e2.mid_f64() >= 400.0);
    }

    #[test]
    fn example_two_bound_formula() {
        let spec = inv_log_sq();
        for t in ["50", "1000", "12345.5"] {
            let t = b(t);
            let l = (&t / &Ball::two_pi()).ln().unwrap();
            let num = &(&b("0.302") * &l) + &b("8.702");
            let displayed = num.checked_div(&(&t * &l.powi(3).unwrap())).unwrap();
            let ours = e2_bound(&spec, &t).unwrap();
            // The displayed coefficients are rounded up.
            assert!(ours.upper_f64() <= displayed.lower_f64());
            assert!(ours.mid_f64() > 0.999 * displayed.mid_f64());
        }
    }

    #[test]
    fn partial_sum_weights() {
        let t = table();
        let spec = inv_square();
        let s = weighted_partial_sum(&t, &spec, &Ball::two_pi(), &b("15")).unwrap();
        let g = b(ZEROS[0]);
        assert!(s.overlaps(&g.sqr().recip().unwrap()));
        let empty = weighted_partial_sum(&t, &spec, &b("16"), &b("16")).unwrap();
        assert!(empty.contains_f64(0.0) && empty.rad() == 0.0);
        let at_zero = t.ordinates()[1].clone();
        let half = weighted_partial_sum(&t, &spec, &b("20"), &at_zero).unwrap();
        let expect = at_zero.sqr().recip().unwrap().mul_2si(-1);
        assert!(half.overlaps(&expect) && half.rad() < 1e-15);
        assert!(weighted_partial_sum(&t, &spec, &b("20"), &b("70")).is_err());
    }

    #[test]
    fn lehman_domain() {
        let spec = inv_square();
        assert!(matches!(lehman_bound(&spec, &b("17"), None), Err(EstimatorError::Domain { .. })));
        let t = &Ball::two_pi() * &Ball::one().exp();
        let t = t.midpoint().widen(0.0);
        let t = &t + &b("0.000000001");
        let r = lehman_bound(&spec, &t, Some(&t)).unwrap();
        let expect = &b("0.56") * &(&spec.eval_phi(&t).unwrap() * &t.ln().unwrap());
        assert!(r.overlaps(&expect));
    }

    #[test]
    fn identity_on_small_range() {
        let t = table();
        for (phi, t1, t2) in [(inv_square(), "20", "50"), (inv_t(), "16", "62"), (inv_log_sq(), "22", "58.1")] {
            let c = finite_identity(&t, &phi, &b(t1), &b(t2), 1e-20).unwrap();
            assert!(c.holds(), "{phi}: {} vs {}", c.lhs, c.rhs);
            assert!(c.rhs.abs_upper_f64() <= c.e2_bound.upper_f64());
        }
        let c = finite_identity(&t, &inv_square(), &b("20"), &b("20"), 1e-20).unwrap();
        assert!(c.lhs.contains_f64(0.0) && c.rhs.contains_f64(0.0));
    }

    #[test]
    fn table_one_first_row() {
        let t = table();
        let spec = inv_log_sq();
        let fast = divergent_limit(&t, &spec, &LowerLimit::Regularized, 10).unwrap();
        assert!((fast.value.mid_f64() - -0.52733908).abs() < 5e-9, "{}", fast.value);
        assert_eq!(format!("{:.2e}", fast.error_bound.mid_f64()), "1.96e-2");
        let naive = naive_divergent_estimate(&t, &spec, &LowerLimit::Regularized, 10).unwrap();
        assert!((naive.mid_f64() - -0.49986259).abs() < 5e-9, "{naive}");
    }

    #[test]
    fn divergence_is_rejected() {
        let t = table();
        let spec = crate::phifunc::make_phi("1/log(t)", std::f64::consts::TAU).unwrap();
        let err = divergent_limit(&t, &spec, &LowerLimit::At(Ball::two_pi()), 5).unwrap_err();
        assert!(matches!(err, EstimatorError::Inadmissible { .. }), "{err}");
        let err = convergent_total(&t, &inv_t(), 5).unwrap_err();
        assert!(matches!(err, EstimatorError::Inadmissible { .. }), "{err}");
    }

    #[test]
    fn quarter_shifted_closed_form_value() {
        let v = quarter_shifted_closed_form();
        assert!(v.overlaps(&b("0.0230957089661210338143102479064952916219")));
    }

    #[test]
    fn imported_table_feeds_estimators() {
        let text: String = ZEROS.iter().map(|z| format!("{z}\n")).collect();
        let t = parse_zero_table(&text).unwrap();
        let est = constant_c1(&t, 10).unwrap();
        assert!(est.value.overlaps(&b(C1_REFERENCE)));
    }

    #[test]
    fn last_zero_uses_certified_height() {
        let t = table();
        let est = constant_c1(&t, 15).unwrap();
        assert!(est.t_used.mid_f64() > 65.11 && est.t_used.mid_f64() < 65.2);
        assert!(est.value.overlaps(&b(C1_REFERENCE)));
        assert!(constant_c1(&t, 16).is_err());
    }

    #[test]
    fn bound_formatting() {
        assert_eq!(format_bound(4.008343e-6), "4.009e-6");
        assert_eq!(format_bound(9.963899e-9), "9.964e-9");
        assert_eq!(format_bound(0.5), "5.000e-1");
        assert_eq!(format_bound(1024.0), "1.024e3");
        assert_eq!(format_upward(8.631e-4, 3), "8.64e-4");
        assert_eq!(format_upward(9.9999, 2), "1.0e1");
    }
}
