use super::QuadError;
use crate::numeric::{mag, Ball};

/// Logarithmic integral `li(x)` for `x > 1`, principal value.
///
/// Uses `li(x) = γ + log log x + Σ_{n≥1} uⁿ/(n·n!)` with `u = log x`. Once
/// `u/(n+1) ≤ ½` the neglected terms are dominated by a geometric series with
/// ratio ½, so the tail is at most twice the first omitted term.
pub fn li(x: &Ball) -> Result<Ball, QuadError> {
    if !(x.lower_f64() > 1.0) {
        return Err(QuadError::Domain {
            op: "li",
            detail: format!("requires x > 1, got {x}"),
        });
    }
    let prec = x.prec();
    let u = x.ln()?;
    let u_hi = u.abs_upper_f64();
    let eps = mag::pow2(-(i64::from(prec)) - 4);

    let mut power = Ball::from_i64_prec(1, prec); // uⁿ/n!
    let mut sum = Ball::from_i64_prec(0, prec);
    let mut n = 1i64;
    loop {
        power = &(&power * &u) / &Ball::from_i64_prec(n, prec);
        sum = &sum + &(&power / &Ball::from_i64_prec(n, prec));
        n += 1;
        // First omitted term, bounded above using |u| ≤ u_hi.
        let next = mag::div(mag::mul(power.abs_upper_f64(), u_hi), (n * n) as f64);
        if u_hi / (n as f64 + 1.0) <= 0.5 && next <= eps * sum.abs_lower_f64().max(1.0) {
            sum = sum.widen(mag::mul(2.0, next));
            break;
        }
        if n > 100_000 {
            return Err(QuadError::Convergence {
                op: "li",
                detail: format!("series did not converge for x = {x}"),
            });
        }
    }
    Ok(&(&Ball::euler_gamma_prec(prec) + &u.ln()?) + &sum)
}
