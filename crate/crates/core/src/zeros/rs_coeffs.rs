//! Riemann–Siegel correction coefficients `C_0 … C_4`.
//!
//! With `x = p − 1/2` the kernel `Ψ(x) = −cos(2πx² − 5π/8)/cos(2πx)` is even
//! and entire. Its Taylor coefficients are obtained by series division in ball
//! arithmetic; each `C_k` is a fixed combination of derivatives of `Ψ`, so it
//! becomes a polynomial in `x` plus a truncation radius.
//!
//! The truncation radius uses Cauchy's estimate on `|x| = R`:
//! `|a_n| ≤ M/R^n` with `M ≥ max |Ψ|` on that circle. The numerator is at most
//! `cosh(2πR²)` there, and `|cos(2πx)|` is bounded below by covering the circle
//! with small arcs and evaluating `cos²(Re) + sinh²(Im)` in ball arithmetic.

use std::sync::OnceLock;

use rug::Float;

use crate::numeric::{mag, Ball};

/// Series degree kept for `Ψ`.
const DEGREE: usize = 128;
/// Internal precision of the series arithmetic; absorbs the cancellation in
/// the division recurrence.
const SERIES_PREC: u32 = 1024;
/// Precision at which the final polynomial coefficients are stored.
const STORE_PREC: u32 = 320;
/// Cauchy circle radius.
const CAUCHY_R: f64 = 2.0;
/// Arcs used to bound `|cos(2πx)|` from below on the circle.
const ARCS: usize = 4096;

/// One correction coefficient as a polynomial in `y = x²`, multiplied by `x`
/// when the coefficient is odd.
pub(crate) struct CorrectionPoly {
    coeffs: Vec<Ball>,
    coeffs_f64: Vec<f64>,
    odd: bool,
    /// Bound on the neglected tail for `|x| ≤ 1/2`.
    tail: f64,
}

impl CorrectionPoly {
    pub fn eval(&self, x: &Ball) -> Ball {
        let y = x.sqr();
        let mut acc = Ball::from_i64_prec(0, x.prec());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &y) + c;
        }
        if self.odd {
            acc = &acc * x;
        }
        acc.widen(self.tail)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let y = x * x;
        let mut acc = 0.0;
        for c in self.coeffs_f64.iter().rev() {
            acc = acc * y + c;
        }
        if self.odd {
            acc * x
        } else {
            acc
        }
    }

    #[cfg(test)]
    pub fn tail(&self) -> f64 {
        self.tail
    }
}

pub(crate) struct Corrections {
    pub c: [CorrectionPoly; 5],
}

pub(crate) fn corrections() -> &'static Corrections {
    static CELL: OnceLock<Corrections> = OnceLock::new();
    CELL.get_or_init(build)
}

/// Dense Taylor coefficients of `cos(a·x^power)` or `sin(a·x^power)`.
fn trig_series(a: &Ball, power: usize, sine: bool) -> Vec<Ball> {
    let prec = SERIES_PREC;
    let mut out = vec![Ball::from_i64_prec(0, prec); DEGREE + 1];
    // term_m = a^m / m!, m = 0, 1, 2, …
    let mut term = Ball::from_i64_prec(1, prec);
    let mut m = 0usize;
    loop {
        let deg = m * power;
        if deg > DEGREE {
            break;
        }
        let use_term = if sine { m % 2 == 1 } else { m % 2 == 0 };
        if use_term {
            out[deg] = if (m / 2) % 2 == 0 { term.clone() } else { -&term };
        }
        m += 1;
        term = (&term * a).checked_div(&Ball::from_i64_prec(m as i64, prec)).unwrap();
    }
    out
}

/// Taylor coefficients of `Ψ` up to `DEGREE`.
fn psi_series() -> Vec<Ball> {
    let prec = SERIES_PREC;
    let two_pi = &Ball::pi_prec(prec) * 2;
    let phase = &Ball::pi_prec(prec) * &Ball::from_ratio_prec(5, 8, prec);
    let (s5, c5) = phase.sin_cos();

    // −cos(2πx² − 5π/8) = −cos(2πx²)cos(5π/8) − sin(2πx²)sin(5π/8)
    let cos_sq = trig_series(&two_pi, 2, false);
    let sin_sq = trig_series(&two_pi, 2, true);
    let num: Vec<Ball> = cos_sq
        .iter()
        .zip(&sin_sq)
        .map(|(c, s)| -(&(c * &c5) + &(s * &s5)))
        .collect();
    let den = trig_series(&two_pi, 1, false);

    let mut q: Vec<Ball> = Vec::with_capacity(DEGREE + 1);
    for n in 0..=DEGREE {
        let mut acc = num[n].clone();
        for k in 1..=n {
            if den[k].is_exact() && den[k].mid().is_zero() {
                continue;
            }
            acc = &acc - &(&den[k] * &q[n - k]);
        }
        q.push(acc.checked_div(&den[0]).unwrap());
    }
    q
}

/// Upper bound on `max |Ψ|` over `|x| = R`.
fn cauchy_bound() -> f64 {
    let prec = 128;
    let r = Ball::from_f64_prec(CAUCHY_R, prec);
    let two_pi = &Ball::pi_prec(prec) * 2;
    let step = 2.0 * std::f64::consts::PI / ARCS as f64;
    let mut min_den = f64::INFINITY;
    for i in 0..ARCS {
        let phi = Ball::from_f64_prec((i as f64 + 0.5) * step, prec).widen(0.5 * step * (1.0 + 1e-9));
        let (s, c) = phi.sin_cos();
        let re = &(&two_pi * &r) * &c;
        let im = &(&two_pi * &r) * &s;
        let cos_re = re.cos();
        let e = im.exp();
        let sinh = (&e - &e.recip().unwrap()).mul_2si(-1);
        let v = &cos_re.sqr() + &sinh.sqr();
        min_den = min_den.min(v.lower_f64());
    }
    assert!(min_den > 0.0, "cos(2πx) vanishes near the Cauchy circle");
    let den = mag::down(min_den.sqrt());
    let num = Ball::from_f64_prec(2.0 * std::f64::consts::PI * CAUCHY_R * CAUCHY_R, prec);
    let e = num.exp();
    let cosh = (&e + &e.recip().unwrap()).mul_2si(-1);
    mag::div(cosh.upper_f64(), den)
}

/// Upper bound on `Σ_{n>D} (M/R^n) · n^m · (1/2)^{n−m}`, the tail of the
/// `m`-th derivative of `Ψ` for `|x| ≤ 1/2`.
fn derivative_tail(m_bound: f64, m: u32) -> f64 {
    let q = 1.0 / (2.0 * CAUCHY_R);
    let mut sum = 0.0;
    let mut n = DEGREE + 1;
    loop {
        let term = (n as f64).powi(m as i32) * q.powi(n as i32) * 2f64.powi(m as i32);
        sum += term;
        // Ratio of consecutive terms is below ((n+1)/n)^m·q; once that is ≤ 1/2
        // the remaining sum is at most the current term.
        let ratio = ((n + 1) as f64 / n as f64).powi(m as i32) * q;
        if ratio <= 0.5 && term <= sum * 1e-20 {
            sum += term;
            break;
        }
        n += 1;
    }
    // Generous slack for the f64 arithmetic above.
    mag::up(m_bound * sum * 1.01)
}

fn build() -> Corrections {
    let psi = psi_series();
    let m_bound = cauchy_bound();
    let prec = SERIES_PREC;
    let pi = Ball::pi_prec(prec);
    let pi2 = pi.sqr();
    let pi4 = pi2.sqr();
    let pi6 = &pi4 * &pi2;
    let pi8 = pi4.sqr();

    // Derivative m of Ψ as dense coefficients in x.
    let deriv = |m: usize| -> Vec<Ball> {
        (m..=DEGREE)
            .map(|n| {
                let mut f = Float::with_val(prec, 1);
                for j in 0..m {
                    f *= (n - j) as u32;
                }
                &psi[n] * &Ball::exact(f)
            })
            .collect()
    };

    // Each C_k = Σ (numerator/denominator·π^{2e}) · Ψ^{(m)}.
    let terms: [&[(i64, i64, usize, u32)]; 5] = [
        &[(1, 1, 0, 0)],
        &[(-1, 96, 3, 1)],
        &[(1, 64, 2, 1), (1, 18432, 6, 2)],
        &[(-1, 64, 1, 1), (-1, 3840, 5, 2), (-1, 5308416, 9, 3)],
        &[
            (1, 128, 0, 1),
            (19, 24576, 4, 2),
            (11, 5898240, 8, 3),
            (1, 2038431744, 12, 4),
        ],
    ];
    let pis = [Ball::from_i64_prec(1, prec), pi2, pi4, pi6, pi8];

    let build_one = |k: usize| -> CorrectionPoly {
        let mut dense = vec![Ball::from_i64_prec(0, prec); DEGREE + 1];
        let mut tail = 0.0;
        for &(num, den, m, e) in terms[k] {
            let factor = Ball::from_ratio_prec(num, den, prec).checked_div(&pis[e as usize]).unwrap();
            for (i, c) in deriv(m).iter().enumerate() {
                dense[i] = &dense[i] + &(c * &factor);
            }
            tail = mag::add(tail, mag::mul(factor.abs_upper_f64(), derivative_tail(m_bound, m as u32)));
        }
        let odd = k % 2 == 1;
        let start = usize::from(odd);
        let coeffs: Vec<Ball> = dense
            .iter()
            .skip(start)
            .step_by(2)
            .map(|b| b.with_prec(STORE_PREC))
            .collect();
        let coeffs_f64 = coeffs.iter().map(Ball::mid_f64).collect();
        CorrectionPoly {
            coeffs,
            coeffs_f64,
            odd,
            tail,
        }
    };

    Corrections {
        c: [build_one(0), build_one(1), build_one(2), build_one(3), build_one(4)],
    }
}
