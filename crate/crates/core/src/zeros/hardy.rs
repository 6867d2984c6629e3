//! Hardy's `Z(t) = e^{iθ(t)} ζ(1/2 + it)`.
//!
//! Below [`RS_THRESHOLD`] the certified path sums the Euler–Maclaurin series
//! for `ζ` with Backlund's remainder bound. Above it the Riemann–Siegel formula
//! is used with corrections `C_0 … C_4` and Gabcke's explicit remainder bound.
//! The Euler–Maclaurin path also serves as a fallback whenever the
//! Riemann–Siegel enclosure is too wide to decide the sign.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use rug::{Integer, Rational};

use super::rs_coeffs::corrections;
use super::ZeroError;
use crate::numeric::complex::ComplexBall;
use crate::numeric::{mag, Ball};
use crate::theta::{self, bernoulli::bernoulli};

/// Height from which the Riemann–Siegel formula is preferred.
///
/// Gabcke's bound `|R_4(t)| ≤ 0.017 t^{-11/4}` holds for `t ≥ 200`; at 1000 it
/// is already below 10⁻¹⁰, which keeps sign decisions cheap at the default
/// zero tolerance of 10⁻⁹.
pub const RS_THRESHOLD: f64 = 1000.0;

/// Gabcke's constant for the remainder after `C_4`, valid for `t ≥ 200`.
const GABCKE_D4: f64 = 0.017;
const GABCKE_MIN_T: f64 = 200.0;

/// `(ln n, n^{-1/2})` for `n = 1, 2, …`, cached per precision.
fn log_table(prec: u32, n_max: usize) -> Arc<Vec<(Ball, Ball)>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<(Ball, Ball)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("log cache poisoned");
    if let Some(v) = map.get(&prec) {
        if v.len() >= n_max {
            return Arc::clone(v);
        }
    }
    let mut v: Vec<(Ball, Ball)> = map.get(&prec).map(|a| (**a).clone()).unwrap_or_default();
    let target = n_max.max(2 * v.len());
    for n in v.len() + 1..=target {
        let b = Ball::from_i64_prec(n as i64, prec);
        let ln = b.ln().expect("log of a positive integer");
        let inv_sqrt = b.sqrt().expect("sqrt of a positive integer").recip().expect("nonzero");
        v.push((ln, inv_sqrt));
    }
    let arc = Arc::new(v);
    map.insert(prec, Arc::clone(&arc));
    arc
}

/// `B_{2k}/(2k)!` as exact rationals.
fn em_coefficient(k: usize) -> Rational {
    let mut fact = Integer::from(1);
    for j in 2..=(2 * k) as u32 {
        fact *= j;
    }
    bernoulli(2 * k) / Rational::from(fact)
}

/// Enclosure of `ζ(1/2 + it)` by Euler–Maclaurin summation.
pub(crate) fn zeta_em(t: &Ball) -> Result<ComplexBall, ZeroError> {
    let prec = t.prec() + 16;
    let t = t.with_prec(prec);
    let t_abs = t.abs_upper_f64();
    let n_terms = (t_abs / PI).ceil() as usize + 20;
    let logs = log_table(prec, n_terms);

    let half = Ball::from_ratio_prec(1, 2, prec);
    let s = ComplexBall::new(half.clone(), t.clone());

    let mut sum = ComplexBall::real(Ball::from_i64_prec(0, prec));
    for (ln, inv_sqrt) in logs.iter().take(n_terms - 1) {
        let term = ComplexBall::cis(&-(&t * ln)).scale(inv_sqrt);
        sum = &sum + &term;
    }

    let (ln_n, inv_sqrt_n) = &logs[n_terms - 1];
    let n_big = Ball::from_i64_prec(n_terms as i64, prec);
    let n_pow = ComplexBall::cis(&-(&t * ln_n)).scale(inv_sqrt_n); // N^{-s}
    let s_minus_1 = ComplexBall::new(-&half, t.clone());
    let head = n_pow.scale(&n_big).checked_div(&s_minus_1)?;
    sum = &sum + &head;
    sum = &sum + &n_pow.scale(&half);

    // T_k = B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}; the Pochhammer
    // factors are divided by N as they are introduced to keep magnitudes tame.
    let inv_n = n_big.recip()?;
    let mut prod = (&s * &n_pow).scale(&inv_n); // s · N^{−s−1}
    let tol = mag::pow2(-(i64::from(prec)));
    let mut prev = f64::INFINITY;
    let mut k = 1usize;
    let remainder = loop {
        if k > 1 {
            let a = ComplexBall::new(&half + (2 * k as i64 - 3), t.clone()).scale(&inv_n);
            let b = ComplexBall::new(&half + (2 * k as i64 - 2), t.clone()).scale(&inv_n);
            prod = &(&prod * &a) * &b;
        }
        let coef = Ball::from_rational(&em_coefficient(k), prec);
        let term = prod.scale(&coef);
        // Backlund: stopping before T_k leaves |R| ≤ |s + 2k − 1| / (σ + 2k − 1) · |T_k|.
        let sk = ComplexBall::new(&half + (2 * k as i64 - 1), t.clone());
        let factor = mag::div(sk.abs_upper(), mag::down(0.5 + (2 * k - 1) as f64));
        let bound = mag::mul(factor, term.abs_upper());
        if bound <= tol || bound > prev || k >= 400 {
            break bound;
        }
        prev = bound;
        sum = &sum + &term;
        k += 1;
    };
    Ok(sum.widen(remainder))
}

fn rotate(theta: &Ball, zeta: &ComplexBall) -> Ball {
    let (s, c) = theta.sin_cos();
    &(&c * &zeta.re) - &(&s * &zeta.im)
}

/// `Z(t)` via Euler–Maclaurin for any `t ≥ 0`.
pub(crate) fn hardy_z_em(t: &Ball) -> Result<Ball, ZeroError> {
    let zeta = zeta_em(t)?;
    let th = theta::theta(&t.with_prec(t.prec() + 16))?;
    Ok(rotate(&th, &zeta).with_prec(t.prec()))
}

/// `Z(t)` via Riemann–Siegel. Returns `None` when the ball `t` straddles a
/// change of the main-sum length, or lies below Gabcke's range in certified
/// mode.
pub(crate) fn hardy_z_rs(t: &Ball, certified: bool) -> Result<Option<Ball>, ZeroError> {
    if certified && t.lower_f64() < GABCKE_MIN_T {
        return Ok(None);
    }
    let prec = t.prec() + 16;
    let t = t.with_prec(prec);
    let two_pi = &Ball::pi_prec(prec) * 2;
    let a = t.checked_div(&two_pi)?.sqrt()?;
    let n = a.mid_f64().floor();
    if !(a.lower_f64() >= n && a.upper_f64() < n + 1.0) || n < 1.0 {
        return Ok(None);
    }
    let n = n as usize;
    let logs = log_table(prec, n);
    let th = theta::theta(&t)?;

    let mut main = Ball::from_i64_prec(0, prec);
    for (ln, inv_sqrt) in logs.iter().take(n) {
        let arg = &th - &(&t * ln);
        main = &main + &(&arg.cos() * inv_sqrt);
    }
    main = main.mul_2si(1);

    let x = &(&a - n as i64) - &Ball::from_ratio_prec(1, 2, prec);
    let inv_a = a.recip()?;
    let cs = &corrections().c;
    let used = if certified { 5 } else { 3 };
    let mut corr = Ball::from_i64_prec(0, prec);
    let mut pw = Ball::from_i64_prec(1, prec);
    let mut last = 0.0;
    for c in cs.iter().take(used) {
        let term = &c.eval(&x) * &pw;
        last = term.abs_upper_f64();
        corr = &corr + &term;
        pw = &pw * &inv_a;
    }
    let scale = a.sqrt()?.recip()?;
    let mut corr = &corr * &scale;
    if n % 2 == 0 {
        corr = -corr;
    }
    let value = &main + &corr;
    let rad = if certified {
        let tl = t.lower_f64();
        mag::mul(GABCKE_D4, mag::up(tl.powf(-2.75) * (1.0 + 1e-12)))
    } else {
        mag::mul(10.0, mag::mul(last, scale.upper_f64()))
    };
    Ok(Some(value.widen(rad).with_prec(prec - 16)))
}

fn check_domain(t: &Ball) -> Result<(), ZeroError> {
    if t.mid_f64() < 0.0 || !t.is_finite() {
        return Err(ZeroError::Domain {
            op: "hardy_z",
            detail: format!("requires t >= 0, got {t}"),
        });
    }
    Ok(())
}

/// Certified enclosure of `Z(t)`.
pub fn hardy_z(t: &Ball) -> Result<Ball, ZeroError> {
    check_domain(t)?;
    if t.lower_f64() >= RS_THRESHOLD {
        if let Some(z) = hardy_z_rs(t, true)? {
            if !z.contains_zero() {
                return Ok(z);
            }
        }
    }
    hardy_z_em(t)
}

/// `Z(t)` with the Riemann–Siegel remainder replaced by ten times the last
/// correction term used (`C_2`). Not certified.
pub fn hardy_z_heuristic(t: &Ball) -> Result<Ball, ZeroError> {
    check_domain(t)?;
    if t.lower_f64() >= RS_THRESHOLD {
        if let Some(z) = hardy_z_rs(t, false)? {
            return Ok(z);
        }
    }
    hardy_z_em(t)
}

fn em_coefficients_f64() -> &'static [f64] {
    static CELL: OnceLock<Vec<f64>> = OnceLock::new();
    CELL.get_or_init(|| (1..=40).map(|k| em_coefficient(k).to_f64()).collect())
}

#[derive(Clone, Copy)]
struct C64(f64, f64);

impl C64 {
    fn mul(self, o: C64) -> C64 {
        C64(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn add(self, o: C64) -> C64 {
        C64(self.0 + o.0, self.1 + o.1)
    }
    fn scale(self, k: f64) -> C64 {
        C64(self.0 * k, self.1 * k)
    }
    fn div(self, o: C64) -> C64 {
        let d = o.0 * o.0 + o.1 * o.1;
        C64((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    fn abs(self) -> f64 {
        self.0.hypot(self.1)
    }
}

fn zeta_em_f64(t: f64) -> C64 {
    let n_terms = (t / PI).ceil() as usize + 10;
    let mut sum = C64(0.0, 0.0);
    for n in 1..n_terms {
        let nf = n as f64;
        let (s, c) = (-t * nf.ln()).sin_cos();
        sum = sum.add(C64(c, s).scale(1.0 / nf.sqrt()));
    }
    let nf = n_terms as f64;
    let (sn, cn) = (-t * nf.ln()).sin_cos();
    let n_pow = C64(cn, sn).scale(1.0 / nf.sqrt());
    sum = sum.add(n_pow.scale(nf).div(C64(-0.5, t)));
    sum = sum.add(n_pow.scale(0.5));
    let s = C64(0.5, t);
    let mut poch = s;
    let mut n_factor = n_pow.scale(1.0 / nf);
    for (i, coef) in em_coefficients_f64().iter().enumerate() {
        let k = i + 1;
        if k > 1 {
            poch = poch
                .mul(C64(0.5 + (2 * k - 3) as f64, t))
                .mul(C64(0.5 + (2 * k - 2) as f64, t));
            n_factor = n_factor.scale(1.0 / (nf * nf));
        }
        let term = poch.mul(n_factor).scale(*coef);
        sum = sum.add(term);
        if term.abs() < 1e-17 * sum.abs().max(1e-3) {
            break;
        }
    }
    sum
}

fn hardy_z_rs_f64(t: f64) -> f64 {
    let a = (t / (2.0 * PI)).sqrt();
    let n = a.floor() as usize;
    let th = theta::theta_f64(t);
    let mut main = 0.0;
    for k in 1..=n {
        let kf = k as f64;
        main += (th - t * kf.ln()).cos() / kf.sqrt();
    }
    let x = a - n as f64 - 0.5;
    let cs = &corrections().c;
    let mut corr = 0.0;
    let mut pw = 1.0;
    for c in cs.iter() {
        corr += c.eval_f64(x) * pw;
        pw /= a;
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * main + sign * corr / a.sqrt()
}

/// `Z(t)` in hardware floating point; used only to steer the root search.
pub fn hardy_z_f64(t: f64) -> f64 {
    if t >= RS_THRESHOLD {
        hardy_z_rs_f64(t)
    } else {
        let z = zeta_em_f64(t);
        let th = theta::theta_f64(t);
        let (s, c) = th.sin_cos();
        c * z.0 - s * z.1
    }
}
