//! The Riemann–Siegel theta function.
//!
//! Two independent evaluators are provided: the asymptotic expansion with its
//! explicit remainder (valid for `t ≥ 2π`), and a reference evaluator based on
//! `Im log Γ(1/4 + it/2)` via upward recurrence and Stirling's series. The
//! latter is used below `2π` and as an oracle for the former.

pub(crate) mod bernoulli;

use std::f64::consts::PI;

use rug::float::Round;
use rug::{Float, Rational};
use thiserror::Error;

use crate::numeric::{mag, Ball, NumericError};

pub use bernoulli::bernoulli as bernoulli_number;

/// Largest supported truncation index of the asymptotic series.
pub const MAX_TERMS: usize = 10;

/// Truncation index used when callers do not specify one.
pub const DEFAULT_TERMS: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThetaError {
    #[error("theta: {op} requires t >= 2*pi, got {t}")]
    BelowTwoPi { op: &'static str, t: String },
    #[error("theta: {op} requires 1 <= k <= {max}, got {k}", max = MAX_TERMS)]
    BadTermCount { op: &'static str, k: usize },
    #[error("theta: {op} requires {what}, got {got}")]
    Domain {
        op: &'static str,
        what: &'static str,
        got: String,
    },
    #[error("theta: {op} failed to certify: {detail}")]
    Certification { op: &'static str, detail: String },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// The first `k` terms of the asymptotic expansion of `θ(t)`.
#[derive(Debug, Clone)]
pub struct ThetaExpansion {
    k: usize,
    bernoulli: Vec<Rational>,
}

impl ThetaExpansion {
    pub fn new(k: usize) -> Result<Self, ThetaError> {
        if !(1..=MAX_TERMS).contains(&k) {
            return Err(ThetaError::BadTermCount {
                op: "expansion",
                k,
            });
        }
        let bernoulli = (1..=k).map(|j| bernoulli::bernoulli(2 * j)).collect();
        Ok(ThetaExpansion { k, bernoulli })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `B_2, B_4, …, B_2k`.
    pub fn bernoulli(&self) -> &[Rational] {
        &self.bernoulli
    }

    /// `(1 − 2^{1−2j}) |B_2j| / (4j(2j−1))`, the coefficient of `t^{1−2j}`.
    fn coefficient(&self, j: usize) -> Rational {
        let b = Rational::from(self.bernoulli[j - 1].abs_ref());
        let two_pow = Rational::from(1u64 << (2 * j - 1));
        let factor = Rational::from(1) - Rational::from(1) / two_pow;
        let den = Rational::from(4 * j as u64 * (2 * j as u64 - 1));
        b * factor / den
    }

    /// `Σ_{j≤k} coefficient_j / t^{2j−1}`.
    pub fn series(&self, t: &Ball) -> Result<Ball, ThetaError> {
        let prec = t.prec();
        let inv = t.recip()?;
        let inv2 = inv.sqr();
        let mut pow = inv;
        let mut acc = Ball::from_i64_prec(0, prec);
        for j in 1..=self.k {
            let c = Ball::from_rational(&self.coefficient(j), prec);
            acc = &acc + &(&c * &pow);
            pow = &pow * &inv2;
        }
        Ok(acc)
    }

    /// Upper bound for `|θ(t) − asymptotic_k(t)|` over the ball `t`.
    pub fn remainder_bound(&self, t: &Ball) -> Result<f64, ThetaError> {
        let prec = t.prec();
        let lo = Ball::exact(t.lower());
        let k = self.k as i64;
        let b = Ball::from_rational(&Rational::from(self.bernoulli[self.k - 1].abs_ref()), prec);
        let sqrt_pik = (&Ball::pi_prec(prec) * k).sqrt()?;
        let den = &lo.powi(2 * k - 1)? * (4 * k * (2 * k - 1));
        let main = (&(&sqrt_pik * &b)).checked_div(&den)?;
        let exp_term = (-(&Ball::pi_prec(prec) * &lo)).exp().mul_2si(-1);
        Ok((&main + &exp_term).upper_f64())
    }
}

fn require_two_pi(op: &'static str, t: &Ball) -> Result<(), ThetaError> {
    if t.mid_f64() < 2.0 * PI {
        return Err(ThetaError::BelowTwoPi {
            op,
            t: t.to_string(),
        });
    }
    Ok(())
}

/// `(t/2)(log(t/2π) − 1) − π/8`.
fn leading_terms(t: &Ball) -> Result<Ball, ThetaError> {
    let prec = t.prec();
    let pi = Ball::pi_prec(prec);
    let log = t.checked_div(&pi.mul_2si(1))?.ln()?;
    let main = &t.mul_2si(-1) * &(&log - 1);
    Ok(&main - &pi.mul_2si(-3))
}

/// `θ(t)` from the first `k` terms of its asymptotic expansion, widened by the
/// explicit remainder bound.
pub fn theta_asymptotic(t: &Ball, k: usize) -> Result<Ball, ThetaError> {
    require_two_pi("theta_asymptotic", t)?;
    let exp = ThetaExpansion::new(k)?;
    let value = &leading_terms(t)? + &exp.series(t)?;
    Ok(value.widen(exp.remainder_bound(t)?))
}

/// Enclosure of `Q(t) − S(t) = θ(t)/π + 1 − L(t)` from its `k`-term series.
pub fn q_minus_s(t: &Ball, k: usize) -> Result<Ball, ThetaError> {
    require_two_pi("q_minus_s", t)?;
    let exp = ThetaExpansion::new(k)?;
    let prec = t.prec();
    let pi = Ball::pi_prec(prec);
    let value = exp.series(t)?.checked_div(&pi)?;

    let lo = Ball::exact(t.lower());
    let kk = k as i64;
    let b = Ball::from_rational(&Rational::from(exp.bernoulli[k - 1].abs_ref()), prec);
    let sqrt_pik = (&pi * kk).sqrt()?;
    let den = &(&sqrt_pik * &lo.powi(2 * kk - 1)?) * (4 * (2 * kk - 1));
    let main = b.checked_div(&den)?;
    let exp_term = (-(&pi * &lo)).exp().checked_div(&pi.mul_2si(1))?;
    Ok(value.widen((&main + &exp_term).upper_f64()))
}

/// Reference `θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π`.
///
/// The argument is shifted to `w = z + m` with `|w|` large, Stirling's series
/// is summed until its bounded remainder drops below the working precision,
/// and the shift is undone with `Σ arg(z + j)`. Everything is done in real
/// arithmetic, since `Im[(w − 1/2) log w − w] = (Re w − 1/2) arg w + Im w log|w| − Im w`.
pub fn theta_reference(t: &Ball) -> Result<Ball, ThetaError> {
    if t.mid_f64() < 0.0 {
        return Err(ThetaError::Domain {
            op: "theta_reference",
            what: "t >= 0",
            got: t.to_string(),
        });
    }
    let out_prec = t.prec();
    let prec = out_prec + 32;
    let t = t.with_prec(prec);
    let b = t.mul_2si(-1);
    let b_f = b.mid_f64().abs();

    // Shift so that |w| >= r; r grows with precision so the optimally
    // truncated Stirling series reaches 2^-prec.
    let r = (0.4 * f64::from(prec)).max(12.0);
    let m = if b_f >= r {
        0
    } else {
        ((r * r - b_f * b_f).sqrt() - 0.25).ceil().max(0.0) as i64
    };

    let quarter = Ball::from_ratio_prec(1, 4, prec);
    let mut shift = Ball::from_i64_prec(0, prec);
    for j in 0..m {
        let re = &quarter + j;
        shift = &shift + &b.checked_div(&re)?.atan();
    }

    let a = &quarter + m;
    let abs2 = &a.sqr() + &b.sqr();
    let abs = abs2.sqrt()?;
    let ln_abs = abs2.ln()?.mul_2si(-1);
    let arg = b.checked_div(&a)?.atan();
    let half = Ball::from_ratio_prec(1, 2, prec);
    let main = &(&(&(&a - &half) * &arg) + &(&b * &ln_abs)) - &b;

    // sec^2(arg/2) = 2|w| / (|w| + Re w), bounded above in f64.
    let sec2 = mag::div(
        mag::mul(2.0, abs.upper_f64()),
        mag::down(abs.lower_f64() + a.lower_f64()),
    );
    let tol = mag::pow2(-(i64::from(prec)) - 2) * (1.0 + b_f * b_f.max(1.0).ln());
    let inv_abs = abs.recip()?;
    let inv_abs2 = inv_abs.sqr();
    let mut pw = inv_abs.clone();
    let mut series = Ball::from_i64_prec(0, prec);
    let mut tail = f64::INFINITY;
    let mut sec_pow = sec2;
    let max_terms = (4.0 * r) as usize + 8;
    for j in 1..=max_terms {
        let jj = j as i64;
        let bj = Ball::from_rational(&bernoulli::bernoulli(2 * j), prec);
        let c = bj.checked_div(&Ball::from_i64_prec(2 * jj * (2 * jj - 1), prec))?;
        let angle = &arg * (1 - 2 * jj);
        series = &series + &(&(&c * &pw) * &angle.sin());
        pw = &pw * &inv_abs2;

        // Remainder after j terms: |B_{2j+2}| / ((2j+2)(2j+1)|w|^{2j+1}) · sec^{2j+2}.
        let bn = Ball::from_rational(&Rational::from(bernoulli::bernoulli(2 * j + 2).abs_ref()), prec);
        let bound = (&bn * &pw).checked_div(&Ball::from_i64_prec((2 * jj + 2) * (2 * jj + 1), prec))?;
        sec_pow = mag::mul(sec_pow, sec2);
        let bound = mag::mul(bound.upper_f64(), sec_pow);
        // Stop once the bound is small enough, or once the series starts to
        // diverge; either way `bound` is the remainder of what was summed.
        let diverging = bound > tail;
        tail = bound;
        if tail <= tol || diverging {
            break;
        }
    }

    let lgamma_im = &(&main + &series) - &shift;
    let ln_pi = Ball::pi_prec(prec).ln()?;
    let theta = &lgamma_im - &(&b * &ln_pi);
    Ok(theta.widen(tail).with_prec(out_prec))
}

/// Best available enclosure of `θ(t)`: the 10-term expansion when its
/// remainder is below the working precision, the reference evaluator otherwise.
pub fn theta(t: &Ball) -> Result<Ball, ThetaError> {
    let tf = t.lower_f64();
    if tf >= 2.0 * PI {
        // |B_20| = 529.124…; the expansion remainder is about 3.9/t^19.
        let est = 4.0 * tf.powi(-19) + 0.5 * (-PI * tf).exp();
        let need = mag::pow2(-(i64::from(t.prec())) - 4) * tf.max(1.0);
        if est < need {
            return theta_asymptotic(t, MAX_TERMS);
        }
    }
    theta_reference(t)
}

/// Coefficients of `t^{1−2j}` in the expansion, as `f64`.
const COEF_F64: [f64; 5] = [
    1.0 / 48.0,
    7.0 / 5760.0,
    31.0 / 80640.0,
    127.0 / 430080.0,
    511.0 / 1216512.0,
];

/// `θ(t)` in hardware floating point, accurate to a few ulps of `θ` for
/// `t ≥ 0`. Used by the fast root search only.
pub(crate) fn theta_f64(t: f64) -> f64 {
    if t >= 20.0 {
        let mut acc = 0.5 * t * ((t / (2.0 * PI)).ln() - 1.0) - PI / 8.0;
        let inv = 1.0 / t;
        let mut pw = inv;
        for c in COEF_F64 {
            acc += c * pw;
            pw *= inv * inv;
        }
        return acc;
    }
    // Shift Stirling's series out to |w| >= 20.
    let b = 0.5 * t;
    let m = ((400.0 - b * b).max(0.0).sqrt() - 0.25).ceil().max(0.0) as i64;
    let shift: f64 = (0..m).map(|j| (b / (j as f64 + 0.25)).atan()).sum();
    let a = m as f64 + 0.25;
    let abs = a.hypot(b);
    let arg = b.atan2(a);
    let mut v = (a - 0.5) * arg + b * abs.ln() - b;
    let bern = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
    for (i, bj) in bern.iter().enumerate() {
        let j = (i + 1) as f64;
        v += bj / (2.0 * j * (2.0 * j - 1.0)) * abs.powf(1.0 - 2.0 * j) * ((1.0 - 2.0 * j) * arg).sin();
    }
    v - shift - b * PI.ln()
}

/// `θ'(t)` from the expansion; adequate for Newton steps when `t ≥ 7`.
pub(crate) fn theta_prime_f64(t: f64) -> f64 {
    let mut acc = 0.5 * (t / (2.0 * PI)).ln();
    let inv2 = 1.0 / (t * t);
    let mut pw = inv2;
    for (i, c) in COEF_F64.iter().enumerate() {
        acc -= (2 * i + 1) as f64 * c * pw;
        pw *= inv2;
    }
    acc
}

/// Gram point `g_n` in hardware floating point.
pub(crate) fn gram_point_f64(n: i64) -> f64 {
    let target = n as f64 * PI;
    let mut lo = 7.0;
    let mut hi = 20.0;
    while theta_f64(hi) < target {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if theta_f64(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    let mut g = 0.5 * (lo + hi);
    for _ in 0..3 {
        g -= (theta_f64(g) - target) / theta_prime_f64(g);
    }
    g
}

/// The Gram point `g_n`, i.e. the unique `g ≥ 7` with `θ(g) = nπ`.
///
/// A floating-point bracket seeds Newton iteration at the working precision;
/// the result is certified by checking the sign of `θ − nπ` at both ends of
/// the returned ball (θ is increasing on `[7, ∞)`).
pub fn gram_point(n: i64) -> Result<Ball, ThetaError> {
    if n < -1 {
        return Err(ThetaError::Domain {
            op: "gram_point",
            what: "n >= -1",
            got: n.to_string(),
        });
    }
    let prec = crate::numeric::precision();
    let target = &Ball::pi_prec(prec + 16) * n;
    let mut g = Float::with_val(prec, gram_point_f64(n));
    for _ in 0..64 {
        let th = theta(&Ball::exact(g.clone()))?;
        let f = Float::with_val(prec, th.mid() - target.mid());
        let step = Float::with_val(prec, &f / theta_prime_f64(g.to_f64()));
        g -= &step;
        if step.is_zero() || mag::abs_up(&step) <= mag::ulp(&g) {
            break;
        }
    }

    let slope = theta_prime_f64(g.to_f64());
    let th = theta(&Ball::exact(g.clone()))?;
    let resid = (&th - &target).abs_upper_f64();
    let mut delta = (4.0 * resid / slope).max(16.0 * mag::ulp(&g));
    for _ in 0..40 {
        let lo = Float::with_val_round(prec, &g - delta, Round::Up).0;
        let hi = Float::with_val_round(prec, &g + delta, Round::Down).0;
        let below = (&theta(&Ball::exact(lo))? - &target).is_negative();
        let above = (&theta(&Ball::exact(hi))? - &target).is_positive();
        if below && above {
            return Ok(Ball::new(g, delta.next_up()));
        }
        delta *= 8.0;
    }
    Err(ThetaError::Certification {
        op: "gram_point",
        detail: format!("no sign change of theta - {n}*pi around {}", g.to_f64()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(s: &str) -> Ball {
        Ball::from_decimal(s).unwrap()
    }

    #[test]
    fn expansion_bernoulli_values() {
        let e = ThetaExpansion::new(3).unwrap();
        assert_eq!(e.bernoulli()[0], Rational::from((1, 6)));
        assert_eq!(e.bernoulli()[1], Rational::from((-1, 30)));
        assert_eq!(e.bernoulli()[2], Rational::from((1, 42)));
        assert!(ThetaExpansion::new(0).is_err());
        assert!(ThetaExpansion::new(11).is_err());
    }

    #[test]
    fn reference_at_zero() {
        let v = theta_reference(&Ball::zero()).unwrap();
        assert!(v.contains_f64(0.0));
        assert!(v.rad() < 1e-30);
    }

    #[test]
    fn reference_near_first_zero() {
        // mpmath: siegeltheta(14.134725) at 50 digits.
        let v = theta_reference(&ball("14.134725")).unwrap();
        assert!(v.is_negative());
        assert!((&v - &ball("-1.728670304117276516")).abs_upper_f64() < 1e-17);
    }

    #[test]
    fn reference_matches_oracle_values() {
        // mpmath.siegeltheta at 40 digits.
        let cases = [
            ("50", "26.46136607016140965"),
            ("100", "87.97216523178721963"),
            ("1000", "2034.546428038031609"),
        ];
        for (t, want) in cases {
            let v = theta_reference(&ball(t)).unwrap();
            let w = ball(want);
            let d = (&v - &w).abs_upper_f64();
            assert!(d < 1e-15, "t={t}: {v} vs {want}");
            assert!(v.rad() < 1e-30, "t={t}: radius {}", v.rad());
        }
    }

    #[test]
    fn asymptotic_at_two_pi() {
        let t = Ball::two_pi();
        let a = theta_asymptotic(&t, 3).unwrap();
        let r = theta_reference(&t).unwrap();
        assert!(a.overlaps(&r));
        // mpmath: siegeltheta(2*pi)
        assert!((&r - &ball("-3.530971066598538046")).abs_upper_f64() < 1e-17);
    }

    #[test]
    fn asymptotic_rejects_small_t() {
        assert!(matches!(
            theta_asymptotic(&ball("6"), 3),
            Err(ThetaError::BelowTwoPi { .. })
        ));
        assert!(q_minus_s(&ball("1"), 3).is_err());
    }

    #[test]
    fn k1_and_k3_overlap() {
        let t = ball("100");
        let a1 = theta_asymptotic(&t, 1).unwrap();
        let a3 = theta_asymptotic(&t, 3).unwrap();
        assert!(a1.overlaps(&a3));
    }

    #[test]
    fn remainder_at_two_pi_within_bound() {
        let t = Ball::two_pi();
        let e = ThetaExpansion::new(3).unwrap();
        let rem = e.remainder_bound(&t).unwrap() / PI;
        let series = e.series(&t).unwrap().upper_f64() / PI;
        assert!(rem + series <= 1.0 / (150.0 * 2.0 * PI));
    }

    #[test]
    fn q_minus_s_examples() {
        let q = q_minus_s(&Ball::two_pi(), 3).unwrap();
        assert!(q.upper_f64() <= 1.0 / (150.0 * 2.0 * PI));
        let q = q_minus_s(&ball("100"), 3).unwrap();
        assert!(q.lower_f64() >= 0.0 && q.upper_f64() <= 1.0 / 15000.0);
        // 150·t·(Q − S) tends to 150/(48π) = 0.99472… from above.
        let limit = 150.0 / (48.0 * PI);
        let mut last = f64::INFINITY;
        for t in ["1000", "10000", "100000", "1000000"] {
            let tb = ball(t);
            let v = (&q_minus_s(&tb, 3).unwrap() * &(&tb * 150)).mid_f64();
            assert!(v > 0.994 && v < 1.0, "t={t}: {v}");
            assert!(v >= limit && v <= last);
            last = v;
        }
        assert!(last - limit < 1e-12);
    }

    #[test]
    fn gram_points() {
        let g0 = gram_point(0).unwrap();
        assert!((&g0 - &ball("17.845599540410860817")).abs_upper_f64() < 1e-17);
        let g1 = gram_point(1).unwrap();
        assert!((&g1 - &ball("23.170282701246309279")).abs_upper_f64() < 1e-17);
        let gm = gram_point(-1).unwrap();
        assert!((&gm - &ball("9.6669080561301921")).abs_upper_f64() < 1e-15);
        assert!(gram_point(-2).is_err());
    }

    #[test]
    fn f64_paths_agree() {
        for t in [0.5, 3.0, 9.0, 19.9, 20.0, 150.0, 5000.0] {
            let r = theta_reference(&Ball::from_f64(t)).unwrap().mid_f64();
            let f = theta_f64(t);
            assert!((r - f).abs() <= 1e-12 * r.abs().max(1.0), "t={t}: {r} vs {f}");
        }
    }
}
