//! Gauss–Legendre nodes and weights as certified balls.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::numeric::Ball;

pub(crate) struct Rule {
    pub nodes: Vec<Ball>,
    pub weights: Vec<Ball>,
}

/// `(P_n(x), P_n′(x))` by the three-term recurrence.
fn legendre(n: usize, x: &Ball) -> (Ball, Ball) {
    let prec = x.prec();
    let mut p0 = Ball::from_i64_prec(1, prec);
    let mut p1 = x.clone();
    for k in 2..=n {
        let k = k as i64;
        let a = &(&(x * &p1) * (2 * k - 1)) - &(&p0 * (k - 1));
        let p2 = &a / &Ball::from_i64_prec(k, prec);
        p0 = p1;
        p1 = p2;
    }
    // (1 − x²) P_n′ = n (P_{n−1} − x P_n)
    let one_minus = &Ball::from_i64_prec(1, prec) - &x.sqr();
    let dp = (&(&p0 - &(x * &p1)) * n as i64).checked_div(&one_minus);
    (p1, dp.unwrap_or_else(|_| Ball::new(Float::with_val(prec, 0), f64::INFINITY)))
}

fn f64_legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (p0 - x * p1) / (1.0 - x * x))
}

fn build(n: usize, prec: u32) -> Rule {
    let work = prec + 64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..8 {
            let (p, dp) = f64_legendre(n, x);
            x -= p / dp;
        }
        // Newton at full precision, then certify the root by a sign change.
        let mut xb = Ball::from_f64_prec(x, work);
        for _ in 0..10 {
            let (p, dp) = legendre(n, &xb);
            xb = (&xb - &(&p / &dp)).midpoint();
        }
        let r = Ball::from_f64_prec(2f64.powi(-(prec as i32) - 16), work);
        let lo = &xb - &r;
        let hi = &xb + &r;
        let (plo, _) = legendre(n, &lo);
        let (phi, _) = legendre(n, &hi);
        let bracket = matches!((plo.sign(), phi.sign()), (Some(a), Some(b)) if a * b < 0);
        assert!(bracket, "Gauss–Legendre node {i} of {n} failed to certify");
        let node = Ball::from_interval(lo.mid(), hi.mid());
        let (_, dp) = legendre(n, &node);
        let one_minus = &Ball::from_i64_prec(1, work) - &node.sqr();
        let w = Ball::from_i64_prec(2, work)
            .checked_div(&(&one_minus * &dp.sqr()))
            .expect("Gauss–Legendre weight");
        nodes.push(node.with_prec(prec));
        weights.push(w.with_prec(prec));
    }
    Rule { nodes, weights }
}

/// The `n`-point rule at the given precision, computed once and cached.
pub(crate) fn rule(n: usize, prec: u32) -> Arc<Rule> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<Rule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&(n, prec)) {
        return r.clone();
    }
    let r = Arc::new(build(n, prec));
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert((n, prec), r.clone());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_integrate_polynomials() {
        let r = rule(15, 128);
        let total: Ball = r.weights.iter().cloned().sum();
        assert!(total.contains_f64(2.0));
        // ∫_{-1}^{1} x^28 dx = 2/29, exact for the 15-point rule.
        let mut acc = Ball::from_i64_prec(0, 128);
        for (x, w) in r.nodes.iter().zip(&r.weights) {
            acc = &acc + &(w * &x.powi(28).unwrap());
        }
        assert!(acc.overlaps(&Ball::from_ratio_prec(2, 29, 128)));
        assert!(acc.rad() < 1e-30);
    }
}
