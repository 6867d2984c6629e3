//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.
//!
//! All work is done in certified mode at the default precision.

mod common;

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Float;

use zetasum_core::estimator::{
    constant_c1, constant_h, e2_bound, finite_identity, format_bound, format_upward, inv_log_sq, inv_square, inv_t,
    lehman_bound, quarter_shifted_closed_form, quarter_shifted_sum, table1_report, C1_REFERENCE, C2_T0, H_REFERENCE,
};
use zetasum_core::phifunc::{make_phi, parse_phi};
use zetasum_core::theta::{q_minus_s, theta_asymptotic, theta_reference};
use zetasum_core::zeros::{find_zeros, ZeroTable, DEFAULT_REFINE_TOL};
use zetasum_core::Ball;

/// Covers the first 10⁴ + 1 zeros (γ₁₀₀₀₁ ≈ 9878.65, γ₁₀₀₀₂ ≈ 9879.04).
const T_MAX: f64 = 9880.0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn dec(s: &str) -> Ball {
    Ball::from_decimal(s).unwrap()
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn run(id: u32, name: &str, budget: Duration, f: impl FnOnce() -> Result<Outcome, String>) -> bool {
    let start = Instant::now();
    let out = f().unwrap_or_else(|e| ok(false, format!("error: {e}")));
    let took = start.elapsed();
    let in_time = took <= budget;
    let pass = out.pass && in_time;
    let timing = if in_time {
        format!("{:.1} s", took.as_secs_f64())
    } else {
        format!("{:.1} s, over the {} s budget", took.as_secs_f64(), budget.as_secs())
    };
    println!(
        "{} {:>2} {name}: {} ({timing})",
        if pass { "PASS" } else { "FAIL" },
        id,
        out.detail
    );
    pass
}

fn criterion_1() -> Result<Outcome, String> {
    let table = find_zeros(1000.0, DEFAULT_REFINE_TOL).map_err(|e| e.to_string())?;
    let g1 = table.gamma(1).ok_or("empty table")?;
    let window = dec("14.1347251").widen(1e-6);
    let pass = table.len() == 649 && window.contains_ball(g1);
    Ok(ok(pass, format!("{} zeros up to 1000, γ₁ = {g1}", table.len())))
}

fn criterion_2() -> Result<Outcome, String> {
    let mut worst = String::new();
    let mut pass = true;
    for t in [Ball::two_pi(), dec("100"), dec("1000"), dec("10000")] {
        let a = theta_asymptotic(&t, 3).map_err(|e| e.to_string())?;
        let r = theta_reference(&t).map_err(|e| e.to_string())?;
        let q = q_minus_s(&t, 3).map_err(|e| e.to_string())?;
        let cap = (&t * 150).recip().map_err(|e| e.to_string())?;
        let within = q.upper() <= cap.lower();
        if !a.overlaps(&r) || !within {
            pass = false;
            worst = format!("t = {}: θ {a} vs {r}, Q−S {q}", t.mid_f64());
        }
    }
    let detail = if pass {
        "asymptotic and reference θ intersect; Q−S ≤ 1/(150t) at 2π, 1e2, 1e3, 1e4".to_string()
    } else {
        worst
    };
    Ok(ok(pass, detail))
}

/// Agreement to three significant figures: within half a unit of the third.
fn three_figures(ours: f64, printed: f64) -> bool {
    let unit = 10f64.powi(printed.abs().log10().floor() as i32 - 2);
    (ours - printed).abs() <= 0.5 * unit
}

fn criterion_3() -> Result<Outcome, String> {
    let spec = inv_square();
    let t = dec("1000");
    let lehman = lehman_bound(&spec, &t, None).map_err(|e| e.to_string())?.upper_f64();
    let e2 = e2_bound(&spec, &t).map_err(|e| e.to_string())?.upper_f64();
    let ratio = lehman / e2;
    let pass = three_figures(lehman, 4.009e-6) && three_figures(e2, 9.965e-9) && ratio >= 400.0;
    Ok(ok(
        pass,
        format!(
            "Lehman {} vs 4.009e-6, E₂ {} vs 9.965e-9, ratio {ratio:.1}",
            format_bound(lehman),
            format_bound(e2)
        ),
    ))
}

fn criterion_4(table: &ZeroTable) -> Result<Outcome, String> {
    let reference = dec(C1_REFERENCE);
    let small = constant_c1(table, 649).map_err(|e| e.to_string())?;
    let large = constant_c1(table, 10_000).map_err(|e| e.to_string())?;
    let pass = small.value.overlaps(&reference)
        && small.value.rad() <= 1.1e-8
        && large.value.overlaps(&reference)
        && large.value.rad() <= 4e-11;
    Ok(ok(
        pass,
        format!(
            "c₁ = {} (n = 649), {} (n = 10⁴)",
            small.value.to_decimal_string(),
            large.value.to_decimal_string()
        ),
    ))
}

fn criterion_5(table: &ZeroTable) -> Result<Outcome, String> {
    let closed = quarter_shifted_closed_form();
    let est = quarter_shifted_sum(table, 10_000).map_err(|e| e.to_string())?;
    let pass = est.value.overlaps(&closed) && est.value.rad() <= 1e-8;
    Ok(ok(
        pass,
        format!(
            "Σ 1/(γ²+¼) = {} vs 1 + C/2 − log(4π)/2 = {}",
            est.value.to_decimal_string(),
            closed.to_decimal_string()
        ),
    ))
}

fn criterion_6(table: &ZeroTable) -> Result<Outcome, String> {
    const NAIVE: [&str; 4] = ["-0.49986259", "-0.54054724", "-0.52244974", "-0.53117846"];
    const FAST: [&str; 4] = ["-0.52733908", "-0.52767238", "-0.52767173", "-0.52766980"];
    const BOUND: [&str; 4] = ["1.96e-2", "8.64e-4", "4.58e-5", "2.78e-6"];
    let report = table1_report(table, 10_000).map_err(|e| e.to_string())?;
    if report.rows.len() != 4 {
        return Ok(ok(false, format!("only {} rows", report.rows.len())));
    }
    let mut mismatches = Vec::new();
    for (i, row) in report.rows.iter().enumerate() {
        let naive = format!("{:.8}", row.naive.mid_f64());
        let fast = format!("{:.8}", row.accelerated.mid_f64());
        let bound = format_upward(row.bound.upper_f64(), 3);
        if naive != NAIVE[i] || fast != FAST[i] || bound != BOUND[i] {
            mismatches.push(format!("n = {}: {naive} {fast} {bound}", row.n));
        }
    }
    let detail = if mismatches.is_empty() {
        "rows n = 10, 10², 10³, 10⁴ match in all three columns".to_string()
    } else {
        mismatches.join("; ")
    };
    Ok(ok(mismatches.is_empty(), detail))
}

fn criterion_7(table: &ZeroTable) -> Result<Outcome, String> {
    let est = constant_h(table, 10_000).map_err(|e| e.to_string())?;
    let pass = est.value.overlaps(&dec(H_REFERENCE)) && est.value.rad() <= 6e-8;
    Ok(ok(pass, format!("H = {}", est.value.to_decimal_string())))
}

fn criterion_8(table: &ZeroTable) -> Result<Outcome, String> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for spec in [inv_t(), inv_square(), inv_log_sq()] {
        for (a, b) in [("20", "500"), ("50", "200"), ("100", "1000")] {
            let (t1, t2) = (dec(a), dec(b));
            let bound = e2_bound(&spec, &t1).map_err(|e| e.to_string())?;
            let tol = bound.upper_f64() * 1e-6;
            let c = finite_identity(table, &spec, &t1, &t2, tol).map_err(|e| e.to_string())?;
            checked += 1;
            if !c.holds() || c.rhs.abs_upper_f64() > c.e2_bound.upper_f64() {
                failures.push(format!("φ = {spec} on [{a}, {b}]: lhs {} rhs {}", c.lhs, c.rhs));
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{checked} (φ, T₁, T₂) cases: lhs ∩ rhs ≠ ∅ and |rhs| ≤ E₂ bound")
    } else {
        failures.join("; ")
    };
    Ok(ok(failures.is_empty(), detail))
}

/// Centered difference at high precision; the step is small enough that
/// truncation sits far below the tolerance.
fn finite_difference(f: &zetasum_core::phifunc::Expr, t: &Ball) -> Result<Ball, String> {
    let h = t.mul_2si(-26);
    let up = f.eval(&(t + &h)).map_err(|e| e.to_string())?;
    let down = f.eval(&(t - &h)).map_err(|e| e.to_string())?;
    (&up - &down).checked_div(&h.mul_2si(1)).map_err(|e| e.to_string())
}

fn relative_gap(a: &Ball, b: &Ball) -> f64 {
    let (x, y) = (a.mid_f64(), b.mid_f64());
    (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
}

fn criterion_9() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut texts: Vec<String> = common::BUILTIN_TEXTS.iter().map(|s| s.to_string()).collect();
    texts.extend((0..100).map(|_| common::admissible_text(&mut rng)));
    let mut worst = 0f64;
    let mut failure = None;
    for text in &texts {
        // Above the singularity of the log-square weight at 2π.
        let spec = make_phi(text, C2_T0).map_err(|e| format!("{text}: {e}"))?;
        for i in 0..20 {
            // Geometric sample over [15, 10⁴].
            let t = Ball::from_f64(15.0 * (1e4f64 / 15.0).powf(i as f64 / 19.0)).with_prec(256);
            let d1 = spec.d1().eval(&t).map_err(|e| e.to_string())?;
            let d2 = spec.d2().eval(&t).map_err(|e| e.to_string())?;
            let g1 = relative_gap(&d1, &finite_difference(spec.body(), &t)?);
            let g2 = relative_gap(&d2, &finite_difference(spec.d1(), &t)?);
            let g = g1.max(g2);
            if g > worst {
                worst = g;
            }
            if g > 1e-6 && failure.is_none() {
                failure = Some(format!("{text} at t = {}", t.mid_f64()));
            }
        }
    }
    let detail = match failure {
        None => format!("{} weights × 20 points, worst relative gap {worst:.1e}", texts.len()),
        Some(f) => format!("derivative mismatch for {f}"),
    };
    Ok(ok(worst <= 1e-6, detail))
}

fn criterion_10() -> Result<Outcome, String> {
    const TREES: usize = 10_000;
    const PREC: u32 = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut evaluated, mut attempts, mut bad) = (0, 0, 0);
    let mut first_bad = None;
    while evaluated < TREES && attempts < 20 * TREES {
        attempts += 1;
        let text = common::random_tree_text(&mut rng, 4);
        let expr = parse_phi(&text).map_err(|e| format!("{text}: {e}"))?;
        // Half the inputs are genuine intervals; the reference is taken at a
        // random point inside.
        let t_f64: f64 = rand::Rng::gen_range(&mut rng, 0.5..20.0);
        let (t, point) = if rand::Rng::gen_bool(&mut rng, 0.5) {
            let rad = t_f64 * 1e-6;
            let offset: f64 = rand::Rng::gen_range(&mut rng, -1.0..1.0);
            let p = Float::with_val(4 * PREC, t_f64) + offset * rad * 0.999;
            (Ball::new(Float::with_val(PREC, t_f64), rad), Ball::exact(p))
        } else {
            let t = Ball::exact(Float::with_val(PREC, t_f64));
            let p = t.with_prec(4 * PREC);
            (t, p)
        };
        let (Ok(low), Ok(high)) = (expr.eval(&t), expr.eval(&point)) else {
            continue;
        };
        if !low.is_finite() || !high.is_finite() {
            continue;
        }
        evaluated += 1;
        if !low.contains(high.mid()) {
            bad += 1;
            first_bad.get_or_insert(format!("{text} at t = {t_f64}: {low} vs {high}"));
        }
    }
    let pass = evaluated == TREES && bad == 0;
    let detail = match first_bad {
        None => format!("{evaluated} trees at {PREC} bits contain the {}-bit value", 4 * PREC),
        Some(s) => format!("{bad} violations, first: {s}"),
    };
    Ok(ok(pass, detail))
}

fn main() {
    let minutes = |m: u64| Duration::from_secs(60 * m);
    let mut all = true;
    all &= run(1, "zero engine", Duration::from_secs(30), criterion_1);
    all &= run(2, "theta consistency", minutes(1), criterion_2);
    all &= run(3, "Lehman vs E₂ bound at T = 1000", minutes(1), criterion_3);

    let start = Instant::now();
    let table = find_zeros(T_MAX, DEFAULT_REFINE_TOL);
    let zero_time = start.elapsed();
    println!(
        "     zeros up to {T_MAX}: {} in {:.1} s",
        table.as_ref().map(|t| t.len().to_string()).unwrap_or_else(|e| e.to_string()),
        zero_time.as_secs_f64()
    );
    match &table {
        Ok(table) => {
            let remaining = minutes(5).saturating_sub(zero_time);
            all &= run(4, "c₁ reproduction", remaining, || criterion_4(table));
            all &= run(5, "Σ 1/(γ²+¼) closed form", minutes(5), || criterion_5(table));
            all &= run(6, "c₂ convergence table", minutes(10), || criterion_6(table));
            all &= run(7, "H reproduction", minutes(5), || criterion_7(table));
            all &= run(8, "finite identity", minutes(2), || criterion_8(table));
        }
        Err(e) => {
            for (id, name) in [
                (4, "c₁ reproduction"),
                (5, "Σ 1/(γ²+¼) closed form"),
                (6, "c₂ convergence table"),
                (7, "H reproduction"),
                (8, "finite identity"),
            ] {
                println!("FAIL {id:>2} {name}: zero table unavailable: {e}");
            }
            all = false;
        }
    }
    all &= run(9, "derivative suite", minutes(5), criterion_9);
    all &= run(10, "ball containment fuzz", minutes(5), criterion_10);
    if !all {
        std::process::exit(1);
    }
}
