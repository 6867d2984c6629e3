use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use zetasum_core::estimator::{
    self, convergent_total, convergent_total_at, divergent_limit, divergent_limit_at, e2_bound, format_bound,
    lehman_bound, lehman_estimate, table1_report, EstimatorError, LowerLimit, SumEstimate, C1_REFERENCE,
    C2_REFERENCE, C2_T0, H_REFERENCE, TABLE1_ROWS,
};
use zetasum_core::numeric::set_precision;
use zetasum_core::phifunc::{make_phi, PhiError, PhiSpec};
use zetasum_core::zeros::{
    find_zeros_with, import_zeros, l_of, write_zero_table, FinderOptions, ZeroError, ZeroTable, DEFAULT_REFINE_TOL,
};
use zetasum_core::Ball;

use crate::{Cli, Command, Constant, EstimateArgs, Method, Mode, ZerosAction, ZerosArg};

const PRECISION_ENV: &str = "ZETASUM_PRECISION_BITS";
const FAST_PRECISION: u32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cli: {op}: {detail}")]
    Usage { op: &'static str, detail: String },
    #[error("cli: {op}: {path}: {source}")]
    Io {
        op: &'static str,
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Zeros(#[from] ZeroError),
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
}

fn usage(op: &'static str, detail: impl Into<String>) -> CliError {
    CliError::Usage {
        op,
        detail: detail.into(),
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    configure_precision(cli.precision, cli.mode)?;
    let out = match cli.command {
        Command::Zeros { action } => cmd_zeros(action, cli.mode)?,
        Command::Estimate(args) => cmd_estimate(args, cli.mode)?,
        Command::Constants { which, n, zeros } => cmd_constants(which, n, &zeros, cli.mode)?,
        Command::Table1 { max_n, csv, zeros } => cmd_table1(max_n, csv.as_deref(), &zeros, cli.mode)?,
        Command::CompareBounds { phi, t } => cmd_compare_bounds(&phi, &t)?,
    };
    print!("{out}");
    if cli.mode == Mode::Fast {
        println!("note: fast mode, results are not certified");
    }
    Ok(())
}

fn configure_precision(flag: Option<u32>, mode: Mode) -> Result<(), CliError> {
    let bits = match flag {
        Some(b) => Some(b),
        None => match std::env::var(PRECISION_ENV) {
            Ok(v) => Some(v.trim().parse::<u32>().map_err(|_| {
                usage("configure", format!("{PRECISION_ENV} must be a positive integer, got {v:?}"))
            })?),
            Err(_) => None,
        },
    };
    match (bits, mode) {
        (Some(0), _) => return Err(usage("configure", "precision must be positive")),
        (Some(b), _) => set_precision(b),
        (None, Mode::Fast) => set_precision(FAST_PRECISION),
        (None, Mode::Certified) => {}
    }
    Ok(())
}

fn parse_ball(op: &'static str, what: &str, text: &str) -> Result<Ball, CliError> {
    Ball::from_decimal(text).map_err(|_| usage(op, format!("{what} must be a decimal number, got {text:?}")))
}

fn finder(t_max: f64, tol: f64, mode: Mode) -> FinderOptions {
    FinderOptions {
        t_max,
        refine_tol: tol,
        certified: mode == Mode::Certified,
    }
}

/// Smallest height by which at least `n` zeros are expected, from `L(t) = n`
/// plus a small margin for the fluctuation `Q`.
fn height_for(n: usize) -> Result<f64, CliError> {
    let target = n as f64 + 3.0;
    let l = |t: f64| -> Result<f64, CliError> { Ok(l_of(&Ball::from_f64(t))?.mid_f64()) };
    let (mut lo, mut hi) = (7.0, 20.0);
    while l(hi)? < target {
        hi *= 2.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if l(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Default refinement, widened where f64 brackets cannot resolve it.
fn auto_tol(t_max: f64) -> f64 {
    DEFAULT_REFINE_TOL.max(128.0 * f64::EPSILON * t_max)
}

/// The first `n` zeros (or more), located from scratch.
fn first_zeros(n: usize, tol: Option<f64>, mode: Mode) -> Result<ZeroTable, CliError> {
    let mut t_max = height_for(n)?;
    loop {
        let tol = tol.unwrap_or_else(|| auto_tol(t_max));
        let table = find_zeros_with(&finder(t_max, tol, mode))?;
        if table.len() >= n {
            return Ok(table);
        }
        t_max *= 1.02;
    }
}

fn load_zeros(arg: &ZerosArg, need_n: Option<usize>, need_t: Option<f64>, mode: Mode) -> Result<ZeroTable, CliError> {
    if arg.zeros != "compute" {
        return Ok(import_zeros(&arg.zeros)?);
    }
    match (need_n, need_t) {
        (Some(n), _) => first_zeros(n, None, mode),
        (None, Some(t)) => {
            let t_max = t * (1.0 + 1e-9) + 1e-6;
            Ok(find_zeros_with(&finder(t_max, auto_tol(t_max), mode))?)
        }
        (None, None) => Err(usage("load_zeros", "need --n or --T to decide how many zeros to compute")),
    }
}

fn table_summary(table: &ZeroTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} zeros", table.len());
    let _ = writeln!(s, "height_max  {}", table.height_max());
    if let (Some(first), Some(last)) = (table.ordinates().first(), table.ordinates().last()) {
        let _ = writeln!(s, "first       {first}");
        let _ = writeln!(s, "last        {last}");
    }
    s
}

fn cmd_zeros(action: ZerosAction, mode: Mode) -> Result<String, CliError> {
    match action {
        ZerosAction::Find { t_max, n, out, tol } => {
            if let Some(tol) = tol.filter(|t| !(*t > 0.0)) {
                return Err(usage("zeros find", format!("--tol must be positive, got {tol}")));
            }
            let table = match (t_max, n) {
                (Some(t), _) => find_zeros_with(&finder(t, tol.unwrap_or_else(|| auto_tol(t)), mode))?,
                (None, Some(n)) => first_zeros(n, tol, mode)?.truncated(n),
                (None, None) => return Err(usage("zeros find", "give --t-max or --n")),
            };
            let mut s = table_summary(&table);
            if let Some(path) = out {
                write_zero_table(&table, &path)?;
                let _ = writeln!(s, "wrote {}", path.display());
            }
            Ok(s)
        }
        ZerosAction::Import { input } => {
            let table = import_zeros(&input)?;
            Ok(format!("imported {}\n{}", input.display(), table_summary(&table)))
        }
        ZerosAction::Info { input } => {
            let table = import_zeros(&input)?;
            let mut s = table_summary(&table);
            let z = table.ordinates();
            let max_rad = z.iter().map(Ball::rad).fold(0.0, f64::max);
            let min_gap = z
                .windows(2)
                .map(|w| w[1].lower_f64() - w[0].upper_f64())
                .fold(f64::INFINITY, f64::min);
            let _ = writeln!(s, "max radius  {max_rad:.3e}");
            if min_gap.is_finite() {
                let _ = writeln!(s, "min gap     {min_gap:.6}");
            }
            Ok(s)
        }
    }
}

fn weight(text: &str, t0: Option<f64>) -> Result<PhiSpec, CliError> {
    // The log-square weight is singular at 2π, so its domain starts later.
    let default = if text == "builtin:inv_log_sq" { C2_T0 } else { std::f64::consts::TAU };
    Ok(make_phi(text, t0.unwrap_or(default))?)
}

fn cmd_estimate(args: EstimateArgs, mode: Mode) -> Result<String, CliError> {
    const OP: &str = "estimate";
    let spec = weight(&args.phi, args.t0)?;
    let t = args.t.as_deref().map(|s| parse_ball(OP, "--T", s)).transpose()?;
    if args.n.is_none() && t.is_none() {
        return Err(usage(OP, "give --n or --T"));
    }
    let est: SumEstimate = match args.method {
        Method::Lehman => {
            let t = match (t, args.n) {
                (Some(t), _) => t,
                (None, Some(n)) => load_zeros(&args.zeros, Some(n + 1), None, mode)?.midpoint_after(n)?,
                (None, None) => unreachable!(),
            };
            lehman_estimate(&spec, &t, None)?
        }
        Method::Theorem1 | Method::Theorem4 => {
            let table = load_zeros(
                &args.zeros,
                args.n.map(|n| n + 1),
                t.as_ref().map(|t| t.upper_f64()),
                mode,
            )?;
            if args.method == Method::Theorem1 {
                match (&t, args.n) {
                    (Some(t), _) => convergent_total_at(&table, &spec, t)?,
                    (None, Some(n)) => convergent_total(&table, &spec, n)?,
                    _ => unreachable!(),
                }
            } else {
                let lower = match (args.t0, spec.antiderivative()) {
                    (None, Some(_)) => LowerLimit::Regularized,
                    _ => LowerLimit::At(spec.t0().clone()),
                };
                match (&t, args.n) {
                    (Some(t), _) => divergent_limit_at(&table, &spec, &lower, t)?,
                    (None, Some(n)) => divergent_limit(&table, &spec, &lower, n)?,
                    _ => unreachable!(),
                }
            }
        }
    };
    Ok(format!("phi            {spec}\n{est}\n"))
}

fn cmd_constants(which: Constant, n: usize, zeros: &ZerosArg, mode: Mode) -> Result<String, CliError> {
    let table = load_zeros(zeros, Some(n + 1), None, mode)?;
    let (name, est, reference) = match which {
        Constant::C1 => ("c1 = Σ 1/γ²", estimator::constant_c1(&table, n)?, C1_REFERENCE),
        Constant::C2 => (
            "c2 = lim Σ′ 1/log²(γ/2π) − li(T/2π)",
            estimator::constant_c2(&table, n)?,
            C2_REFERENCE,
        ),
        Constant::H => (
            "H = lim Σ′ 1/γ − log²(T/2π)/4π",
            estimator::constant_h(&table, n)?,
            H_REFERENCE,
        ),
    };
    Ok(format!("{name}\n{est}\nreference      {reference}\n"))
}

fn cmd_table1(max_n: usize, csv: Option<&Path>, zeros: &ZerosArg, mode: Mode) -> Result<String, CliError> {
    let largest = TABLE1_ROWS
        .iter()
        .copied()
        .filter(|&n| n <= max_n)
        .max()
        .ok_or_else(|| usage("table1", format!("--max-n must be at least {}", TABLE1_ROWS[0])))?;
    let table = load_zeros(zeros, Some(largest + 1), None, mode)?;
    let report = table1_report(&table, max_n)?;
    let mut s = report.to_text();
    if let Some(path) = csv {
        std::fs::write(path, report.to_csv()).map_err(|source| CliError::Io {
            op: "table1",
            path: path.display().to_string(),
            source,
        })?;
        let _ = writeln!(s, "wrote {}", path.display());
    }
    Ok(s)
}

fn cmd_compare_bounds(phi: &str, t: &str) -> Result<String, CliError> {
    let spec = weight(phi, None)?;
    let t = parse_ball("compare-bounds", "--T", t)?;
    let lehman = lehman_bound(&spec, &t, None)?.upper_f64();
    let e2 = e2_bound(&spec, &t)?.upper_f64();
    Ok(format!(
        "phi            {spec}\nT              {t}\nLehman bound   {}\nE2 bound       {}\nratio          {:.2}\n",
        format_bound(lehman),
        format_bound(e2),
        lehman / e2
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use zetasum_core::numeric::precision;

    #[test]
    fn height_estimate_covers_requested_count() {
        for n in [1, 10, 649, 10_000] {
            let t = height_for(n).unwrap();
            let l = l_of(&Ball::from_f64(t)).unwrap().mid_f64();
            assert!(l >= n as f64 + 2.9, "n = {n}: L({t}) = {l}");
        }
    }

    #[test]
    fn precision_is_configurable() {
        configure_precision(Some(200), Mode::Certified).unwrap();
        assert_eq!(precision(), 200);
        assert!(configure_precision(Some(0), Mode::Certified).is_err());
        configure_precision(Some(128), Mode::Certified).unwrap();
    }
}
