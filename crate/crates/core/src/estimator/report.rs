use std::fmt::Write as _;

use super::{divergent_limit, inv_log_sq, naive_divergent_estimate, EstimatorError, LowerLimit};
use crate::numeric::Ball;
use crate::zeros::ZeroTable;

pub const TABLE1_ROWS: [usize; 5] = [10, 100, 1_000, 10_000, 100_000];

/// One row of the `c₂` convergence table.
#[derive(Debug, Clone)]
pub struct Table1Row {
    pub n: usize,
    pub t: Ball,
    pub naive: Ball,
    pub accelerated: Ball,
    pub bound: Ball,
}

#[derive(Debug, Clone)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
    /// Set when the table was too short for some requested rows.
    pub notice: Option<String>,
}

/// Naive and boundary-corrected estimates of `c₂` for `n = 10, 100, …` up to
/// `max_n`, skipping rows the table cannot support.
pub fn table1_report(table: &ZeroTable, max_n: usize) -> Result<Table1Report, EstimatorError> {
    let spec = inv_log_sq();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &n in TABLE1_ROWS.iter().filter(|&&n| n <= max_n) {
        if n >= table.len() {
            skipped.push(n);
            continue;
        }
        let acc = divergent_limit(table, &spec, &LowerLimit::Regularized, n)?;
        let naive = naive_divergent_estimate(table, &spec, &LowerLimit::Regularized, n)?;
        rows.push(Table1Row {
            n,
            t: acc.t_used,
            naive,
            accelerated: acc.value.clone(),
            bound: acc.error_bound,
        });
    }
    let notice = (!skipped.is_empty()).then(|| {
        let list: Vec<String> = skipped.iter().map(|n| n.to_string()).collect();
        format!(
            "rows n = {} need more than the {} zeros available",
            list.join(", "),
            table.len()
        )
    });
    Ok(Table1Report { rows, notice })
}

impl Table1Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:>7}  {:>14}  {:>12}  {:>12}  {:>9}", "n", "T", "naive", "accelerated", "bound");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:>7}  {:>14.6}  {:>12.8}  {:>12.8}  {:>9}",
                r.n,
                r.t.mid_f64(),
                r.naive.mid_f64(),
                r.accelerated.mid_f64(),
                super::format_bound(r.bound.upper_f64()),
            );
        }
        if let Some(n) = &self.notice {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,T,naive,accelerated,bound\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{:.10},{:.10},{}",
                r.n,
                r.t.mid_f64(),
                r.naive.mid_f64(),
                r.accelerated.mid_f64(),
                super::format_upward(r.bound.upper_f64(), 3)
            );
        }
        s
    }
}
