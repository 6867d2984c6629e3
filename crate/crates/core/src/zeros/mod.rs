//! Certified ordinates of nontrivial zeta zeros and the counting functions
//! `L(T)`, `N(T)` and `Q(T) = N(T) − L(T)`.
//!
//! Zeros are located as sign changes of Hardy's `Z` on the critical line and
//! are therefore assumed simple; a cluster the finder cannot separate is
//! reported as an error rather than guessed at.

mod finder;
mod hardy;
mod io;
pub(crate) mod rs_coeffs;

pub use finder::{find_zeros, find_zeros_with, FinderOptions, DEFAULT_REFINE_TOL};
pub use hardy::{hardy_z, hardy_z_f64, hardy_z_heuristic, RS_THRESHOLD};
pub use io::{format_zero_table, import_zeros, parse_zero_table, write_zero_table, DEFAULT_IMPORT_RADIUS};

use thiserror::Error;

use crate::numeric::{Ball, NumericError};
use crate::theta::ThetaError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZeroError {
    #[error("zeros: {op}: {detail}")]
    Domain { op: &'static str, detail: String },
    #[error("zeros: import_zeros: empty zero table")]
    EmptyTable,
    #[error("zeros: import_zeros: line {line}: {detail}")]
    Format { line: usize, detail: String },
    #[error("zeros: import_zeros: {detail}")]
    Completeness { detail: String },
    #[error(
        "zeros: find_zeros: incomplete table in [{lo}, {hi}]: expected {expected} zeros, \
         found {found} sign changes (close pair or multiple zero beyond grid resolution)"
    )]
    IncompleteTable {
        lo: f64,
        hi: f64,
        expected: usize,
        found: usize,
    },
    #[error("zeros: find_zeros: could not certify the zero bracketed by [{lo}, {hi}]")]
    Refinement { lo: f64, hi: f64 },
    #[error("zeros: {op}: T = {t} lies beyond the certified height {height_max}")]
    OutOfRange {
        op: &'static str,
        t: String,
        height_max: f64,
    },
    #[error("zeros: Q_of: T = {t} overlaps the enclosure of zero #{index}; pick a point between zeros")]
    AmbiguousQ { t: String, index: usize },
    #[error("zeros: {0}")]
    Io(String),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    Computed,
    Imported,
}

/// Sorted, pairwise disjoint enclosures of `γ_1 < γ_2 < …`, complete up to
/// `height_max`.
#[derive(Debug, Clone)]
pub struct ZeroTable {
    ordinates: Vec<Ball>,
    source: ZeroSource,
    height_max: f64,
}

impl ZeroTable {
    /// Builds a table, checking that consecutive balls are strictly ordered.
    pub fn new(ordinates: Vec<Ball>, source: ZeroSource, height_max: f64) -> Result<Self, ZeroError> {
        for (i, w) in ordinates.windows(2).enumerate() {
            if !(w[0].upper() < w[1].lower()) {
                return Err(ZeroError::Format {
                    line: i + 2,
                    detail: format!("zero {} is not strictly above zero {}", w[1], w[0]),
                });
            }
        }
        Ok(ZeroTable {
            ordinates,
            source,
            height_max,
        })
    }

    pub fn ordinates(&self) -> &[Ball] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    pub fn height_max(&self) -> f64 {
        self.height_max
    }

    /// `γ_n`, counting from 1.
    pub fn gamma(&self, n: usize) -> Option<&Ball> {
        n.checked_sub(1).and_then(|i| self.ordinates.get(i))
    }

    /// `(γ_n + γ_{n+1})/2`, an evaluation point where `N` is unambiguous.
    /// Requires `1 ≤ n < len`.
    pub fn midpoint_after(&self, n: usize) -> Result<Ball, ZeroError> {
        match (self.gamma(n), self.gamma(n + 1)) {
            (Some(a), Some(b)) => Ok((a + b).mul_2si(-1).midpoint()),
            _ => Err(ZeroError::Domain {
                op: "midpoint_after",
                detail: format!("need 1 <= n < {} (table size), got {n}", self.len()),
            }),
        }
    }

    /// The first `n` zeros, still complete up to just below `γ_{n+1}`.
    pub fn truncated(&self, n: usize) -> ZeroTable {
        let n = n.min(self.len());
        let height = match self.ordinates.get(n) {
            Some(next) => next.lower_f64().min(self.height_max),
            None => self.height_max,
        };
        ZeroTable {
            ordinates: self.ordinates[..n].to_vec(),
            source: self.source,
            height_max: height,
        }
    }
}

/// `L(T) = (T/2π)(log(T/2π) − 1) + 7/8`.
pub fn l_of(t: &Ball) -> Result<Ball, ZeroError> {
    if !t.is_positive() {
        return Err(ZeroError::Domain {
            op: "L_of",
            detail: format!("requires T > 0, got {t}"),
        });
    }
    let prec = t.prec();
    let x = t.checked_div(&(&Ball::pi_prec(prec) * 2))?;
    let v = &x * &(&x.ln()? - 1);
    Ok(&v + &Ball::from_ratio_prec(7, 8, prec))
}

/// `N(T)` under the half-weight convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroCount {
    /// Twice the count, so that half-weights stay integral.
    pub twice: u64,
    /// True when `T` overlaps at least one zero enclosure.
    pub ambiguous: bool,
}

impl ZeroCount {
    pub fn value(&self) -> f64 {
        self.twice as f64 / 2.0
    }
}

/// Number of zeros with ordinate `≤ T`. Zeros whose enclosure overlaps `T`
/// count ½ each and set the ambiguity flag.
pub fn count_n(table: &ZeroTable, t: &Ball) -> Result<ZeroCount, ZeroError> {
    if t.upper_f64() > table.height_max {
        return Err(ZeroError::OutOfRange {
            op: "count_N",
            t: t.to_string(),
            height_max: table.height_max,
        });
    }
    let lo = t.lower();
    let hi = t.upper();
    let below = table.ordinates.partition_point(|g| g.upper() < lo);
    let mut overlapping = 0u64;
    for g in &table.ordinates[below..] {
        if g.lower() > hi {
            break;
        }
        overlapping += 1;
    }
    Ok(ZeroCount {
        twice: 2 * below as u64 + overlapping,
        ambiguous: overlapping > 0,
    })
}

/// `Q(T) = N(T) − L(T)` at a point strictly between zero enclosures.
pub fn q_of(table: &ZeroTable, t: &Ball) -> Result<Ball, ZeroError> {
    let count = count_n(table, t).map_err(|e| match e {
        ZeroError::OutOfRange { t, height_max, .. } => ZeroError::OutOfRange {
            op: "Q_of",
            t,
            height_max,
        },
        other => other,
    })?;
    if count.ambiguous {
        let lo = t.lower();
        let index = table.ordinates.partition_point(|g| g.upper() < lo) + 1;
        return Err(ZeroError::AmbiguousQ {
            t: t.to_string(),
            index,
        });
    }
    let n = Ball::from_i64_prec((count.twice / 2) as i64, t.prec());
    Ok(&n - &l_of(t)?)
}
