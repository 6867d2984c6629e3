//! Zero-table text format.
//!
//! UTF-8, one entry per line: `ordinate` or `ordinate<TAB>radius`, ascending.
//! Lines starting with `#` are comments, except `# height_max: <t>`, which
//! declares the table complete up to `t`. Published tables with one ordinate
//! per line load as-is and are taken to be complete up to their last entry.

use std::fmt::Write as _;
use std::path::Path;

use super::{ZeroError, ZeroSource, ZeroTable};
use crate::numeric::{format_float, format_radius, mag, Ball};
use crate::theta::theta_f64;

/// Radius assumed for entries that do not state one.
pub const DEFAULT_IMPORT_RADIUS: f64 = 1e-9;

/// Significant digits written per ordinate.
const WRITE_DIGITS: usize = 24;

pub fn import_zeros(path: impl AsRef<Path>) -> Result<ZeroTable, ZeroError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ZeroError::Io(format!("import_zeros: {}: {e}", path.display())))?;
    parse_zero_table(&text)
}

pub fn parse_zero_table(text: &str) -> Result<ZeroTable, ZeroError> {
    let mut zeros: Vec<Ball> = Vec::new();
    let mut declared: Option<f64> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("height_max:") {
                let v = v.trim();
                declared = Some(v.parse::<f64>().ok().filter(|h| h.is_finite() && *h > 0.0).ok_or_else(|| {
                    ZeroError::Format {
                        line: line_no,
                        detail: format!("malformed height_max {v:?}"),
                    }
                })?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() > 2 {
            return Err(ZeroError::Format {
                line: line_no,
                detail: format!("expected `ordinate` or `ordinate<TAB>radius`, got {line:?}"),
            });
        }
        let bad = |what: &str| ZeroError::Format {
            line: line_no,
            detail: format!("malformed {what} in {line:?}"),
        };
        let ordinate = Ball::from_decimal(fields[0]).map_err(|_| bad("ordinate"))?;
        let radius = match fields.get(1) {
            Some(r) => {
                let rb = Ball::from_decimal(r).map_err(|_| bad("radius"))?;
                if rb.is_negative() {
                    return Err(bad("radius"));
                }
                rb.upper_f64().max(0.0)
            }
            None => DEFAULT_IMPORT_RADIUS,
        };
        let entry = ordinate.widen(radius);
        if !entry.is_positive() {
            return Err(ZeroError::Format {
                line: line_no,
                detail: format!("ordinate must be positive, got {entry}"),
            });
        }
        if let Some(prev) = zeros.last() {
            if !(prev.upper() < entry.lower()) {
                return Err(ZeroError::Format {
                    line: line_no,
                    detail: format!("entries must be strictly increasing: {entry} after {prev}"),
                });
            }
        }
        zeros.push(entry);
    }
    if zeros.is_empty() {
        return Err(ZeroError::EmptyTable);
    }
    check_counts(&zeros)?;
    let last = zeros.last().map(Ball::upper_f64).unwrap_or(0.0);
    let last_lower = zeros.last().map(Ball::lower_f64).unwrap_or(0.0);
    let height_max = match declared {
        Some(h) if h >= last => {
            check_count_at(h, zeros.len())?;
            h
        }
        // Re-exported tables widen entries; a height inside the last
        // enclosure adds nothing.
        Some(h) if h >= last_lower => last,
        Some(h) => {
            return Err(ZeroError::Completeness {
                detail: format!("declared height_max {h} is below the last entry {last}"),
            })
        }
        None => last,
    };
    ZeroTable::new(zeros, ZeroSource::Imported, height_max)
}

/// The declared completeness height must agree with the counting formula for
/// `count` zeros below it.
fn check_count_at(h: f64, count: usize) -> Result<(), ZeroError> {
    let bound = s_bound(h).ok_or_else(|| ZeroError::Completeness {
        detail: format!("height_max {h} is beyond the supported height 6.8e6"),
    })?;
    let smooth = theta_f64(h) / std::f64::consts::PI + 1.0;
    if (count as f64 - smooth).abs() >= bound + 1e-6 {
        return Err(ZeroError::Completeness {
            detail: format!(
                "{count} zeros below the declared height_max {h} disagree with the counting formula \
                 θ(t)/π + 1 = {smooth:.4} beyond |S| < {bound}"
            ),
        });
    }
    Ok(())
}

/// Largest `|S(t)|` known below `t`: below 1 up to 280, below 2 up to 6.8·10⁶.
fn s_bound(t: f64) -> Option<f64> {
    if t < 280.0 {
        Some(1.0)
    } else if t < 6.8e6 {
        Some(2.0)
    } else {
        None
    }
}

/// `N(t) = θ(t)/π + 1 + S(t)` must be consistent with the known bounds on `S`
/// just below and just above every entry; a missing or extra zero shifts `S`
/// by one and is caught whenever that leaves the admissible range.
fn check_counts(zeros: &[Ball]) -> Result<(), ZeroError> {
    for (i, z) in zeros.iter().enumerate() {
        let t = z.mid_f64();
        let bound = s_bound(t).ok_or_else(|| ZeroError::Completeness {
            detail: format!("entry {} at {t} is beyond the supported height 6.8e6", i + 1),
        })?;
        let smooth = theta_f64(t) / std::f64::consts::PI + 1.0;
        let above = (i + 1) as f64 - smooth;
        let below = above - 1.0;
        let slack = 1e-6;
        if above.abs() >= bound + slack || below.abs() >= bound + slack {
            return Err(ZeroError::Completeness {
                detail: format!(
                    "entry {} at {t}: count {} disagrees with the counting formula θ(t)/π + 1 = {smooth:.4} \
                     beyond |S| < {bound} (missing or extra zeros)",
                    i + 1,
                    i + 1
                ),
            });
        }
    }
    Ok(())
}

/// Renders a table in the text format. Printed ordinates are rounded to
/// 24 significant digits and the radius is enlarged to cover that rounding.
pub fn format_zero_table(table: &ZeroTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# zetasum zero table");
    let _ = writeln!(out, "# zeros: {}", table.len());
    let _ = writeln!(out, "# height_max: {}", table.height_max());
    let _ = writeln!(out, "# columns: ordinate<TAB>radius");
    for z in table.ordinates() {
        let text = format_float(z.mid(), WRITE_DIGITS);
        let printed = Ball::from_decimal_prec(&text, z.prec().max(128)).expect("formatted float parses");
        let shift = (&printed - &z.midpoint()).abs_upper_f64();
        let rad = mag::up(mag::add(z.rad(), shift) * (1.0 + 1e-12));
        let _ = writeln!(out, "{text}\t{}", format_radius(rad));
    }
    out
}

pub fn write_zero_table(table: &ZeroTable, path: impl AsRef<Path>) -> Result<(), ZeroError> {
    let path = path.as_ref();
    std::fs::write(path, format_zero_table(table))
        .map_err(|e| ZeroError::Io(format!("write_zero_table: {}: {e}", path.display())))
}
