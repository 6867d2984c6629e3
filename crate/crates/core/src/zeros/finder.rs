//! Zero location by Gram-block scanning.
//!
//! Gram points `g_n` (θ(g_n) = nπ) are sampled in order. A Gram point is
//! *good* when `(−1)^n Z(g_n) > 0`; between consecutive good Gram points
//! `g_j < g_k` the block is expected to hold `k − j` zeros. A block showing
//! fewer sign changes is subdivided (up to 64 parts per Gram interval); a
//! deficit that survives is reported rather than papered over.
//!
//! Every sign used for counting and every zero enclosure is decided by a
//! certified `Z` enclosure unless the fast mode is requested.

use rug::Float;

use super::hardy::{hardy_z, hardy_z_f64};
use super::{ZeroError, ZeroSource, ZeroTable};
use crate::numeric::{precision, Ball};
use crate::theta::gram_point_f64;

/// Default half-width target for zero enclosures.
pub const DEFAULT_REFINE_TOL: f64 = 1e-9;

/// Largest height the finder accepts.
pub const MAX_HEIGHT: f64 = 1e6;

/// Finest subdivision of a Gram interval tried when a block is short.
const MAX_SUBDIVISION: usize = 64;

/// Give up if no good Gram point turns up within this many steps.
const MAX_BLOCK: i64 = 200;

#[derive(Debug, Clone)]
pub struct FinderOptions {
    pub t_max: f64,
    pub refine_tol: f64,
    /// `false` selects the fast mode: hardware floats only, radii set to the
    /// tolerance without certification.
    pub certified: bool,
}

impl FinderOptions {
    pub fn new(t_max: f64) -> Self {
        FinderOptions {
            t_max,
            refine_tol: DEFAULT_REFINE_TOL,
            certified: true,
        }
    }
}

/// All zeros `0 < γ ≤ t_max`, certified and refined to `refine_tol`.
pub fn find_zeros(t_max: f64, refine_tol: f64) -> Result<ZeroTable, ZeroError> {
    find_zeros_with(&FinderOptions {
        t_max,
        refine_tol,
        certified: true,
    })
}

pub fn find_zeros_with(opts: &FinderOptions) -> Result<ZeroTable, ZeroError> {
    let t_max = opts.t_max;
    if !(t_max.is_finite() && t_max > 0.0 && t_max <= MAX_HEIGHT) {
        return Err(ZeroError::Domain {
            op: "find_zeros",
            detail: format!("t_max must lie in (0, {MAX_HEIGHT}], got {t_max}"),
        });
    }
    let tol = opts.refine_tol;
    if !(tol.is_finite() && tol > 0.0 && tol >= 64.0 * f64::EPSILON * t_max.max(1.0)) {
        return Err(ZeroError::Domain {
            op: "find_zeros",
            detail: format!("refine_tol must be positive and resolvable in f64 at t_max, got {tol}"),
        });
    }
    let oracle = Oracle {
        certified: opts.certified,
        prec: precision(),
    };

    let brackets = scan(&oracle, t_max)?;
    let mut zeros = Vec::with_capacity(brackets.len());
    for br in &brackets {
        if br.lo > t_max {
            break;
        }
        let z = oracle.refine(br, tol)?;
        if z.mid_f64() <= t_max {
            zeros.push(z);
        }
    }
    ZeroTable::new(zeros, ZeroSource::Computed, t_max)
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    t: f64,
    sign: i32,
}

#[derive(Debug, Clone, Copy)]
struct Bracket {
    lo: f64,
    hi: f64,
    sign_lo: i32,
}

struct Oracle {
    certified: bool,
    prec: u32,
}

impl Oracle {
    fn z_ball(&self, t: f64) -> Result<Ball, ZeroError> {
        hardy_z(&Ball::from_f64_prec(t, self.prec))
    }

    fn sign(&self, t: f64) -> Result<Option<i32>, ZeroError> {
        if self.certified {
            Ok(self.z_ball(t)?.sign())
        } else {
            let z = hardy_z_f64(t);
            Ok(if z > 0.0 {
                Some(1)
            } else if z < 0.0 {
                Some(-1)
            } else {
                None
            })
        }
    }

    /// Sign at `t`, nudging the sample point if `Z` cannot be separated from
    /// zero there. The nudge is far below any sampling step used.
    fn sample(&self, t: f64) -> Result<Sample, ZeroError> {
        let step = 1e-7 * t.max(1.0);
        for k in 0..16 {
            let dt = if k % 2 == 0 { 1.0 } else { -1.0 } * step * ((k / 2) as f64);
            let tt = t + dt;
            if tt < 0.0 {
                continue;
            }
            if let Some(s) = self.sign(tt)? {
                return Ok(Sample { t: tt, sign: s });
            }
        }
        Err(ZeroError::Refinement {
            lo: t - 8.0 * step,
            hi: t + 8.0 * step,
        })
    }

    fn ball_from(&self, lo: f64, hi: f64) -> Ball {
        Ball::from_interval(&Float::with_val(self.prec, lo), &Float::with_val(self.prec, hi))
    }

    /// Shrinks a sign-change bracket to a zero enclosure of half-width ≤ tol.
    fn refine(&self, br: &Bracket, tol: f64) -> Result<Ball, ZeroError> {
        let mut r = brent(br.lo, br.hi, br.sign_lo, tol * 1e-3);
        if !self.certified {
            return Ok(Ball::new(Float::with_val(self.prec, r), tol));
        }
        let h = 0.25 * tol;
        let sign_hi = -br.sign_lo;
        for _ in 0..4 {
            let lo = (r - h).max(br.lo);
            let hi = (r + h).min(br.hi);
            let zl = self.z_ball(lo)?;
            let zh = self.z_ball(hi)?;
            if zl.sign() == Some(br.sign_lo) && zh.sign() == Some(sign_hi) {
                return Ok(self.ball_from(lo, hi));
            }
            // Secant step on the midpoints, then retry.
            let (ml, mh) = (zl.mid_f64(), zh.mid_f64());
            if ml == mh {
                break;
            }
            let next = lo - ml * (hi - lo) / (mh - ml);
            if !(next > br.lo && next < br.hi) {
                break;
            }
            r = next;
        }
        self.bisect(br, tol)
    }

    fn bisect(&self, br: &Bracket, tol: f64) -> Result<Ball, ZeroError> {
        let (mut a, mut b) = (br.lo, br.hi);
        while b - a > tol {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            match self.sign(m)? {
                Some(s) if s == br.sign_lo => a = m,
                Some(_) => b = m,
                None => {
                    // |Z(m)| is below the enclosure radius: the zero is within
                    // reach of m; try to close in around it.
                    let h = 0.25 * tol;
                    let (lo, hi) = ((m - h).max(a), (m + h).min(b));
                    if self.sign(lo)? == Some(br.sign_lo) && self.sign(hi)? == Some(-br.sign_lo) {
                        return Ok(self.ball_from(lo, hi));
                    }
                    return Err(ZeroError::Refinement { lo: a, hi: b });
                }
            }
        }
        Ok(self.ball_from(a, b))
    }
}

/// Scans Gram blocks until a good Gram point above `t_max` closes a block.
fn scan(oracle: &Oracle, t_max: f64) -> Result<Vec<Bracket>, ZeroError> {
    let mut brackets = Vec::new();

    // [0, g_{-1}] holds no zeros; Z(0) = ζ(1/2) < 0 and g_{-1} must be good.
    let g_start = gram_point_f64(-1);
    let mut lead: Vec<Sample> = Vec::new();
    let mut t = 0.0;
    while t < g_start {
        lead.push(oracle.sample(t)?);
        t += 1.0;
    }
    let first = oracle.sample(g_start)?;
    lead.push(first);
    if first.sign != -1 {
        return Err(ZeroError::IncompleteTable {
            lo: 0.0,
            hi: g_start,
            expected: 0,
            found: 1,
        });
    }
    process_block(oracle, &mut lead, 0, &mut brackets)?;

    let mut good_index: i64 = -1;
    let mut block = vec![first];
    let mut n: i64 = -1;
    loop {
        n += 1;
        let s = oracle.sample(gram_point_f64(n))?;
        block.push(s);
        let parity = if n % 2 == 0 { 1 } else { -1 };
        if parity * s.sign > 0 {
            let expected = (n - good_index) as usize;
            process_block(oracle, &mut block, expected, &mut brackets)?;
            good_index = n;
            block = vec![s];
            if s.t > t_max {
                break;
            }
        } else if n - good_index > MAX_BLOCK {
            return Err(ZeroError::IncompleteTable {
                lo: block[0].t,
                hi: s.t,
                expected: (n - good_index) as usize,
                found: sign_changes(&block),
            });
        }
    }
    debug_assert_eq!(brackets.len() as i64, good_index + 1);
    Ok(brackets)
}

fn sign_changes(pts: &[Sample]) -> usize {
    pts.windows(2).filter(|w| w[0].sign != w[1].sign).count()
}

/// Ensures the block shows exactly `expected` sign changes, refining the
/// sampling grid as needed, and appends the resulting brackets.
fn process_block(
    oracle: &Oracle,
    pts: &mut Vec<Sample>,
    expected: usize,
    out: &mut Vec<Bracket>,
) -> Result<(), ZeroError> {
    let mut found = sign_changes(pts);
    let mut level = 1;
    while found < expected && level < MAX_SUBDIVISION {
        let mut finer = Vec::with_capacity(2 * pts.len());
        for w in pts.windows(2) {
            finer.push(w[0]);
            finer.push(oracle.sample(0.5 * (w[0].t + w[1].t))?);
        }
        finer.push(*pts.last().expect("block has endpoints"));
        *pts = finer;
        level *= 2;
        found = sign_changes(pts);
    }
    if found != expected {
        return Err(ZeroError::IncompleteTable {
            lo: pts[0].t,
            hi: pts[pts.len() - 1].t,
            expected,
            found,
        });
    }
    for w in pts.windows(2) {
        if w[0].sign != w[1].sign {
            out.push(Bracket {
                lo: w[0].t,
                hi: w[1].t,
                sign_lo: w[0].sign,
            });
        }
    }
    Ok(())
}

/// Brent's method on the hardware-float `Z`, bracketing preserved.
fn brent(a: f64, b: f64, sign_a: i32, xtol: f64) -> f64 {
    let f = |t: f64| hardy_z_f64(t);
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    // The float evaluation can disagree with the certified sign very close
    // to a zero; fall back to the bracket midpoint in that case.
    if fa * fb > 0.0 || (fa != 0.0 && (fa > 0.0) != (sign_a > 0)) {
        return 0.5 * (a + b);
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut bisected = true;
    for _ in 0..200 {
        if fb == 0.0 || (b - a).abs() <= xtol {
            return b;
        }
        let mut s = if fa != fc && fb != fc {
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo = (3.0 * a + b) / 4.0;
        let out_of_range = !((s > lo.min(b)) && (s < lo.max(b)));
        let slow = if bisected {
            (s - b).abs() >= (b - c).abs() / 2.0 || (b - c).abs() < xtol
        } else {
            (s - b).abs() >= (c - d).abs() / 2.0 || (c - d).abs() < xtol
        };
        if out_of_range || slow {
            s = 0.5 * (a + b);
            bisected = true;
        } else {
            bisected = false;
        }
        let fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if fa * fs < 0.0 {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    b
}
