//! Exceptional points located on the discriminant of the reduced cubic.
//!
//! Along a cut through parameter space the discriminant Δ is a polynomial in
//! the scanned parameter. Δ > 0 means three distinct real levels (PT
//! unbroken), Δ < 0 a complex-conjugate pair (PT broken). A sign change of Δ is
//! an exceptional point. A zero without a sign change is a tangency: two
//! levels touch and separate again on the real axis. Tangencies are reported
//! apart from EPs.
//!
//! Detection runs on a coarse grid. Two EPs inside one grid cell leave no sign
//! change on the grid. The scan looks for such pairs by minimising `|Δ|`
//! around every grid-level local minimum of `|Δ|`. A pair hidden in a cell
//! with no grid minimum next to it can still be missed; raise `coarse_steps`
//! when scanning close to where a pair is born.

mod boundary;
mod classify;

use std::fmt;
use std::str::FromStr;

use log::warn;

pub use boundary::{trace_boundary, BoundaryCurve, BoundaryPlane};
pub use classify::LADDER_RUNGS;

use crate::error::{Error, Result};
use crate::fock::DimerParams;
use crate::spectra::{reduced_cubic, CubicCoefficients};

pub const DEFAULT_COARSE_STEPS: usize = 2000;
pub const DEFAULT_TOL: f64 = 1e-9;
/// Every reported EP location satisfies `|Δ| <` this.
pub const DISCRIMINANT_TOL: f64 = 1e-9;
/// How many times a scan may grow by one cell at an endpoint that sits on a
/// zero of Δ.
const MAX_WIDENINGS: usize = 8;
const GOLDEN_ITERATIONS: usize = 100;

/// `18abcd − 4b³d + b²c² − 4ac³ − 27a²d²` of the reduced cubic.
pub fn cubic_discriminant(c: &CubicCoefficients) -> f64 {
    c.discriminant()
}

/// Parameter varied by a scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EpAxis {
    Lambda,
    Gamma,
}

impl EpAxis {
    pub fn name(self) -> &'static str {
        match self {
            EpAxis::Lambda => "lambda",
            EpAxis::Gamma => "gamma",
        }
    }

    pub fn value(self, params: &DimerParams) -> f64 {
        match self {
            EpAxis::Lambda => params.lambda(),
            EpAxis::Gamma => params.gamma(),
        }
    }

    pub fn set(self, params: &DimerParams, value: f64) -> Result<DimerParams> {
        match self {
            EpAxis::Lambda => params.with_lambda(value),
            EpAxis::Gamma => params.with_gamma(value),
        }
    }
}

impl fmt::Display for EpAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EpAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(EpAxis::Lambda),
            "gamma" => Ok(EpAxis::Gamma),
            other => Err(Error::InvalidScan(format!(
                "unknown EP axis `{other}` (expected lambda or gamma)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EpKind {
    /// Survives when the interaction is switched off.
    SelfGenerated,
    /// Exists only at finite U.
    InteractionGenerated,
}

impl EpKind {
    pub fn name(self) -> &'static str {
        match self {
            EpKind::SelfGenerated => "self-generated",
            EpKind::InteractionGenerated => "interaction-generated",
        }
    }
}

/// A sign change of Δ, bisected but not yet classified.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocatedEp {
    pub value: f64,
    /// Final bisection interval; Δ has opposite signs at its ends.
    pub bracket: (f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpRecord {
    pub axis: EpAxis,
    pub value: f64,
    pub bracket: (f64, f64),
    pub kind: EpKind,
    /// Parameters held fixed during the scan; the scanned one keeps whatever
    /// value it had on input.
    pub fixed_params: DimerParams,
}

/// A zero of Δ without a sign change.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tangency {
    pub value: f64,
    pub discriminant: f64,
}

/// EPs and tangencies found on one axis, without classification.
#[derive(Clone, Debug, PartialEq)]
pub struct Located {
    pub eps: Vec<LocatedEp>,
    pub tangencies: Vec<Tangency>,
    /// Range actually scanned, after any widening.
    pub range: (f64, f64),
}

impl Located {
    pub fn widened(&self, requested: (f64, f64)) -> bool {
        self.range != requested
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    /// Ascending in `value`.
    pub eps: Vec<EpRecord>,
    pub tangencies: Vec<Tangency>,
    pub range: (f64, f64),
    pub widened: bool,
}

/// Δ of the reduced cubic with `axis` set to `x`, plus its rounding level.
fn discriminant_at(fixed: &DimerParams, axis: EpAxis, x: f64) -> Result<(f64, f64)> {
    let cubic = reduced_cubic(&axis.set(fixed, x)?);
    Ok((cubic.discriminant(), cubic.discriminant_rounding()))
}

/// Sign of Δ, with values inside the rounding level counted as zero.
fn reliable_sign((value, rounding): (f64, f64)) -> i8 {
    if value.abs() <= rounding {
        0
    } else if value > 0.0 {
        1
    } else {
        -1
    }
}

fn validate(range: (f64, f64), coarse_steps: usize, tol: f64) -> Result<()> {
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidScan(format!(
            "empty or non-finite range ({lo}, {hi})"
        )));
    }
    if coarse_steps < 2 {
        return Err(Error::InvalidScan(format!(
            "coarse_steps must be at least 2, got {coarse_steps}"
        )));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidScan(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Brackets and bisects every sign change of Δ on `range`.
pub fn locate_eps(
    fixed: &DimerParams,
    axis: EpAxis,
    range: (f64, f64),
    coarse_steps: usize,
    tol: f64,
) -> Result<Located> {
    validate(range, coarse_steps, tol)?;
    let delta = |x: f64| discriminant_at(fixed, axis, x);

    let cell = (range.1 - range.0) / coarse_steps as f64;
    let (mut lo_cells, mut hi_cells) = (0usize, 0usize);
    for _ in 0..MAX_WIDENINGS {
        let lo = range.0 - cell * lo_cells as f64;
        let hi = range.1 + cell * hi_cells as f64;
        let lo_zero = reliable_sign(delta(lo)?) == 0;
        let hi_zero = reliable_sign(delta(hi)?) == 0;
        if !lo_zero && !hi_zero {
            break;
        }
        lo_cells += usize::from(lo_zero);
        hi_cells += usize::from(hi_zero);
        warn!(
            "{axis} scan: discriminant vanishes at a range endpoint, widening to ({}, {})",
            range.0 - cell * lo_cells as f64,
            range.1 + cell * hi_cells as f64
        );
    }
    let lo = range.0 - cell * lo_cells as f64;
    let hi = range.1 + cell * hi_cells as f64;
    let n = coarse_steps + lo_cells + hi_cells;
    let xs: Vec<f64> = (0..=n)
        .map(|i| {
            if i == n {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / n as f64)
            }
        })
        .collect();
    let fs: Vec<(f64, f64)> = xs.iter().map(|&x| delta(x)).collect::<Result<_>>()?;
    let signs: Vec<i8> = fs.iter().map(|&f| reliable_sign(f)).collect();

    let mut eps = Vec::new();
    let mut tangencies = Vec::new();

    // Sign changes on the grid, stepping over runs of zeros.
    let mut last: Option<usize> = None;
    for i in 0..=n {
        if signs[i] == 0 {
            continue;
        }
        if let Some(j) = last {
            if signs[j] != signs[i] {
                eps.push(bisect(&delta, (xs[j], fs[j].0), (xs[i], fs[i].0), tol)?);
            } else if j + 1 < i {
                let mid = 0.5 * (xs[j + 1] + xs[i - 1]);
                tangencies.push(Tangency {
                    value: mid,
                    discriminant: delta(mid)?.0,
                });
            }
        }
        last = Some(i);
    }

    // Dips of |Δ| between grid points: hidden EP pairs or tangencies.
    for i in 1..n {
        let s = signs[i];
        if s == 0 || signs[i - 1] != s || signs[i + 1] != s {
            continue;
        }
        let (f_prev, f_here, f_next) = (fs[i - 1].0.abs(), fs[i].0.abs(), fs[i + 1].0.abs());
        if !(f_here < f_prev && f_here <= f_next) {
            continue;
        }
        let signed = |x: f64| delta(x).map(|(v, r)| (f64::from(s) * v, r));
        let (xm, (gm, rounding)) = golden_minimum(&signed, xs[i - 1], xs[i + 1])?;
        if gm < -rounding {
            let fm = f64::from(s) * gm;
            eps.push(bisect(&delta, (xs[i - 1], fs[i - 1].0), (xm, fm), tol)?);
            eps.push(bisect(&delta, (xm, fm), (xs[i + 1], fs[i + 1].0), tol)?);
        } else if gm.abs() < DISCRIMINANT_TOL {
            tangencies.push(Tangency {
                value: xm,
                discriminant: f64::from(s) * gm,
            });
        }
    }

    eps.sort_by(|a, b| a.value.total_cmp(&b.value));
    eps.dedup_by(|b, a| (b.value - a.value).abs() <= 2.0 * tol);
    tangencies.sort_by(|a, b| a.value.total_cmp(&b.value));
    tangencies.dedup_by(|b, a| (b.value - a.value).abs() <= cell);
    Ok(Located {
        eps,
        tangencies,
        range: (lo, hi),
    })
}

/// Bisection on a sign change of Δ between `a` and `b`. Continues past
/// width `tol` until `|Δ| < DISCRIMINANT_TOL` or the interval cannot be
/// split further.
fn bisect(
    delta: &impl Fn(f64) -> Result<(f64, f64)>,
    a: (f64, f64),
    b: (f64, f64),
    tol: f64,
) -> Result<LocatedEp> {
    let ((mut lo, mut f_lo), (mut hi, _)) = if a.0 <= b.0 { (a, b) } else { (b, a) };
    loop {
        let mid = lo + 0.5 * (hi - lo);
        let (f_mid, _) = delta(mid)?;
        if f_mid == 0.0 {
            // Just under half, so rounding cannot push the width past tol.
            let half = 0.45 * tol.min(hi - lo);
            return Ok(LocatedEp {
                value: mid,
                bracket: ((mid - half).max(lo), (mid + half).min(hi)),
            });
        }
        let done = hi - lo <= tol && f_mid.abs() < DISCRIMINANT_TOL;
        if done || !(mid > lo && mid < hi) {
            return Ok(LocatedEp {
                value: mid,
                bracket: (lo, hi),
            });
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
}

/// Golden-section search for the minimum of `g` on `[a, b]`.
fn golden_minimum(
    g: &impl Fn(f64) -> Result<(f64, f64)>,
    mut a: f64,
    mut b: f64,
) -> Result<(f64, (f64, f64))> {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut gc = g(c)?;
    let mut gd = g(d)?;
    for _ in 0..GOLDEN_ITERATIONS {
        if gc.0 < gd.0 {
            b = d;
            d = c;
            gd = gc;
            c = b - ratio * (b - a);
            gc = g(c)?;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + ratio * (b - a);
            gd = g(d)?;
        }
        if !(a < c && c < d && d < b) {
            break;
        }
    }
    Ok(if gc.0 < gd.0 { (c, gc) } else { (d, gd) })
}

/// Finds, bisects and classifies every EP along `axis` on `range`.
///
/// Classification follows each EP down a ladder of [`LADDER_RUNGS`] U values
/// to `U = 0`, matching EPs between rungs in order. An EP still present in
/// the final `U = 0` scan is self-generated; one that disappears on the way
/// (annihilating with a partner, or leaving through the range edge) is
/// interaction-generated.
pub fn scan_eps(
    fixed: &DimerParams,
    axis: EpAxis,
    range: (f64, f64),
    coarse_steps: usize,
    tol: f64,
) -> Result<ScanReport> {
    let located = locate_eps(fixed, axis, range, coarse_steps, tol)?;
    let kinds = classify::classify(fixed, axis, range, coarse_steps, tol, &located.eps)?;
    let widened = located.widened(range);
    Ok(ScanReport {
        eps: located
            .eps
            .iter()
            .zip(kinds)
            .map(|(ep, kind)| EpRecord {
                axis,
                value: ep.value,
                bracket: ep.bracket,
                kind,
                fixed_params: *fixed,
            })
            .collect(),
        tangencies: located.tangencies,
        range: located.range,
        widened,
    })
}

/// Order-preserving matching of two ascending lists: minimises the summed
/// distance of matched pairs plus `gap` per unmatched entry. Returns matched
/// index pairs.
pub(crate) fn align(a: &[f64], b: &[f64], gap: f64) -> Vec<(usize, usize)> {
    let (n, m) = (a.len(), b.len());
    let mut cost = vec![vec![0.0; m + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=m {
            cost[i][j] = match (i, j) {
                (0, _) => gap * j as f64,
                (_, 0) => gap * i as f64,
                _ => (cost[i - 1][j - 1] + (a[i - 1] - b[j - 1]).abs())
                    .min(cost[i - 1][j] + gap)
                    .min(cost[i][j - 1] + gap),
            };
        }
    }
    let mut pairs = Vec::new();
    let (mut i, mut j) = (n, m);
    while i > 0 && j > 0 {
        let here = cost[i][j];
        if here == cost[i - 1][j - 1] + (a[i - 1] - b[j - 1]).abs() {
            pairs.push((i - 1, j - 1));
            i -= 1;
            j -= 1;
        } else if here == cost[i - 1][j] + gap {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    pairs.reverse();
    pairs
}

#[cfg(test)]
mod tests;
