use std::fmt;
use std::str::FromStr;

use super::{align, locate_eps, EpAxis, DEFAULT_COARSE_STEPS};
use crate::error::{Error, Result};
use crate::fock::DimerParams;

/// Parameter plane of a phase boundary; U is always the second coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryPlane {
    LambdaU,
    GammaU,
}

impl BoundaryPlane {
    /// The axis scanned at each U.
    pub fn axis(self) -> EpAxis {
        match self {
            BoundaryPlane::LambdaU => EpAxis::Lambda,
            BoundaryPlane::GammaU => EpAxis::Gamma,
        }
    }
}

impl fmt::Display for BoundaryPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-U", self.axis())
    }
}

impl FromStr for BoundaryPlane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.parse::<EpAxis>()? {
            EpAxis::Lambda => BoundaryPlane::LambdaU,
            EpAxis::Gamma => BoundaryPlane::GammaU,
        })
    }
}

/// One branch of EPs followed across U.
///
/// A branch that starts after the first U of the grid was born there (an EP
/// pair appearing at finite U); one that ends early died there.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryCurve {
    pub plane: BoundaryPlane,
    /// `(U, critical value)`, ascending in U.
    pub points: Vec<(f64, f64)>,
    pub branch: usize,
}

/// Scans the plane's axis over `axis_range` at `u_steps` evenly spaced U
/// values (endpoints included) and stitches the EPs into branches.
///
/// Consecutive slices with the same number of EPs are matched in order.
/// When the count changes, the slices are aligned by distance, and a step
/// longer than ten times the median nearest-neighbour step between slices
/// is a jump: the old branch ends and a new one starts.
pub fn trace_boundary(
    fixed: &DimerParams,
    plane: BoundaryPlane,
    u_range: (f64, f64),
    u_steps: usize,
    axis_range: (f64, f64),
    tol: f64,
) -> Result<Vec<BoundaryCurve>> {
    let (u_lo, u_hi) = u_range;
    if !(u_lo.is_finite() && u_hi.is_finite() && u_lo < u_hi) {
        return Err(Error::InvalidScan(format!(
            "empty or non-finite U range ({u_lo}, {u_hi})"
        )));
    }
    if u_steps < 2 {
        return Err(Error::InvalidScan(format!(
            "u_steps must be at least 2, got {u_steps}"
        )));
    }
    let last = u_steps - 1;
    let us: Vec<f64> = (0..u_steps)
        .map(|k| {
            if k == last {
                u_hi
            } else {
                u_lo + (u_hi - u_lo) * (k as f64 / last as f64)
            }
        })
        .collect();
    let slices: Vec<Vec<f64>> = us
        .iter()
        .map(|&u| {
            let located = locate_eps(
                &fixed.with_u(u)?,
                plane.axis(),
                axis_range,
                DEFAULT_COARSE_STEPS,
                tol,
            )?;
            Ok(located.eps.iter().map(|ep| ep.value).collect())
        })
        .collect::<Result<_>>()?;

    let threshold = jump_threshold(&slices, tol);
    let mut finished: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut active: Vec<Vec<(f64, f64)>> = Vec::new();
    for (k, slice) in slices.iter().enumerate() {
        let ends: Vec<f64> = active
            .iter()
            .map(|c| c.last().expect("curves are never empty").1)
            .collect();
        let mut continued = vec![None; slice.len()];
        if ends.len() == slice.len() {
            // Nothing was born or died: every branch continues, steep or not.
            for (j, c) in continued.iter_mut().enumerate() {
                *c = Some(j);
            }
        } else {
            for (i, j) in align(&ends, slice, threshold) {
                if (ends[i] - slice[j]).abs() <= threshold {
                    continued[j] = Some(i);
                }
            }
        }
        let mut previous: Vec<Option<Vec<(f64, f64)>>> = active.drain(..).map(Some).collect();
        for (j, &value) in slice.iter().enumerate() {
            let mut curve = continued[j]
                .and_then(|i| previous[i].take())
                .unwrap_or_default();
            curve.push((us[k], value));
            active.push(curve);
        }
        finished.extend(previous.into_iter().flatten());
    }
    finished.extend(active);

    finished.sort_by(|a, b| a[0].0.total_cmp(&b[0].0).then(a[0].1.total_cmp(&b[0].1)));
    Ok(finished
        .into_iter()
        .enumerate()
        .map(|(branch, points)| BoundaryCurve {
            plane,
            points,
            branch,
        })
        .collect())
}

/// Ten times the median distance from each point to the nearest point of the
/// previous slice, floored so that flat branches still tolerate rounding.
fn jump_threshold(slices: &[Vec<f64>], tol: f64) -> f64 {
    let mut steps: Vec<f64> = slices
        .windows(2)
        .flat_map(|pair| {
            let (prev, next) = (&pair[0], &pair[1]);
            next.iter()
                .filter_map(move |&x| prev.iter().map(|&p| (x - p).abs()).min_by(f64::total_cmp))
        })
        .collect();
    if steps.is_empty() {
        return 10.0 * tol;
    }
    steps.sort_by(f64::total_cmp);
    let median = steps[steps.len() / 2];
    (10.0 * median).max(10.0 * tol)
}
