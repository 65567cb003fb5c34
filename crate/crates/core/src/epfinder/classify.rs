use super::{align, locate_eps, EpAxis, EpKind, LocatedEp};
use crate::error::Result;
use crate::fock::DimerParams;

/// Number of U steps between the scanned U and `U = 0`.
pub const LADDER_RUNGS: usize = 100;

/// Follows each EP from `fixed.u()` down to `U = 0`.
pub(super) fn classify(
    fixed: &DimerParams,
    axis: EpAxis,
    range: (f64, f64),
    coarse_steps: usize,
    tol: f64,
    eps: &[LocatedEp],
) -> Result<Vec<EpKind>> {
    let u0 = fixed.u();
    if u0 == 0.0 {
        return Ok(vec![EpKind::SelfGenerated; eps.len()]);
    }
    // An EP may move by much less than this per rung; anything farther is a
    // different branch.
    let gap = 0.05 * (range.1 - range.0);

    // (current location, index into `eps`)
    let mut tracked: Vec<(f64, usize)> = eps
        .iter()
        .enumerate()
        .map(|(i, ep)| (ep.value, i))
        .collect();
    for rung in 1..=LADDER_RUNGS {
        if tracked.is_empty() {
            break;
        }
        let u = if rung == LADDER_RUNGS {
            0.0
        } else {
            u0 * (1.0 - rung as f64 / LADDER_RUNGS as f64)
        };
        let next: Vec<f64> = locate_eps(&fixed.with_u(u)?, axis, range, coarse_steps, tol)?
            .eps
            .iter()
            .map(|ep| ep.value)
            .collect();
        let current: Vec<f64> = tracked.iter().map(|&(x, _)| x).collect();
        tracked = align(&current, &next, gap)
            .into_iter()
            .map(|(i, j)| (next[j], tracked[i].1))
            .collect();
    }

    let mut kinds = vec![EpKind::InteractionGenerated; eps.len()];
    for (_, id) in tracked {
        kinds[id] = EpKind::SelfGenerated;
    }
    Ok(kinds)
}
