//! Independent eigenvalue route: characteristic polynomial by cofactor
//! expansion, roots by Aberth iteration.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Method, Spectrum};
use crate::charpoly::{characteristic_polynomial, Poly};
use crate::error::{Error, Result};
use crate::fock::HamiltonianMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootFinderConfig {
    pub max_iterations: usize,
    /// A root is accepted once `|p(z)| ≤ backward_error · Σ|c_k||z|^k`.
    pub backward_error: f64,
    pub newton_steps: usize,
}

impl Default for RootFinderConfig {
    fn default() -> Self {
        RootFinderConfig {
            max_iterations: 2000,
            backward_error: 16.0 * f64::EPSILON,
            newton_steps: 8,
        }
    }
}

/// All eigenvalues of `h` from its characteristic polynomial.
pub fn oracle_spectrum(h: &HamiltonianMatrix) -> Result<Spectrum> {
    let cfg = RootFinderConfig::default();
    let mut roots = Vec::with_capacity(6);
    for block in decoupled_blocks(h.entries()) {
        // Centre the block on its mean diagonal so the polynomial's roots
        // sit near the origin, where monomial coefficients resolve them best.
        let shift =
            block.iter().map(|&i| h.entries()[i][i]).sum::<Complex64>() / block.len() as f64;
        let sub: Vec<Vec<Complex64>> = block
            .iter()
            .map(|&i| {
                block
                    .iter()
                    .map(|&j| {
                        h.entries()[i][j]
                            - if i == j {
                                shift
                            } else {
                                Complex64::new(0.0, 0.0)
                            }
                    })
                    .collect()
            })
            .collect();
        let centred = find_roots(&characteristic_polynomial(&sub), &cfg)?;
        roots.extend(centred.into_iter().map(|z| z + shift));
    }
    let values: [Complex64; 6] = roots
        .try_into()
        .expect("characteristic polynomial of a 6x6 matrix has six roots");
    Ok(Spectrum::new(values, Method::Oracle, None))
}

/// Index sets of the connected components of the graph with an edge wherever
/// `a[i][j]` or `a[j][i]` is nonzero. The matrix is block diagonal over them,
/// and levels in different blocks never share a polynomial, which keeps
/// accidental cross-block degeneracies well conditioned.
fn decoupled_blocks<const N: usize>(a: &[[Complex64; N]; N]) -> Vec<Vec<usize>> {
    let mut component = [usize::MAX; N];
    let mut blocks = Vec::new();
    for seed in 0..N {
        if component[seed] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        component[seed] = id;
        let mut members = vec![seed];
        let mut next = 0;
        while next < members.len() {
            let i = members[next];
            next += 1;
            for j in 0..N {
                let linked =
                    a[i][j] != Complex64::new(0.0, 0.0) || a[j][i] != Complex64::new(0.0, 0.0);
                if linked && component[j] == usize::MAX {
                    component[j] = id;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        blocks.push(members);
    }
    blocks
}

/// All roots of `p` (with multiplicity).
pub fn find_roots(p: &Poly, cfg: &RootFinderConfig) -> Result<Vec<Complex64>> {
    // Exact zero roots defeat the relative stopping test; factor them out.
    let zeros = p
        .coeffs()
        .iter()
        .take_while(|c| c.norm() == 0.0)
        .count()
        .min(p.degree());
    let p = Poly::new(p.coeffs()[zeros..].to_vec());
    let z = aberth(&p, cfg)?;
    let mut roots = polish(&p, z, cfg);
    roots.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), zeros));
    Ok(roots)
}

/// Plain Aberth iteration with a backward-error stopping test per root.
fn aberth(p: &Poly, cfg: &RootFinderConfig) -> Result<Vec<Complex64>> {
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let dp = p.derivative();
    let mut z = initial_guesses(p);
    let mut done = vec![false; n];

    let mut iterations = 0;
    while iterations < cfg.max_iterations && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let zi = z[i];
            let pz = p.eval(zi);
            if pz.norm() <= cfg.backward_error * p.eval_abs(zi) {
                done[i] = true;
                continue;
            }
            let ratio = pz / dp.eval(zi);
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (zi - z[j]).inv()).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[i] = zi - step;
            } else {
                // Coincident iterates or a flat spot: nudge in a direction
                // that differs per root so two iterates cannot move in step.
                let angle = 2.0 * PI * (i as f64 + 0.5) / n as f64;
                z[i] = zi + Complex64::from_polar(1e-8 * (1.0 + zi.norm()), angle);
            }
        }
    }

    if done.iter().any(|d| !d) {
        let residuals: Vec<f64> = z.iter().map(|&zi| relative_residual(p, zi)).collect();
        return Err(Error::NoConvergence {
            iterations,
            max_residual: residuals.iter().copied().fold(0.0, f64::max),
            residuals,
        });
    }
    Ok(z)
}

fn relative_residual(p: &Poly, z: Complex64) -> f64 {
    let scale = p.eval_abs(z);
    if scale == 0.0 {
        0.0
    } else {
        p.eval(z).norm() / scale
    }
}

/// Points on a slightly irregular circle around the root centroid.
fn initial_guesses(p: &Poly) -> Vec<Complex64> {
    let n = p.degree();
    let c = p.coeffs();
    let lead = c[n];
    let centre = -c[n - 1] / (lead * n as f64);
    let shifted = taylor_shift(p, centre);
    let s = shifted.coeffs();
    // Fujiwara bound on |root − centre|.
    let mut radius: f64 = 0.0;
    for k in 0..n {
        let ratio = (s[k] / s[n]).norm();
        if ratio > 0.0 {
            let r = if k == 0 { ratio / 2.0 } else { ratio };
            radius = radius.max(r.powf(1.0 / (n - k) as f64));
        }
    }
    let radius = (2.0 * radius).max(1e-3 * (1.0 + centre.norm()));
    (0..n)
        .map(|k| {
            let angle = 2.0 * PI * k as f64 / n as f64 + 0.4;
            let r = radius * (0.5 + 0.05 * k as f64 / n as f64);
            centre + Complex64::from_polar(r, angle)
        })
        .collect()
}

/// Coefficients of `p(x + c)`.
fn taylor_shift(p: &Poly, c: Complex64) -> Poly {
    let mut a = p.coeffs().to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let next = a[j + 1];
            a[j] += c * next;
        }
    }
    Poly::new(a)
}

/// Replaces rounding-limited iterates of multiple roots and Newton-polishes
/// the rest.
///
/// An `m`-fold root of `p` is a simple root of `p^(m−1)` at which
/// `p, …, p^(m−2)` vanish. Candidates are taken from the roots of each
/// derivative, highest multiplicity first, and each accepted candidate claims
/// the `m` nearest unclaimed iterates.
fn polish(p: &Poly, z: Vec<Complex64>, cfg: &RootFinderConfig) -> Vec<Complex64> {
    let n = z.len();
    let mut claimed = vec![false; n];
    let mut out = Vec::with_capacity(n);
    let mut multiple: Vec<Complex64> = Vec::new();
    let derivatives: Vec<Poly> = (0..n).map(|j| p.nth_derivative(j)).collect();

    for m in (2..=n).rev() {
        let q = &derivatives[m - 1];
        let Ok(candidates) = aberth(q, cfg) else {
            continue;
        };
        for w in candidates {
            let w = newton(q, w, cfg.newton_steps);
            let scale = 1.0 + w.norm();
            if multiple.iter().any(|r| (r - w).norm() <= 1e-6 * scale) {
                continue;
            }
            let vanishes = derivatives[..m - 1]
                .iter()
                .all(|d| d.eval(w).norm() <= MULTIPLE_ROOT_RESIDUAL * d.eval_abs(w));
            if !vanishes {
                continue;
            }
            let mut near: Vec<(f64, usize)> = (0..n)
                .filter(|&i| !claimed[i])
                .map(|i| ((z[i] - w).norm(), i))
                .collect();
            if near.len() < m {
                continue;
            }
            near.sort_by(|a, b| a.0.total_cmp(&b.0));
            if near[m - 1].0 > cluster_radius(p, w, m, cfg) {
                continue;
            }
            // Resolved close roots beat their merged midpoint.
            let merged = p.eval(w).norm();
            if near[..m].iter().all(|&(_, i)| p.eval(z[i]).norm() < merged) {
                continue;
            }
            for &(_, i) in &near[..m] {
                claimed[i] = true;
                out.push(w);
            }
            multiple.push(w);
        }
    }
    for i in 0..n {
        if !claimed[i] {
            out.push(newton(p, z[i], cfg.newton_steps));
        }
    }
    out
}

/// Relative residual below which a derivative counts as vanishing at a
/// candidate multiple root.
const MULTIPLE_ROOT_RESIDUAL: f64 = 32.0 * f64::EPSILON;

/// How far Aberth iterates of an `m`-fold root at `w` can sit from it:
/// `|p^(m)(w)/m!| ρ^m ≈ backward_error · Σ|c_k||w|^k`, with some slack.
fn cluster_radius(p: &Poly, w: Complex64, m: usize, cfg: &RootFinderConfig) -> f64 {
    let factorial: f64 = (1..=m).map(|k| k as f64).product();
    let lead = p.nth_derivative(m).eval(w).norm() / factorial;
    let rho = (cfg.backward_error * p.eval_abs(w) / lead).powf(1.0 / m as f64);
    4.0 * rho + 1e-12 * (1.0 + w.norm())
}

/// Newton steps on `p`, keeping the iterate with the smallest residual.
fn newton(p: &Poly, start: Complex64, steps: usize) -> Complex64 {
    let dp = p.derivative();
    let mut best = start;
    let mut best_res = p.eval(start).norm();
    let mut x = start;
    for _ in 0..steps {
        if best_res == 0.0 {
            break;
        }
        let d = dp.eval(x);
        if d == Complex64::new(0.0, 0.0) {
            break;
        }
        x -= p.eval(x) / d;
        if !x.is_finite() {
            break;
        }
        let r = p.eval(x).norm();
        if r < best_res {
            best = x;
            best_res = r;
        } else if r > best_res * 4.0 {
            break;
        }
    }
    best
}
