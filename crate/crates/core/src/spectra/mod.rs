//! Eigenvalues of the dimer Hamiltonian by three independent routes.
//!
//! * [`closed_form_spectrum`]: the factorised characteristic polynomial,
//!   valid without gain/loss (`γ = 0`).
//! * [`cardano_spectrum`]: the reduced cubic `X³ − U X² − K X − L = 0`
//!   solved in closed form, valid everywhere.
//! * [`oracle_spectrum`]: cofactor expansion of the full 6×6 characteristic
//!   polynomial followed by Aberth iteration. Shares no code with the two
//!   closed forms.

mod cubic;
mod eigvec;
mod oracle;

pub use cubic::{
    cardano_spectrum, cubic_discriminant_raw, cubic_energies, reduced_cubic, solve_cubic,
    CubicCoefficients, CubicRoots,
};
pub use eigvec::{eigenvector_overlap, sz0_eigenvectors};
pub use oracle::{find_roots, oracle_spectrum, RootFinderConfig};

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::DimerParams;

/// How a [`Spectrum`] was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Cardano,
    Oracle,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Cardano => "cardano",
            Method::Oracle => "oracle",
        }
    }
}

/// Six eigenvalues (with multiplicity), sorted by real then imaginary part.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: [Complex64; 6],
    method: Method,
    params: Option<DimerParams>,
}

pub(crate) fn lex_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl Spectrum {
    pub fn new(mut values: [Complex64; 6], method: Method, params: Option<DimerParams>) -> Self {
        values.sort_by(lex_cmp);
        Spectrum {
            values,
            method,
            params,
        }
    }

    pub fn values(&self) -> &[Complex64; 6] {
        &self.values
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn params(&self) -> Option<&DimerParams> {
        self.params.as_ref()
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    /// Largest eigenvalue distance under the best pairing of the two
    /// multisets (bottleneck matching over all permutations).
    pub fn distance(&self, other: &Spectrum) -> f64 {
        multiset_distance(&self.values, &other.values)
    }

    /// Distance between the spectrum and its complex conjugate; zero for a
    /// conjugation-closed multiset.
    pub fn conjugation_defect(&self) -> f64 {
        let conj = self.values.map(|z| z.conj());
        multiset_distance(&self.values, &conj)
    }

    pub fn has_complex_pair(&self, tol: f64) -> bool {
        self.values.iter().any(|z| z.im.abs() > tol)
    }
}

/// Bottleneck distance between two equal-length multisets of complex numbers.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    let cost: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| (x - y).norm()).collect())
        .collect();
    let mut best = f64::INFINITY;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &cost, 0.0, &mut best);
    best
}

fn permute(perm: &mut [usize], k: usize, cost: &[Vec<f64>], so_far: f64, best: &mut f64) {
    if so_far >= *best {
        return;
    }
    if k == perm.len() {
        *best = so_far;
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        let c = so_far.max(cost[k][perm[k]]);
        permute(perm, k + 1, cost, c, best);
        perm.swap(k, i);
    }
}

/// Eigenvalues of the two-level models `[[ε+iγ, t], [t, ε−iγ]]` and
/// `[[ε, t+λ], [t−λ, ε]]`: `ε ± √(t² − γ²)` or `ε ± √(t² − λ²)`.
pub fn tls_eigenvalues(
    epsilon: f64,
    t: f64,
    gamma: f64,
    lambda: f64,
) -> Result<(Complex64, Complex64)> {
    if gamma != 0.0 && lambda != 0.0 {
        return Err(Error::NotApplicable(
            "two-level reference formulas take either gamma or lambda, not both",
        ));
    }
    let g = if gamma != 0.0 { gamma } else { lambda };
    let root = Complex64::new(t * t - g * g, 0.0).sqrt();
    let e = Complex64::new(epsilon, 0.0);
    Ok((e + root, e - root))
}

/// Closed-form spectrum for `γ = 0`:
/// `{2ε ×3, 2ε+U, ½(4ε + U ± √(16(t²−λ²) + U²))}`.
pub fn closed_form_spectrum(params: &DimerParams) -> Result<Spectrum> {
    if params.gamma() != 0.0 {
        return Err(Error::NotApplicable(
            "closed-form spectrum requires gamma = 0; use cardano_spectrum",
        ));
    }
    let (e, t, l, u) = (params.epsilon(), params.t(), params.lambda(), params.u());
    let two_e = Complex64::new(2.0 * e, 0.0);
    let root = Complex64::new(16.0 * (t * t - l * l) + u * u, 0.0).sqrt();
    let centre = Complex64::new(4.0 * e + u, 0.0);
    let values = [
        two_e,
        two_e,
        two_e,
        two_e + u,
        0.5 * (centre + root),
        0.5 * (centre - root),
    ];
    Ok(Spectrum::new(values, Method::ClosedForm, Some(*params)))
}
