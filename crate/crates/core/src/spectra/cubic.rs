use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Method, Spectrum};
use crate::fock::DimerParams;

/// A discriminant within this many ulps of the magnitude of its own terms is
/// indistinguishable from zero and the repeated-root formulas are used.
const REPEATED_ROOT_ULPS: f64 = 32.0;

/// Reduced `S_z = 0` characteristic cubic `X³ − U X² − K X − L = 0` with
/// `X = 2ε + U − E`, `K = 4(t² − γ² − λ²)` and `L = 4γ²U`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub k: f64,
    pub l: f64,
    /// `ε₊ + ε₋ = 2ε`, the shift mapping roots back to energies.
    pub s: f64,
    pub params: DimerParams,
}

impl CubicCoefficients {
    pub fn discriminant(&self) -> f64 {
        cubic_discriminant_raw(self.a, self.b, self.c, self.d)
    }

    /// Size of the rounding error in [`discriminant`](Self::discriminant):
    /// values this small carry no reliable sign.
    pub fn discriminant_rounding(&self) -> f64 {
        let terms = discriminant_terms(self.a, self.b, self.c, self.d);
        REPEATED_ROOT_ULPS * f64::EPSILON * terms.iter().map(|t| t.abs()).sum::<f64>()
    }

    /// `|ΣX − U|`, `|Σ XᵢXⱼ + K|`, `|ΠX − L|`.
    pub fn vieta_residuals(&self, roots: &[Complex64; 3]) -> [f64; 3] {
        let [x1, x2, x3] = *roots;
        let u = self.params.u();
        [
            (x1 + x2 + x3 - u).norm(),
            (x1 * x2 + x1 * x3 + x2 * x3 + self.k).norm(),
            (x1 * x2 * x3 - self.l).norm(),
        ]
    }

    pub fn roots(&self) -> CubicRoots {
        solve_cubic(self.a, self.b, self.c, self.d)
    }

    /// Energy `E = S + U − X` for a root `X`.
    pub fn energy(&self, x: Complex64) -> Complex64 {
        Complex64::new(self.s + self.params.u(), 0.0) - x
    }
}

pub fn reduced_cubic(params: &DimerParams) -> CubicCoefficients {
    let (t, g, l, u) = (params.t(), params.gamma(), params.lambda(), params.u());
    let k = 4.0 * (t * t - g * g - l * l);
    let ll = 4.0 * g * g * u;
    CubicCoefficients {
        a: 1.0,
        b: -u,
        c: -k,
        d: -ll,
        k,
        l: ll,
        s: 2.0 * params.epsilon(),
        params: *params,
    }
}

/// `18abcd − 4b³d + b²c² − 4ac³ − 27a²d²`.
pub fn cubic_discriminant_raw(a: f64, b: f64, c: f64, d: f64) -> f64 {
    discriminant_terms(a, b, c, d).iter().sum()
}

fn discriminant_terms(a: f64, b: f64, c: f64, d: f64) -> [f64; 5] {
    [
        18.0 * a * b * c * d,
        -4.0 * b * b * b * d,
        b * b * c * c,
        -4.0 * a * c * c * c,
        -27.0 * a * a * d * d,
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    /// `Δ > 0`.
    ThreeReal,
    /// `Δ < 0`: one real root and a complex-conjugate pair.
    ConjugatePair,
    /// `Δ` at rounding level: a double or triple root.
    Repeated,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicRoots {
    pub roots: [Complex64; 3],
    pub kind: RootKind,
    pub discriminant: f64,
}

/// Roots of `a x³ + b x² + c x + d` with `a ≠ 0`, branch chosen by the sign
/// of the discriminant.
pub fn solve_cubic(a: f64, b: f64, c: f64, d: f64) -> CubicRoots {
    assert!(a != 0.0, "leading coefficient must be nonzero");
    let terms = discriminant_terms(a, b, c, d);
    let discriminant: f64 = terms.iter().sum();
    let rounding = REPEATED_ROOT_ULPS * f64::EPSILON * terms.iter().map(|t| t.abs()).sum::<f64>();
    let (b, c, d) = (b / a, c / a, d / a);
    // x = y − b/3 gives y³ + p y + q = 0
    let shift = -b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let real = |y: f64| Complex64::new(y + shift, 0.0);

    if discriminant.abs() <= rounding {
        let p_scale = b * b / 3.0 + c.abs();
        let roots = if p.abs() <= REPEATED_ROOT_ULPS * f64::EPSILON * p_scale {
            [real(0.0); 3]
        } else {
            let double = -1.5 * q / p;
            let single = 3.0 * q / p;
            [real(single), real(double), real(double)]
        };
        return CubicRoots {
            roots,
            kind: RootKind::Repeated,
            discriminant,
        };
    }

    if discriminant > 0.0 {
        // p < 0 here; trigonometric form.
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let roots = [0.0, 1.0, 2.0].map(|k| real(m * (theta - 2.0 * PI * k / 3.0).cos()));
        CubicRoots {
            roots,
            kind: RootKind::ThreeReal,
            discriminant,
        }
    } else {
        let r = (q * q / 4.0 + p * p * p / 27.0).max(0.0).sqrt();
        let sign = if q < 0.0 { -1.0 } else { 1.0 };
        let big = -sign * (q.abs() / 2.0 + r).cbrt();
        let small = if big != 0.0 { -p / (3.0 * big) } else { 0.0 };
        let re = -(big + small) / 2.0 + shift;
        let im = 3f64.sqrt() / 2.0 * (big - small).abs();
        CubicRoots {
            roots: [
                real(big + small),
                Complex64::new(re, im),
                Complex64::new(re, -im),
            ],
            kind: RootKind::ConjugatePair,
            discriminant,
        }
    }
}

/// The three energies coming from the reduced cubic.
pub fn cubic_energies(params: &DimerParams) -> [Complex64; 3] {
    let cubic = reduced_cubic(params);
    cubic.roots().roots.map(|x| cubic.energy(x))
}

/// `{2ε ×3} ∪ {2ε + U − X_k}`.
pub fn cardano_spectrum(params: &DimerParams) -> Spectrum {
    let two_e = Complex64::new(2.0 * params.epsilon(), 0.0);
    let [e1, e2, e3] = cubic_energies(params);
    Spectrum::new(
        [two_e, two_e, two_e, e1, e2, e3],
        Method::Cardano,
        Some(*params),
    )
}
