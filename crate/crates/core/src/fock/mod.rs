//! Two-site, two-spin fermionic Fock space.
//!
//! Modes are ordered `1↑ < 1↓ < 2↑ < 2↓`. A ket is stored as the normal-ordered
//! product with the highest mode leftmost, e.g.
//! `|↑,↓⟩ = c†_{2↓} c†_{1↑} |0⟩`: site-1 operators act first and, within a
//! site, the `↑` operator acts first. Every fermionic sign in this crate comes
//! from counting transpositions against that ordering.

mod hamiltonian;
mod ops;

pub use hamiltonian::{
    build_hamiltonian, hamiltonian_terms, HamiltonianMatrix, OperatorTerm, SzSector,
};
pub use ops::{apply_annihilation, apply_creation, FockVector, Op, StateVector};

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Number of states in the N=2 sector.
pub const N2_DIM: usize = 6;
/// Number of states in the full two-site space.
pub const FULL_DIM: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    One,
    Two,
}

impl Site {
    pub fn swapped(self) -> Site {
        match self {
            Site::One => Site::Two,
            Site::Two => Site::One,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Up,
    Down,
}

/// A single fermionic orbital `(site, spin)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mode {
    pub site: Site,
    pub spin: Spin,
}

impl Mode {
    pub const fn new(site: Site, spin: Spin) -> Self {
        Mode { site, spin }
    }

    pub const ALL: [Mode; 4] = [
        Mode::new(Site::One, Spin::Up),
        Mode::new(Site::One, Spin::Down),
        Mode::new(Site::Two, Spin::Up),
        Mode::new(Site::Two, Spin::Down),
    ];

    /// Position in the canonical ordering `1↑, 1↓, 2↑, 2↓`.
    pub fn index(self) -> u32 {
        let s = match self.site {
            Site::One => 0,
            Site::Two => 2,
        };
        s + match self.spin {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    pub(crate) fn bit(self) -> u8 {
        1 << self.index()
    }
}

/// Occupation of a single site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SiteOccupation {
    Empty,
    Up,
    Down,
    UpDown,
}

impl SiteOccupation {
    fn from_bits(up: bool, down: bool) -> Self {
        match (up, down) {
            (false, false) => SiteOccupation::Empty,
            (true, false) => SiteOccupation::Up,
            (false, true) => SiteOccupation::Down,
            (true, true) => SiteOccupation::UpDown,
        }
    }

    fn electrons(self) -> u32 {
        match self {
            SiteOccupation::Empty => 0,
            SiteOccupation::Up | SiteOccupation::Down => 1,
            SiteOccupation::UpDown => 2,
        }
    }

    fn sz2(self) -> i32 {
        match self {
            SiteOccupation::Up => 1,
            SiteOccupation::Down => -1,
            _ => 0,
        }
    }
}

/// One of the six two-electron basis kets.
///
/// | index | ket       |
/// |-------|-----------|
/// | 1     | `|↑,↑⟩`   |
/// | 2     | `|0,↑↓⟩`  |
/// | 3     | `|↑,↓⟩`   |
/// | 4     | `|↓,↑⟩`   |
/// | 5     | `|↑↓,0⟩`  |
/// | 6     | `|↓,↓⟩`   |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FockState {
    index: usize,
}

/// Occupation bitmasks of the basis kets, in index order.
const N2_BITS: [u8; N2_DIM] = [
    0b0101, // 1↑ 2↑
    0b1100, // 2↑ 2↓
    0b1001, // 1↑ 2↓
    0b0110, // 1↓ 2↑
    0b0011, // 1↑ 1↓
    0b1010, // 1↓ 2↓
];

impl FockState {
    /// Basis ket by its 1-based index.
    pub fn new(index: usize) -> Option<Self> {
        (1..=N2_DIM).contains(&index).then_some(FockState { index })
    }

    pub fn all() -> impl Iterator<Item = FockState> {
        (1..=N2_DIM).map(|index| FockState { index })
    }

    pub fn index(self) -> usize {
        self.index
    }

    pub(crate) fn bits(self) -> u8 {
        N2_BITS[self.index - 1]
    }

    pub(crate) fn from_bits(bits: u8) -> Option<Self> {
        N2_BITS
            .iter()
            .position(|&b| b == bits)
            .map(|p| FockState { index: p + 1 })
    }

    /// `(site 1, site 2)` occupations.
    pub fn occupations(self) -> (SiteOccupation, SiteOccupation) {
        let b = self.bits();
        (
            SiteOccupation::from_bits(b & 0b0001 != 0, b & 0b0010 != 0),
            SiteOccupation::from_bits(b & 0b0100 != 0, b & 0b1000 != 0),
        )
    }

    pub fn electrons(self) -> u32 {
        let (a, b) = self.occupations();
        a.electrons() + b.electrons()
    }

    /// Total `S_z` in units of one full spin flip (−1, 0 or +1).
    pub fn sz(self) -> i32 {
        let (a, b) = self.occupations();
        (a.sz2() + b.sz2()) / 2
    }

    /// Creation operators building this ket from the vacuum, in the order they
    /// act (rightmost operator first).
    pub fn creation_sequence(self) -> Vec<Mode> {
        Mode::ALL
            .iter()
            .copied()
            .filter(|m| self.bits() & m.bit() != 0)
            .collect()
    }
}

/// The five real parameters of the dimer.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct DimerParams {
    epsilon: f64,
    t: f64,
    lambda: f64,
    gamma: f64,
    u: f64,
}

impl DimerParams {
    pub fn new(epsilon: f64, t: f64, lambda: f64, gamma: f64, u: f64) -> Result<Self> {
        for (name, value) in [
            ("epsilon", epsilon),
            ("t", t),
            ("lambda", lambda),
            ("gamma", gamma),
            ("u", u),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFiniteParam { name, value });
            }
        }
        Ok(DimerParams {
            epsilon,
            t,
            lambda,
            gamma,
            u,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
    pub fn t(&self) -> f64 {
        self.t
    }
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn u(&self) -> f64 {
        self.u
    }

    /// Hopping from site 2 to site 1, `t + λ`.
    pub fn t_plus(&self) -> f64 {
        self.t + self.lambda
    }

    /// Hopping from site 1 to site 2, `t − λ`.
    pub fn t_minus(&self) -> f64 {
        self.t - self.lambda
    }

    /// Site-1 orbital energy `ε + iγ`.
    pub fn eps_plus(&self) -> Complex64 {
        Complex64::new(self.epsilon, self.gamma)
    }

    /// Site-2 orbital energy `ε − iγ`.
    pub fn eps_minus(&self) -> Complex64 {
        Complex64::new(self.epsilon, -self.gamma)
    }

    pub fn with_epsilon(self, epsilon: f64) -> Result<Self> {
        Self::new(epsilon, self.t, self.lambda, self.gamma, self.u)
    }
    pub fn with_t(self, t: f64) -> Result<Self> {
        Self::new(self.epsilon, t, self.lambda, self.gamma, self.u)
    }
    pub fn with_lambda(self, lambda: f64) -> Result<Self> {
        Self::new(self.epsilon, self.t, lambda, self.gamma, self.u)
    }
    pub fn with_gamma(self, gamma: f64) -> Result<Self> {
        Self::new(self.epsilon, self.t, self.lambda, gamma, self.u)
    }
    pub fn with_u(self, u: f64) -> Result<Self> {
        Self::new(self.epsilon, self.t, self.lambda, self.gamma, u)
    }
}
