use num_complex::Complex64;

use super::{DimerParams, FockState, FockVector, Mode, Op, Site, Spin, StateVector, N2_DIM};

pub type Matrix6 = [[Complex64; N2_DIM]; N2_DIM];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// One term `coeff · O_k ⋯ O_1` of a second-quantised operator; `ops[0]` is
/// `O_1` and acts first.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorTerm {
    pub coeff: Complex64,
    pub ops: Vec<Op>,
}

/// Spin sector of the block-diagonal layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SzSector {
    Plus,
    Zero,
    Minus,
}

impl SzSector {
    pub fn of(state: FockState) -> SzSector {
        match state.sz() {
            1 => SzSector::Plus,
            -1 => SzSector::Minus,
            _ => SzSector::Zero,
        }
    }

    /// Basis indices (1-based) in this sector.
    pub fn indices(self) -> &'static [usize] {
        match self {
            SzSector::Plus => &[1],
            SzSector::Zero => &[2, 3, 4, 5],
            SzSector::Minus => &[6],
        }
    }
}

/// Operator expansion of
/// `Σ_σ [ε₊ n_{1σ} + ε₋ n_{2σ} + t⁺ c†_{1σ}c_{2σ} + t⁻ c†_{2σ}c_{1σ}] + U Σ_i n_{i↑}n_{i↓}`.
pub fn hamiltonian_terms(params: &DimerParams) -> Vec<OperatorTerm> {
    let real = |x: f64| Complex64::new(x, 0.0);
    let number = |site, spin| {
        let m = Mode::new(site, spin);
        vec![Op::Annihilate(m), Op::Create(m)]
    };
    let hop = |to: Site, from: Site, spin| {
        vec![
            Op::Annihilate(Mode::new(from, spin)),
            Op::Create(Mode::new(to, spin)),
        ]
    };

    let mut terms = Vec::with_capacity(10);
    for spin in [Spin::Up, Spin::Down] {
        terms.push(OperatorTerm {
            coeff: params.eps_plus(),
            ops: number(Site::One, spin),
        });
        terms.push(OperatorTerm {
            coeff: params.eps_minus(),
            ops: number(Site::Two, spin),
        });
        terms.push(OperatorTerm {
            coeff: real(params.t_plus()),
            ops: hop(Site::One, Site::Two, spin),
        });
        terms.push(OperatorTerm {
            coeff: real(params.t_minus()),
            ops: hop(Site::Two, Site::One, spin),
        });
    }
    for site in [Site::One, Site::Two] {
        let mut ops = number(site, Spin::Down);
        ops.extend(number(site, Spin::Up));
        terms.push(OperatorTerm {
            coeff: real(params.u()),
            ops,
        });
    }
    terms
}

/// Dense 6×6 Hamiltonian over the two-electron basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HamiltonianMatrix {
    entries: Matrix6,
}

impl HamiltonianMatrix {
    /// Wraps raw entries; `entries[i][j] = ⟨i+1|H|j+1⟩`.
    pub fn from_entries(entries: Matrix6) -> Self {
        HamiltonianMatrix { entries }
    }

    pub fn entries(&self) -> &Matrix6 {
        &self.entries
    }

    /// `⟨row|H|col⟩`.
    pub fn get(&self, row: FockState, col: FockState) -> Complex64 {
        self.entries[row.index() - 1][col.index() - 1]
    }

    pub fn set(&mut self, row: FockState, col: FockState, value: Complex64) {
        self.entries[row.index() - 1][col.index() - 1] = value;
    }

    pub fn block_layout() -> [(SzSector, &'static [usize]); 3] {
        [SzSector::Plus, SzSector::Zero, SzSector::Minus].map(|s| (s, s.indices()))
    }

    pub fn trace(&self) -> Complex64 {
        (0..N2_DIM).map(|i| self.entries[i][i]).sum()
    }

    pub fn adjoint(&self) -> HamiltonianMatrix {
        let mut out = [[ZERO; N2_DIM]; N2_DIM];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out[j][i] = v.conj();
            }
        }
        HamiltonianMatrix { entries: out }
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn max_abs_diff(&self, other: &HamiltonianMatrix) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        let x = v.amplitudes();
        let mut out = [ZERO; N2_DIM];
        for (o, row) in out.iter_mut().zip(self.entries.iter()) {
            *o = row.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
        }
        StateVector::from_amplitudes(out)
    }
}

/// Assembles `⟨i|H|j⟩` by applying every operator term to each basis ket.
pub fn build_hamiltonian(params: &DimerParams) -> HamiltonianMatrix {
    let terms = hamiltonian_terms(params);
    let mut entries = [[ZERO; N2_DIM]; N2_DIM];
    for col in FockState::all() {
        let ket = FockVector::from(col);
        for term in &terms {
            let image = ket.apply(&term.ops);
            if image.is_zero() {
                continue;
            }
            // Every term conserves particle number.
            let image = image
                .to_state_vector()
                .expect("number-conserving term left the N=2 sector");
            for row in FockState::all() {
                let a = image[row];
                if a != ZERO {
                    entries[row.index() - 1][col.index() - 1] += term.coeff * a;
                }
            }
        }
    }
    HamiltonianMatrix { entries }
}
