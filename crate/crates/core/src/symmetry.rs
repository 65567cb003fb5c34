//! `S_z` block decomposition and matrix-level PT checks.
//!
//! # Parity matrix
//!
//! Parity exchanges the two sites. Its matrix is obtained by relabelling the
//! sites in each basis ket's canonical creation string and re-normal-ordering
//! with the fermionic algebra, which gives
//!
//! ```text
//! |1⟩ → −|1⟩    |2⟩ → +|5⟩    |3⟩ → −|4⟩
//! |4⟩ → −|3⟩    |5⟩ → +|2⟩    |6⟩ → −|6⟩
//! ```
//!
//! so `P² = +1`. Time reversal conjugates the orbital energies and reverses
//! the dissipative hopping `λ`; on this model that is the matrix adjoint, so
//! PT invariance reads `P·H†·P⁻¹ = H`.

use num_complex::Complex64;

use crate::charpoly::{characteristic_polynomial, Poly};
use crate::error::{Error, Result};
use crate::fock::{FockState, FockVector, HamiltonianMatrix, Mode, SzSector, N2_DIM};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub type Block4 = [[Complex64; 4]; 4];

/// The three diagonal blocks of a Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SzBlocks {
    pub plus_one: Complex64,
    /// Rows and columns ordered as basis kets 2, 3, 4, 5.
    pub zero: Block4,
    pub minus_one: Complex64,
}

impl SzBlocks {
    pub fn reassemble(&self) -> HamiltonianMatrix {
        let mut e = [[ZERO; N2_DIM]; N2_DIM];
        e[0][0] = self.plus_one;
        e[5][5] = self.minus_one;
        for (i, row) in self.zero.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                e[i + 1][j + 1] = *v;
            }
        }
        HamiltonianMatrix::from_entries(e)
    }
}

/// Splits `h` into its `S_z = +1, 0, −1` blocks. Any nonzero entry coupling
/// two sectors is reported as a block-structure violation.
pub fn split_sz(h: &HamiltonianMatrix) -> Result<SzBlocks> {
    for i in FockState::all() {
        for j in FockState::all() {
            if SzSector::of(i) != SzSector::of(j) && h.get(i, j) != ZERO {
                return Err(Error::BlockStructure {
                    row: i.index(),
                    col: j.index(),
                });
            }
        }
    }
    let e = h.entries();
    let mut zero = [[ZERO; 4]; 4];
    for (i, row) in zero.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = e[i + 1][j + 1];
        }
    }
    Ok(SzBlocks {
        plus_one: e[0][0],
        zero,
        minus_one: e[5][5],
    })
}

/// Monic characteristic polynomial of the `S_z = 0` block.
pub fn sz0_characteristic_polynomial(blocks: &SzBlocks) -> Poly {
    characteristic_polynomial(&blocks.zero)
}

/// True iff every coefficient of the `S_z = 0` characteristic polynomial has
/// imaginary part below `tol` in magnitude. Matrices without the expected
/// block structure fail.
pub fn check_pt_characteristic(h: &HamiltonianMatrix, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    match split_sz(h) {
        Ok(blocks) => sz0_characteristic_polynomial(&blocks)
            .coeffs()
            .iter()
            .all(|c| c.im.abs() < tol),
        Err(_) => false,
    }
}

/// Matrix of the site-exchange operator in the two-electron basis,
/// `p[i][j] = ⟨i|P|j⟩`.
pub fn parity_matrix() -> [[f64; N2_DIM]; N2_DIM] {
    let mut p = [[0.0; N2_DIM]; N2_DIM];
    for col in FockState::all() {
        let image = col
            .creation_sequence()
            .into_iter()
            .fold(FockVector::vacuum(), |v, m| {
                v.create(Mode::new(m.site.swapped(), m.spin))
            })
            .to_state_vector()
            .expect("site exchange preserves particle number");
        for row in FockState::all() {
            let a = image[row];
            debug_assert_eq!(a.im, 0.0);
            p[row.index() - 1][col.index() - 1] = a.re;
        }
    }
    p
}

/// `‖P·H†·P⁻¹ − H‖_max`.
pub fn pt_similarity_residual(h: &HamiltonianMatrix) -> f64 {
    let p = parity_matrix();
    let a = h.adjoint();
    let a = a.entries();
    // P is a signed permutation, so P⁻¹ = Pᵀ.
    let mut out = [[ZERO; N2_DIM]; N2_DIM];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            for k in 0..N2_DIM {
                if p[i][k] == 0.0 {
                    continue;
                }
                for l in 0..N2_DIM {
                    if p[j][l] != 0.0 {
                        *v += a[k][l] * (p[i][k] * p[j][l]);
                    }
                }
            }
        }
    }
    HamiltonianMatrix::from_entries(out).max_abs_diff(h)
}

pub fn check_pt_similarity(h: &HamiltonianMatrix, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    pt_similarity_residual(h) < tol
}
