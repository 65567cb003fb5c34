//! Spectral analysis of the PT-symmetric, non-Hermitian two-site Hubbard
//! model (a "hydrogen molecule" with gain/loss orbital energies and
//! asymmetric hopping).
//!
//! The crate is organised bottom-up:
//!
//! * [`fock`] builds the six-state two-electron basis and assembles the
//!   Hamiltonian by applying second-quantised operators.
//! * [`symmetry`] splits the matrix into `S_z` sectors and checks PT symmetry.
//! * [`spectra`] computes eigenvalues by closed forms, by Cardano's method on
//!   the reduced cubic and by an independent characteristic-polynomial oracle.
//! * [`epfinder`] locates exceptional points on the cubic discriminant,
//!   classifies them and traces phase boundaries.

pub mod charpoly;
pub mod epfinder;
mod error;
pub mod fock;
pub mod spectra;
pub mod symmetry;

pub use error::{Error, Result};
pub use fock::{build_hamiltonian, DimerParams, HamiltonianMatrix};
pub use num_complex::Complex64;
