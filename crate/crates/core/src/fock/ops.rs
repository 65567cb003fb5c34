use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{FockState, Mode, FULL_DIM, N2_DIM};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A vector in the full 16-dimensional two-site Fock space, indexed by the
/// occupation bitmask (bit `k` set means mode `k` is occupied).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FockVector {
    amps: [Complex64; FULL_DIM],
}

impl Default for FockVector {
    fn default() -> Self {
        FockVector::zero()
    }
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector {
            amps: [ZERO; FULL_DIM],
        }
    }

    pub fn vacuum() -> Self {
        let mut v = FockVector::zero();
        v.amps[0] = ONE;
        v
    }

    pub fn amplitude(&self, occupation: u8) -> Complex64 {
        self.amps[occupation as usize & (FULL_DIM - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|a| *a == ZERO)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn create(&self, mode: Mode) -> FockVector {
        apply_creation(self, mode)
    }

    pub fn annihilate(&self, mode: Mode) -> FockVector {
        apply_annihilation(self, mode)
    }

    /// Applies a product of operators; `ops[0]` acts first.
    pub fn apply(&self, ops: &[Op]) -> FockVector {
        ops.iter().fold(*self, |v, op| match *op {
            Op::Create(m) => apply_creation(&v, m),
            Op::Annihilate(m) => apply_annihilation(&v, m),
        })
    }

    /// Projects onto the two-electron basis. Fails if any amplitude outside
    /// that sector is nonzero.
    pub fn to_state_vector(&self) -> Result<StateVector> {
        let mut out = StateVector::zero();
        let mut outside = 0.0;
        for (bits, a) in self.amps.iter().enumerate() {
            match FockState::from_bits(bits as u8) {
                Some(s) => out.amps[s.index() - 1] = *a,
                None => outside += a.norm_sqr(),
            }
        }
        if outside > 0.0 {
            return Err(Error::SectorViolation { weight: outside });
        }
        Ok(out)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

impl Add for FockVector {
    type Output = FockVector;
    fn add(mut self, rhs: FockVector) -> FockVector {
        for (a, b) in self.amps.iter_mut().zip(rhs.amps) {
            *a += b;
        }
        self
    }
}

impl Sub for FockVector {
    type Output = FockVector;
    fn sub(self, rhs: FockVector) -> FockVector {
        self + (-rhs)
    }
}

impl Neg for FockVector {
    type Output = FockVector;
    fn neg(mut self) -> FockVector {
        for a in self.amps.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul<FockVector> for Complex64 {
    type Output = FockVector;
    fn mul(self, mut rhs: FockVector) -> FockVector {
        for a in rhs.amps.iter_mut() {
            *a *= self;
        }
        rhs
    }
}

impl From<StateVector> for FockVector {
    fn from(s: StateVector) -> FockVector {
        let mut v = FockVector::zero();
        for st in FockState::all() {
            v.amps[st.bits() as usize] = s.amps[st.index() - 1];
        }
        v
    }
}

impl From<FockState> for FockVector {
    fn from(s: FockState) -> FockVector {
        StateVector::basis(s).into()
    }
}

/// A single creation or annihilation operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Create(Mode),
    Annihilate(Mode),
}

/// Sign from moving an operator on `mode` past every occupied higher mode.
fn ordering_sign(bits: u8, mode: Mode) -> f64 {
    let above = bits >> (mode.index() + 1);
    if above.count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `c†_mode` applied to `state`. An already occupied mode gives zero.
pub fn apply_creation(state: &FockVector, mode: Mode) -> FockVector {
    let mut out = FockVector::zero();
    let bit = mode.bit();
    for (bits, a) in state.amps.iter().enumerate() {
        let bits = bits as u8;
        if *a == ZERO || bits & bit != 0 {
            continue;
        }
        out.amps[(bits | bit) as usize] += *a * ordering_sign(bits, mode);
    }
    out
}

/// `c_mode` applied to `state`. An empty mode gives zero.
pub fn apply_annihilation(state: &FockVector, mode: Mode) -> FockVector {
    let mut out = FockVector::zero();
    let bit = mode.bit();
    for (bits, a) in state.amps.iter().enumerate() {
        let bits = bits as u8;
        if *a == ZERO || bits & bit == 0 {
            continue;
        }
        out.amps[(bits & !bit) as usize] += *a * ordering_sign(bits, mode);
    }
    out
}

/// Complex amplitudes over the six two-electron kets, indexed by
/// `FockState::index() - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct StateVector {
    amps: [Complex64; N2_DIM],
}

impl StateVector {
    pub fn zero() -> Self {
        StateVector {
            amps: [ZERO; N2_DIM],
        }
    }

    pub fn basis(s: FockState) -> Self {
        let mut v = StateVector::zero();
        v.amps[s.index() - 1] = ONE;
        v
    }

    pub fn from_amplitudes(amps: [Complex64; N2_DIM]) -> Self {
        StateVector { amps }
    }

    pub fn amplitudes(&self) -> &[Complex64; N2_DIM] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

impl Index<FockState> for StateVector {
    type Output = Complex64;
    fn index(&self, s: FockState) -> &Complex64 {
        &self.amps[s.index() - 1]
    }
}

impl Add for StateVector {
    type Output = StateVector;
    fn add(mut self, rhs: StateVector) -> StateVector {
        for (a, b) in self.amps.iter_mut().zip(rhs.amps) {
            *a += b;
        }
        self
    }
}

impl Sub for StateVector {
    type Output = StateVector;
    fn sub(self, rhs: StateVector) -> StateVector {
        self + (-rhs)
    }
}

impl Neg for StateVector {
    type Output = StateVector;
    fn neg(mut self) -> StateVector {
        for a in self.amps.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul<StateVector> for Complex64 {
    type Output = StateVector;
    fn mul(self, mut rhs: StateVector) -> StateVector {
        for a in rhs.amps.iter_mut() {
            *a *= self;
        }
        rhs
    }
}

impl TryFrom<FockVector> for StateVector {
    type Error = Error;
    fn try_from(v: FockVector) -> Result<StateVector> {
        v.to_state_vector()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{Site, Spin};
    use proptest::prelude::*;

    fn m(site: Site, spin: Spin) -> Mode {
        Mode::new(site, spin)
    }

    fn ket(i: usize) -> StateVector {
        StateVector::basis(FockState::new(i).unwrap())
    }

    #[test]
    fn normal_ordered_pair_has_positive_sign() {
        let v = FockVector::vacuum()
            .create(m(Site::One, Spin::Up))
            .create(m(Site::Two, Spin::Down));
        assert_eq!(v.to_state_vector().unwrap(), ket(3));
    }

    #[test]
    fn reversed_pair_picks_up_minus_sign() {
        // c†_{1↑} c†_{2↓}|0⟩ = −|↑,↓⟩
        let v = FockVector::vacuum()
            .create(m(Site::Two, Spin::Down))
            .create(m(Site::One, Spin::Up));
        assert_eq!(v.to_state_vector().unwrap(), -ket(3));
        // c†_{1↓} c†_{2↑}|0⟩ creates |↓,↑⟩ with a minus sign.
        let v = FockVector::vacuum()
            .create(m(Site::Two, Spin::Up))
            .create(m(Site::One, Spin::Down));
        assert_eq!(v.to_state_vector().unwrap(), -ket(4));
    }

    #[test]
    fn basis_kets_match_creation_strings() {
        for s in FockState::all() {
            let v = s
                .creation_sequence()
                .into_iter()
                .fold(FockVector::vacuum(), |v, mode| v.create(mode));
            assert_eq!(v, FockVector::from(s), "ket {}", s.index());
        }
    }

    #[test]
    fn pauli_exclusion() {
        let v = FockVector::from(ket(3)).create(m(Site::One, Spin::Up));
        assert!(v.is_zero());
    }

    #[test]
    fn annihilation_from_double_occupancy() {
        // c_{2↓}|0,↑↓⟩ = +|0,↑⟩
        let v = FockVector::from(ket(2)).annihilate(m(Site::Two, Spin::Down));
        let expected = FockVector::vacuum().create(m(Site::Two, Spin::Up));
        assert_eq!(v, expected);
        // c†_{1↓} c_{2↓}|2⟩ = −|4⟩
        let v = FockVector::from(ket(2)).apply(&[
            Op::Annihilate(m(Site::Two, Spin::Down)),
            Op::Create(m(Site::One, Spin::Down)),
        ]);
        assert_eq!(v.to_state_vector().unwrap(), -ket(4));
        // c†_{1↑} c_{2↑}|2⟩ = +|3⟩
        let v = FockVector::from(ket(2)).apply(&[
            Op::Annihilate(m(Site::Two, Spin::Up)),
            Op::Create(m(Site::One, Spin::Up)),
        ]);
        assert_eq!(v.to_state_vector().unwrap(), ket(3));
    }

    #[test]
    fn annihilating_empty_mode_is_zero() {
        let v = FockVector::from(ket(2)).annihilate(m(Site::One, Spin::Up));
        assert!(v.is_zero());
    }

    #[test]
    fn leaving_the_sector_is_reported() {
        let v = FockVector::from(ket(3)).create(m(Site::Two, Spin::Up));
        assert!(matches!(
            v.to_state_vector(),
            Err(Error::SectorViolation { .. })
        ));
    }

    /// Every one of the 16 occupation basis vectors.
    fn full_basis() -> impl Iterator<Item = FockVector> {
        (0..FULL_DIM as u8).map(|bits| {
            let mut v = FockVector::zero();
            v.amps[bits as usize] = ONE;
            v
        })
    }

    #[test]
    fn canonical_anticommutation() {
        for a in Mode::ALL {
            for b in Mode::ALL {
                for v in full_basis() {
                    let cc = v.create(b).create(a) + v.create(a).create(b);
                    assert!(cc.is_zero());
                    let aa = v.annihilate(b).annihilate(a) + v.annihilate(a).annihilate(b);
                    assert!(aa.is_zero());
                    let mixed = v.create(b).annihilate(a) + v.annihilate(a).create(b);
                    let expected = if a == b { v } else { FockVector::zero() };
                    assert_eq!(mixed, expected, "{{c_{a:?}, c†_{b:?}}}");
                }
            }
        }
    }

    fn arb_state() -> impl Strategy<Value = StateVector> {
        prop::array::uniform6((-5.0..5.0f64, -5.0..5.0f64))
            .prop_map(|a| StateVector::from_amplitudes(a.map(|(re, im)| Complex64::new(re, im))))
    }

    proptest! {
        #[test]
        fn number_conserving_pairs_stay_in_sector(v in arb_state(), i in 0usize..4, j in 0usize..4) {
            let w = FockVector::from(v).apply(&[
                Op::Annihilate(Mode::ALL[j]),
                Op::Create(Mode::ALL[i]),
            ]);
            prop_assert!(w.to_state_vector().is_ok());
        }

        #[test]
        fn creation_is_linear(v in arb_state(), w in arb_state(), re in -3.0..3.0f64, i in 0usize..4) {
            let s = Complex64::new(re, 0.5);
            let mode = Mode::ALL[i];
            let lhs = apply_creation(&(s * FockVector::from(v) + FockVector::from(w)), mode);
            let rhs = s * apply_creation(&FockVector::from(v), mode) + apply_creation(&FockVector::from(w), mode);
            prop_assert!((lhs - rhs).norm_sqr() < 1e-20);
        }

        #[test]
        fn norm_is_sum_of_squares(v in arb_state()) {
            let direct: f64 = v.amplitudes().iter().map(|a| a.re * a.re + a.im * a.im).sum();
            prop_assert!((v.norm_sqr() - direct).abs() <= 1e-12 * direct.max(1.0));
            prop_assert!((FockVector::from(v).norm_sqr() - direct).abs() <= 1e-12 * direct.max(1.0));
        }
    }
}
