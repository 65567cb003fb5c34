use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{build_hamiltonian, DimerParams, StateVector};
use crate::symmetry::split_sz;

/// Residual above which `value` is rejected as an eigenvalue.
pub const EIGENVECTOR_RESIDUAL: f64 = 1e-8;

/// Unit-norm eigenvector of the `S_z = 0` block for eigenvalue `value`,
/// embedded in the six-state basis.
pub fn sz0_eigenvectors(params: &DimerParams, value: Complex64) -> Result<StateVector> {
    let blocks = split_sz(&build_hamiltonian(params))?;
    let mut m = blocks.zero;
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= value;
    }
    let w = null_vector(m);
    let residual = m
        .iter()
        .map(|row| {
            row.iter()
                .zip(w.iter())
                .map(|(a, b)| a * b)
                .sum::<Complex64>()
                .norm_sqr()
        })
        .sum::<f64>()
        .sqrt();
    if residual.is_nan() || residual > EIGENVECTOR_RESIDUAL {
        return Err(Error::NotAnEigenvalue { residual });
    }
    let zero = Complex64::new(0.0, 0.0);
    Ok(StateVector::from_amplitudes([
        zero, w[0], w[1], w[2], w[3], zero,
    ]))
}

/// Gaussian elimination with partial pivoting; the first column without a
/// usable pivot becomes the free variable.
fn null_vector(mut m: [[Complex64; 4]; 4]) -> [Complex64; 4] {
    let zero = Complex64::new(0.0, 0.0);
    let scale = m
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let threshold = 1e-10 * scale;

    let mut pivot_cols: Vec<usize> = Vec::with_capacity(4);
    let mut row = 0;
    for col in 0..4 {
        if row == 4 {
            break;
        }
        let (best, mag) = (row..4)
            .map(|r| (r, m[r][col].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("rows remain");
        if mag <= threshold {
            continue;
        }
        m.swap(row, best);
        for r in row + 1..4 {
            let f = m[r][col] / m[row][col];
            if f != zero {
                let pivot = m[row];
                for (x, &v) in m[r].iter_mut().zip(&pivot).skip(col) {
                    *x -= f * v;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if pivot_cols.len() == 4 {
        // No rank drop detected at this threshold; treat the last column as free.
        pivot_cols.pop();
    }
    let free = (0..4)
        .find(|c| !pivot_cols.contains(c))
        .expect("at least one free column");

    let mut w = [zero; 4];
    w[free] = Complex64::new(1.0, 0.0);
    for (r, &col) in pivot_cols.iter().enumerate().rev() {
        let acc: Complex64 = (col + 1..4).map(|c| m[r][c] * w[c]).sum();
        w[col] = -acc / m[r][col];
    }
    let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    w.map(|z| z / norm)
}

/// `|⟨a|b⟩| / (‖a‖‖b‖)`.
pub fn eigenvector_overlap(a: &StateVector, b: &StateVector) -> f64 {
    a.inner(b).norm() / (a.norm() * b.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn antibonding_state() {
        let p = DimerParams::new(0.5, 1.0, 0.0, 0.0, 0.0).unwrap();
        let e = c(2.0 * (0.5 + 1.0));
        let w = sz0_eigenvectors(&p, e).unwrap();
        assert!((w.norm() - 1.0).abs() < 1e-14);
        let hw = build_hamiltonian(&p).apply(&w);
        assert!((hw - e * w).norm() < 1e-12);
    }

    #[test]
    fn hermitian_eigenvectors_are_orthogonal() {
        let p = DimerParams::new(0.5, 1.0, 0.0, 0.0, 0.0).unwrap();
        let plus = sz0_eigenvectors(&p, c(3.0)).unwrap();
        let minus = sz0_eigenvectors(&p, c(-1.0)).unwrap();
        assert!(eigenvector_overlap(&plus, &minus) < 1e-10);
    }

    #[test]
    fn coalescence_near_exceptional_point() {
        let mut last = 0.0;
        for k in 2..=6 {
            let lambda = 1.0 - 10f64.powi(-k);
            let p = DimerParams::new(0.5, 1.0, lambda, 0.0, 0.0).unwrap();
            let r = 2.0 * (1.0 - lambda * lambda).sqrt();
            let plus = sz0_eigenvectors(&p, c(1.0 + r)).unwrap();
            let minus = sz0_eigenvectors(&p, c(1.0 - r)).unwrap();
            let ov = eigenvector_overlap(&plus, &minus);
            assert!(ov > last, "overlap not increasing at k={k}: {ov} <= {last}");
            last = ov;
        }
        assert!(last > 1.0 - 1e-3);
    }

    #[test]
    fn non_eigenvalue_rejected() {
        let p = DimerParams::new(0.5, 1.0, 0.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            sz0_eigenvectors(&p, c(2.0)),
            Err(Error::NotAnEigenvalue { .. })
        ));
    }
}
