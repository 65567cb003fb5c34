//! Dense polynomials with complex coefficients and exact cofactor expansion
//! of `det(x·I − A)` for small matrices.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Polynomial `Σ c_k x^k`, coefficients stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::new(vec![c])
    }

    /// `x − root`.
    pub fn linear_factor(root: Complex64) -> Self {
        Poly::new(vec![-root, Complex64::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * x + c)
    }

    /// `Σ |c_k| |x|^k`, the scale against which rounding in `eval` is judged.
    pub fn eval_abs(&self, x: Complex64) -> f64 {
        let r = x.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Poly {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(ZERO)
                        + rhs.coeffs.get(k).copied().unwrap_or(ZERO)
                })
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// rows, memoised on the set of columns already used.
pub fn poly_determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    assert!(n <= 16, "cofactor expansion is meant for small matrices");
    let mut memo: Vec<Option<Poly>> = vec![None; 1 << n];
    minor_det(m, 0, &mut memo)
}

fn minor_det(m: &[Vec<Poly>], used: usize, memo: &mut [Option<Poly>]) -> Poly {
    let n = m.len();
    let row = used.count_ones() as usize;
    if row == n {
        return Poly::constant(Complex64::new(1.0, 0.0));
    }
    if let Some(p) = &memo[used] {
        return p.clone();
    }
    let mut acc = Poly::zero();
    let mut position = 0;
    for col in 0..n {
        if used & (1 << col) != 0 {
            continue;
        }
        let entry = &m[row][col];
        if !entry.is_zero() {
            let sub = minor_det(m, used | (1 << col), memo);
            let term = entry * &sub;
            acc = if position % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        position += 1;
    }
    memo[used] = Some(acc.clone());
    acc
}

/// Monic characteristic polynomial `det(x·I − A)`.
pub fn characteristic_polynomial<R: AsRef<[Complex64]>>(a: &[R]) -> Poly {
    let n = a.len();
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            let row = a[i].as_ref();
            assert_eq!(
                row.len(),
                n,
                "characteristic polynomial needs a square matrix"
            );
            (0..n)
                .map(|j| {
                    if i == j {
                        Poly::new(vec![-row[j], Complex64::new(1.0, 0.0)])
                    } else {
                        Poly::constant(-row[j])
                    }
                })
                .collect()
        })
        .collect();
    poly_determinant(&m)
}
