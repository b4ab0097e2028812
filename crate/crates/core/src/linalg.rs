//! Dense Hermitian positive-definite solves for the Gram systems.
//!
//! Cholesky factorization in working precision, residuals for iterative
//! refinement accumulated in double-double, and a 2-norm condition
//! estimate from power and inverse iteration.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::dd::{ComplexDd, DoubleDouble};

/// Scalars the solver works over: `f64` for real symmetric systems and
/// `Complex64` for Hermitian ones.
pub trait Field:
    Copy
    + Default
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + core::fmt::Debug
{
    /// Extended-precision accumulator.
    type Acc: Copy;

    fn from_f64(x: f64) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn abs_sq(self) -> f64;
    fn scale(self, s: f64) -> Self;
    fn to_complex(self) -> Complex64;
    /// Converts from a complex value; the real field keeps the real part.
    fn from_complex(z: Complex64) -> Self;

    fn acc_from(x: Self) -> Self::Acc;
    /// `acc + a * b`, with the product formed exactly.
    fn acc_add_prod(acc: Self::Acc, a: Self, b: Self) -> Self::Acc;
    fn acc_value(acc: Self::Acc) -> Self;
}

impl Field for f64 {
    type Acc = DoubleDouble;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn conj(self) -> Self {
        self
    }
    fn re(self) -> f64 {
        self
    }
    fn abs_sq(self) -> f64 {
        self * self
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn from_complex(z: Complex64) -> Self {
        z.re
    }
    fn acc_from(x: Self) -> DoubleDouble {
        DoubleDouble::from_f64(x)
    }
    fn acc_add_prod(acc: DoubleDouble, a: Self, b: Self) -> DoubleDouble {
        acc.add_product(a, b)
    }
    fn acc_value(acc: DoubleDouble) -> Self {
        acc.to_f64()
    }
}

impl Field for Complex64 {
    type Acc = ComplexDd;

    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn abs_sq(self) -> f64 {
        self.norm_sqr()
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn from_complex(z: Complex64) -> Self {
        z
    }
    fn acc_from(x: Self) -> ComplexDd {
        ComplexDd::from_complex(x)
    }
    fn acc_add_prod(acc: ComplexDd, a: Self, b: Self) -> ComplexDd {
        acc.add_product(a, b)
    }
    fn acc_value(acc: ComplexDd) -> Self {
        acc.to_complex()
    }
}

/// Square matrix in row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::default(); n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).fold(T::default(), |acc, (a, b)| acc + *a * *b))
            .collect()
    }

    /// `b - A x` with every product and sum carried in double-double.
    pub fn residual(&self, x: &[T], b: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                let mut acc = T::acc_from(b[i]);
                for (a, xj) in self.row(i).iter().zip(x) {
                    acc = T::acc_add_prod(acc, -*a, *xj);
                }
                T::acc_value(acc)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
#[error("matrix is not numerically positive definite (pivot {pivot} = {value:e})")]
pub struct NotPositiveDefinite {
    pub pivot: usize,
    pub value: f64,
}

/// Lower factor `L` of `A = L L^H`.
#[derive(Clone, Debug)]
pub struct Cholesky<T> {
    l: Matrix<T>,
}

impl<T: Field> Cholesky<T> {
    /// Factors a Hermitian matrix, reading only its lower triangle.
    pub fn factor(a: &Matrix<T>) -> Result<Self, NotPositiveDefinite> {
        let n = a.dim();
        let mut l = Matrix::<T>::zeros(n);
        for j in 0..n {
            // Row j is finished once its diagonal is set; rows below it are
            // updated from it.
            let (done, below) = l.data.split_at_mut((j + 1) * n);
            let row_j = &mut done[j * n..];
            let mut d = a.get(j, j).re();
            for v in &row_j[..j] {
                d -= v.abs_sq();
            }
            if !(d > 0.0) || !d.is_finite() {
                return Err(NotPositiveDefinite { pivot: j, value: d });
            }
            let djj = libm::sqrt(d);
            row_j[j] = T::from_f64(djj);
            let row_j: &[T] = row_j;
            for (offset, row_i) in below.chunks_exact_mut(n).enumerate() {
                let i = j + 1 + offset;
                let mut s = a.get(i, j);
                for k in 0..j {
                    s = s - row_i[k] * row_j[k].conj();
                }
                row_i[j] = s.scale(1.0 / djj);
            }
        }
        Ok(Self { l })
    }

    pub fn dim(&self) -> usize {
        self.l.dim()
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.dim();
        let mut y = b.to_vec();
        for i in 0..n {
            let row = self.l.row(i);
            let mut s = y[i];
            for k in 0..i {
                s = s - row[k] * y[k];
            }
            y[i] = s.scale(1.0 / row[i].re());
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s = s - self.l.get(k, i).conj() * y[k];
            }
            y[i] = s.scale(1.0 / self.l.get(i, i).re());
        }
        y
    }
}

/// Solution of a Hermitian system with its diagnostics.
#[derive(Clone, Debug)]
pub struct HpdSolution<T> {
    pub x: Vec<T>,
    /// Estimated 2-norm condition number of the matrix as given.
    pub cond_estimate: f64,
    /// Max-norm of the final double-double residual relative to `b`.
    pub relative_residual: f64,
}

/// Solves `A x = b` for Hermitian positive-definite `A`, followed by
/// `refine_steps` rounds of iterative refinement.
pub fn solve_hpd<T: Field>(
    a: &Matrix<T>,
    b: &[T],
    refine_steps: usize,
) -> Result<HpdSolution<T>, (NotPositiveDefinite, f64)> {
    let chol = match Cholesky::factor(a) {
        Ok(c) => c,
        Err(e) => return Err((e, f64::INFINITY)),
    };
    let mut x = chol.solve(b);
    for _ in 0..refine_steps {
        let r = a.residual(&x, b);
        let dx = chol.solve(&r);
        for (xi, di) in x.iter_mut().zip(dx) {
            *xi = *xi + di;
        }
    }
    let r = a.residual(&x, b);
    let bnorm = b.iter().map(|v| v.abs_sq()).fold(0.0, f64::max);
    let rnorm = r.iter().map(|v| v.abs_sq()).fold(0.0, f64::max);
    let relative_residual = if bnorm > 0.0 { libm::sqrt(rnorm / bnorm) } else { libm::sqrt(rnorm) };
    Ok(HpdSolution { x, cond_estimate: condition_estimate(a, &chol), relative_residual })
}

const CONDITION_ITERATIONS: usize = 60;

fn normalize<T: Field>(v: &mut [T]) -> f64 {
    let norm = libm::sqrt(v.iter().map(|x| x.abs_sq()).sum::<f64>());
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x = x.scale(1.0 / norm);
        }
    }
    norm
}

/// Ratio of the largest to smallest eigenvalue, by power iteration on `A`
/// and inverse iteration through its Cholesky factor.
pub fn condition_estimate<T: Field>(a: &Matrix<T>, chol: &Cholesky<T>) -> f64 {
    let n = a.dim();
    if n == 0 {
        return 1.0;
    }
    let start: Vec<T> = (0..n).map(|i| T::from_f64(1.0 + (i % 7) as f64 / 7.0)).collect();

    let mut v = start.clone();
    normalize(&mut v);
    let mut lambda_max = 0.0;
    for _ in 0..CONDITION_ITERATIONS {
        let mut w = a.mul_vec(&v);
        lambda_max = normalize(&mut w);
        v = w;
    }

    let mut v = start;
    normalize(&mut v);
    let mut inv_lambda_min = 0.0;
    for _ in 0..CONDITION_ITERATIONS {
        let mut w = chol.solve(&v);
        inv_lambda_min = normalize(&mut w);
        v = w;
    }
    lambda_max * inv_lambda_min
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn hilbert(n: usize) -> Matrix<f64> {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, 1.0 / (i + j + 1) as f64);
            }
        }
        m
    }

    #[test]
    fn solves_small_spd_system() {
        let mut a = Matrix::zeros(2);
        a.set(0, 0, 4.0);
        a.set(0, 1, 2.0);
        a.set(1, 0, 2.0);
        a.set(1, 1, 3.0);
        let sol = solve_hpd(&a, &[2.0, 1.0], 1).unwrap();
        assert_relative_eq!(sol.x[0], 0.5, max_relative = 1e-15);
        assert_relative_eq!(sol.x[1], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn hermitian_complex_system() {
        let i = Complex64::new(0.0, 1.0);
        let mut a = Matrix::zeros(2);
        a.set(0, 0, Complex64::new(2.0, 0.0));
        a.set(0, 1, i);
        a.set(1, 0, -i);
        a.set(1, 1, Complex64::new(2.0, 0.0));
        let x_true = [Complex64::new(1.0, -1.0), Complex64::new(0.5, 2.0)];
        let b = a.mul_vec(&x_true);
        let sol = solve_hpd(&a, &b, 1).unwrap();
        for (x, t) in sol.x.iter().zip(x_true) {
            assert!((x - t).norm() < 1e-14);
        }
        // Eigenvalues of [[2, i], [-i, 2]] are 1 and 3.
        assert_relative_eq!(sol.cond_estimate, 3.0, max_relative = 1e-6);
    }

    #[test]
    fn refinement_on_ill_conditioned_solves() {
        let a = hilbert(9);
        let x_true: Vec<f64> = (0..9).map(|i| 1.0 + i as f64).collect();
        let b = a.mul_vec(&x_true);
        let plain = solve_hpd(&a, &b, 0).unwrap();
        let refined = solve_hpd(&a, &b, 3).unwrap();
        assert!(refined.relative_residual < 1e-14, "{}", refined.relative_residual);
        let err = |x: &[f64]| x.iter().zip(&x_true).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(err(&refined.x) < 1e-3);
        assert!(err(&refined.x) <= err(&plain.x) * 1.5);
        assert!(plain.cond_estimate > 1e10);
    }

    #[test]
    fn rejects_indefinite() {
        let mut a = Matrix::zeros(2);
        a.set(0, 0, 1.0);
        a.set(0, 1, 2.0);
        a.set(1, 0, 2.0);
        a.set(1, 1, 1.0);
        let (err, cond) = solve_hpd(&a, &[1.0, 1.0], 1).unwrap_err();
        assert_eq!(err.pivot, 1);
        assert!(cond.is_infinite());
    }
}
