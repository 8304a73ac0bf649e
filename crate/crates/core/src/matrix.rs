//! Dense matrices over the quaternions and the Gaussian rationals.
//!
//! `ℍⁿ` is treated as a right module: scalars multiply vectors on the right,
//! so row reduction only ever left-multiplies rows.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Quaternion, Rational};

/// The operations matrices need from their entries: a (possibly
/// non-commutative) division ring.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn try_inv(&self) -> Result<Self>;
}

macro_rules! impl_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn add_ref(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub_ref(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn neg_ref(&self) -> Self {
                -self
            }
            fn try_inv(&self) -> Result<Self> {
                self.inv()
            }
        }
    };
}

impl_ring!(Quaternion);
impl_ring!(GaussianRational);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>, // row-major
}

pub type QMatrix = Matrix<Quaternion>;
pub type CMatrix = Matrix<GaussianRational>;

impl<T: Ring> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn scalar(n: usize, s: &T) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { s.clone() } else { T::zero() })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = &self[(r, k)];
                let b = &rhs[(k, c)];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add_ref(&a.mul_ref(b));
                }
            }
            acc
        }))
    }

    fn zip_with(&self, rhs: &Self, what: &str, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", T::add_ref)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "subtract", T::sub_ref)
    }

    pub fn neg(&self) -> Self {
        self.map(T::neg_ref)
    }

    /// `A · q`: every entry multiplied by `q` on the right.
    pub fn scale_right(&self, q: &T) -> Self {
        self.map(|x| x.mul_ref(q))
    }

    /// `q · A`: every entry multiplied by `q` on the left.
    pub fn scale_left(&self, q: &T) -> Self {
        self.map(|x| q.mul_ref(x))
    }

    pub fn square(&self) -> Result<Self> {
        self.checked_mul(self)
    }

    /// Gauss-Jordan elimination using left row operations only.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape(format!("cannot invert {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Matrix::<T>::identity(n).to_rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p_inv = a[col][col].try_inv()?;
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *x = p_inv.mul_ref(x);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let t = factor.mul_ref(&a[col][c]);
                    a[r][c] = a[r][c].sub_ref(&t);
                    let t = factor.mul_ref(&inv[col][c]);
                    inv[r][c] = inv[r][c].sub_ref(&t);
                }
            }
        }
        Matrix::from_rows(inv)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn direct_sum(blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// `[[0, upper], [lower, 0]]` for square blocks of equal size.
    pub fn antidiagonal(upper: &Self, lower: &Self) -> Self {
        let n = upper.rows;
        let mut out = Matrix::zeros(2 * n, 2 * n);
        out.set_block(0, n, upper);
        out.set_block(n, 0, lower);
        out
    }

    /// `P A P⁻¹` for the permutation sending index `k` to `perm[k]`, i.e.
    /// `out[perm[r], perm[c]] = self[r, c]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(perm[r], perm[c])] = self[(r, c)].clone();
            }
        }
        out
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    /// Panics on a shape mismatch; use [`Matrix::checked_mul`] otherwise.
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<T: Ring> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl CMatrix {
    pub fn to_quaternion(&self) -> QMatrix {
        self.map(GaussianRational::to_quaternion)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> CMatrix {
        self.map(GaussianRational::conj)
    }
}

impl QMatrix {
    /// `Some` when every entry lies in ℂ.
    pub fn to_complex(&self) -> Option<CMatrix> {
        let data = self
            .data
            .iter()
            .map(Quaternion::as_complex)
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Writes `A = A1 + A2 j` with complex `A1`, `A2`.
    pub fn complex_parts(&self) -> (CMatrix, CMatrix) {
        (
            self.map(|q| q.complex_parts().0),
            self.map(|q| q.complex_parts().1),
        )
    }
}

/// The complex adjoint `Φ(A) = [[A1, A2], [-conj(A2), conj(A1)]]`.
pub fn phi_embed(a: &QMatrix) -> CMatrix {
    let (a1, a2) = a.complex_parts();
    let (n, m) = (a.rows(), a.cols());
    let mut out = CMatrix::zeros(2 * n, 2 * m);
    out.set_block(0, 0, &a1);
    out.set_block(0, m, &a2);
    out.set_block(n, 0, &a2.conj().neg());
    out.set_block(n, m, &a1.conj());
    out
}

/// Determinant of a complex matrix by Bareiss fraction-free elimination.
pub fn complex_det(m: &CMatrix) -> Result<GaussianRational> {
    if !m.is_square() {
        return Err(Error::Shape(format!("determinant of {}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(GaussianRational::one());
    }
    let mut a = m.to_rows();
    let mut sign_flip = false;
    let mut prev = GaussianRational::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Ok(GaussianRational::zero()),
            }
        }
        let prev_inv = prev.inv()?;
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = &num * &prev_inv;
            }
            a[i][k] = GaussianRational::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign_flip { -det } else { det })
}

/// Quaternionic determinant `det Φ(A)`, always a non-negative rational.
pub fn qdet(a: &QMatrix) -> Result<Rational> {
    let d = complex_det(&phi_embed(a))?;
    debug_assert!(d.im.is_zero(), "det Φ(A) must be real, got {d}");
    debug_assert!(!d.re.is_negative(), "det Φ(A) must be non-negative, got {d}");
    Ok(d.re)
}

pub fn is_involution<T: Ring>(g: &Matrix<T>) -> bool {
    g.is_square() && g.square().is_ok_and(|s| s.is_identity())
}

pub fn is_skew_involution<T: Ring>(g: &Matrix<T>) -> bool {
    g.is_square()
        && g
            .square()
            .is_ok_and(|s| s == Matrix::<T>::identity(g.rows()).neg())
}

/// `g A - B g`, which vanishes exactly when `g A g⁻¹ = B` (for invertible `g`).
pub fn conjugacy_residual(g: &QMatrix, a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    if !(g.is_square() && a.is_square() && b.is_square())
        || g.rows() != a.rows()
        || a.rows() != b.rows()
    {
        return Err(Error::Shape("conjugacy residual needs equal square shapes".into()));
    }
    if qdet(g)?.is_zero() {
        return Err(Error::Singular);
    }
    g.checked_mul(a)?.checked_sub(&b.checked_mul(g)?)
}

/// Upper-triangular Toeplitz matrix with first row `x`.
pub fn toeplitz<T: Ring>(x: &[T]) -> Result<Matrix<T>> {
    if x.is_empty() {
        return Err(Error::Shape("Toeplitz matrix needs a nonempty first row".into()));
    }
    let n = x.len();
    Ok(Matrix::from_fn(n, n, |r, c| {
        if r <= c {
            x[c - r].clone()
        } else {
            T::zero()
        }
    }))
}
