//! Row-major dense complex matrices.

use num_complex::Complex64;

use super::{NumError, DEFAULT_SIZE_CAP};

/// Dense complex matrix, row-major. Column vectors are `n x 1` matrices.
///
/// The tensor (Kronecker) index convention is fixed crate-wide: the basis
/// vector `e_i (x) e_j` of a product space has flat index `i * dim2 + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, NumError> {
        if data.len() != rows * cols {
            return Err(NumError::InvalidMatrix(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        let m = Self { rows, cols, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real entries convenience constructor (tests, structure constants).
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self, NumError> {
        Self::from_vec(rows, cols, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Column vector from complex coordinates.
    pub fn col_vec(coords: Vec<Complex64>) -> Self {
        let n = coords.len();
        Self { rows: n, cols: 1, data: coords }
    }

    /// `i`-th standard basis column vector of dimension `n`.
    pub fn basis_vec(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n, 1);
        v[(i, 0)] = Complex64::ONE;
        v
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn check_finite(&self) -> Result<(), NumError> {
        for (k, z) in self.data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(NumError::InvalidMatrix(format!(
                    "non-finite entry {z} at flat index {k}"
                )));
            }
        }
        Ok(())
    }

    pub fn col(&self, j: usize) -> CMatrix {
        let mut v = CMatrix::zeros(self.rows, 1);
        for i in 0..self.rows {
            v[(i, 0)] = self[(i, j)];
        }
        v
    }

    pub fn set_col(&mut self, j: usize, v: &CMatrix) {
        debug_assert_eq!(v.rows, self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[(i, 0)];
        }
    }

    pub fn row(&self, i: usize) -> CMatrix {
        let mut v = CMatrix::zeros(1, self.cols);
        for j in 0..self.cols {
            v[(0, j)] = self[(i, j)];
        }
        v
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * c).collect() }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "mul shape mismatch: {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Kronecker product with the crate's flat-index convention and the
    /// default size cap.
    pub fn kron(&self, other: &CMatrix) -> Result<CMatrix, NumError> {
        self.kron_capped(other, DEFAULT_SIZE_CAP)
    }

    /// Kronecker product `(M (x) N)(v (x) w) = Mv (x) Nw` with an explicit
    /// cap on the number of result entries.
    pub fn kron_capped(&self, other: &CMatrix, cap: usize) -> Result<CMatrix, NumError> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        if rows.checked_mul(cols).is_none_or(|n| n > cap) {
            return Err(NumError::SizeCap { rows, cols, cap });
        }
        let mut out = CMatrix::zeros(rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self[(i1, j1)];
                if a == Complex64::ZERO {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out[(i1 * other.rows + i2, j1 * other.cols + j2)] = a * other[(i2, j2)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        CMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                other[(i, j - self.cols)]
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.cols, "vstack col mismatch");
        CMatrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)]
            } else {
                other[(i - self.rows, j)]
            }
        })
    }

    /// Largest entry modulus; the crate's working matrix norm.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max entrywise distance to `other`.
    pub fn distance(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "distance shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.distance(other) <= tol
    }

    /// Gauss-Jordan inverse with partial pivoting.
    pub fn inverse(&self) -> Result<CMatrix, NumError> {
        if self.rows != self.cols {
            return Err(NumError::DimensionMismatch(format!(
                "inverse of non-square {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n);
        for col in 0..n {
            let (mut pivot_row, mut pivot_abs) = (col, 0.0f64);
            for r in col..n {
                let v = a[(r, col)].norm();
                if v > pivot_abs {
                    pivot_abs = v;
                    pivot_row = r;
                }
            }
            if pivot_abs < 1e-300 {
                return Err(NumError::SingularMatrix);
            }
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let p = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= p;
                inv[(col, j)] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    let av = a[(col, j)];
                    let iv = inv[(col, j)];
                    a[(r, j)] -= f * av;
                    inv[(r, j)] -= f * iv;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}
