//! Dense column-major complex matrix.
//!
//! Deliberately minimal: the simulation only needs construction, column
//! access, matrix-vector products and a unitarity defect for tests. Storage
//! is column-major so per-user block columns are contiguous.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix, column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// All-zeros matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from equal-length columns.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let rows = columns.first().map(Vec::len).unwrap_or(0);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::dimension("columns have unequal lengths"));
        }
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            data.extend_from_slice(c);
        }
        Ok(ComplexMatrix {
            rows,
            cols: columns.len(),
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[c * self.rows + r]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[c * self.rows + r] = v;
    }

    /// Contiguous view of column `c`.
    pub fn column(&self, c: usize) -> &[Complex64] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    pub fn column_mut(&mut self, c: usize) -> &mut [Complex64] {
        &mut self.data[c * self.rows..(c + 1) * self.rows]
    }

    /// Full column-major backing slice.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Largest entry magnitude in each column (empty columns peak at zero).
    pub fn column_peaks(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|c| self.column(c).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .collect()
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    /// `self * x`.
    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::dimension(format!(
                "mul_vec: {} columns vs vector of length {}",
                self.cols,
                x.len()
            )));
        }
        let mut y = vec![Complex64::new(0.0, 0.0); self.rows];
        for (c, &xc) in x.iter().enumerate() {
            for (yi, &m) in y.iter_mut().zip(self.column(c)) {
                *yi += m * xc;
            }
        }
        Ok(y)
    }

    /// `self† * x` (conjugate transpose times vector).
    pub fn adjoint_mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.rows {
            return Err(Error::dimension(format!(
                "adjoint_mul_vec: {} rows vs vector of length {}",
                self.rows,
                x.len()
            )));
        }
        let y = (0..self.cols)
            .map(|c| {
                self.column(c)
                    .iter()
                    .zip(x)
                    .map(|(&m, &xi)| m.conj() * xi)
                    .sum()
            })
            .collect();
        Ok(y)
    }

    /// Frobenius norm of `self† self − I`; zero for a perfect unitary.
    pub fn unitarity_defect(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.cols {
            for j in 0..self.cols {
                let mut dot = Complex64::new(0.0, 0.0);
                for (&a, &b) in self.column(i).iter().zip(self.column(j)) {
                    dot += a.conj() * b;
                }
                if i == j {
                    dot -= 1.0;
                }
                sum += dot.norm_sqr();
            }
        }
        sum.sqrt()
    }
}
