//! Coordinate-format square matrices acting on column-stacked operators.
//!
//! Used for matrix-free master-equation right-hand sides where the
//! Hamiltonian changes on every evaluation.

use super::matrix::{ComplexMatrix, C64, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    entries: Vec<(usize, usize, C64)>,
}

impl SparseMatrix {
    pub fn new(dim: usize) -> Self {
        Self { dim, entries: Vec::new() }
    }

    pub fn from_dense(m: &ComplexMatrix) -> Self {
        assert!(m.is_square());
        let mut s = Self::new(m.rows());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                s.push(i, j, m[(i, j)]);
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, C64)] {
        &self.entries
    }

    /// Appends an entry; zero values are dropped and duplicates accumulate
    /// when densified.
    pub fn push(&mut self, row: usize, col: usize, value: C64) {
        assert!(row < self.dim && col < self.dim);
        if value != ZERO {
            self.entries.push((row, col, value));
        }
    }

    pub fn clear(&mut self) {
        self.entries.clear();
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for &(i, j, v) in &self.entries {
            m[(i, j)] += v;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&(i, j, v)| (j, i, v.conj())).collect(),
        }
    }

    /// `out += coef * (S X)` for column-stacked `X`.
    pub fn left_mul_add(&self, x: &[C64], coef: C64, out: &mut [C64]) {
        let n = self.dim;
        for &(i, k, s) in &self.entries {
            let f = coef * s;
            for j in 0..n {
                out[i + j * n] += f * x[k + j * n];
            }
        }
    }

    /// `out += coef * (X S)` for column-stacked `X`.
    pub fn right_mul_add(&self, x: &[C64], coef: C64, out: &mut [C64]) {
        let n = self.dim;
        for &(k, j, s) in &self.entries {
            let f = coef * s;
            let src = &x[k * n..(k + 1) * n];
            let dst = &mut out[j * n..(j + 1) * n];
            for (d, v) in dst.iter_mut().zip(src) {
                *d += f * v;
            }
        }
    }

    /// `out += coef * (S X S^dag)` for column-stacked `X`.
    pub fn sandwich_add(&self, x: &[C64], coef: C64, out: &mut [C64]) {
        let n = self.dim;
        for &(a, b, s) in &self.entries {
            for &(c, d, t) in &self.entries {
                out[a + c * n] += coef * s * x[b + d * n] * t.conj();
            }
        }
    }
}
