//! Lindblad generators in the column-stacking convention
//! `vec(A X B) = (Bᵀ ⊗ A) vec(X)`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::model::Jump;
use crate::numerics::{kron, vec_norm, ComplexMatrix, C64, I};

/// Relative tolerance for the trace-preservation check `vec(I)† L = 0`.
pub const TRACE_PRESERVATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct Liouvillian {
    matrix: ComplexMatrix,
    dim: usize,
}

impl Liouvillian {
    /// Builds `L` from a Hamiltonian and jump rates in cyclic MHz; the
    /// result acts in angular units (rad/µs).
    pub fn build(h: &ComplexMatrix, jumps: &[Jump]) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::DimensionMismatch(format!("Hamiltonian of shape {}x{}", h.rows(), h.cols())));
        }
        let n = h.rows();
        let defect = h.hermiticity_defect();
        if defect > 1e-12 * h.max_abs().max(1.0) {
            return Err(Error::NotHermitian { deviation: defect });
        }
        for (k, j) in jumps.iter().enumerate() {
            if j.operator.rows() != n || j.operator.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "jump {k} is {}x{}, Hamiltonian is {n}x{n}",
                    j.operator.rows(),
                    j.operator.cols()
                )));
            }
        }
        let id = ComplexMatrix::identity(n);
        let hw = h.scale_real(TAU);
        let mut l = (&kron(&id, &hw) - &kron(&hw.transpose(), &id)).scale(-I);
        for j in jumps {
            let c = &j.operator;
            let cdc = c.adjoint().matmul(c);
            let term = &(&kron(&c.conj(), c) - &kron(&id, &cdc).scale_real(0.5)) - &kron(&cdc.transpose(), &id).scale_real(0.5);
            l += &term.scale_real(TAU * j.rate);
        }
        Ok(Self { matrix: l, dim: n })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Dimension of the underlying Hilbert space.
    pub fn hilbert_dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, rho_vec: &[C64]) -> Vec<C64> {
        self.matrix.mul_vec(rho_vec)
    }

    /// `‖vec(I)† L‖ / ‖L‖`, zero for an exactly trace-preserving generator.
    pub fn trace_defect(&self) -> f64 {
        let n = self.dim;
        let cols = self.matrix.cols();
        let row: Vec<C64> = (0..cols)
            .map(|c| (0..n).map(|k| self.matrix[(k * n + k, c)]).sum())
            .collect();
        let norm = self.matrix.frobenius_norm();
        if norm == 0.0 {
            0.0
        } else {
            vec_norm(&row) / norm
        }
    }

    pub fn check_trace_preservation(&self) -> Result<()> {
        let defect = self.trace_defect();
        if defect > TRACE_PRESERVATION_TOL {
            return Err(Error::PhysicalityLost(format!("generator is not trace preserving ({defect:e})")));
        }
        Ok(())
    }
}
