//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! The matrices diagonalized here are at most 16x16, where Jacobi is both
//! accurate to machine precision and fast enough.

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Column `i` is the unit-norm eigenvector of `values[i]`, with its
    /// largest-magnitude component made real and positive.
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.vectors.column(i)
    }

    /// `V diag(values) V^dag`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = ComplexMatrix::real_diagonal(&self.values);
        self.vectors.matmul(&d).matmul(&self.vectors.adjoint())
    }
}

pub fn eig_hermitian(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition of a {}x{} matrix",
            h.rows(),
            h.cols()
        )));
    }
    let n = h.rows();
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let defect = h.hermiticity_defect();
    if defect > HERMITIAN_TOL * scale.max(1.0) {
        return Err(Error::NotHermitian { deviation: defect });
    }

    // Work on the exactly Hermitian part.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (h[(i, j)] + h[(j, i)].conj()));
    let mut v = ComplexMatrix::identity(n);

    let total = a.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * total {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut vec = v.column(k);
        fix_phase(&mut vec);
        for (row, z) in vec.into_iter().enumerate() {
            vectors[(row, col)] = z;
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Zero `a[p,q]` with the unitary `U = diag(1, e^{-i phi}) R(theta)` acting on
/// columns `p, q`, where `phi = arg a[p,q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag; // e^{i phi}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let ph_conj = phase.conj();
    // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -s * ph_conj;
    let u_qq = c * ph_conj;

    let n = a.rows();
    // A <- A U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    // A <- U^dag A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V <- V U
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Normalize and rotate the global phase so the largest-magnitude component
/// is real positive. Ties go to the lowest index.
fn fix_phase(vec: &mut [C64]) {
    let norm = vec.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    let max = vec.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
    let pivot = vec
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-10))
        .expect("nonzero vector has a maximal component");
    let rot = vec[pivot].conj() / vec[pivot].norm();
    for z in vec.iter_mut() {
        *z = *z * rot / norm;
    }
    vec[pivot] = C64::new(vec[pivot].re, 0.0);
}
