use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

/// Relative pivot threshold below which a system is reported singular.
pub const SINGULAR_PIVOT_REL: f64 = 1e-13;

/// Solves `a x = b` by LU factorization with partial pivoting.
pub fn solve_linear(a: &ComplexMatrix, b: &[C64]) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "linear solve with a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a {n}x{n} system",
            b.len()
        )));
    }
    let threshold = SINGULAR_PIVOT_REL * a.frobenius_norm();
    let mut m: Vec<C64> = a.as_slice().to_vec();
    let mut x: Vec<C64> = b.to_vec();

    for k in 0..n {
        let (pivot_row, pivot_mag) = (k..n)
            .map(|i| (i, m[i * n + k].norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_mag <= threshold {
            return Err(Error::Singular { pivot: pivot_mag, threshold });
        }
        if pivot_row != k {
            for j in 0..n {
                m.swap(k * n + j, pivot_row * n + j);
            }
            x.swap(k, pivot_row);
        }
        let inv = 1.0 / m[k * n + k];
        for i in (k + 1)..n {
            let factor = m[i * n + k] * inv;
            if factor == ZERO {
                continue;
            }
            m[i * n + k] = ZERO;
            for j in (k + 1)..n {
                let mkj = m[k * n + j];
                m[i * n + j] -= factor * mkj;
            }
            let xk = x[k];
            x[i] -= factor * xk;
        }
    }
    for k in (0..n).rev() {
        let mut acc = x[k];
        for j in (k + 1)..n {
            acc -= m[k * n + j] * x[j];
        }
        x[k] = acc / m[k * n + k];
    }
    Ok(x)
}

/// Numerical rank from Householder QR with column pivoting: the number of
/// diagonal entries of `R` exceeding `rel_tol * ||a||_F`.
pub fn numerical_rank(a: &ComplexMatrix, rel_tol: f64) -> usize {
    let (rows, cols) = (a.rows(), a.cols());
    let threshold = rel_tol * a.frobenius_norm();
    // Column-major working copy: columns are contiguous.
    let mut colv: Vec<Vec<C64>> = (0..cols).map(|j| a.column(j)).collect();
    let mut norms: Vec<f64> = colv.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum()).collect();

    let steps = rows.min(cols);
    let mut rank = 0;
    for k in 0..steps {
        // Pivot on the remaining column of largest norm (recomputed, which is
        // cheap at these sizes and avoids downdating drift).
        for (j, c) in colv.iter().enumerate().skip(k) {
            norms[j] = c[k..].iter().map(|z| z.norm_sqr()).sum();
        }
        let p = (k..cols).fold(k, |best, j| if norms[j] > norms[best] { j } else { best });
        colv.swap(k, p);
        norms.swap(k, p);

        let alpha = norms[k].sqrt();
        if alpha <= threshold {
            break;
        }
        rank += 1;

        // Householder reflector v = x + e^{i arg x0} |x| e0.
        let x0 = colv[k][k];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { C64::new(1.0, 0.0) };
        let mut v: Vec<C64> = colv[k][k..].to_vec();
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for col in colv.iter_mut().skip(k) {
            let dot: C64 = v.iter().zip(&col[k..]).map(|(vi, ci)| vi.conj() * ci).sum();
            let f = dot * (2.0 / vnorm2);
            for (ci, vi) in col[k..].iter_mut().zip(&v) {
                *ci -= f * vi;
            }
        }
    }
    rank
}
