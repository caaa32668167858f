use std::collections::VecDeque;

use super::density::{hermitian_part, DensityMatrix};
use super::liouvillian::Liouvillian;
use crate::error::{Error, Result};
use crate::model::{Basis, Jump};
use crate::numerics::{numerical_rank, solve_linear, ComplexMatrix, C64, ONE, ZERO};

/// Relative singular-value threshold used to decide uniqueness.
pub const RANK_TOL: f64 = 1e-10;

/// Unique steady state of `l`.
///
/// One row of `L vec(ρ) = 0` is replaced by the trace condition. A rank
/// deficiency beyond the single expected null direction means a conserved
/// quantity exists and no unique answer can be given.
pub fn steady_state(l: &Liouvillian, basis: Option<Basis>) -> Result<DensityMatrix> {
    let n = l.hilbert_dim();
    let n2 = n * n;
    let rank = numerical_rank(l.matrix(), RANK_TOL);
    if rank + 1 < n2 {
        return Err(Error::DegenerateSteadyState { rank, expected: n2 - 1 });
    }
    let mut a = l.matrix().clone();
    for c in 0..n2 {
        a[(0, c)] = ZERO;
    }
    for k in 0..n {
        a[(0, k * n + k)] = ONE;
    }
    let mut b = vec![ZERO; n2];
    b[0] = ONE;
    let x = solve_linear(&a, &b)?;
    let rho = hermitian_part(&ComplexMatrix::unvectorize(&x, n)?);
    DensityMatrix::new(rho, basis)
}

/// Levels connected to `start` by the Hamiltonian or by a jump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    indices: Vec<usize>,
    parent_dim: usize,
}

impl Subspace {
    pub fn reachable(h: &ComplexMatrix, jumps: &[Jump], start: usize) -> Self {
        let n = h.rows();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if seen[j] {
                    continue;
                }
                let coupled = h[(j, i)] != ZERO || jumps.iter().any(|jump| jump.rate > 0.0 && jump.operator[(j, i)] != ZERO);
                if coupled {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        let indices = (0..n).filter(|&i| seen[i]).collect();
        Self { indices, parent_dim: n }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn restrict(&self, op: &ComplexMatrix) -> ComplexMatrix {
        op.submatrix(&self.indices)
    }

    pub fn restrict_jumps(&self, jumps: &[Jump]) -> Vec<Jump> {
        jumps
            .iter()
            .map(|j| Jump { operator: self.restrict(&j.operator), rate: j.rate })
            .filter(|j| j.operator.max_abs() > 0.0)
            .collect()
    }

    /// Zero-pads a state on the subspace back to the parent space.
    pub fn embed(&self, rho: &DensityMatrix, basis: Option<Basis>) -> Result<DensityMatrix> {
        let mut m = ComplexMatrix::zeros(self.parent_dim, self.parent_dim);
        for (a, &i) in self.indices.iter().enumerate() {
            for (b, &j) in self.indices.iter().enumerate() {
                m[(i, j)] = rho.matrix()[(a, b)];
            }
        }
        DensityMatrix::new(m, basis)
    }
}

/// Steady state reached from the basis state `start`, solved on the
/// subspace dynamically connected to it and embedded in the full space.
pub fn reachable_steady_state(
    h: &ComplexMatrix,
    jumps: &[Jump],
    start: usize,
    basis: Option<Basis>,
) -> Result<DensityMatrix> {
    let sub = Subspace::reachable(h, jumps, start);
    let l = Liouvillian::build(&sub.restrict(h), &sub.restrict_jumps(jumps))?;
    let rho = steady_state(&l, None)?;
    sub.embed(&rho, basis)
}

/// `‖L vec(ρ)‖ / ‖L‖`.
pub fn steady_state_residual(l: &Liouvillian, rho: &DensityMatrix) -> f64 {
    let r: Vec<C64> = l.apply(&rho.matrix().vectorize());
    crate::numerics::vec_norm(&r) / l.matrix().frobenius_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::density::rydberg_population;
    use crate::model::{
        build_effective_hamiltonian, build_jump_operators, derive_effective_params, Level, RawParams,
    };

    #[test]
    fn driven_two_level_bloch_solution() {
        let (lam, eps, gamma) = (0.3, 0.2, 0.5);
        // Levels (g, r).
        let h = ComplexMatrix::from_real_rows(&[&[eps, lam], &[lam, 0.0]]);
        let jump = Jump { operator: ComplexMatrix::ket_bra(2, 0, 1), rate: gamma };
        let l = Liouvillian::build(&h, &[jump]).unwrap();
        let rho = steady_state(&l, None).unwrap();
        let want = lam * lam / (eps * eps + gamma * gamma / 4.0 + 2.0 * lam * lam);
        assert!((rho.population(1) - want).abs() < 1e-12);
        assert!(steady_state_residual(&l, &rho) < 1e-12);
    }

    #[test]
    fn full_pair_space_has_conserved_block() {
        let eff = derive_effective_params(&RawParams::default(), 0.0).unwrap();
        let h = build_effective_hamiltonian(&eff, 1.5, true);
        let l = Liouvillian::build(&h, &build_jump_operators(&eff)).unwrap();
        assert!(matches!(steady_state(&l, None), Err(Error::DegenerateSteadyState { .. })));
    }

    #[test]
    fn reachable_subspace_excludes_idle_probe_level_of_control_atom() {
        let eff = derive_effective_params(&RawParams::default(), 0.0).unwrap();
        let h = build_effective_hamiltonian(&eff, 1.5, true);
        let jumps = build_jump_operators(&eff);
        let b = Basis::EFFECTIVE_PAIR;
        let start = b.index(&[Level::Gp, Level::Gc]).unwrap();
        let sub = Subspace::reachable(&h, &jumps, start);
        assert_eq!(sub.indices(), &[1, 2, 4, 5, 7, 8]);
        let rho = reachable_steady_state(&h, &jumps, start, Some(b)).unwrap();
        let p = rydberg_population(&rho, 1).unwrap();
        assert!(p > 0.0 && p < 1.0);
    }
}
