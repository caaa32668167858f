use std::f64::consts::TAU;

use super::density::{hermitian_part, DensityMatrix, Tolerances};
use super::liouvillian::Liouvillian;
use crate::error::{Error, Result};
use crate::model::Jump;
use crate::numerics::{integrate_ode, ComplexMatrix, OdeOptions, OdeStats, SparseMatrix, C64, I, ZERO};

/// Largest trace drift tolerated along a trajectory.
pub const TRAJECTORY_TRACE_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub stats: OdeStats,
}

impl Trajectory {
    pub fn last(&self) -> Option<&DensityMatrix> {
        self.states.last()
    }
}

/// Integrates `dρ/dt = L ρ` and returns the state at each sample time.
pub fn evolve(
    rho0: &DensityMatrix,
    l: &Liouvillian,
    t_span: (f64, f64),
    sample_times: &[f64],
    opts: &OdeOptions,
) -> Result<Trajectory> {
    let n = rho0.dim();
    if l.hilbert_dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n}-dimensional state under a {}-dimensional generator",
            l.hilbert_dim()
        )));
    }
    let m = l.matrix();
    let rhs = |_t: f64, y: &[C64], dy: &mut [C64]| m.mul_vec_into(y, dy);
    let sol = integrate_ode(rhs, &rho0.matrix().vectorize(), t_span, sample_times, opts)?;
    collect(rho0, sol.samples, sol.stats)
}

/// Matrix-free master equation with a time-dependent Hamiltonian.
///
/// `hamiltonian(t, out)` fills `out` with `H(t)` in angular units; jump rates
/// are cyclic MHz as everywhere else.
pub fn evolve_time_dependent<F>(
    rho0: &DensityMatrix,
    mut hamiltonian: F,
    jumps: &[Jump],
    t_span: (f64, f64),
    sample_times: &[f64],
    opts: &OdeOptions,
) -> Result<Trajectory>
where
    F: FnMut(f64, &mut SparseMatrix),
{
    let n = rho0.dim();
    if let Some(j) = jumps.iter().find(|j| j.operator.rows() != n || j.operator.cols() != n) {
        return Err(Error::DimensionMismatch(format!(
            "jump of shape {}x{} on a {n}-dimensional state",
            j.operator.rows(),
            j.operator.cols()
        )));
    }
    let channels: Vec<(SparseMatrix, f64)> =
        jumps.iter().map(|j| (SparseMatrix::from_dense(&j.operator), TAU * j.rate)).collect();
    let mut anti = ComplexMatrix::zeros(n, n);
    for j in jumps {
        anti += &j.operator.adjoint().matmul(&j.operator).scale_real(TAU * j.rate);
    }
    let anti = SparseMatrix::from_dense(&anti);
    let mut h = SparseMatrix::new(n);

    let rhs = |t: f64, y: &[C64], dy: &mut [C64]| {
        hamiltonian(t, &mut h);
        dy.fill(ZERO);
        h.left_mul_add(y, -I, dy);
        h.right_mul_add(y, I, dy);
        anti.left_mul_add(y, C64::new(-0.5, 0.0), dy);
        anti.right_mul_add(y, C64::new(-0.5, 0.0), dy);
        for (c, rate) in &channels {
            c.sandwich_add(y, C64::new(*rate, 0.0), dy);
        }
    };
    let sol = integrate_ode(rhs, &rho0.matrix().vectorize(), t_span, sample_times, opts)?;
    collect(rho0, sol.samples, sol.stats)
}

fn collect(rho0: &DensityMatrix, samples: Vec<(f64, Vec<C64>)>, stats: OdeStats) -> Result<Trajectory> {
    let n = rho0.dim();
    let tol = Tolerances { trace: TRAJECTORY_TRACE_TOL, ..Tolerances::default() };
    let mut times = Vec::with_capacity(samples.len());
    let mut states = Vec::with_capacity(samples.len());
    for (t, y) in samples {
        let m = ComplexMatrix::unvectorize(&y, n)?;
        let drift = (m.trace() - C64::new(1.0, 0.0)).norm();
        if drift > TRAJECTORY_TRACE_TOL {
            return Err(Error::PhysicalityLost(format!("trace drifted by {drift:e} at t = {t}")));
        }
        // The integrator preserves Hermiticity only to rounding.
        if m.hermiticity_defect() > tol.hermitian {
            return Err(Error::PhysicalityLost(format!("Hermiticity lost at t = {t}")));
        }
        states.push(DensityMatrix::with_tolerances(hermitian_part(&m), rho0.basis(), tol)?);
        times.push(t);
    }
    Ok(Trajectory { times, states, stats })
}
