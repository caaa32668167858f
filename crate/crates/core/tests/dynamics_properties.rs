mod common;

use std::f64::consts::TAU;

use common::{dispersive_params, hermitian, steady_params};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rydeit_core::dynamics::{
    evolve, reachable_steady_state, steady_state_residual, DensityMatrix, Liouvillian,
};
use rydeit_core::model::{
    build_effective_hamiltonian, build_jump_operators, derive_effective_params, Basis, Jump, Level,
};
use rydeit_core::numerics::{ComplexMatrix, OdeOptions, C64, I};

fn pair_system(raw: &rydeit_core::model::RawParams, dp: f64) -> (ComplexMatrix, Vec<Jump>) {
    let eff = derive_effective_params(raw, dp).unwrap();
    (build_effective_hamiltonian(&eff, raw.v(), raw.coupling_on_control), build_jump_operators(&eff))
}

/// `-i 2π [H, ρ] + Σ 2πΓ (C ρ C† - {C†C, ρ}/2)` evaluated directly.
fn master_rhs(h: &ComplexMatrix, jumps: &[Jump], rho: &ComplexMatrix) -> ComplexMatrix {
    let mut out = h.commutator(rho).scale(-I * TAU);
    for j in jumps {
        let c = &j.operator;
        let cd = c.adjoint();
        let cdc = cd.matmul(c);
        let d = &c.matmul(rho).matmul(&cd) - &(&cdc.matmul(rho) + &rho.matmul(&cdc)).scale_real(0.5);
        out += &d.scale_real(TAU * j.rate);
    }
    out
}

fn random_state(seed: &ComplexMatrix) -> ComplexMatrix {
    let m = seed.matmul(&seed.adjoint());
    m.scale(C64::new(1.0 / m.trace().re, 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn superoperator_matches_direct_master_equation(raw in dispersive_params(), dp in -1.0..1.0f64, seed in hermitian(9)) {
        let (h, jumps) = pair_system(&raw, dp);
        let l = Liouvillian::build(&h, &jumps).unwrap();
        let rho = random_state(&seed);
        let via_l = ComplexMatrix::unvectorize(&l.apply(&rho.vectorize()), 9).unwrap();
        prop_assert!(via_l.max_abs_diff(&master_rhs(&h, &jumps, &rho)) < 1e-12 * l.matrix().max_abs());
        prop_assert!(l.trace_defect() < 1e-12);
    }

    #[test]
    fn liouvillian_spectrum_is_contractive(raw in dispersive_params(), dp in -1.0..1.0f64) {
        let (h, jumps) = pair_system(&raw, dp);
        let l = Liouvillian::build(&h, &jumps).unwrap();
        let m = l.matrix();
        let na = DMatrix::from_fn(81, 81, |i, j| m[(i, j)]);
        let eigs = na.schur().eigenvalues().unwrap();
        for z in eigs.iter() {
            prop_assert!(z.re <= 1e-10 * m.max_abs().max(1.0), "eigenvalue {z}");
        }
    }

    #[test]
    fn reachable_steady_state_is_physical_and_stationary(raw in steady_params(), dp in -1.0..1.0f64) {
        let (h, jumps) = pair_system(&raw, dp);
        let start = Basis::EFFECTIVE_PAIR.index(&[Level::Gp, Level::Gc]).unwrap();
        let rho = reachable_steady_state(&h, &jumps, start, Some(Basis::EFFECTIVE_PAIR)).unwrap();
        let l = Liouvillian::build(&h, &jumps).unwrap();
        prop_assert!(steady_state_residual(&l, &rho) <= 1e-9 * l.matrix().frobenius_norm());
        prop_assert!((rho.matrix().trace().re - 1.0).abs() < 1e-9);
        prop_assert!(rho.matrix().hermiticity_defect() < 1e-9);
        prop_assert!(rho.min_eigenvalue() >= -1e-8);
    }
}

#[test]
fn trajectory_samples_stay_physical() {
    let raw = rydeit_core::model::RawParams::default().with_v(1.5);
    let (h, jumps) = pair_system(&raw, -0.81);
    let l = Liouvillian::build(&h, &jumps).unwrap();
    let rho0 = DensityMatrix::product_state(Basis::EFFECTIVE_PAIR, &[Level::Gp, Level::Gc]).unwrap();
    let times: Vec<f64> = (1..=50).map(|k| k as f64).collect();
    let traj = evolve(&rho0, &l, (0.0, 50.0), &times, &OdeOptions::default()).unwrap();
    for s in &traj.states {
        assert!((s.matrix().trace().re - 1.0).abs() < 1e-9);
        assert!(s.matrix().hermiticity_defect() < 1e-9);
        assert!(s.min_eigenvalue() >= -1e-8);
    }
}

#[test]
fn long_evolution_reaches_steady_state() {
    let raw = rydeit_core::model::RawParams::default();
    let start = Basis::EFFECTIVE_PAIR.index(&[Level::Gp, Level::Gc]).unwrap();
    for (dp, v) in [(-0.81, 1.5), (-0.42, 0.5), (-0.01, 0.0)] {
        let raw = raw.clone().with_v(v);
        let (h, jumps) = pair_system(&raw, dp);
        let eff = derive_effective_params(&raw, dp).unwrap();
        let l = Liouvillian::build(&h, &jumps).unwrap();
        let ss = reachable_steady_state(&h, &jumps, start, Some(Basis::EFFECTIVE_PAIR)).unwrap();
        let t = 50.0 / eff.gamma_r2c;
        let rho0 = DensityMatrix::basis_state(Basis::EFFECTIVE_PAIR, start);
        let traj = evolve(&rho0, &l, (0.0, t), &[t], &OdeOptions::with_tolerances(1e-10, 1e-12)).unwrap();
        let d = traj.last().unwrap().trace_distance(&ss).unwrap();
        assert!(d < 1e-6, "dp {dp} v {v}: {d}");
    }
}
