use crate::error::{Error, Result};
use crate::model::{Basis, Level};
use crate::numerics::{eig_hermitian, ComplexMatrix, C64};

pub const TRACE_TOL: f64 = 1e-10;
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Smallest eigenvalue tolerated before a state is declared unphysical.
pub const POSITIVITY_TOL: f64 = 1e-8;

/// Tolerances applied when a state is admitted.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub trace: f64,
    pub hermitian: f64,
    pub positivity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { trace: TRACE_TOL, hermitian: HERMITIAN_TOL, positivity: POSITIVITY_TOL }
    }
}

/// A validated density matrix: unit trace, Hermitian and positive within
/// the admitted tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    basis: Option<Basis>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, basis: Option<Basis>) -> Result<Self> {
        Self::with_tolerances(matrix, basis, Tolerances::default())
    }

    pub fn with_tolerances(matrix: ComplexMatrix, basis: Option<Basis>, tol: Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "density matrix of shape {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if let Some(b) = basis {
            if b.dim() != matrix.rows() {
                return Err(Error::DimensionMismatch(format!(
                    "{}-dimensional state on a {}-dimensional basis",
                    matrix.rows(),
                    b.dim()
                )));
            }
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > tol.trace {
            return Err(Error::PhysicalityLost(format!("trace {tr} differs from 1")));
        }
        let defect = matrix.hermiticity_defect();
        if defect > tol.hermitian {
            return Err(Error::PhysicalityLost(format!("Hermiticity defect {defect:e}")));
        }
        let min = min_eigenvalue(&hermitian_part(&matrix))?;
        if min < -tol.positivity {
            return Err(Error::PhysicalityLost(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix, basis })
    }

    /// The pure state `|index><index|`.
    pub fn basis_state(basis: Basis, index: usize) -> Self {
        let n = basis.dim();
        Self { matrix: ComplexMatrix::ket_bra(n, index, index), basis: Some(basis) }
    }

    pub fn product_state(basis: Basis, levels: &[Level]) -> Result<Self> {
        let index = basis
            .index(levels)
            .ok_or_else(|| Error::DimensionMismatch(format!("levels {levels:?} not in basis")))?;
        Ok(Self::basis_state(basis, index))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn basis(&self) -> Option<Basis> {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn population(&self, index: usize) -> f64 {
        self.matrix[(index, index)].re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.matrix).expect("validated state is Hermitian")
    }

    /// `½ Σ|λ_i(ρ − σ)|`.
    pub fn trace_distance(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!("states of dimension {} and {}", self.dim(), other.dim())));
        }
        let diff = hermitian_part(&(&self.matrix - &other.matrix));
        Ok(0.5 * eig_hermitian(&diff)?.values.iter().map(|x| x.abs()).sum::<f64>())
    }
}

/// `(A + A†)/2`.
pub fn hermitian_part(a: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.rows(), a.cols(), |i, j| 0.5 * (a[(i, j)] + a[(j, i)].conj()))
}

fn min_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    Ok(eig_hermitian(h)?.values.first().copied().unwrap_or(0.0))
}

/// Probability that `atom` is in `|r>`.
pub fn rydberg_population(rho: &DensityMatrix, atom: usize) -> Result<f64> {
    level_population(rho, atom, Level::R)
}

/// Probability that `atom` occupies `level`.
pub fn level_population(rho: &DensityMatrix, atom: usize, level: Level) -> Result<f64> {
    let basis = rho
        .basis()
        .ok_or_else(|| Error::DimensionMismatch("state carries no basis labels".into()))?;
    if atom == 0 || atom > basis.atoms {
        return Err(Error::DimensionMismatch(format!("atom {atom} in a {}-atom basis", basis.atoms)));
    }
    Ok((0..basis.dim())
        .filter(|&i| basis.level_of(i, atom) == level)
        .map(|i| rho.population(i))
        .sum())
}
