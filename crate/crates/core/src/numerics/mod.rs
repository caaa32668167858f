//! Dense complex linear algebra and ODE integration.

mod eigen;
mod linalg;
mod matrix;
mod ode;
mod sparse;

pub use eigen::{eig_hermitian, EigenDecomposition};
pub use linalg::{numerical_rank, solve_linear, SINGULAR_PIVOT_REL};
pub use matrix::{kron, vec_norm, ComplexMatrix, C64, I, ONE, ZERO};
pub use ode::{integrate_ode, OdeOptions, OdeSolution, OdeStats};
pub use sparse::SparseMatrix;
