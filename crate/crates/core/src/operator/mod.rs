//! Finite-dimensional Hermitian linear algebra.

pub mod calculus;
pub mod eigen;
pub mod entropy;
pub mod maps;
pub mod matrix;
pub mod means;
pub mod random;

pub use calculus::{apply_function, lambda_min, spectrum_in};
pub use eigen::{jacobi_eigh, EigenDecomposition};
pub use entropy::{quantum_tsallis_entropy, trace_distance_l1, von_neumann_entropy, DensityMatrix};
pub use maps::{apply_map_family, MapFamily, PositiveMap};
pub use matrix::{HermitianMatrix, Matrix, MatrixJson};
pub use means::{natural_power_mean, relative_operator_entropy, tsallis_relative_operator_entropy};
