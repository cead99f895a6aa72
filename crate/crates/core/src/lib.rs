//! Karamata-type inequalities and their entropy applications.
//!
//! The crate is organized around six areas:
//!
//! - [`scalar_bounds`]: chord coefficients, the reverse-Jensen constants
//!   (β, ratio `K(m,M,f)`, difference `C(m,M,f)`), the generalized Kantorovich
//!   constant, the Specht ratio and `ls_r`, each with an interval-maximizer
//!   oracle ([`optimize::interval_max`]).
//! - [`majorization`]: majorization and `p`-majorization predicates, the
//!   Karamata/Fuchs margins and the centered-moment application.
//! - [`classical_entropy`]: Shannon and Tsallis entropies and the reverse
//!   information inequalities.
//! - [`operator`]: dense complex Hermitian matrices, a cyclic Jacobi
//!   eigensolver, functional calculus, positive map families, operator means
//!   and quantum entropies.
//! - [`verification`]: hypothesis-satisfying random generators, inequality
//!   checkers and deterministic (optionally parallel) trial suites.
//!
//! Every inequality check reports a margin `R - L` (or `λ_min(R - L)` for
//! operator inequalities); a check passes when the margin is at least `-tol`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical_entropy;
pub mod error;
pub mod function;
pub mod majorization;
pub mod operator;
pub mod optimize;
pub mod scalar_bounds;
pub mod verification;

pub use error::{Error, Result};
pub use function::{Curvature, FunctionKind, FunctionSpec, Interval};
