//! Numerical evaluation of a norm-sum inequality for vectors in a complex
//! inner-product space and of the reverse uncertainty relations that follow
//! from it, for Hermitian observables on `ℂ^d` and pure states.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex vectors and matrices with a Jacobi Hermitian eigensolver.
//! - [`observables`]: validated observables and states, variances and covariances.
//! - [`inequalities`]: every relation evaluated as an [`EvalRecord`](inequalities::EvalRecord).
//! - [`sampling`]: seeded instance generators, including degenerate constructions.
//! - [`search`]: Nelder–Mead minimization of a relation's gap over pure states.

pub mod error;
pub mod inequalities;
pub mod linalg;
pub mod observables;
pub mod sampling;
pub mod search;
pub mod tolerance;

pub use error::{Error, Result};
pub use inequalities::{BoundKind, Checker, EvalRecord, PairStatistics, Relation};
pub use linalg::{c64, CMatrix, CVector, Complex64, EigenDecomposition};
pub use observables::{covariance, covariance_by_moments, commutator_expectation, DeviationVector, Observable, State};
pub use sampling::{InstanceSpec, Provenance};
pub use search::{gap_objective, minimize_gap, SearchConfig, SearchResult};
pub use tolerance::Tolerances;
