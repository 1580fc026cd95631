//! Exact Gromov-Hausdorff geometry on finite metric spaces.
//!
//! Distances are exact rationals. The crate computes Hausdorff and
//! Gromov-Hausdorff distances, builds geodesics between spaces from optimal
//! correspondences, and constructs members of metric segments `[X, Y]` by
//! adding a point next to an existing one or by grafting a simplex in place of
//! a point.

// Errors carry exact bounds and full validation reports.
#![allow(clippy::result_large_err)]

pub mod cover;
pub mod error;
pub mod format;
pub mod geodesic;
pub mod hausdorff;
pub mod metric;
pub mod rational;
pub mod relation;
pub mod segments;
pub mod solver;

pub use error::{Error, Result};
pub use metric::{FiniteMetricSpace, PointSubset, ValidationReport};
pub use rational::Rational;
pub use relation::{Correspondence, Relation};
pub use solver::{gh_exact, gh_with, GhResult, Method, SolverConfig};
