use thiserror::Error;

use crate::metric::ValidationReport;
use crate::rational::{format_rational, Rational};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input that is not a square matrix of finite non-negative rationals.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// A well-formed matrix that breaks at least one metric axiom.
    #[error("metric axioms violated: {0}")]
    Validation(ValidationReport),

    /// An argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A search that hit its size limit or node budget before proving optimality.
    #[error("{reason} (best bounds: {} <= d_GH <= {}, {nodes} nodes explored)", format_rational(.lower), format_rational(.upper))]
    Resource {
        reason: String,
        lower: Rational,
        upper: Rational,
        nodes: u64,
    },

    /// A construction whose hypotheses do not hold on the given data.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    /// A postcondition that must hold by construction failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
