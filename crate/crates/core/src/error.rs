use thiserror::Error;

/// Errors raised by the bound solvers, the oracle and the applications.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (e.g. `beta <= 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// A size profile violates one of its structural invariants.
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    /// The input is well formed but asks for something the engine does not model.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A word set, pattern set or support is malformed.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A desk-scale cap (enumeration size, automaton states, support size) was hit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// The sign-change scan found no real root.
    #[error("no real root located: {0}")]
    NoRoot(String),

    /// The query has no feasible answer (e.g. an aperiodic query with non-positive slack).
    #[error("infeasible query: {0}")]
    Infeasible(String),

    /// Malformed JSON, unknown keys, wrong types.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
