use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, TwinPair, Vertex};
use crate::GraphClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: Vertex },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: Vertex, v: Vertex },
    #[error("edge {u}-{v} has an endpoint outside 0..{n}")]
    OutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("graph has {n} vertices, above the configured cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("{u}-{v} is not an edge")]
    NotAnEdge { u: Vertex, v: Vertex },
    #[error("vertex {v} is not a vertex of a graph on {n} vertices")]
    NotAVertex { v: Vertex, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("oracle cap {cap} exceeds the supported maximum of {max}")]
    CapTooLarge { cap: usize, max: usize },
}

/// A property asserted by a constructive proof step did not hold at runtime.
///
/// Carries the full instance so that it can be replayed; any occurrence is a
/// candidate counterexample to the construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InternalAssertionFailure {
    pub algorithm: &'static str,
    pub step: String,
    pub message: String,
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    /// Earlier strategies tried on the same instance and why each was abandoned.
    pub attempts: Vec<String>,
}

impl InternalAssertionFailure {
    pub fn new(algorithm: &'static str, step: impl Into<String>, message: impl Into<String>, g: &Graph) -> Self {
        Self {
            algorithm,
            step: step.into(),
            message: message.into(),
            n: g.n(),
            edges: g.edges(),
            attempts: Vec::new(),
        }
    }
}

impl fmt::Display for InternalAssertionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "internal assertion failed in {} at {}: {} (n={}, edges={:?}", self.algorithm, self.step, self.message, self.n, self.edges)?;
        if !self.attempts.is_empty() {
            write!(f, ", attempts={:?}", self.attempts)?;
        }
        write!(f, ")")
    }
}

impl std::error::Error for InternalAssertionFailure {}

/// Errors from the class recognisers and partition constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LdError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("not {class}: {reason}")]
    NotInClass { class: GraphClass, reason: String },
    #[error("graph has twins {} and {} ({:?})", .0.u, .0.v, .0.kind)]
    HasTwins(TwinPair),
    #[error("graph has an isolated vertex {0}")]
    HasIsolated(Vertex),
    #[error("graph has {n} vertices; at least {min} are required")]
    TooSmall { n: usize, min: usize },
    #[error(transparent)]
    InternalAssertion(Box<InternalAssertionFailure>),
}

impl From<InternalAssertionFailure> for LdError {
    fn from(e: InternalAssertionFailure) -> Self {
        LdError::InternalAssertion(Box::new(e))
    }
}

impl LdError {
    pub fn is_internal_assertion(&self) -> bool {
        matches!(self, LdError::InternalAssertion(_))
    }

    /// True for errors that only say the input is outside a constructor's domain.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            LdError::NotInClass { .. } | LdError::HasTwins(_) | LdError::HasIsolated(_) | LdError::TooSmall { .. }
        )
    }
}
