//! Slow, independent ground truth for small instances.

pub mod dijkstra;
pub mod gf2;
pub mod horton;
pub mod lsp;
pub mod verify;

use thiserror::Error;

use crate::graph::{VertexId, WeightedGraph};

/// Default vertex bound for the exhaustive routines.
pub const DEFAULT_BOUND: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReferenceError {
    #[error("graph has {n} vertices, above the reference bound {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("vertex order is not a bijection onto 1..n")]
    InvalidOrder,
    #[error("no unique lex shortest path between {u} and {v}")]
    Ambiguous { u: VertexId, v: VertexId },
}

pub(crate) fn check_size(g: &WeightedGraph, bound: usize) -> Result<(), ReferenceError> {
    if g.n() > bound {
        return Err(ReferenceError::TooLarge { n: g.n(), bound });
    }
    Ok(())
}
