use thiserror::Error;

use crate::graph::Vertex;

/// Errors raised by the coloring engine.
///
/// Hypothesis violations carry the witness that refutes the hypothesis so
/// callers can display it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integrity error: {u} lists {v} as a neighbor but {v} does not list {u}")]
    AsymmetricEdge { u: Vertex, v: Vertex },

    #[error("integrity error: vertex {0} lists itself as a neighbor")]
    SelfLoop(Vertex),

    #[error("integrity error: duplicate edge {u} -- {v}")]
    DuplicateEdge { u: Vertex, v: Vertex },

    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("vertex {0} has no assigned color")]
    IncompleteColoring(Vertex),

    #[error("color {color} of vertex {vertex} is outside the palette of size {palette}")]
    ColorOutOfPalette {
        vertex: Vertex,
        color: usize,
        palette: usize,
    },

    #[error("odd cycle found: {0:?}")]
    OddCycle(Vec<Vertex>),

    #[error("forbidden clique on {size} vertices found: {0:?}", size = .0.len())]
    ForbiddenClique(Vec<Vertex>),

    #[error("vertex {vertex} has degree {degree}, above the bound {bound}")]
    DegreeTooLarge {
        vertex: Vertex,
        degree: usize,
        bound: usize,
    },

    #[error("graph is not {d}-regular: vertex {vertex} has degree {degree}")]
    NotRegular {
        d: usize,
        vertex: Vertex,
        degree: usize,
    },

    #[error("no proper coloring with at most {0} colors")]
    NoColoringWithinCap(usize),

    #[error("exploration budget of {0} exceeded")]
    Budget(usize),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for the errors that refute a theorem hypothesis.
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(
            self,
            Error::OddCycle(_)
                | Error::ForbiddenClique(_)
                | Error::DegreeTooLarge { .. }
                | Error::NotRegular { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
