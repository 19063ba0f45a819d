//! Constructive Brooks-type coloring for finite and locally finite graphs.

pub mod circletree;
pub mod descent;
pub mod color;
pub mod error;
pub mod families;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod io;
pub mod regular;
pub mod schmerl;
pub mod tverberg;

pub use error::{Error, Result};
pub use graph::{Coloring, FiniteGraph, Graph, OracleGraph, Vertex, VertexSet};
