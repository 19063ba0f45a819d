//! Embedding a graph of maximum degree `d` without `(d+1)`-cliques into a
//! `d`-regular one by `d` rounds of doubling.
//!
//! Round `i` (counting from 0) takes two copies of the current graph and
//! joins the two copies of every vertex whose degree is still below `d`. A
//! vertex of original degree `k` has degree `min(k + i, d)` before round `i`,
//! so no intermediate graph needs to be built: the target vertex `(v, b)`
//! with `b` a `d`-bit string is encoded as `v * 2^d + b`, and flipping bit
//! `i` of `b` is an edge exactly when `deg(v) + i < d`.

use crate::color::{check_degree_bound, find_clique};
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Graph, OracleGraph, Vertex};

/// Largest `d` accepted; `2^d` copies of every vertex are created.
pub const MAX_REGULAR_DEGREE: usize = 24;

/// A `d`-regular target graph together with the embedding `v -> (v, 0...0)`.
#[derive(Debug, Clone)]
pub struct RegularEmbedding<G> {
    target: G,
    d: usize,
}

impl<G: Graph> RegularEmbedding<G> {
    pub fn target(&self) -> &G {
        &self.target
    }

    pub fn into_target(self) -> G {
        self.target
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Image of a source vertex.
    pub fn embed(&self, v: Vertex) -> Vertex {
        encode(self.d, v, 0)
    }

    /// Source vertex and bit string of a target vertex.
    pub fn decode(&self, t: Vertex) -> (Vertex, usize) {
        decode(self.d, t)
    }

    /// Preimage of `t` when `t` lies in the image of `embed`.
    pub fn preimage(&self, t: Vertex) -> Option<Vertex> {
        let (v, bits) = decode(self.d, t);
        (bits == 0).then_some(v)
    }
}

pub fn encode(d: usize, v: Vertex, bits: usize) -> Vertex {
    (v << d) | bits
}

pub fn decode(d: usize, t: Vertex) -> (Vertex, usize) {
    (t >> d, t & ((1 << d) - 1))
}

fn check_d(d: usize) -> Result<()> {
    if d > MAX_REGULAR_DEGREE {
        return Err(Error::Domain(format!("degree {d} exceeds the supported maximum {MAX_REGULAR_DEGREE}")));
    }
    Ok(())
}

/// Neighbors of `(v, bits)` given the neighbors of `v`, sorted.
fn lifted_neighbors(d: usize, v: Vertex, bits: usize, nb: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = nb.iter().map(|&u| encode(d, u, bits)).collect();
    out.extend((0..d).filter(|&i| nb.len() + i < d).map(|i| encode(d, v, bits ^ (1 << i))));
    out.sort_unstable();
    out
}

/// The `d`-regular graph on `2^d * n` vertices containing `g` as the induced
/// subgraph on the vertices `v * 2^d`.
pub fn regularize(g: &FiniteGraph, d: usize) -> Result<RegularEmbedding<FiniteGraph>> {
    check_d(d)?;
    check_degree_bound(g, d)?;
    if let Some(k) = find_clique(g, d + 1) {
        return Err(Error::ForbiddenClique(k));
    }
    let copies = 1usize << d;
    let n = g.n().checked_mul(copies).ok_or_else(|| Error::Domain("regularized graph too large".into()))?;
    let mut adj = Vec::with_capacity(n);
    for v in g.vertices() {
        for bits in 0..copies {
            adj.push(lifted_neighbors(d, v, bits, g.adj(v)));
        }
    }
    Ok(RegularEmbedding {
        target: FiniteGraph::from_adjacency(adj)?,
        d,
    })
}

/// The same construction over a neighbor oracle, evaluated on demand.
///
/// The degree bound is checked on every queried source vertex; a
/// `(d+1)`-clique through a queried vertex is reported as a domain error by
/// the returned oracle's neighbor function, which cannot carry typed errors,
/// so callers that need the typed hypothesis error should check cliques on
/// the region they explore.
pub fn regularize_oracle(g: OracleGraph, d: usize) -> Result<RegularEmbedding<OracleGraph>> {
    check_d(d)?;
    let bound = match g.bound() {
        Some(b) => Some(b.checked_mul(1 << d).ok_or_else(|| Error::Domain("regularized graph too large".into()))?),
        None => None,
    };
    let target = OracleGraph::new(bound, move |t| {
        let (v, bits) = decode(d, t);
        match g.neighbors(v) {
            Ok(nb) if nb.len() <= d => lifted_neighbors(d, v, bits, &nb),
            // an invalid answer makes the checked oracle report an error
            _ => vec![t],
        }
    });
    Ok(RegularEmbedding { target, d })
}
