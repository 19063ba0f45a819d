//! Named graph families used in examples, tests and the CLI.

use crate::graph::{FiniteGraph, Vertex};

fn build(n: usize, edges: Vec<(Vertex, Vertex)>) -> FiniteGraph {
    FiniteGraph::from_edges(n, &edges).expect("family constructions are simple graphs")
}

pub fn complete(n: usize) -> FiniteGraph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    build(n, edges)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> FiniteGraph {
    build(n, (1..n).map(|v| (v - 1, v)).collect())
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> FiniteGraph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    build(n, edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> FiniteGraph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    build(a + b, edges)
}

/// Circulant graph `C_n(offsets)`: `i ~ i ± o (mod n)`.
pub fn circulant(n: usize, offsets: &[usize]) -> FiniteGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for &o in offsets {
            let j = (i + o) % n;
            let e = (i.min(j), i.max(j));
            if i != j && !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    build(n, edges)
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i - (i+5)`.
pub fn petersen() -> FiniteGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, edges)
}

/// Triangles `{0,1,2}` and `{3,4,5}` joined by the matching `i - (i+3)`.
pub fn prism() -> FiniteGraph {
    build(
        6,
        vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
    )
}

/// The `dim`-dimensional hypercube.
pub fn hypercube(dim: u32) -> FiniteGraph {
    let n = 1usize << dim;
    let edges = (0..n)
        .flat_map(|v| (0..dim).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    build(n, edges)
}

/// `K_4` with the edge `{0, 3}` removed.
pub fn k4_minus_edge() -> FiniteGraph {
    build(4, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
}
