//! Random instances: regular graphs by the pairing model, bounded-degree
//! graphs, circle-trees and near-misses.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::color::find_clique;
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Vertex, VertexSet};

/// A uniformly random simple `d`-regular graph on `n` vertices drawn by the
/// pairing model, rejecting samples with a `(d+1)`-clique (and disconnected
/// samples when `connected` is set). Gives up after `max_tries` samples.
pub fn random_regular<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    d: usize,
    connected: bool,
    max_tries: usize,
) -> Result<FiniteGraph> {
    if !(n * d).is_multiple_of(2) || d >= n {
        return Err(Error::Domain(format!("no simple {d}-regular graph on {n} vertices")));
    }
    let mut points: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'sample: for _ in 0..max_tries {
        points.shuffle(rng);
        let mut adj = vec![Vec::with_capacity(d); n];
        for pair in points.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || adj[u].contains(&v) {
                continue 'sample;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let g = FiniteGraph::from_adjacency(adj)?;
        if (connected && !g.is_connected()) || find_clique(&g, d + 1).is_some() {
            continue;
        }
        return Ok(g);
    }
    Err(Error::Budget(max_tries))
}

/// A random connected cubic graph without 4-cliques; `n` must be even.
pub fn random_cubic<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<FiniteGraph> {
    random_regular(rng, n, 3, true, 100_000)
}

/// A random graph with maximum degree at most `d` and no `(d+1)`-clique:
/// candidate edges are tried in random order, each kept with probability
/// `density` when it respects both constraints.
pub fn random_bounded<R: Rng + ?Sized>(rng: &mut R, n: usize, d: usize, density: f64) -> FiniteGraph {
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for (u, v) in pairs {
        if adj[u].len() >= d || adj[v].len() >= d || !rng.gen_bool(density) {
            continue;
        }
        adj[u].push(v);
        adj[v].push(u);
        if d >= 1 && closes_clique(&adj, u, v, d + 1) {
            adj[u].pop();
            adj[v].pop();
        }
    }
    FiniteGraph::from_adjacency(adj).expect("edges are added symmetrically without repeats")
}

/// Whether the edge `u-v` lies in a clique of the given size.
fn closes_clique(adj: &[Vec<Vertex>], u: Vertex, v: Vertex, size: usize) -> bool {
    if size <= 2 {
        return true;
    }
    let common: Vec<Vertex> = adj[u].iter().copied().filter(|w| adj[v].contains(w)).collect();
    fn extend(adj: &[Vec<Vertex>], chosen: &mut Vec<Vertex>, pool: &[Vertex], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        for (i, &w) in pool.iter().enumerate() {
            if chosen.iter().all(|c| adj[w].contains(c)) {
                chosen.push(w);
                if extend(adj, chosen, &pool[i + 1..], need - 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(adj, &mut Vec::new(), &common, size - 2)
}

/// A random circle-tree with its circles (in the final vertex ids).
#[derive(Debug, Clone)]
pub struct GluedCircleTree {
    pub graph: FiniteGraph,
    pub circles: Vec<VertexSet>,
}

/// Glues `k` circles with lengths drawn from `lengths`, each new circle
/// joined by one edge to a random vertex of degree 2 built so far; vertex
/// ids are shuffled at the end.
pub fn random_circle_tree<R: Rng + ?Sized>(rng: &mut R, k: usize, lengths: std::ops::RangeInclusive<usize>) -> GluedCircleTree {
    assert!(k >= 1 && *lengths.start() >= 3);
    let mut edges = Vec::new();
    let mut circles: Vec<Vec<Vertex>> = Vec::new();
    let mut deg: Vec<usize> = Vec::new();
    for i in 0..k {
        let len = rng.gen_range(lengths.clone());
        let base = deg.len();
        let members: Vec<Vertex> = (base..base + len).collect();
        for j in 0..len {
            edges.push((base + j, base + (j + 1) % len));
        }
        deg.extend(std::iter::repeat_n(2, len));
        if i > 0 {
            let free: Vec<Vertex> = (0..base).filter(|&v| deg[v] == 2).collect();
            let x = *free.choose(rng).expect("a circle-tree always has a vertex of degree 2");
            let y = *members.choose(rng).expect("circles are nonempty");
            edges.push((x, y));
            deg[x] += 1;
            deg[y] += 1;
        }
        circles.push(members);
    }
    let n = deg.len();
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<(Vertex, Vertex)> = edges.into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    GluedCircleTree {
        graph: FiniteGraph::from_edges(n, &edges).expect("glued circles form a simple graph"),
        circles: circles.into_iter().map(|c| c.into_iter().map(|v| perm[v]).collect()).collect(),
    }
}

/// How a circle-tree was spoiled by [`random_non_circle_tree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spoiler {
    /// A new vertex of degree 1 hangs off a vertex of degree 2.
    Pendant,
    /// A new edge joins two non-adjacent vertices of degree 2.
    Chord,
}

/// A random circle-tree with one pendant vertex or one extra chord; neither
/// is a circle-tree.
pub fn random_non_circle_tree<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    lengths: std::ops::RangeInclusive<usize>,
) -> (FiniteGraph, Spoiler) {
    loop {
        let t = random_circle_tree(rng, k, lengths.clone()).graph;
        let twos: Vec<Vertex> = t.vertices().filter(|&v| t.deg(v) == 2).collect();
        let mut edges: Vec<(Vertex, Vertex)> = t.edges().collect();
        if rng.gen_bool(0.5) {
            let x = *twos.choose(rng).expect("circle-trees have degree-2 vertices");
            edges.push((x, t.n()));
            return (FiniteGraph::from_edges(t.n() + 1, &edges).expect("simple"), Spoiler::Pendant);
        }
        let options: Vec<(Vertex, Vertex)> = twos
            .iter()
            .flat_map(|&u| twos.iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| u < v && !t.has_edge(u, v))
            .collect();
        if let Some(&e) = options.choose(rng) {
            edges.push(e);
            return (FiniteGraph::from_edges(t.n(), &edges).expect("simple"), Spoiler::Chord);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn regular_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in (6..30).step_by(2) {
            let g = random_cubic(&mut rng, n).unwrap();
            assert!(g.is_regular(3) && g.is_connected());
            assert!(find_clique(&g, 4).is_none());
        }
        let g = random_regular(&mut rng, 12, 5, false, 1_000_000).unwrap();
        assert!(g.is_regular(5));
        assert!(random_regular(&mut rng, 5, 3, false, 10).is_err());
    }

    #[test]
    fn bounded_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in 2..6 {
            let g = random_bounded(&mut rng, 15, d, 0.6);
            assert!(g.max_degree().unwrap() <= d);
            assert!(find_clique(&g, d + 1).is_none());
        }
    }

    #[test]
    fn circle_tree_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = random_circle_tree(&mut rng, 5, 3..=6);
        assert_eq!(t.circles.len(), 5);
        let threes = t.graph.vertices().filter(|&v| t.graph.deg(v) == 3).count();
        assert_eq!(threes, 8);
        let (g, how) = random_non_circle_tree(&mut rng, 3, 3..=5);
        match how {
            Spoiler::Pendant => assert!(g.vertices().any(|v| g.deg(v) == 1)),
            Spoiler::Chord => assert!(g.vertices().all(|v| g.deg(v) >= 2)),
        }
    }
}
