//! Finite and lazily presented bounded graphs.
//!
//! Vertices are naturals. A [`FiniteGraph`] lives on `0..n`; an
//! [`OracleGraph`] is given by a total neighbor-listing function over an
//! explicit or unbounded vertex universe, which is the effective presentation
//! of a bounded graph: the degree of a vertex is the length of its list.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Finite sorted set of vertex ids.
pub type VertexSet = BTreeSet<Vertex>;

/// Read access to a simple undirected graph through its neighbor function.
pub trait Graph {
    /// Neighbors of `v`, sorted ascending.
    fn neighbors(&self, v: Vertex) -> Result<Cow<'_, [Vertex]>>;

    fn degree(&self, v: Vertex) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }

    fn contains(&self, v: Vertex) -> bool;

    /// Exclusive upper bound on vertex ids, `None` when the universe is all
    /// naturals.
    fn bound(&self) -> Option<usize>;

    fn is_adjacent(&self, u: Vertex, v: Vertex) -> Result<bool> {
        Ok(self.neighbors(u)?.binary_search(&v).is_ok())
    }
}

impl<G: Graph + ?Sized> Graph for &G {
    fn neighbors(&self, v: Vertex) -> Result<Cow<'_, [Vertex]>> {
        (**self).neighbors(v)
    }
    fn degree(&self, v: Vertex) -> Result<usize> {
        (**self).degree(v)
    }
    fn contains(&self, v: Vertex) -> bool {
        (**self).contains(v)
    }
    fn bound(&self) -> Option<usize> {
        (**self).bound()
    }
}

/// Immutable simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGraph {
    adj: Vec<Vec<Vertex>>,
}

impl fmt::Debug for FiniteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGraph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl FiniteGraph {
    /// Builds a graph from an edge list. Self-loops, duplicate edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::UnknownVertex(u));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                return Err(Error::DuplicateEdge {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
        }
        Ok(Self { adj })
    }

    /// Builds a graph from per-vertex neighbor lists, validating symmetry.
    pub fn from_adjacency(mut adj: Vec<Vec<Vertex>>) -> Result<Self> {
        let n = adj.len();
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            for w in list.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateEdge {
                        u: u.min(w[0]),
                        v: u.max(w[0]),
                    });
                }
            }
            if let Some(&v) = list.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownVertex(v));
            }
            if list.binary_search(&u).is_ok() {
                return Err(Error::SelfLoop(u));
            }
        }
        for u in 0..n {
            for &v in &adj[u] {
                if adj[v].binary_search(&u).is_err() {
                    return Err(Error::AsymmetricEdge { u, v });
                }
            }
        }
        Ok(Self { adj })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn adj(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn deg(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> Result<usize> {
        self.adj
            .iter()
            .map(Vec::len)
            .max()
            .ok_or_else(|| Error::Domain("maximum degree of the empty graph".into()))
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adj.iter().all(|l| l.len() == d)
    }

    /// Induced subgraph on `keep`, relabelled to `0..keep.len()` in ascending
    /// order. Returns the graph and the new-to-old vertex map.
    pub fn induced<I: IntoIterator<Item = Vertex>>(&self, keep: I) -> (FiniteGraph, Vec<Vertex>) {
        let old: Vec<Vertex> = keep.into_iter().collect::<VertexSet>().into_iter().collect();
        let mut new_of = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| (new_of[u] != usize::MAX).then_some(new_of[u]))
                    .collect()
            })
            .collect();
        (FiniteGraph { adj }, old)
    }

    /// Vertex sets of the connected components, ordered by least member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in self.vertices() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &FiniteGraph) -> FiniteGraph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|l| l.iter().map(|&v| v + shift).collect::<Vec<_>>()),
        );
        FiniteGraph { adj }
    }
}

impl Graph for FiniteGraph {
    fn neighbors(&self, v: Vertex) -> Result<Cow<'_, [Vertex]>> {
        self.adj
            .get(v)
            .map(|l| Cow::Borrowed(l.as_slice()))
            .ok_or(Error::UnknownVertex(v))
    }

    fn degree(&self, v: Vertex) -> Result<usize> {
        self.adj.get(v).map(Vec::len).ok_or(Error::UnknownVertex(v))
    }

    fn contains(&self, v: Vertex) -> bool {
        v < self.n()
    }

    fn bound(&self) -> Option<usize> {
        Some(self.n())
    }
}

type NeighborFn = dyn Fn(Vertex) -> Vec<Vertex> + Send + Sync;

/// A bounded graph presented by its neighbor function.
///
/// Consistency (sortedness, no self-loops, symmetry) is checked on every
/// query against the lists actually returned, so an inconsistent oracle
/// surfaces as an integrity error instead of a wrong answer.
#[derive(Clone)]
pub struct OracleGraph {
    neighbors: Arc<NeighborFn>,
    bound: Option<usize>,
}

impl fmt::Debug for OracleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleGraph").field("bound", &self.bound).finish()
    }
}

impl OracleGraph {
    /// Oracle over `0..bound`, or all naturals when `bound` is `None`.
    pub fn new<F>(bound: Option<usize>, neighbors: F) -> Self
    where
        F: Fn(Vertex) -> Vec<Vertex> + Send + Sync + 'static,
    {
        Self {
            neighbors: Arc::new(neighbors),
            bound,
        }
    }

    pub fn from_finite(g: FiniteGraph) -> Self {
        let n = g.n();
        Self::new(Some(n), move |v| g.adj(v).to_vec())
    }

    /// The one-way infinite path `0 - 1 - 2 - ...`.
    pub fn infinite_path() -> Self {
        Self::new(None, |v| if v == 0 { vec![1] } else { vec![v - 1, v + 1] })
    }

    fn raw(&self, v: Vertex) -> Vec<Vertex> {
        (self.neighbors)(v)
    }
}

impl Graph for OracleGraph {
    fn neighbors(&self, v: Vertex) -> Result<Cow<'_, [Vertex]>> {
        if !self.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        let list = self.raw(v);
        for w in list.windows(2) {
            if w[0] >= w[1] {
                return Err(if w[0] == w[1] {
                    Error::DuplicateEdge {
                        u: v.min(w[0]),
                        v: v.max(w[0]),
                    }
                } else {
                    Error::Domain(format!("oracle neighbor list of {v} is not sorted"))
                });
            }
        }
        for &u in &list {
            if u == v {
                return Err(Error::SelfLoop(v));
            }
            if !self.contains(u) {
                return Err(Error::UnknownVertex(u));
            }
            if self.raw(u).binary_search(&v).is_err() {
                return Err(Error::AsymmetricEdge { u: v, v: u });
            }
        }
        Ok(Cow::Owned(list))
    }

    fn contains(&self, v: Vertex) -> bool {
        self.bound.is_none_or(|b| v < b)
    }

    fn bound(&self) -> Option<usize> {
        self.bound
    }
}

/// The induced subgraph of `base` on the vertices outside `removed`
/// (and outside `also`, when set).
#[derive(Debug, Clone, Copy)]
pub struct Residual<'a, G: ?Sized> {
    base: &'a G,
    removed: &'a HashSet<Vertex>,
    also: Option<Vertex>,
}

impl<'a, G: Graph + ?Sized> Residual<'a, G> {
    pub fn new(base: &'a G, removed: &'a HashSet<Vertex>) -> Self {
        Self {
            base,
            removed,
            also: None,
        }
    }

    /// The same view with one further vertex deleted.
    pub fn without(&self, v: Vertex) -> Self {
        Self {
            also: Some(v),
            ..*self
        }
    }

    pub fn base(&self) -> &'a G {
        self.base
    }

    fn gone(&self, v: Vertex) -> bool {
        self.removed.contains(&v) || self.also == Some(v)
    }
}

impl<G: Graph + ?Sized> Graph for Residual<'_, G> {
    fn neighbors(&self, v: Vertex) -> Result<Cow<'_, [Vertex]>> {
        if self.gone(v) {
            return Err(Error::UnknownVertex(v));
        }
        let all = self.base.neighbors(v)?;
        Ok(Cow::Owned(all.iter().copied().filter(|&u| !self.gone(u)).collect()))
    }

    fn contains(&self, v: Vertex) -> bool {
        self.base.contains(v) && !self.gone(v)
    }

    fn bound(&self) -> Option<usize> {
        self.base.bound()
    }
}

/// Partial or total map from vertices to color indices below `palette`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coloring {
    palette: usize,
    colors: BTreeMap<Vertex, usize>,
}

impl Coloring {
    pub fn new(palette: usize) -> Self {
        Self {
            palette,
            colors: BTreeMap::new(),
        }
    }

    /// Total coloring of `0..colors.len()`.
    pub fn from_vec(palette: usize, colors: Vec<usize>) -> Result<Self> {
        let mut c = Self::new(palette);
        for (v, col) in colors.into_iter().enumerate() {
            c.set(v, col)?;
        }
        Ok(c)
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn set(&mut self, v: Vertex, color: usize) -> Result<()> {
        if color >= self.palette {
            return Err(Error::ColorOutOfPalette {
                vertex: v,
                color,
                palette: self.palette,
            });
        }
        self.colors.insert(v, color);
        Ok(())
    }

    pub fn get(&self, v: Vertex) -> Option<usize> {
        self.colors.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        self.colors.iter().map(|(&v, &c)| (v, c))
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        self.colors.values().collect::<BTreeSet<_>>().len()
    }

    /// Dense color vector for `0..n`; errors on the first unassigned vertex.
    pub fn to_vec(&self, n: usize) -> Result<Vec<usize>> {
        (0..n)
            .map(|v| self.get(v).ok_or(Error::IncompleteColoring(v)))
            .collect()
    }
}

/// `N_n(seed)`: `N_0(S) = S` and `N_{k+1}(S) = N_1(N_k(S))`.
pub fn n_neighborhood<G: Graph + ?Sized>(g: &G, seed: &VertexSet, n: usize) -> Result<VertexSet> {
    for &v in seed {
        if !g.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    let mut current = seed.clone();
    let mut frontier: Vec<Vertex> = seed.iter().copied().collect();
    for _ in 0..n {
        let mut next = Vec::new();
        for &v in &frontier {
            for &u in g.neighbors(v)?.iter() {
                if current.insert(u) {
                    next.push(u);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(current)
}

/// The induced subgraph of `g` on a finite vertex set, relabelled to
/// `0..len` in increasing order, with the new-to-old map.
pub fn materialize<G: Graph + ?Sized>(g: &G, vertices: &VertexSet) -> Result<(FiniteGraph, Vec<Vertex>)> {
    let map: Vec<Vertex> = vertices.iter().copied().collect();
    let mut adj = Vec::with_capacity(map.len());
    for &v in &map {
        let nb = g.neighbors(v)?;
        adj.push(nb.iter().filter_map(|u| map.binary_search(u).ok()).collect());
    }
    Ok((FiniteGraph::from_adjacency(adj)?, map))
}

/// Result of growing `N_i({v})` towards a closed component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exploration {
    /// A set `H` with `N_1(H) = H`.
    Component(VertexSet),
    Exhausted,
}

impl Exploration {
    pub fn component(self) -> Option<VertexSet> {
        match self {
            Exploration::Component(c) => Some(c),
            Exploration::Exhausted => None,
        }
    }
}

/// Iterates `N_i({v})` until it stops growing (the component of `v`) or its
/// size passes `budget`.
pub fn component_of_bounded<G: Graph + ?Sized>(g: &G, v: Vertex, budget: usize) -> Result<Exploration> {
    if budget == 0 {
        return Err(Error::Domain("component budget must be at least 1".into()));
    }
    if !g.contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    let mut seen = VertexSet::from([v]);
    let mut frontier = vec![v];
    while !frontier.is_empty() {
        if seen.len() > budget {
            return Ok(Exploration::Exhausted);
        }
        let mut next = Vec::new();
        for &x in &frontier {
            for &u in g.neighbors(x)?.iter() {
                if seen.insert(u) {
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    if seen.len() > budget {
        return Ok(Exploration::Exhausted);
    }
    Ok(Exploration::Component(seen))
}

/// First monochromatic edge inside `vertices`, as `(u, v)` with `u < v`.
pub fn find_conflict<G, I>(g: &G, c: &Coloring, vertices: I) -> Result<Option<(Vertex, Vertex)>>
where
    G: Graph + ?Sized,
    I: IntoIterator<Item = Vertex>,
{
    let checked: VertexSet = vertices.into_iter().collect();
    for &v in &checked {
        let cv = c.get(v).ok_or(Error::IncompleteColoring(v))?;
        for &u in g.neighbors(v)?.iter() {
            if u > v && checked.contains(&u) {
                let cu = c.get(u).ok_or(Error::IncompleteColoring(u))?;
                if cu == cv {
                    return Ok(Some((v, u)));
                }
            }
        }
    }
    Ok(None)
}

/// True iff no edge inside `vertices` is monochromatic.
pub fn is_proper<G, I>(g: &G, c: &Coloring, vertices: I) -> Result<bool>
where
    G: Graph + ?Sized,
    I: IntoIterator<Item = Vertex>,
{
    Ok(find_conflict(g, c, vertices)?.is_none())
}

/// Properness over the whole of a finite graph.
pub fn is_proper_coloring(g: &FiniteGraph, c: &Coloring) -> Result<bool> {
    is_proper(g, c, g.vertices())
}

pub fn degree<G: Graph + ?Sized>(g: &G, v: Vertex) -> Result<usize> {
    g.degree(v)
}

pub fn max_degree(g: &FiniteGraph) -> Result<usize> {
    g.max_degree()
}
