//! Leveled graphs, the low-degree part `d(G)`, property A, and a family of
//! leveled graphs with arbitrarily many levels that lack property A.

use crate::color::extend_coloring;
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Vertex, VertexSet};

/// Vertices of degree at most 2.
pub fn d_subgraph(g: &FiniteGraph) -> VertexSet {
    g.vertices().filter(|&v| g.deg(v) <= 2).collect()
}

/// A graph split into BFS levels `Z_0, ..., Z_h` from `Z_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeveledGraph {
    pub graph: FiniteGraph,
    levels: Vec<VertexSet>,
}

impl LeveledGraph {
    /// Levels by distance from `root`; every vertex must be reachable.
    pub fn from_root(graph: FiniteGraph, root: VertexSet) -> Result<Self> {
        if root.is_empty() {
            return Err(Error::Input("the first level is empty".into()));
        }
        if let Some(&v) = root.iter().find(|&&v| v >= graph.n()) {
            return Err(Error::UnknownVertex(v));
        }
        let mut seen = root.clone();
        let mut levels = vec![root];
        loop {
            let next: VertexSet = levels
                .last()
                .unwrap()
                .iter()
                .flat_map(|&v| graph.adj(v).iter().copied())
                .filter(|u| !seen.contains(u))
                .collect();
            if next.is_empty() {
                break;
            }
            seen.extend(&next);
            levels.push(next);
        }
        if seen.len() != graph.n() {
            return Err(Error::Input(format!(
                "{} vertices are not reachable from the first level",
                graph.n() - seen.len()
            )));
        }
        Ok(Self { graph, levels })
    }

    pub fn levels(&self) -> &[VertexSet] {
        &self.levels
    }

    /// Index `h` of the last level.
    pub fn height(&self) -> usize {
        self.levels.len() - 1
    }

    /// Members of `Z_i` with a neighbor in `Z_{i+1}`.
    pub fn boundary(&self, i: usize) -> VertexSet {
        let Some(next) = self.levels.get(i + 1) else {
            return VertexSet::new();
        };
        self.levels[i]
            .iter()
            .copied()
            .filter(|&x| self.graph.adj(x).iter().any(|u| next.contains(u)))
            .collect()
    }

    /// Maximum degree at most 3 and conditions (2) to (4) on the levels.
    pub fn check_conditions(&self) -> std::result::Result<(), String> {
        let g = &self.graph;
        if let Some(v) = g.vertices().find(|&v| g.deg(v) > 3) {
            return Err(format!("vertex {v} has degree {}", g.deg(v)));
        }
        let h = self.height();
        for i in 0..h {
            let b = self.boundary(i).len();
            if b > 2 {
                return Err(format!("level {i} has {b} vertices with neighbors in level {}", i + 1));
            }
        }
        let d = d_subgraph(g);
        let top = d.intersection(&self.levels[h]).count();
        if !(1..=2).contains(&top) {
            return Err(format!("d(H) meets the last level in {top} vertices"));
        }
        if let Some(v) = self.levels[0].iter().find(|v| !d.contains(v)) {
            return Err(format!("first-level vertex {v} has degree {}", g.deg(*v)));
        }
        if let Some(v) = d.iter().find(|v| !self.levels[0].contains(v) && !self.levels[h].contains(v)) {
            return Err(format!("vertex {v} of d(H) lies strictly between the first and last level"));
        }
        Ok(())
    }
}

/// Names of the vertices of [`build_c`].
pub mod c {
    use crate::graph::Vertex;
    pub const A: Vertex = 0;
    pub const P: Vertex = 1;
    pub const Q: Vertex = 2;
    pub const R: Vertex = 3;
    pub const B: Vertex = 4;
    pub const X: Vertex = 5;
}

/// The six-vertex graph with triangle `a p q`, hub `r` on `p` and `q`, and
/// the path `r b x`. Its 3-colorings all give `a` and `b` different colors.
pub fn build_c() -> FiniteGraph {
    use c::*;
    FiniteGraph::from_edges(6, &[(A, P), (A, Q), (P, Q), (Q, R), (R, P), (R, B), (B, X)]).expect("C is simple")
}

/// Apex `g* = 0` on top of a ladder with rails `u_i = 1 + 2i` and
/// `w_i = 2 + 2i` for `i <= h`, rungs `u_i w_i`, and `g*` joined to `u_0`
/// and `w_0`. Its levels from `{g*}` are `{u_{i-1}, w_{i-1}}`.
pub fn build_apexed_ladder(h: usize) -> Result<LeveledGraph> {
    if h < 2 {
        return Err(Error::Domain(format!("the apexed ladder needs h >= 2, got {h}")));
    }
    let u = |i: usize| 1 + 2 * i;
    let w = |i: usize| 2 + 2 * i;
    let mut edges = vec![(0, u(0)), (0, w(0))];
    for i in 0..=h {
        edges.push((u(i), w(i)));
        if i < h {
            edges.push((u(i), u(i + 1)));
            edges.push((w(i), w(i + 1)));
        }
    }
    let graph = FiniteGraph::from_edges(2 * h + 3, &edges)?;
    let lg = LeveledGraph::from_root(graph, VertexSet::from([0]))?;
    lg.check_conditions().map_err(|e| Error::Invariant(format!("apexed ladder: {e}")))?;
    Ok(lg)
}

/// `C` and `G` glued along `x = g*`, where `Z_0 = {g*}`; the levels are
/// recomputed from `{a, b}`.
///
/// `C` keeps ids `0..=5` with `x = 5`; `g*` becomes 5 and the other vertices
/// of `G` follow in increasing order.
pub fn compose_cg(g: &LeveledGraph) -> Result<LeveledGraph> {
    let z0 = &g.levels[0];
    if z0.len() != 1 {
        return Err(Error::Input(format!("the first level has {} vertices, expected one", z0.len())));
    }
    let apex = *z0.first().unwrap();
    let mut map = vec![0; g.graph.n()];
    map[apex] = c::X;
    let mut next = c::X + 1;
    for v in g.graph.vertices().filter(|&v| v != apex) {
        map[v] = next;
        next += 1;
    }
    let mut edges: Vec<(Vertex, Vertex)> = build_c().edges().collect();
    edges.extend(g.graph.edges().map(|(u, v)| (map[u], map[v])));
    let graph = FiniteGraph::from_edges(next, &edges)?;
    LeveledGraph::from_root(graph, VertexSet::from([c::A, c::B]))
}

/// Outcome of [`has_property_a`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyA {
    Holds,
    /// The maximum degree is not 3.
    DegreeNotThree(usize),
    /// A proper 3-coloring of `d(G)`, as `(vertex, color)` pairs, with no
    /// proper extension to `G`.
    NotExtendable(Vec<(Vertex, usize)>),
}

impl PropertyA {
    pub fn holds(&self) -> bool {
        matches!(self, PropertyA::Holds)
    }

    pub fn witness(&self) -> Option<&[(Vertex, usize)]> {
        match self {
            PropertyA::NotExtendable(w) => Some(w),
            _ => None,
        }
    }
}

/// Whether every proper 3-coloring of `d(g)` extends to `g`. Colorings are
/// tried in lexicographic order over the vertices of `d(g)` in increasing
/// order, so the witness is the least failing one.
pub fn has_property_a(g: &FiniteGraph) -> PropertyA {
    let delta = g.max_degree().unwrap_or(0);
    if delta != 3 {
        return PropertyA::DegreeNotThree(delta);
    }
    let d: Vec<Vertex> = d_subgraph(g).into_iter().collect();
    let mut pre = vec![None; g.n()];
    let mut digits = vec![0usize; d.len()];
    loop {
        for (&v, &c) in d.iter().zip(&digits) {
            pre[v] = Some(c);
        }
        let proper = d.iter().all(|&v| g.adj(v).iter().all(|&u| pre[u].is_none() || pre[u] != pre[v]));
        if proper && extend_coloring(g, &pre, 3).is_none() {
            return PropertyA::NotExtendable(d.iter().copied().zip(digits).collect());
        }
        // next tuple in base 3, last digit fastest
        let Some(i) = digits.iter().rposition(|&c| c < 2) else {
            return PropertyA::Holds;
        };
        digits[i] += 1;
        digits[i + 1..].iter_mut().for_each(|c| *c = 0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::{find_clique, k_coloring};
    use crate::families;

    #[test]
    fn d_of_small_graphs() {
        assert!(d_subgraph(&families::petersen()).is_empty());
        assert_eq!(d_subgraph(&families::path(5)).len(), 5);
        assert_eq!(d_subgraph(&build_c()), VertexSet::from([c::A, c::B, c::X]));
    }

    #[test]
    fn c_forces_a_and_b_apart() {
        let g = build_c();
        let degs: Vec<usize> = g.vertices().map(|v| g.deg(v)).collect();
        assert_eq!(degs, vec![2, 3, 3, 3, 2, 1]);
        assert!(find_clique(&g, 4).is_none());
        for a in 0..3 {
            for b in 0..3 {
                let mut pre = vec![None; 6];
                pre[c::A] = Some(a);
                pre[c::B] = Some(b);
                assert_eq!(extend_coloring(&g, &pre, 3).is_some(), a != b);
            }
        }
        assert!(k_coloring(&g, 3).is_some());
    }

    #[test]
    fn apexed_ladder_levels() {
        let lg = build_apexed_ladder(3).unwrap();
        assert_eq!(lg.graph.n(), 9);
        assert_eq!(d_subgraph(&lg.graph), VertexSet::from([0, 7, 8]));
        assert_eq!(lg.height(), 4);
        for i in 1..=4 {
            assert_eq!(lg.levels()[i], VertexSet::from([2 * i - 1, 2 * i]));
        }
        assert!((0..lg.height()).all(|i| lg.boundary(i).len() <= 2));
        assert!(build_apexed_ladder(1).is_err());
    }

    #[test]
    fn composed_graph() {
        let g = build_apexed_ladder(6).unwrap();
        let cg = compose_cg(&g).unwrap();
        cg.check_conditions().unwrap();
        assert_eq!(cg.height(), g.height() + 1);
        assert_eq!(cg.levels()[0], VertexSet::from([c::A, c::B]));
        assert_eq!(cg.graph.deg(c::X), 3);
        let d = d_subgraph(&cg.graph);
        assert_eq!(d.intersection(&cg.levels()[0]).count(), 2);
        let verdict = has_property_a(&cg.graph);
        let w = verdict.witness().unwrap();
        let color = |v| w.iter().find(|p| p.0 == v).unwrap().1;
        assert_eq!((color(c::A), color(c::B)), (0, 0));
        assert!(compose_cg(&cg).is_err());
    }

    #[test]
    fn property_a_on_k4_minus_edge() {
        // 2 and 3 are the vertices of degree 2; they are not adjacent
        let g = FiniteGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(d_subgraph(&g), VertexSet::from([2, 3]));
        assert_eq!(has_property_a(&g), PropertyA::NotExtendable(vec![(2, 0), (3, 1)]));
        assert_eq!(has_property_a(&families::petersen()), PropertyA::Holds);
        assert_eq!(has_property_a(&families::cycle(4)), PropertyA::DegreeNotThree(2));
    }

    #[test]
    fn leveled_graph_rejects_unreachable() {
        let g = FiniteGraph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(LeveledGraph::from_root(g, VertexSet::from([0])).is_err());
    }
}
