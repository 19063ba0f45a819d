//! Baseline colorers, hypothesis checkers and the exact chromatic oracle.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{component_of_bounded, Coloring, Exploration, FiniteGraph, Graph, Vertex, VertexSet};

/// Greedy coloring in ascending vertex order: each vertex takes the least
/// color absent among its already-colored neighbors. Uses at most `Δ+1`
/// colors.
pub fn greedy_color(g: &FiniteGraph) -> Coloring {
    let n = g.n();
    let palette = g.max_degree().map_or(0, |d| d + 1);
    let mut colors = vec![usize::MAX; n];
    let mut taken = vec![false; palette];
    for v in 0..n {
        for &u in g.adj(v) {
            if colors[u] != usize::MAX {
                taken[colors[u]] = true;
            }
        }
        colors[v] = taken.iter().position(|&t| !t).expect("Δ+1 colors always suffice");
        for &u in g.adj(v) {
            if colors[u] != usize::MAX {
                taken[colors[u]] = false;
            }
        }
    }
    Coloring::from_vec(palette, colors).expect("greedy colors stay below Δ+1")
}

/// Outcome of a budgeted 2-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoColorOutcome {
    Colored(Coloring),
    /// The component of `vertex` grew past the budget; no color is claimed.
    Exhausted { vertex: Vertex },
}

/// 2-colors the components of every vertex in `targets` in a graph of
/// maximum degree at most 2.
///
/// Singletons get color 0. A line segment is colored alternately from its
/// least endpoint, which gets 0. An even circle gets 0 on its least vertex and
/// each successive vertex takes the only acceptable color. A component
/// larger than `budget` stops the run with `Exhausted`.
pub fn color_degree_two<G, I>(g: &G, targets: I, budget: usize) -> Result<TwoColorOutcome>
where
    G: Graph + ?Sized,
    I: IntoIterator<Item = Vertex>,
{
    let mut c = Coloring::new(2);
    for v in targets {
        if c.get(v).is_some() {
            continue;
        }
        let comp = match component_of_bounded(g, v, budget)? {
            Exploration::Component(comp) => comp,
            Exploration::Exhausted => return Ok(TwoColorOutcome::Exhausted { vertex: v }),
        };
        color_closed_component(g, &comp, &mut c)?;
    }
    Ok(TwoColorOutcome::Colored(c))
}

/// [`color_degree_two`] over every vertex of a finite graph.
pub fn color_degree_two_finite(g: &FiniteGraph) -> Result<Coloring> {
    match color_degree_two(g, g.vertices(), g.n().max(1))? {
        TwoColorOutcome::Colored(c) => Ok(c),
        TwoColorOutcome::Exhausted { .. } => unreachable!("budget covers the whole graph"),
    }
}

fn color_closed_component<G: Graph + ?Sized>(g: &G, comp: &VertexSet, c: &mut Coloring) -> Result<()> {
    let mut endpoint = None;
    for &v in comp {
        let d = g.degree(v)?;
        if d > 2 {
            return Err(Error::DegreeTooLarge {
                vertex: v,
                degree: d,
                bound: 2,
            });
        }
        if d <= 1 && endpoint.is_none() {
            endpoint = Some(v);
        }
    }
    let start = endpoint.unwrap_or_else(|| *comp.iter().next().expect("components are nonempty"));
    // walk the path or circle from `start`
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur)?.iter().copied().find(|&u| Some(u) != prev && u != start);
        match next {
            Some(u) if !order.contains(&u) => {
                order.push(u);
                prev = Some(cur);
                cur = u;
            }
            _ => break,
        }
    }
    let is_circle = endpoint.is_none() && comp.len() > 1;
    if is_circle && order.len() % 2 == 1 {
        let mut cyc = order.clone();
        cyc.push(start);
        return Err(Error::OddCycle(cyc));
    }
    for (i, &v) in order.iter().enumerate() {
        c.set(v, i % 2)?;
    }
    Ok(())
}

/// Some clique on exactly `size` vertices, or `None`.
///
/// Every clique lies in the closed neighborhood of its least member, so the
/// search only extends from each vertex into its larger neighbors.
pub fn find_clique(g: &FiniteGraph, size: usize) -> Option<Vec<Vertex>> {
    if size == 0 {
        return Some(Vec::new());
    }
    for v in g.vertices() {
        if g.deg(v) + 1 < size {
            continue;
        }
        let cand: Vec<Vertex> = g.adj(v).iter().copied().filter(|&u| u > v && g.deg(u) + 1 >= size).collect();
        let mut clique = vec![v];
        if extend_clique(g, &cand, size, &mut clique) {
            return Some(clique);
        }
    }
    None
}

fn extend_clique(g: &FiniteGraph, cand: &[Vertex], size: usize, clique: &mut Vec<Vertex>) -> bool {
    if clique.len() == size {
        return true;
    }
    if clique.len() + cand.len() < size {
        return false;
    }
    for (i, &u) in cand.iter().enumerate() {
        let next: Vec<Vertex> = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(u, w)).collect();
        clique.push(u);
        if extend_clique(g, &next, size, clique) {
            return true;
        }
        clique.pop();
    }
    false
}

/// An odd cycle as a closed vertex sequence `(v0, ..., v0)`, or `None` when
/// the graph is bipartite.
pub fn find_odd_cycle(g: &FiniteGraph) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut side = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if side[root] != usize::MAX {
            continue;
        }
        side[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &u in g.adj(v) {
                if side[u] == usize::MAX {
                    side[u] = 1 - side[v];
                    parent[u] = v;
                    depth[u] = depth[v] + 1;
                    queue.push_back(u);
                } else if side[u] == side[v] {
                    return Some(close_cycle(v, u, &parent, &depth));
                }
            }
        }
    }
    None
}

fn close_cycle(mut a: Vertex, mut b: Vertex, parent: &[Vertex], depth: &[usize]) -> Vec<Vertex> {
    let (mut left, mut right) = (vec![a], vec![b]);
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    // left ends at the common ancestor; right does too
    right.pop();
    let mut cyc: Vec<Vertex> = left.into_iter().rev().collect();
    cyc.extend(right);
    cyc.push(cyc[0]);
    cyc
}

/// Proper `k`-coloring extending the partial assignment `pre`, by
/// backtracking. `pre[v] = None` leaves `v` free.
pub fn extend_coloring(g: &FiniteGraph, pre: &[Option<usize>], k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut colors: Vec<Option<usize>> = pre.to_vec();
    colors.resize(n, None);
    for (u, v) in g.edges() {
        if colors[u].is_some() && colors[u] == colors[v] {
            return None;
        }
    }
    if colors.iter().flatten().any(|&c| c >= k) {
        return None;
    }
    let order = search_order(g, &colors);
    let fixed = pre.iter().any(Option::is_some);
    if backtrack(g, &order, 0, k, &mut colors, !fixed) {
        Some(colors.into_iter().map(|c| c.expect("complete")).collect())
    } else {
        None
    }
}

/// Free vertices ordered so each one is adjacent to as many earlier
/// (colored or ordered) vertices as possible.
fn search_order(g: &FiniteGraph, colors: &[Option<usize>]) -> Vec<Vertex> {
    let n = g.n();
    let mut placed: Vec<bool> = colors.iter().map(Option::is_some).collect();
    let mut weight = vec![0usize; n];
    for v in 0..n {
        if placed[v] {
            for &u in g.adj(v) {
                weight[u] += 1;
            }
        }
    }
    let free = placed.iter().filter(|&&p| !p).count();
    let mut order = Vec::with_capacity(free);
    while order.len() < free {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (weight[v], g.deg(v), std::cmp::Reverse(v)))
            .expect("some vertex remains");
        placed[v] = true;
        order.push(v);
        for &u in g.adj(v) {
            weight[u] += 1;
        }
    }
    order
}

fn backtrack(
    g: &FiniteGraph,
    order: &[Vertex],
    i: usize,
    k: usize,
    colors: &mut [Option<usize>],
    break_symmetry: bool,
) -> bool {
    let Some(&v) = order.get(i) else {
        return true;
    };
    // with no precolored vertex, colors are interchangeable: only open one
    // new color at a time
    let limit = if break_symmetry {
        let used = order[..i].iter().filter_map(|&u| colors[u]).max().map_or(0, |m| m + 1);
        (used + 1).min(k)
    } else {
        k
    };
    for c in 0..limit {
        if g.adj(v).iter().all(|&u| colors[u] != Some(c)) {
            colors[v] = Some(c);
            if backtrack(g, order, i + 1, k, colors, break_symmetry) {
                return true;
            }
            colors[v] = None;
        }
    }
    false
}

/// Proper `k`-coloring of `g` if one exists.
pub fn k_coloring(g: &FiniteGraph, k: usize) -> Option<Vec<usize>> {
    extend_coloring(g, &vec![None; g.n()], k)
}

/// Least `k <= cap` admitting a proper `k`-coloring.
pub fn brute_chromatic(g: &FiniteGraph, cap: usize) -> Result<usize> {
    if g.n() == 0 {
        return Ok(0);
    }
    (1..=cap)
        .find(|&k| k_coloring(g, k).is_some())
        .ok_or(Error::NoColoringWithinCap(cap))
}

/// What a graph offers against the hypotheses of Brooks' theorem for degree
/// `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub max_degree: usize,
    /// Least vertex attaining `max_degree`.
    pub max_degree_vertex: Option<Vertex>,
    /// A `(d+1)`-clique, checked only for `d >= 3`.
    pub forbidden_clique: Option<Vec<Vertex>>,
    /// An odd cycle, checked only for `d == 2`.
    pub odd_cycle: Option<Vec<Vertex>>,
}

impl HypothesisReport {
    pub fn holds(&self, d: usize) -> bool {
        self.max_degree <= d && self.forbidden_clique.is_none() && self.odd_cycle.is_none()
    }

    /// The first violation as an error.
    pub fn into_result(self, d: usize) -> Result<()> {
        if let Some(cyc) = self.odd_cycle {
            return Err(Error::OddCycle(cyc));
        }
        if let Some(k) = self.forbidden_clique {
            return Err(Error::ForbiddenClique(k));
        }
        if let Some(vertex) = self.max_degree_vertex.filter(|_| self.max_degree > d) {
            return Err(Error::DegreeTooLarge {
                vertex,
                degree: self.max_degree,
                bound: d,
            });
        }
        Ok(())
    }
}

pub fn check_hypotheses(g: &FiniteGraph, d: usize) -> HypothesisReport {
    let max_degree = g.max_degree().unwrap_or(0);
    HypothesisReport {
        max_degree,
        max_degree_vertex: g.vertices().find(|&v| g.deg(v) == max_degree),
        forbidden_clique: if d >= 3 { find_clique(g, d + 1) } else { None },
        odd_cycle: if d <= 2 { find_odd_cycle(g) } else { None },
    }
}

/// Degree bound check returning the offending vertex.
pub fn check_degree_bound(g: &FiniteGraph, d: usize) -> Result<()> {
    match g.vertices().find(|&v| g.deg(v) > d) {
        Some(v) => Err(Error::DegreeTooLarge {
            vertex: v,
            degree: g.deg(v),
            bound: d,
        }),
        None => Ok(()),
    }
}
