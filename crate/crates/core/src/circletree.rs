//! Circle-trees: recognition with canonical witnesses, quotient graphs, and
//! detection of P-vertices, Q-vertices and germs in graphs of degree at most 3.
//!
//! A circle-tree is built from one circle by repeatedly joining a fresh
//! circle with a single edge between two vertices of degree 2. The circles of
//! a circle-tree are uniquely determined, so a witness is canonical once the
//! construction order is fixed: the root is the circle holding the least
//! vertex and the remaining circles follow in breadth-first order of the
//! quotient tree, children ordered by least member.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::error::Result;
use crate::graph::{FiniteGraph, Graph, Vertex, VertexSet};

/// Certificate that a finite graph is a circle-tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleTreeWitness {
    circles: Vec<VertexSet>,
    /// `attach[i - 1] = (x, y)` glues circle `i` through `x` (in an earlier
    /// circle) and `y` (in circle `i`).
    attach: Vec<(Vertex, Vertex)>,
}

impl CircleTreeWitness {
    /// Number of circles.
    pub fn k(&self) -> usize {
        self.circles.len()
    }

    /// Circles in construction order.
    pub fn circles(&self) -> &[VertexSet] {
        &self.circles
    }

    pub fn attach(&self) -> &[(Vertex, Vertex)] {
        &self.attach
    }

    /// The circles sorted by least member; equal for every construction of
    /// the same circle-tree.
    pub fn circle_multiset(&self) -> Vec<VertexSet> {
        let mut out = self.circles.clone();
        out.sort();
        out
    }

    /// The same witness with every vertex `v` renamed to `map[v]`. `map`
    /// must be increasing so the canonical order is preserved.
    pub fn relabel(&self, map: &[Vertex]) -> Self {
        Self {
            circles: self.circles.iter().map(|c| c.iter().map(|&v| map[v]).collect()).collect(),
            attach: self.attach.iter().map(|&(x, y)| (map[x], map[y])).collect(),
        }
    }

    /// Index of the circle containing `v`.
    pub fn circle_of(&self, v: Vertex) -> Option<usize> {
        self.circles.iter().position(|c| c.contains(&v))
    }

    /// Replays the construction against `h` and checks every witness
    /// invariant. Returns a description of the first failure.
    pub fn verify(&self, h: &FiniteGraph) -> std::result::Result<(), String> {
        let k = self.k();
        if k == 0 || self.attach.len() != k - 1 {
            return Err("witness needs k >= 1 circles and k-1 gluing edges".into());
        }
        let mut owner = vec![usize::MAX; h.n()];
        for (i, c) in self.circles.iter().enumerate() {
            for &v in c {
                if v >= h.n() {
                    return Err(format!("vertex {v} outside the graph"));
                }
                if owner[v] != usize::MAX {
                    return Err(format!("circles {} and {i} overlap at {v}", owner[v]));
                }
                owner[v] = i;
            }
            if c.len() < 3 {
                return Err(format!("circle {i} has fewer than 3 vertices"));
            }
            let (sub, _) = h.induced(c.iter().copied());
            if !sub.is_regular(2) || !sub.is_connected() {
                return Err(format!("circle {i} does not induce a circle"));
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(format!("vertex {v} is not covered by any circle"));
        }
        // replay: degrees inside the part built so far
        let mut deg = vec![0usize; h.n()];
        for &v in &self.circles[0] {
            deg[v] = 2;
        }
        for (i, &(x, y)) in self.attach.iter().enumerate() {
            let i = i + 1;
            if owner[x] >= i || owner[y] != i {
                return Err(format!("gluing edge {x}-{y} does not join an earlier part to circle {i}"));
            }
            if !h.has_edge(x, y) {
                return Err(format!("gluing edge {x}-{y} is not an edge"));
            }
            if deg[x] != 2 {
                return Err(format!("vertex {x} has degree {} when circle {i} is glued", deg[x]));
            }
            for &v in &self.circles[i] {
                deg[v] = 2;
            }
            deg[x] += 1;
            deg[y] += 1;
        }
        for v in h.vertices() {
            if deg[v] != h.deg(v) {
                return Err(format!("vertex {v} has extra edges outside the construction"));
            }
        }
        let threes = h.vertices().filter(|&v| h.deg(v) == 3).count();
        if threes != 2 * (k - 1) {
            return Err(format!("{threes} vertices of degree 3, expected {}", 2 * (k - 1)));
        }
        Ok(())
    }
}

/// A witness that `h` is a circle-tree, or `None`.
///
/// Leaf circles (a chain of degree-2 vertices closed up by a single
/// degree-3 vertex) are peeled until one circle remains; any failure to peel
/// means `h` is not a circle-tree.
pub fn recognize_circle_tree(h: &FiniteGraph) -> Option<CircleTreeWitness> {
    let n = h.n();
    if n < 3 || !h.is_connected() || h.vertices().any(|v| !(2..=3).contains(&h.deg(v))) {
        return None;
    }
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = h.vertices().map(|v| h.deg(v)).collect();
    let mut circles: Vec<VertexSet> = Vec::new();
    loop {
        let live: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
        if live.iter().all(|&v| deg[v] == 2) {
            // what remains must be a single circle
            let comp = walk_circle(h, &alive, live[0]);
            if comp.len() != live.len() {
                return None;
            }
            circles.push(live.into_iter().collect());
            break;
        }
        let (anchor, chain) = find_leaf_circle(h, &alive, &deg)?;
        let x = h
            .adj(anchor)
            .iter()
            .copied()
            .find(|&u| alive[u] && !chain.contains(&u))
            .expect("an anchor of degree 3 has an outside neighbor");
        if deg[x] != 3 {
            return None;
        }
        deg[x] -= 1;
        alive[anchor] = false;
        let mut circle: VertexSet = chain.into_iter().collect();
        for &v in &circle {
            alive[v] = false;
        }
        circle.insert(anchor);
        circles.push(circle);
    }
    Some(canonical_witness(h, circles))
}

fn walk_circle(h: &FiniteGraph, alive: &[bool], start: Vertex) -> Vec<Vertex> {
    let mut seen = vec![start];
    let mut stack = vec![start];
    let mut mark = HashSet::from([start]);
    while let Some(v) = stack.pop() {
        for &u in h.adj(v) {
            if alive[u] && mark.insert(u) {
                seen.push(u);
                stack.push(u);
            }
        }
    }
    seen
}

/// A degree-3 anchor and the chain of degree-2 vertices that closes a circle
/// through it, in the working graph.
fn find_leaf_circle(h: &FiniteGraph, alive: &[bool], deg: &[usize]) -> Option<(Vertex, Vec<Vertex>)> {
    let live_adj = |v: Vertex| h.adj(v).iter().copied().filter(|&u| alive[u]).collect::<Vec<_>>();
    let mut visited = vec![false; h.n()];
    for v in 0..h.n() {
        if !alive[v] || deg[v] != 2 || visited[v] {
            continue;
        }
        let mut chain = vec![v];
        visited[v] = true;
        let mut ends = Vec::new();
        for &first in &live_adj(v) {
            let (mut prev, mut cur) = (v, first);
            let mut side = Vec::new();
            while deg[cur] == 2 && cur != v {
                visited[cur] = true;
                side.push(cur);
                let next = live_adj(cur).into_iter().find(|&u| u != prev)?;
                prev = cur;
                cur = next;
            }
            if cur == v {
                return None; // closed chain of degree-2 vertices inside a larger part
            }
            ends.push(cur);
            chain.extend(side);
        }
        if ends.len() == 2 && ends[0] == ends[1] {
            return Some((ends[0], chain));
        }
    }
    None
}

fn canonical_witness(h: &FiniteGraph, circles: Vec<VertexSet>) -> CircleTreeWitness {
    let mut circles = circles;
    circles.sort();
    let mut owner = vec![0usize; h.n()];
    for (i, c) in circles.iter().enumerate() {
        for &v in c {
            owner[v] = i;
        }
    }
    // bridge edges keyed by (parent circle, child circle)
    let mut bridges: BTreeMap<(usize, usize), (Vertex, Vertex)> = BTreeMap::new();
    for (u, v) in h.edges() {
        let (a, b) = (owner[u], owner[v]);
        if a != b {
            bridges.insert((a, b), (u, v));
            bridges.insert((b, a), (v, u));
        }
    }
    let mut order = vec![0usize];
    let mut attach = Vec::new();
    let mut placed = vec![false; circles.len()];
    placed[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        // circles are sorted by least member, so index order is the child order
        for c in 0..circles.len() {
            if !placed[c] {
                if let Some(&(x, y)) = bridges.get(&(p, c)) {
                    placed[c] = true;
                    order.push(c);
                    attach.push((x, y));
                    queue.push_back(c);
                }
            }
        }
    }
    CircleTreeWitness {
        circles: order.into_iter().map(|i| circles[i].clone()).collect(),
        attach,
    }
}

/// The quotient graph on the circles of `w`: circles `i` and `j` are
/// adjacent when an edge of `h` joins them.
pub fn quotient(w: &CircleTreeWitness, h: &FiniteGraph) -> FiniteGraph {
    let mut owner = vec![usize::MAX; h.n()];
    for (i, c) in w.circles().iter().enumerate() {
        for &v in c {
            owner[v] = i;
        }
    }
    let mut edges: Vec<(usize, usize)> = h
        .edges()
        .filter_map(|(u, v)| {
            let (a, b) = (owner[u], owner[v]);
            (a != b).then(|| (a.min(b), a.max(b)))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    FiniteGraph::from_edges(w.k(), &edges).expect("quotient edges are simple")
}

/// A maximal run of degree-2 vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Chain {
    path: Vec<Vertex>,
    /// Outer neighbors at both ends; `None` when the run closes on itself.
    ends: Option<(Vertex, Vertex)>,
}

fn walk_chain<G: Graph + ?Sized>(g: &G, v: Vertex) -> Result<Chain> {
    let nb = g.neighbors(v)?.into_owned();
    debug_assert_eq!(nb.len(), 2);
    let mut halves = Vec::with_capacity(2);
    let mut outer = Vec::with_capacity(2);
    for &first in &nb {
        let (mut prev, mut cur) = (v, first);
        let mut side = Vec::new();
        loop {
            if cur == v {
                return Ok(Chain {
                    path: std::iter::once(v).chain(side).collect(),
                    ends: None,
                });
            }
            if g.degree(cur)? != 2 {
                break;
            }
            side.push(cur);
            let next = g
                .neighbors(cur)?
                .iter()
                .copied()
                .find(|&u| u != prev)
                .expect("degree-2 vertex has a second neighbor");
            prev = cur;
            cur = next;
        }
        halves.push(side);
        outer.push(cur);
    }
    let mut path: Vec<Vertex> = halves[0].iter().rev().copied().collect();
    path.push(v);
    path.extend(halves[1].iter().copied());
    Ok(Chain {
        path,
        ends: Some((outer[0], outer[1])),
    })
}

/// P-vertices among the chains through `region`, each with its circle (the
/// anchor followed by the chain).
///
/// `region` must contain every degree-2 vertex of the part of `g` under
/// consideration.
pub fn p_vertex_circles<G: Graph + ?Sized>(g: &G, region: &VertexSet) -> Result<BTreeMap<Vertex, Vec<Vertex>>> {
    let mut out = BTreeMap::new();
    let mut seen = HashSet::new();
    for &v in region {
        if seen.contains(&v) || !g.contains(v) || g.degree(v)? != 2 {
            continue;
        }
        let chain = walk_chain(g, v)?;
        seen.extend(chain.path.iter().copied());
        if let Some((p, q)) = chain.ends {
            if p == q && g.degree(p)? == 3 {
                let mut circle = vec![p];
                circle.extend(chain.path);
                out.insert(p, circle);
            }
        }
    }
    Ok(out)
}

/// All P-vertices whose circle meets `region`.
pub fn find_p_vertices<G: Graph + ?Sized>(g: &G, region: &VertexSet) -> Result<VertexSet> {
    Ok(p_vertex_circles(g, region)?.into_keys().collect())
}

/// Whether `v` is a P-vertex: degree 3 and on a circle whose other vertices
/// all have degree 2.
pub fn p_vertex_circle<G: Graph + ?Sized>(g: &G, v: Vertex) -> Result<Option<Vec<Vertex>>> {
    if g.degree(v)? != 3 {
        return Ok(None);
    }
    for &u in g.neighbors(v)?.iter() {
        if g.degree(u)? == 2 {
            let chain = walk_chain(g, u)?;
            if chain.ends == Some((v, v)) {
                let mut circle = vec![v];
                circle.extend(chain.path);
                return Ok(Some(circle));
            }
        }
    }
    Ok(None)
}

/// A circle witnessing that `v` is a Q-vertex: `v` has degree 3, is not a
/// P-vertex, and lies on a circle with at most three degree-3 vertices on
/// which one of its two circle neighbors has degree 2.
pub fn q_vertex_circle<G: Graph + ?Sized>(g: &G, v: Vertex) -> Result<Option<Vec<Vertex>>> {
    if g.degree(v)? != 3 || p_vertex_circle(g, v)?.is_some() {
        return Ok(None);
    }
    for &u in g.neighbors(v)?.iter() {
        if g.degree(u)? == 2 {
            let mut path = vec![v, u];
            if let Some(c) = extend_q_path(g, &mut path, 1)? {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

fn extend_q_path<G: Graph + ?Sized>(g: &G, path: &mut Vec<Vertex>, threes: usize) -> Result<Option<Vec<Vertex>>> {
    let start = path[0];
    let last = *path.last().expect("path is nonempty");
    let nb = g.neighbors(last)?.into_owned();
    if path.len() >= 3 && nb.contains(&start) && is_induced_circle(g, path)? {
        return Ok(Some(path.clone()));
    }
    for y in nb {
        if y == start || path.contains(&y) {
            continue;
        }
        let extra = match g.degree(y)? {
            2 => 0,
            3 if threes < 3 => 1,
            _ => continue,
        };
        path.push(y);
        if let Some(c) = extend_q_path(g, path, threes + extra)? {
            return Ok(Some(c));
        }
        path.pop();
    }
    Ok(None)
}

fn is_induced_circle<G: Graph + ?Sized>(g: &G, cycle: &[Vertex]) -> Result<bool> {
    let members: HashSet<Vertex> = cycle.iter().copied().collect();
    for &c in cycle {
        let inside = g.neighbors(c)?.iter().filter(|u| members.contains(u)).count();
        if inside != 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All Q-vertices among the neighbors of degree-2 vertices in `region`.
pub fn find_q_vertices<G: Graph + ?Sized>(g: &G, region: &VertexSet) -> Result<VertexSet> {
    let mut cand = VertexSet::new();
    for &v in region {
        if g.contains(v) && g.degree(v)? == 2 {
            cand.extend(g.neighbors(v)?.iter().copied());
        }
    }
    let mut out = VertexSet::new();
    for v in cand {
        if q_vertex_circle(g, v)?.is_some() {
            out.insert(v);
        }
    }
    Ok(out)
}

/// A path `v(0) ... v(n-1)` with `n >= 3`, every vertex but the last of
/// degree at most 2, and the last of degree 3.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Germ {
    path: Vec<Vertex>,
}

impl Germ {
    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    pub fn start(&self) -> Vertex {
        self.path[0]
    }

    pub fn second(&self) -> Vertex {
        self.path[1]
    }

    /// The terminal vertex of degree 3.
    pub fn last(&self) -> Vertex {
        *self.path.last().expect("germs have at least 3 vertices")
    }

    /// The vertex before the terminal one.
    pub fn penultimate(&self) -> Vertex {
        self.path[self.path.len() - 2]
    }

    /// Checks the defining conditions against `g`.
    pub fn is_valid_in<G: Graph + ?Sized>(&self, g: &G) -> Result<bool> {
        let p = &self.path;
        if p.len() < 3 || p.iter().collect::<HashSet<_>>().len() != p.len() {
            return Ok(false);
        }
        for w in p.windows(2) {
            if !g.is_adjacent(w[0], w[1])? {
                return Ok(false);
            }
        }
        for &v in &p[..p.len() - 1] {
            if g.degree(v)? > 2 {
                return Ok(false);
            }
        }
        Ok(g.degree(self.last())? == 3)
    }
}

/// The germ starting `a, b, ...` if there is one. The rest of the path is
/// forced because its inner vertices have degree at most 2.
pub fn germ_from<G: Graph + ?Sized>(g: &G, a: Vertex, b: Vertex) -> Result<Option<Germ>> {
    if g.degree(a)? > 2 || g.degree(b)? > 2 || !g.is_adjacent(a, b)? {
        return Ok(None);
    }
    let mut path = vec![a, b];
    let (mut prev, mut cur) = (a, b);
    loop {
        let Some(next) = g.neighbors(cur)?.iter().copied().find(|&u| u != prev) else {
            return Ok(None);
        };
        if path.contains(&next) {
            return Ok(None);
        }
        path.push(next);
        match g.degree(next)? {
            3 => return Ok(Some(Germ { path })),
            0..=2 => {
                prev = cur;
                cur = next;
            }
            _ => return Ok(None),
        }
    }
}

/// Every germ starting inside `region`, ordered by starting vertex and then
/// second vertex.
pub fn find_germs<G: Graph + ?Sized>(g: &G, region: &VertexSet) -> Result<Vec<Germ>> {
    let mut out = Vec::new();
    for &a in region {
        if !g.contains(a) || g.degree(a)? > 2 {
            continue;
        }
        for &b in g.neighbors(a)?.iter() {
            if let Some(germ) = germ_from(g, a, b)? {
                out.push(germ);
            }
        }
    }
    Ok(out)
}
