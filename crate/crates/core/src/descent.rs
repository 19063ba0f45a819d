//! Degree descent: removing an independent set from a `d`-regular graph
//! without `(d+1)`-cliques so that what remains has maximum degree `d - 1`
//! and no `d`-clique, and the resulting `d`-coloring pipeline.
//!
//! The removal runs in stages like the cubic construction, with cliques in
//! place of circles and no germ case: take the least P-vertex (degree `d`,
//! the only vertex of degree `d` in some `d`-clique); otherwise look at the
//! least vertex `s` of degree `d` and take the least Q-vertex next to it
//! (degree `d`, in a `d`-clique with between 2 and `d - 1` vertices of
//! degree `d`), or `s` itself.
//!
//! Iterating regularization and removal from `d` down to 4 peels off
//! independent sets `K(0), K(1), ...` and leaves a graph of maximum degree 3
//! without 4-cliques, which the cubic construction 3-colors.
//!
//! Each level multiplies the vertex count by up to `2^(d-i)`, so the
//! pipeline is meant for small inputs.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use log::{debug, info};

use crate::color::{check_degree_bound, color_degree_two_finite, find_clique, find_odd_cycle};
use crate::error::{Error, Result};
use crate::graph::{Coloring, FiniteGraph, Graph, Vertex, VertexSet};
use crate::regular::regularize;
use crate::tverberg::run_trace;

/// Upper limit on the vertex count of any regularized level.
pub const MAX_LEVEL_VERTICES: usize = 1 << 22;

/// `G_i` for the descent stages: the base graph minus the removed vertices,
/// with the degrees of the vertices next to them cached.
#[derive(Debug, Clone, Copy)]
struct PhiView<'a, G: ?Sized> {
    base: &'a G,
    d: usize,
    removed: &'a HashSet<Vertex>,
    low: &'a BTreeMap<Vertex, usize>,
}

impl<G: Graph + ?Sized> Graph for PhiView<'_, G> {
    fn neighbors(&self, v: Vertex) -> Result<Cow<'_, [Vertex]>> {
        if self.removed.contains(&v) {
            return Err(Error::UnknownVertex(v));
        }
        let all = self.base.neighbors(v)?;
        if all.len() != self.d {
            return Err(Error::NotRegular {
                d: self.d,
                vertex: v,
                degree: all.len(),
            });
        }
        Ok(Cow::Owned(all.iter().copied().filter(|u| !self.removed.contains(u)).collect()))
    }

    fn degree(&self, v: Vertex) -> Result<usize> {
        if self.removed.contains(&v) {
            return Err(Error::UnknownVertex(v));
        }
        match self.low.get(&v) {
            Some(&k) => Ok(k),
            None => Ok(self.neighbors(v)?.len()),
        }
    }

    fn contains(&self, v: Vertex) -> bool {
        self.base.contains(v) && !self.removed.contains(&v)
    }

    fn bound(&self) -> Option<usize> {
        self.base.bound()
    }
}

/// Every `d`-clique of `g` containing `v`, each sorted.
fn cliques_through<G: Graph + ?Sized>(g: &G, v: Vertex, d: usize) -> Result<Vec<Vec<Vertex>>> {
    let nb = g.neighbors(v)?.into_owned();
    if nb.len() + 1 < d {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    // vertex degrees are at most d, so at most one neighbor is left out
    let drops: Vec<Option<usize>> = if nb.len() + 1 == d {
        vec![None]
    } else {
        (0..nb.len()).map(Some).collect()
    };
    for drop in drops {
        let members: Vec<Vertex> = nb.iter().enumerate().filter(|&(i, _)| Some(i) != drop).map(|(_, &u)| u).collect();
        if members.len() + 1 != d {
            continue;
        }
        let mut ok = true;
        'pairs: for (i, &a) in members.iter().enumerate() {
            let an = g.neighbors(a)?;
            for &b in &members[i + 1..] {
                if an.binary_search(&b).is_err() {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            let mut k = members;
            k.push(v);
            k.sort_unstable();
            out.push(k);
        }
    }
    Ok(out)
}

/// A `d`-clique showing that `v` is a P-vertex.
fn p_clique<G: Graph + ?Sized>(g: &G, v: Vertex, d: usize) -> Result<Option<Vec<Vertex>>> {
    if g.degree(v)? != d {
        return Ok(None);
    }
    for k in cliques_through(g, v, d)? {
        let mut others_low = true;
        for &u in &k {
            if u != v && g.degree(u)? >= d {
                others_low = false;
                break;
            }
        }
        if others_low {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// A `d`-clique showing that `v` is a Q-vertex.
fn q_clique<G: Graph + ?Sized>(g: &G, v: Vertex, d: usize) -> Result<Option<Vec<Vertex>>> {
    if g.degree(v)? != d {
        return Ok(None);
    }
    for k in cliques_through(g, v, d)? {
        let mut full = 0;
        for &u in &k {
            if g.degree(u)? == d {
                full += 1;
            }
        }
        if (2..d).contains(&full) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhiRule {
    PVertex,
    QVertex,
    SItself,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiDecision {
    pub rule: PhiRule,
    pub chosen: Vertex,
    /// The clique that makes `chosen` a P- or Q-vertex.
    pub clique: Option<Vec<Vertex>>,
}

/// The running descent construction over a `d`-regular base graph.
#[derive(Debug, Clone)]
pub struct PhiEngine<G> {
    base: G,
    d: usize,
    removed: HashSet<Vertex>,
    order: Vec<Vertex>,
    low: BTreeMap<Vertex, usize>,
    p_vertices: BTreeSet<Vertex>,
    cursor: Vertex,
    decisions: Vec<PhiDecision>,
}

impl<G: Graph> PhiEngine<G> {
    pub fn new(base: G, d: usize) -> Result<Self> {
        if d < 4 {
            return Err(Error::Domain(format!("degree descent needs d >= 4, got {d}")));
        }
        Ok(Self {
            base,
            d,
            removed: HashSet::new(),
            order: Vec::new(),
            low: BTreeMap::new(),
            p_vertices: BTreeSet::new(),
            cursor: 0,
            decisions: Vec::new(),
        })
    }

    fn view(&self) -> PhiView<'_, G> {
        PhiView {
            base: &self.base,
            d: self.d,
            removed: &self.removed,
            low: &self.low,
        }
    }

    pub fn stage(&self) -> usize {
        self.order.len()
    }

    pub fn is_removed(&self, v: Vertex) -> bool {
        self.removed.contains(&v)
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.view().degree(v)
    }

    pub fn decisions(&self) -> &[PhiDecision] {
        &self.decisions
    }

    pub fn removed_in_order(&self) -> &[Vertex] {
        &self.order
    }

    fn s(&mut self) -> Result<Option<Vertex>> {
        while self.base.contains(self.cursor) && (self.removed.contains(&self.cursor) || self.low.contains_key(&self.cursor)) {
            self.cursor += 1;
        }
        if !self.base.contains(self.cursor) {
            return Ok(None);
        }
        let k = self.base.degree(self.cursor)?;
        if k != self.d {
            return Err(Error::NotRegular {
                d: self.d,
                vertex: self.cursor,
                degree: k,
            });
        }
        Ok(Some(self.cursor))
    }

    fn decide(&mut self) -> Result<Option<PhiDecision>> {
        let d = self.d;
        if let Some(&p) = self.p_vertices.iter().next() {
            let clique = p_clique(&self.view(), p, d)?;
            return Ok(Some(PhiDecision {
                rule: PhiRule::PVertex,
                chosen: p,
                clique,
            }));
        }
        let Some(s) = self.s()? else {
            return Ok(None);
        };
        let view = self.view();
        for &u in view.neighbors(s)?.iter() {
            if let Some(k) = q_clique(&view, u, d)? {
                return Ok(Some(PhiDecision {
                    rule: PhiRule::QVertex,
                    chosen: u,
                    clique: Some(k),
                }));
            }
        }
        Ok(Some(PhiDecision {
            rule: PhiRule::SItself,
            chosen: s,
            clique: None,
        }))
    }

    /// Runs one stage; `None` once no vertex of degree `d` is left.
    pub fn step(&mut self) -> Result<Option<&PhiDecision>> {
        let Some(decision) = self.decide()? else {
            return Ok(None);
        };
        let w = decision.chosen;
        if self.degree(w)? != self.d {
            return Err(Error::Invariant(format!("descent stage {}: chosen vertex {w} has degree below d", self.stage())));
        }
        let touched: Vec<Vertex> = self.view().neighbors(w)?.into_owned();
        for &u in &touched {
            let k = self.low.entry(u).or_insert(self.d);
            *k -= 1;
        }
        self.removed.insert(w);
        self.order.push(w);
        self.p_vertices.remove(&w);
        // P-status can only change within distance 2 of w
        let mut region: BTreeSet<Vertex> = touched.iter().copied().collect();
        for &u in &touched {
            region.extend(self.view().neighbors(u)?.iter().copied());
        }
        for v in region {
            if p_clique(&self.view(), v, self.d)?.is_some() {
                self.p_vertices.insert(v);
            } else {
                self.p_vertices.remove(&v);
            }
        }
        self.decisions.push(decision);
        Ok(self.decisions.last())
    }

    /// Whether `v` is removed, running stages as needed. Once `v` has degree
    /// below `d` it can never be chosen, so the answer is final.
    pub fn in_w(&mut self, v: Vertex, stage_budget: usize) -> Result<bool> {
        if !self.base.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        loop {
            if self.removed.contains(&v) {
                return Ok(true);
            }
            if self.low.contains_key(&v) {
                return Ok(false);
            }
            if self.stage() >= stage_budget {
                return Err(Error::Budget(stage_budget));
            }
            if self.step()?.is_none() {
                return Ok(false);
            }
        }
    }
}

/// Outcome of [`phi`] on a finite graph.
#[derive(Debug, Clone)]
pub struct PhiRun {
    pub w: VertexSet,
    pub decisions: Vec<PhiDecision>,
    /// `G - W`, relabelled in increasing order.
    pub remainder: FiniteGraph,
    /// Remainder vertex to input vertex.
    pub remainder_map: Vec<Vertex>,
}

/// Runs the descent stages to the end on a finite `d`-regular graph with no
/// `(d+1)`-clique and checks the result: `W` independent, the remainder of
/// maximum degree at most `d - 1` with no `d`-clique.
pub fn phi(g: &FiniteGraph, d: usize) -> Result<PhiRun> {
    if let Some(v) = g.vertices().find(|&v| g.deg(v) != d) {
        return Err(Error::NotRegular { d, vertex: v, degree: g.deg(v) });
    }
    if let Some(k) = find_clique(g, d + 1) {
        return Err(Error::ForbiddenClique(k));
    }
    let mut engine = PhiEngine::new(g, d)?;
    while engine.step()?.is_some() {}
    let w: VertexSet = engine.removed.iter().copied().collect();
    for &x in &w {
        if let Some(&y) = g.adj(x).iter().find(|y| w.contains(y)) {
            return Err(Error::Invariant(format!("descent removed adjacent vertices {x} and {y}")));
        }
    }
    let (remainder, remainder_map) = g.induced(g.vertices().filter(|v| !w.contains(v)));
    if let Some(v) = remainder.vertices().find(|&v| remainder.deg(v) >= d) {
        return Err(Error::Invariant(format!("vertex {} keeps degree {d} after descent", remainder_map[v])));
    }
    if let Some(k) = find_clique(&remainder, d) {
        let k: Vec<Vertex> = k.into_iter().map(|v| remainder_map[v]).collect();
        return Err(Error::Invariant(format!("descent left the {d}-clique {k:?}")));
    }
    Ok(PhiRun {
        w,
        decisions: engine.decisions,
        remainder,
        remainder_map,
    })
}

/// Whether `h` is a connected graph built from `d`-cliques by repeatedly
/// joining a fresh clique through one edge to a vertex with no outside
/// neighbor yet. Returns the cliques.
pub fn recognize_clique_tree(h: &FiniteGraph, d: usize) -> Option<Vec<VertexSet>> {
    if d < 2 || h.n() < d || !h.is_connected() {
        return None;
    }
    let mut owner = vec![usize::MAX; h.n()];
    let mut cliques: Vec<VertexSet> = Vec::new();
    for v in h.vertices() {
        if owner[v] != usize::MAX {
            continue;
        }
        if !(d - 1..=d).contains(&h.deg(v)) {
            return None;
        }
        let found = cliques_through(h, v, d).ok()?;
        let [k] = found.as_slice() else {
            return None;
        };
        for &u in k {
            if owner[u] != usize::MAX {
                return None;
            }
            owner[u] = cliques.len();
        }
        cliques.push(k.iter().copied().collect());
    }
    // outside edges: at most one per vertex, forming a tree on the cliques
    let mut outside = 0;
    for v in h.vertices() {
        let extra = h.adj(v).iter().filter(|&&u| owner[u] != owner[v]).count();
        if extra > 1 {
            return None;
        }
        outside += extra;
    }
    (outside / 2 + 1 == cliques.len()).then_some(cliques)
}

/// One level of the descent pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentLevel {
    pub index: usize,
    /// Degree handled at this level, `d - index`.
    pub degree: usize,
    /// Vertices of the regularized graph this level ran on.
    pub regularized_vertices: usize,
    /// Size of the removed set at this level.
    pub removed: usize,
}

#[derive(Debug, Clone)]
pub struct Descent {
    /// `K(i)` for `i < d - 3`, in input vertex ids.
    pub k: Vec<VertexSet>,
    /// Input vertices outside every `K(i)`.
    pub g3_vertices: VertexSet,
    /// The input restricted to `g3_vertices`, relabelled in increasing order.
    pub g3: FiniteGraph,
    pub levels: Vec<DescentLevel>,
}

/// Follows the input vertices through `d - 3` rounds of regularization and
/// descent and sorts them into the classes `K(i)` and the rest.
///
/// Each level keeps only the components that still contain an input vertex:
/// the decisions inside one component never depend on another, because
/// every rule picks the least candidate and candidates are found locally.
pub fn descend_pipeline(g: &FiniteGraph, d: usize) -> Result<Descent> {
    check_degree_bound(g, d)?;
    if d < 3 {
        return Err(Error::Domain(format!("the descent pipeline needs d >= 3, got {d}")));
    }
    if let Some(k) = find_clique(g, d + 1) {
        return Err(Error::ForbiddenClique(k));
    }
    let mut k_sets = vec![VertexSet::new(); d - 3];
    let mut levels = Vec::new();
    // current graph and where every input vertex sits in it
    let mut h = g.clone();
    let mut at: Vec<Option<Vertex>> = g.vertices().map(Some).collect();
    for i in 0..d.saturating_sub(3) {
        let dd = d - i;
        let projected = h.n().checked_mul(1 << dd).filter(|&n| n <= MAX_LEVEL_VERTICES);
        if projected.is_none() {
            return Err(Error::Domain(format!(
                "descent level {i} would regularize {} vertices to degree {dd}; limit is {MAX_LEVEL_VERTICES}",
                h.n()
            )));
        }
        let reg = regularize(&h, dd)?;
        let images: Vec<Option<Vertex>> = at.iter().map(|a| a.map(|v| reg.embed(v))).collect();
        let (part, part_map) = keep_touched(reg.target(), &images);
        info!("descent level {i}: degree {dd}, {} of {} regularized vertices", part.n(), reg.target().n());
        let run = phi(&part, dd)?;
        let mut next_at = vec![None; at.len()];
        for (v, img) in images.iter().enumerate() {
            let Some(t) = *img else { continue };
            let local = part_map.binary_search(&t).expect("images lie in kept components");
            if run.w.contains(&local) {
                k_sets[i].insert(v);
            } else {
                next_at[v] = Some(run.remainder_map.binary_search(&local).expect("survivors lie in the remainder"));
            }
        }
        levels.push(DescentLevel {
            index: i,
            degree: dd,
            regularized_vertices: part.n(),
            removed: run.w.len(),
        });
        debug!("descent level {i}: |K| = {}", k_sets[i].len());
        let (next, next_map) = keep_touched(&run.remainder, &next_at);
        at = next_at.iter().map(|a| a.map(|t| next_map.binary_search(&t).expect("kept"))).collect();
        h = next;
    }
    let g3_vertices: VertexSet = g.vertices().filter(|&v| at[v].is_some()).collect();
    let (g3, _) = g.induced(g3_vertices.iter().copied());
    Ok(Descent {
        k: k_sets,
        g3_vertices,
        g3,
        levels,
    })
}

/// The components of `g` containing one of `marks`, relabelled in
/// increasing order, with the new-to-old map.
fn keep_touched(g: &FiniteGraph, marks: &[Option<Vertex>]) -> (FiniteGraph, Vec<Vertex>) {
    let mut keep = vec![false; g.n()];
    let mut stack: Vec<Vertex> = marks.iter().flatten().copied().collect();
    for &v in &stack {
        keep[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &u in g.adj(v) {
            if !keep[u] {
                keep[u] = true;
                stack.push(u);
            }
        }
    }
    g.induced(g.vertices().filter(|&v| keep[v]))
}

/// A proper coloring of `g` with at most `d` colors, for `g` of maximum
/// degree at most `d` with no `(d+1)`-clique (and no odd cycle when
/// `d = 2`).
///
/// For `d >= 3` the colors are: `0..3` from the cubic construction on what
/// the descent leaves, and `3 + i` on `K(i)`. Components are processed
/// separately to keep the regularized levels small.
pub fn brooks_color(g: &FiniteGraph, d: usize) -> Result<Coloring> {
    check_degree_bound(g, d)?;
    match d {
        0 => {
            if g.n() > 0 {
                return Err(Error::ForbiddenClique(vec![0]));
            }
            return Ok(Coloring::new(0));
        }
        1 => {
            if let Some((u, v)) = g.edges().next() {
                return Err(Error::ForbiddenClique(vec![u, v]));
            }
            return Coloring::from_vec(1, vec![0; g.n()]);
        }
        2 => {
            if let Some(c) = find_odd_cycle(g) {
                return Err(Error::OddCycle(c));
            }
            return color_degree_two_finite(g);
        }
        _ => {}
    }
    if let Some(k) = find_clique(g, d + 1) {
        return Err(Error::ForbiddenClique(k));
    }
    let mut out = Coloring::new(d);
    for comp in g.components() {
        let (sub, map) = g.induced(comp.iter().copied());
        let descent = descend_pipeline(&sub, d)?;
        for (i, ks) in descent.k.iter().enumerate() {
            for &v in ks {
                out.set(map[v], 3 + i)?;
            }
        }
        let three = run_trace(&descent.g3)?;
        for (j, &v) in descent.g3_vertices.iter().enumerate() {
            let c = three.coloring.get(j).ok_or(Error::IncompleteColoring(map[v]))?;
            out.set(map[v], c)?;
        }
    }
    Ok(out)
}
