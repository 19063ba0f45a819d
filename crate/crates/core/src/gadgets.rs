//! Graphs built from a pair of injections with disjoint ranges, whose proper
//! colorings separate the two ranges.
//!
//! * `H2` (maximum degree 2): `f(m) = n` joins `a_n` and `b_n` through `c_m`
//!   (even path), `g(m) = n` through `c'_m - d'_m` (odd path).
//! * `Hd` (maximum degree `d`): cliques force `a_n` and `b_n` to the same
//!   color when `f(m) = n` and to different colors when `g(m) = n`.
//! * The ladder (maximum degree 2): column `n` is a pair of rails closed off
//!   at the row where `n` enters the range of `f` (odd cycle length from
//!   `l_{n,0}` to `r_{n,0}`) or of `g` (even), so vertex degrees depend on
//!   `f` and `g` alone.
//!
//! Vertex ids:
//! * `H2`: `5i + {a, b, c, c', d'}` for `i < N`.
//! * `Hd`: blocks of `2d + 1` per index `i`: `a_i, b_i`, the `d - 1`
//!   vertices of `G_i`, the `d - 1` vertices of `G'_i`, then `e'_i`.
//! * ladder: `3(nN + k) + {l, m, r}`; the unbounded ladder uses the Cantor
//!   pairing of `(n, k)` in place of `nN + k`.
//!
//! Vertices for indices where `f` or `g` is undefined stay isolated.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{find_conflict, Coloring, FiniteGraph, OracleGraph, Vertex, VertexSet};

/// Finite prefixes of two injections with disjoint ranges, below a horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectionPair {
    f: Vec<usize>,
    g: Vec<usize>,
    horizon: usize,
}

impl InjectionPair {
    pub fn new(f: Vec<usize>, g: Vec<usize>, horizon: usize) -> Result<Self> {
        for (name, seq) in [("f", &f), ("g", &g)] {
            if seq.len() > horizon {
                return Err(Error::Input(format!("{name} has {} values, beyond the horizon {horizon}", seq.len())));
            }
            if let Some(&v) = seq.iter().find(|&&v| v >= horizon) {
                return Err(Error::Input(format!("{name} takes the value {v}, beyond the horizon {horizon}")));
            }
            let mut sorted = seq.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Input(format!("{name} is not injective: {} repeats", w[0])));
            }
        }
        if let Some(&v) = f.iter().find(|v| g.contains(v)) {
            return Err(Error::Input(format!("the ranges of f and g share {v}")));
        }
        Ok(Self { f, g, horizon })
    }

    pub fn f(&self) -> &[usize] {
        &self.f
    }

    pub fn g(&self) -> &[usize] {
        &self.g
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn range_f(&self) -> VertexSet {
        self.f.iter().copied().collect()
    }

    pub fn range_g(&self) -> VertexSet {
        self.g.iter().copied().collect()
    }

    /// The first `m` with `f(m) = n` or `g(m) = n`, and which one it was.
    fn hit(&self, n: usize) -> Option<(usize, Side)> {
        let in_f = self.f.iter().position(|&v| v == n).map(|m| (m, Side::F));
        let in_g = self.g.iter().position(|&v| v == n).map(|m| (m, Side::G));
        in_f.or(in_g)
    }

    /// Whether `x` separates the ranges: `ran f` inside, `ran g` outside.
    pub fn check_separation(&self, x: &VertexSet) -> std::result::Result<(), String> {
        if let Some(n) = self.f.iter().find(|n| !x.contains(n)) {
            return Err(format!("{n} is in the range of f but not in X"));
        }
        if let Some(n) = self.g.iter().find(|n| x.contains(n)) {
            return Err(format!("{n} is in the range of g and in X"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    F,
    G,
}

/// Role of a gadget vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    A(usize),
    B(usize),
    C(usize),
    CPrime(usize),
    DPrime(usize),
    /// Member `j` of the clique `G_m`.
    Clique { m: usize, j: usize },
    /// Member `j` of the clique `G'_m`.
    CliquePrime { m: usize, j: usize },
    EPrime(usize),
    L { n: usize, k: usize },
    M { n: usize, k: usize },
    R { n: usize, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    H2,
    Hd(usize),
    Ladder,
}

/// Vertex numbering of a gadget; `horizon = None` for unbounded oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub kind: GadgetKind,
    pub horizon: Option<usize>,
}

impl Layout {
    pub fn vertex(&self, label: Label) -> Vertex {
        match (self.kind, label) {
            (GadgetKind::H2, Label::A(i)) => 5 * i,
            (GadgetKind::H2, Label::B(i)) => 5 * i + 1,
            (GadgetKind::H2, Label::C(i)) => 5 * i + 2,
            (GadgetKind::H2, Label::CPrime(i)) => 5 * i + 3,
            (GadgetKind::H2, Label::DPrime(i)) => 5 * i + 4,
            (GadgetKind::Hd(d), l) => {
                let block = 2 * d + 1;
                match l {
                    Label::A(i) => block * i,
                    Label::B(i) => block * i + 1,
                    Label::Clique { m, j } => block * m + 2 + j,
                    Label::CliquePrime { m, j } => block * m + 2 + (d - 1) + j,
                    Label::EPrime(m) => block * m + 2 * d,
                    _ => panic!("label {l:?} does not occur in Hd"),
                }
            }
            (GadgetKind::Ladder, Label::L { n, k }) => 3 * self.cell(n, k),
            (GadgetKind::Ladder, Label::M { n, k }) => 3 * self.cell(n, k) + 1,
            (GadgetKind::Ladder, Label::R { n, k }) => 3 * self.cell(n, k) + 2,
            (kind, l) => panic!("label {l:?} does not occur in {kind:?}"),
        }
    }

    pub fn label(&self, v: Vertex) -> Label {
        match self.kind {
            GadgetKind::H2 => {
                let i = v / 5;
                [Label::A(i), Label::B(i), Label::C(i), Label::CPrime(i), Label::DPrime(i)][v % 5]
            }
            GadgetKind::Hd(d) => {
                let block = 2 * d + 1;
                let (i, r) = (v / block, v % block);
                match r {
                    0 => Label::A(i),
                    1 => Label::B(i),
                    r if r < d + 1 => Label::Clique { m: i, j: r - 2 },
                    r if r < 2 * d => Label::CliquePrime { m: i, j: r - (d + 1) },
                    _ => Label::EPrime(i),
                }
            }
            GadgetKind::Ladder => {
                let (n, k) = self.uncell(v / 3);
                match v % 3 {
                    0 => Label::L { n, k },
                    1 => Label::M { n, k },
                    _ => Label::R { n, k },
                }
            }
        }
    }

    fn cell(&self, n: usize, k: usize) -> usize {
        match self.horizon {
            Some(h) => n * h + k,
            None => (n + k) * (n + k + 1) / 2 + k,
        }
    }

    fn uncell(&self, c: usize) -> (usize, usize) {
        match self.horizon {
            Some(h) => (c / h, c % h),
            None => {
                // largest s with s(s+1)/2 <= c
                let mut s = (((8 * c + 1) as f64).sqrt() as usize).saturating_sub(1) / 2;
                while (s + 1) * (s + 2) / 2 <= c {
                    s += 1;
                }
                while s * (s + 1) / 2 > c {
                    s -= 1;
                }
                let k = c - s * (s + 1) / 2;
                (s - k, k)
            }
        }
    }

    /// Number of vertices, for bounded layouts.
    pub fn size(&self) -> Option<usize> {
        let h = self.horizon?;
        Some(match self.kind {
            GadgetKind::H2 => 5 * h,
            GadgetKind::Hd(d) => (2 * d + 1) * h,
            GadgetKind::Ladder => 3 * h * h,
        })
    }
}

/// A gadget graph with its injection pair and vertex layout.
#[derive(Debug, Clone)]
pub struct GadgetGraph<G> {
    pub graph: G,
    pub pair: InjectionPair,
    pub layout: Layout,
}

impl<G> GadgetGraph<G> {
    pub fn vertex(&self, label: Label) -> Vertex {
        self.layout.vertex(label)
    }

    pub fn label(&self, v: Vertex) -> Label {
        self.layout.label(v)
    }
}

fn h2_edges(p: &InjectionPair, lay: &Layout) -> Vec<(Vertex, Vertex)> {
    let mut e = Vec::new();
    for (m, &n) in p.f.iter().enumerate() {
        let c = lay.vertex(Label::C(m));
        e.push((lay.vertex(Label::A(n)), c));
        e.push((lay.vertex(Label::B(n)), c));
    }
    for (m, &k) in p.g.iter().enumerate() {
        let (c, d) = (lay.vertex(Label::CPrime(m)), lay.vertex(Label::DPrime(m)));
        e.push((lay.vertex(Label::A(k)), c));
        e.push((lay.vertex(Label::B(k)), d));
        e.push((c, d));
    }
    e
}

fn hd_edges(p: &InjectionPair, lay: &Layout, d: usize) -> Vec<(Vertex, Vertex)> {
    let mut e = Vec::new();
    let clique = |m: usize, prime: bool| -> Vec<Vertex> {
        (0..d - 1)
            .map(|j| lay.vertex(if prime { Label::CliquePrime { m, j } } else { Label::Clique { m, j } }))
            .collect()
    };
    let push_clique = |e: &mut Vec<(Vertex, Vertex)>, k: &[Vertex]| {
        for (i, &u) in k.iter().enumerate() {
            for &v in &k[i + 1..] {
                e.push((u, v));
            }
        }
    };
    for (m, &n) in p.f.iter().enumerate() {
        let gm = clique(m, false);
        push_clique(&mut e, &gm);
        for &u in &gm {
            e.push((lay.vertex(Label::A(n)), u));
            e.push((lay.vertex(Label::B(n)), u));
        }
    }
    for (m, &n) in p.g.iter().enumerate() {
        let gm = clique(m, true);
        let ep = lay.vertex(Label::EPrime(m));
        push_clique(&mut e, &gm);
        for &u in &gm {
            e.push((ep, u));
            e.push((lay.vertex(Label::A(n)), u));
        }
        e.push((ep, lay.vertex(Label::B(n))));
    }
    e
}

/// Neighbors of a ladder vertex, computed from the pair alone.
fn ladder_neighbors(p: &InjectionPair, lay: &Layout, v: Vertex) -> Vec<Vertex> {
    let label = lay.label(v);
    let (n, k) = match label {
        Label::L { n, k } | Label::M { n, k } | Label::R { n, k } => (n, k),
        _ => unreachable!("ladder labels"),
    };
    let hit = p.hit(n);
    let stop = hit.map(|(t, _)| t);
    let within = |row: usize| lay.horizon.is_none_or(|h| row < h);
    let mut out = Vec::new();
    match label {
        Label::L { .. } | Label::R { .. } => {
            let rail = |row| match label {
                Label::L { .. } => lay.vertex(Label::L { n, k: row }),
                _ => lay.vertex(Label::R { n, k: row }),
            };
            if k >= 1 && stop.is_none_or(|t| k - 1 < t) {
                out.push(rail(k - 1));
            }
            if stop.is_none_or(|t| k < t) && within(k + 1) {
                out.push(rail(k + 1));
            }
            match hit {
                Some((t, Side::F)) if t == k => out.push(lay.vertex(match label {
                    Label::L { .. } => Label::R { n, k },
                    _ => Label::L { n, k },
                })),
                Some((t, Side::G)) if t == k => out.push(lay.vertex(Label::M { n, k })),
                _ => {}
            }
        }
        Label::M { .. } => {
            if hit == Some((k, Side::G)) {
                out.push(lay.vertex(Label::L { n, k }));
                out.push(lay.vertex(Label::R { n, k }));
            }
        }
        _ => unreachable!(),
    }
    out.sort_unstable();
    out
}

/// Degree of a ladder vertex from the pair alone, without building the
/// graph.
pub fn ladder_degree(p: &InjectionPair, lay: &Layout, v: Vertex) -> usize {
    let (n, k) = match lay.label(v) {
        Label::L { n, k } | Label::M { n, k } | Label::R { n, k } => (n, k),
        _ => panic!("not a ladder vertex"),
    };
    let hit = p.hit(n);
    if let Label::M { .. } = lay.label(v) {
        return if hit == Some((k, Side::G)) { 2 } else { 0 };
    }
    let t = hit.map_or(usize::MAX, |(t, _)| t);
    let below = usize::from(k >= 1 && k <= t);
    let above = usize::from(k < t && lay.horizon.is_none_or(|h| k + 1 < h));
    let across = usize::from(k == t);
    below + above + across
}

pub fn build_h2(p: &InjectionPair) -> GadgetGraph<FiniteGraph> {
    let layout = Layout {
        kind: GadgetKind::H2,
        horizon: Some(p.horizon),
    };
    let graph = FiniteGraph::from_edges(layout.size().unwrap(), &h2_edges(p, &layout)).expect("H2 edges are simple");
    GadgetGraph {
        graph,
        pair: p.clone(),
        layout,
    }
}

pub fn build_hd(p: &InjectionPair, d: usize) -> Result<GadgetGraph<FiniteGraph>> {
    if d < 3 {
        return Err(Error::Input(format!("Hd needs d >= 3, got {d}")));
    }
    let layout = Layout {
        kind: GadgetKind::Hd(d),
        horizon: Some(p.horizon),
    };
    let graph = FiniteGraph::from_edges(layout.size().unwrap(), &hd_edges(p, &layout, d))?;
    Ok(GadgetGraph {
        graph,
        pair: p.clone(),
        layout,
    })
}

pub fn build_ladder(p: &InjectionPair) -> GadgetGraph<FiniteGraph> {
    let layout = Layout {
        kind: GadgetKind::Ladder,
        horizon: Some(p.horizon),
    };
    let n = layout.size().unwrap();
    let adj = (0..n).map(|v| ladder_neighbors(p, &layout, v)).collect();
    GadgetGraph {
        graph: FiniteGraph::from_adjacency(adj).expect("ladder edges are simple"),
        pair: p.clone(),
        layout,
    }
}

/// Unbounded variants over all indices; `f` and `g` stay finite prefixes
/// and later indices are left untouched.
pub fn build_h2_oracle(p: &InjectionPair) -> GadgetGraph<OracleGraph> {
    oracle_from_edges(p, GadgetKind::H2, h2_edges(p, &Layout { kind: GadgetKind::H2, horizon: None }))
}

pub fn build_hd_oracle(p: &InjectionPair, d: usize) -> Result<GadgetGraph<OracleGraph>> {
    if d < 3 {
        return Err(Error::Input(format!("Hd needs d >= 3, got {d}")));
    }
    let lay = Layout {
        kind: GadgetKind::Hd(d),
        horizon: None,
    };
    Ok(oracle_from_edges(p, GadgetKind::Hd(d), hd_edges(p, &lay, d)))
}

fn oracle_from_edges(p: &InjectionPair, kind: GadgetKind, edges: Vec<(Vertex, Vertex)>) -> GadgetGraph<OracleGraph> {
    // the H2 and Hd layouts do not depend on the horizon, so the finitely
    // many edges are fixed and every other vertex is isolated
    let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for (u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    GadgetGraph {
        graph: OracleGraph::new(None, move |v| adj.get(&v).cloned().unwrap_or_default()),
        pair: p.clone(),
        layout: Layout { kind, horizon: None },
    }
}

pub fn build_ladder_oracle(p: &InjectionPair) -> GadgetGraph<OracleGraph> {
    let layout = Layout {
        kind: GadgetKind::Ladder,
        horizon: None,
    };
    let pair = p.clone();
    GadgetGraph {
        graph: OracleGraph::new(None, move |v| ladder_neighbors(&pair, &layout, v)),
        pair: p.clone(),
        layout,
    }
}

/// The set `X` read off a proper coloring: for `H2` and `Hd` the `n` with
/// `c(a_n) = c(b_n)`, for the ladder the `n` with `c(l_{n,0}) != c(r_{n,0})`.
pub fn extract_separator(gg: &GadgetGraph<FiniteGraph>, c: &Coloring) -> Result<VertexSet> {
    if let Some((u, v)) = find_conflict(&gg.graph, c, gg.graph.vertices())? {
        return Err(Error::Input(format!("coloring is not proper on the edge {u} -- {v}")));
    }
    separator_with(&gg.layout, gg.pair.horizon, |v| c.get(v).ok_or(Error::IncompleteColoring(v)))
}

/// [`extract_separator`] for any color lookup, over `n < horizon`.
pub fn separator_with<F>(layout: &Layout, horizon: usize, mut color: F) -> Result<VertexSet>
where
    F: FnMut(Vertex) -> Result<usize>,
{
    let mut x = VertexSet::new();
    for n in 0..horizon {
        let keep = match layout.kind {
            GadgetKind::H2 | GadgetKind::Hd(_) => color(layout.vertex(Label::A(n)))? == color(layout.vertex(Label::B(n)))?,
            GadgetKind::Ladder => {
                color(layout.vertex(Label::L { n, k: 0 }))? != color(layout.vertex(Label::R { n, k: 0 }))?
            }
        };
        if keep {
            x.insert(n);
        }
    }
    Ok(x)
}
