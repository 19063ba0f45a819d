//! Stage-wise 3-coloring of 3-regular graphs without 4-cliques.
//!
//! Stage `i` removes one vertex `w_i` of degree 3 from the current graph
//! `G_i`. The removed set `W` is independent, and what is left at the end
//! has maximum degree 2 and consists of line segments, so `W` takes color 0
//! and each segment is 2-colored with `{1, 2}` from its least endpoint.
//!
//! Only vertices next to `W` have degree below 3 in `G_i`, so each stage
//! inspects a region of size `O(i)` and the construction runs unchanged on
//! infinite graphs given by a neighbor oracle.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap, HashSet};

use log::{debug, warn};

use crate::circletree::{
    germ_from, p_vertex_circles, q_vertex_circle, recognize_circle_tree, CircleTreeWitness, Germ,
};
use crate::color::{check_degree_bound, find_clique};
use crate::error::{Error, Result};
use crate::graph::{materialize, Coloring, FiniteGraph, Graph, Vertex, VertexSet};
use crate::regular::{regularize, RegularEmbedding};

/// `G_i` seen through the base graph, the removed set and the current
/// degrees of the vertices next to it; optionally with one more vertex
/// deleted.
#[derive(Debug, Clone, Copy)]
pub struct StageView<'a, G: ?Sized> {
    base: &'a G,
    removed: &'a HashSet<Vertex>,
    low: &'a BTreeMap<Vertex, usize>,
    also: Option<Vertex>,
}

impl<'a, G: Graph + ?Sized> StageView<'a, G> {
    pub fn without(&self, v: Vertex) -> Self {
        Self { also: Some(v), ..*self }
    }

    fn gone(&self, v: Vertex) -> bool {
        self.removed.contains(&v) || self.also == Some(v)
    }
}

impl<G: Graph + ?Sized> Graph for StageView<'_, G> {
    fn neighbors(&self, v: Vertex) -> Result<Cow<'_, [Vertex]>> {
        if self.gone(v) {
            return Err(Error::UnknownVertex(v));
        }
        let all = self.base.neighbors(v)?;
        if all.len() != 3 {
            return Err(Error::NotRegular {
                d: 3,
                vertex: v,
                degree: all.len(),
            });
        }
        Ok(Cow::Owned(all.iter().copied().filter(|&u| !self.gone(u)).collect()))
    }

    fn degree(&self, v: Vertex) -> Result<usize> {
        if self.also.is_some() {
            return Ok(self.neighbors(v)?.len());
        }
        if self.gone(v) {
            return Err(Error::UnknownVertex(v));
        }
        match self.low.get(&v) {
            Some(&d) => Ok(d),
            None => {
                let d = self.base.degree(v)?;
                if d != 3 {
                    return Err(Error::NotRegular { d: 3, vertex: v, degree: d });
                }
                Ok(3)
            }
        }
    }

    fn contains(&self, v: Vertex) -> bool {
        self.base.contains(v) && !self.gone(v)
    }

    fn bound(&self) -> Option<usize> {
        self.base.bound()
    }
}

/// Snapshot of the construction before stage `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageState {
    pub i: usize,
    /// `w_0 .. w_{i-1}`.
    pub removed: Vec<Vertex>,
    /// Every vertex of `G_i` with degree below 3, with its degree.
    pub low: BTreeMap<Vertex, usize>,
    /// Least vertex of degree 3 in `G_i`.
    pub s: Option<Vertex>,
}

impl StageState {
    /// The state reached after removing `removed` (in that order) from `g`.
    pub fn from_removed<G: Graph + ?Sized>(g: &G, removed: &[Vertex]) -> Result<Self> {
        let mut engine = StageEngine::new(g);
        for &w in removed {
            engine.remove(w)?;
        }
        let s = engine.s()?;
        Ok(StageState {
            i: removed.len(),
            removed: removed.to_vec(),
            low: engine.low.clone(),
            s,
        })
    }
}

/// Which case of the stage rule produced `w_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    PVertex,
    GermCircleTree,
    GermDeleteM,
    QVertex,
    SItself,
}

impl Rule {
    pub const ALL: [Rule; 5] = [Rule::PVertex, Rule::GermCircleTree, Rule::GermDeleteM, Rule::QVertex, Rule::SItself];

    pub fn tag(self) -> &'static str {
        match self {
            Rule::PVertex => "P",
            Rule::GermCircleTree => "germ-tree",
            Rule::GermDeleteM => "germ-m",
            Rule::QVertex => "Q",
            Rule::SItself => "s",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.tag() == tag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// The circle through the P-vertex, starting with it.
    PCircle(Vec<Vertex>),
    Germ {
        germ: Germ,
        /// The least circle-tree component of `G_i - m`, when there is one.
        tree: Option<(VertexSet, CircleTreeWitness)>,
    },
    QCircle(Vec<Vertex>),
    None,
}

impl Evidence {
    /// The evidence as plain vertex lists, for trace files.
    pub fn vertex_lists(&self) -> Vec<Vec<Vertex>> {
        match self {
            Evidence::PCircle(c) | Evidence::QCircle(c) => vec![c.clone()],
            Evidence::Germ { germ, tree } => {
                let mut out = vec![germ.path().to_vec()];
                if let Some((t, _)) = tree {
                    out.push(t.iter().copied().collect());
                }
                out
            }
            Evidence::None => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageDecision {
    pub rule: Rule,
    pub chosen: Vertex,
    pub evidence: Evidence,
    /// Set when the circle-tree branch found no neighbor of `m` inside the
    /// component and fell back to one outside it. This should never happen.
    pub fallback: bool,
}

/// The decisions of a run, in stage order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DeletionTrace {
    pub decisions: Vec<StageDecision>,
}

impl DeletionTrace {
    pub fn len(&self) -> usize {
        self.decisions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decisions.is_empty()
    }

    pub fn chosen(&self) -> Vec<Vertex> {
        self.decisions.iter().map(|d| d.chosen).collect()
    }

    pub fn rule_counts(&self) -> HashMap<Rule, usize> {
        let mut out = HashMap::new();
        for d in &self.decisions {
            *out.entry(d.rule).or_insert(0) += 1;
        }
        out
    }
}

/// The decision for the stage described by `state`, or `None` when no
/// vertex of degree 3 is left.
pub fn next_w<G: Graph + ?Sized>(g: &G, state: &StageState) -> Result<Option<StageDecision>> {
    let removed: HashSet<Vertex> = state.removed.iter().copied().collect();
    let view = StageView {
        base: g,
        removed: &removed,
        low: &state.low,
        also: None,
    };
    match state.s {
        Some(s) => decide(&view, s).map(Some),
        None => Ok(None),
    }
}

fn decide<G: Graph + ?Sized>(view: &StageView<'_, G>, s: Vertex) -> Result<StageDecision> {
    // rule 1: least P-vertex
    let twos: VertexSet = view.low.iter().filter(|&(_, &d)| d == 2).map(|(&v, _)| v).collect();
    if let Some((p, circle)) = p_vertex_circles(view, &twos)?.into_iter().next() {
        return Ok(StageDecision {
            rule: Rule::PVertex,
            chosen: p,
            evidence: Evidence::PCircle(circle),
            fallback: false,
        });
    }
    // rule 2: the minimal germ starting below s
    if let Some(germ) = least_germ_below(view, s)? {
        let m = germ.last();
        let l = germ.penultimate();
        let others: Vec<Vertex> = view.neighbors(m)?.iter().copied().filter(|&u| u != l).collect();
        return Ok(match has_circle_tree_component(view, m)? {
            Some((t, witness)) => {
                let inside = others.iter().copied().find(|u| t.contains(u));
                let fallback = inside.is_none();
                if fallback {
                    warn!("circle-tree branch: no neighbor of {m} in the component; falling back");
                }
                StageDecision {
                    rule: Rule::GermCircleTree,
                    chosen: inside.unwrap_or(others[0]),
                    evidence: Evidence::Germ {
                        germ,
                        tree: Some((t, witness)),
                    },
                    fallback,
                }
            }
            None => StageDecision {
                rule: Rule::GermDeleteM,
                chosen: m,
                evidence: Evidence::Germ { germ, tree: None },
                fallback: false,
            },
        });
    }
    // rule 3: least Q-vertex next to s, else s
    for &u in view.neighbors(s)?.iter() {
        if let Some(circle) = q_vertex_circle(view, u)? {
            return Ok(StageDecision {
                rule: Rule::QVertex,
                chosen: u,
                evidence: Evidence::QCircle(circle),
                fallback: false,
            });
        }
    }
    Ok(StageDecision {
        rule: Rule::SItself,
        chosen: s,
        evidence: Evidence::None,
        fallback: false,
    })
}

fn least_germ_below<G: Graph + ?Sized>(view: &StageView<'_, G>, s: Vertex) -> Result<Option<Germ>> {
    for (&a, &d) in view.low.range(..s) {
        if d == 0 {
            continue;
        }
        for &b in view.neighbors(a)?.iter() {
            if let Some(germ) = germ_from(view, a, b)? {
                return Ok(Some(germ));
            }
        }
    }
    Ok(None)
}

/// The least circle-tree component of `H = G_i - m`, with its witness.
///
/// Components are grown from the degree-2 vertices of `H`; a component that
/// outgrows three times the number of degree-2 vertices of `H` cannot be a
/// circle-tree and is abandoned without exploring the rest of it.
pub fn has_circle_tree_component<G: Graph + ?Sized>(
    view: &StageView<'_, G>,
    m: Vertex,
) -> Result<Option<(VertexSet, CircleTreeWitness)>> {
    let h = view.without(m);
    let mut twos: VertexSet = VertexSet::new();
    for &v in view.low.keys() {
        if v != m && h.degree(v)? == 2 {
            twos.insert(v);
        }
    }
    for &u in view.neighbors(m)?.iter() {
        if h.degree(u)? == 2 {
            twos.insert(u);
        }
    }
    least_circle_tree(&h, &twos)
}

/// The least circle-tree component among those meeting `twos`, which must
/// hold every degree-2 vertex of `g`.
fn least_circle_tree<G: Graph + ?Sized>(g: &G, twos: &VertexSet) -> Result<Option<(VertexSet, CircleTreeWitness)>> {
    let limit = 3 * twos.len();
    let mut seen: HashSet<Vertex> = HashSet::new();
    let mut best: Option<(VertexSet, CircleTreeWitness)> = None;
    for &x in twos {
        if seen.contains(&x) {
            continue;
        }
        let (explored, closed) = grow(g, x, limit)?;
        seen.extend(explored.iter().copied());
        if !closed {
            continue;
        }
        if best.as_ref().is_some_and(|(b, _)| b.first() < explored.first()) {
            continue;
        }
        let (fg, map) = materialize(g, &explored)?;
        if let Some(w) = recognize_circle_tree(&fg) {
            best = Some((explored, w.relabel(&map)));
        }
    }
    Ok(best)
}

/// Grows `N_n(x)` until it is closed or has more than `limit` vertices.
fn grow<G: Graph + ?Sized>(g: &G, x: Vertex, limit: usize) -> Result<(VertexSet, bool)> {
    let mut seen = VertexSet::from([x]);
    let mut frontier = vec![x];
    while !frontier.is_empty() {
        if seen.len() > limit {
            return Ok((seen, false));
        }
        let mut next = Vec::new();
        for &v in &frontier {
            for &u in g.neighbors(v)?.iter() {
                if seen.insert(u) {
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    let closed = seen.len() <= limit;
    Ok((seen, closed))
}

/// The running construction over a 3-regular base graph.
#[derive(Debug, Clone)]
pub struct StageEngine<G> {
    base: G,
    order: Vec<Vertex>,
    removed: HashSet<Vertex>,
    low: BTreeMap<Vertex, usize>,
    cursor: Vertex,
    decisions: Vec<StageDecision>,
}

impl<G: Graph> StageEngine<G> {
    pub fn new(base: G) -> Self {
        Self {
            base,
            order: Vec::new(),
            removed: HashSet::new(),
            low: BTreeMap::new(),
            cursor: 0,
            decisions: Vec::new(),
        }
    }

    pub fn base(&self) -> &G {
        &self.base
    }

    /// Index of the next stage.
    pub fn stage(&self) -> usize {
        self.order.len()
    }

    pub fn view(&self) -> StageView<'_, G> {
        StageView {
            base: &self.base,
            removed: &self.removed,
            low: &self.low,
            also: None,
        }
    }

    pub fn is_removed(&self, v: Vertex) -> bool {
        self.removed.contains(&v)
    }

    pub fn removed_in_order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn low(&self) -> &BTreeMap<Vertex, usize> {
        &self.low
    }

    pub fn trace(&self) -> DeletionTrace {
        DeletionTrace {
            decisions: self.decisions.clone(),
        }
    }

    pub fn state(&mut self) -> Result<StageState> {
        Ok(StageState {
            i: self.stage(),
            removed: self.order.clone(),
            low: self.low.clone(),
            s: self.s()?,
        })
    }

    /// Least vertex of degree 3 in the current graph. The cursor only moves
    /// forward because degrees never increase.
    pub fn s(&mut self) -> Result<Option<Vertex>> {
        while self.base.contains(self.cursor) && (self.removed.contains(&self.cursor) || self.low.contains_key(&self.cursor)) {
            self.cursor += 1;
        }
        if !self.base.contains(self.cursor) {
            return Ok(None);
        }
        let d = self.base.degree(self.cursor)?;
        if d != 3 {
            return Err(Error::NotRegular {
                d: 3,
                vertex: self.cursor,
                degree: d,
            });
        }
        Ok(Some(self.cursor))
    }

    fn remove(&mut self, w: Vertex) -> Result<()> {
        if self.removed.contains(&w) {
            return Err(Error::Invariant(format!("vertex {w} removed twice")));
        }
        for &u in self.base.neighbors(w)?.iter() {
            if !self.removed.contains(&u) {
                let d = self.low.entry(u).or_insert(3);
                *d -= 1;
            }
        }
        self.low.remove(&w);
        self.removed.insert(w);
        self.order.push(w);
        Ok(())
    }

    /// Runs one stage. Returns `None` once no vertex of degree 3 is left.
    pub fn step(&mut self) -> Result<Option<&StageDecision>> {
        let Some(s) = self.s()? else {
            return Ok(None);
        };
        let decision = decide(&self.view(), s)?;
        let deg = self.view().degree(decision.chosen)?;
        if deg != 3 {
            return Err(Error::Invariant(format!(
                "stage {}: chosen vertex {} has degree {deg}",
                self.stage(),
                decision.chosen
            )));
        }
        debug!("stage {}: {} -> {}", self.stage(), decision.rule.tag(), decision.chosen);
        self.remove(decision.chosen)?;
        self.decisions.push(decision);
        Ok(self.decisions.last())
    }

    /// Runs stages until none is left or `budget` stages have run in total.
    pub fn run(&mut self, budget: usize) -> Result<bool> {
        while self.stage() < budget {
            if self.step()?.is_none() {
                return Ok(true);
            }
        }
        Ok(self.s()?.is_none())
    }

    /// The component of `v` in the current graph if it is closed and all
    /// its vertices have degree at most 2.
    fn settled_component(&self, v: Vertex) -> Result<Option<VertexSet>> {
        let view = self.view();
        if view.degree(v)? == 3 {
            return Ok(None);
        }
        let mut seen = VertexSet::from([v]);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for &u in view.neighbors(x)?.iter() {
                if !self.low.contains_key(&u) {
                    return Ok(None);
                }
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        Ok(Some(seen))
    }
}

/// Colors `{1, 2}` along a settled line segment from its least endpoint.
fn color_segment<G: Graph + ?Sized>(g: &G, comp: &VertexSet, out: &mut HashMap<Vertex, usize>) -> Result<()> {
    let mut start = None;
    for &v in comp {
        if g.degree(v)? <= 1 {
            start = Some(v);
            break;
        }
    }
    let Some(start) = start else {
        return Err(Error::Invariant(format!(
            "component {:?} of the remainder is a circle",
            comp.iter().take(8).collect::<Vec<_>>()
        )));
    };
    let (mut prev, mut cur, mut color) = (None, start, 1);
    loop {
        out.insert(cur, color);
        color = 3 - color;
        let next = g.neighbors(cur)?.iter().copied().find(|&u| Some(u) != prev);
        match next {
            Some(u) => {
                prev = Some(cur);
                cur = u;
            }
            None => break,
        }
    }
    if comp.iter().any(|v| !out.contains_key(v)) {
        return Err(Error::Invariant("remainder component is not a line segment".into()));
    }
    Ok(())
}

/// Answers color queries on a 3-regular graph by running just enough stages.
///
/// Answers never change once given: a vertex removed at some stage has color
/// 0, and a settled segment keeps its shape because later stages only remove
/// vertices of degree 3.
#[derive(Debug, Clone)]
pub struct LazyColorer<G> {
    engine: StageEngine<G>,
    colors: HashMap<Vertex, usize>,
    stage_budget: usize,
}

impl<G: Graph> LazyColorer<G> {
    /// `stage_budget` bounds the total number of stages run over all queries.
    pub fn new(base: G, stage_budget: usize) -> Self {
        Self {
            engine: StageEngine::new(base),
            colors: HashMap::new(),
            stage_budget,
        }
    }

    pub fn engine(&self) -> &StageEngine<G> {
        &self.engine
    }

    /// Color of `v` in `{0, 1, 2}`. A budget error means the answer is not
    /// decided yet, never that it is wrong.
    pub fn color(&mut self, v: Vertex) -> Result<usize> {
        if !self.engine.base.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        loop {
            if let Some(&c) = self.colors.get(&v) {
                return Ok(c);
            }
            if self.engine.is_removed(v) {
                self.colors.insert(v, 0);
                return Ok(0);
            }
            if let Some(comp) = self.engine.settled_component(v)? {
                let view = self.engine.view();
                color_segment(&view, &comp, &mut self.colors)?;
                continue;
            }
            if self.engine.stage() >= self.stage_budget {
                return Err(Error::Budget(self.stage_budget));
            }
            if self.engine.step()?.is_none() {
                return Err(Error::Invariant(format!("no stage left but vertex {v} is unsettled")));
            }
        }
    }
}

/// One-off color query; see [`LazyColorer`].
pub fn color_query<G: Graph>(g: G, v: Vertex, stage_budget: usize) -> Result<usize> {
    LazyColorer::new(g, stage_budget).color(v)
}

/// Outcome of a complete run on a finite graph.
#[derive(Debug, Clone)]
pub struct TraceRun {
    /// The removed independent set, in the vertex ids of the input.
    pub w: VertexSet,
    /// Decisions in the ids of the graph the stages ran on.
    pub trace: DeletionTrace,
    /// Proper coloring of the input with colors `{0, 1, 2}`.
    pub coloring: Coloring,
    /// The 3-regular graph the stages ran on, when the input was not
    /// 3-regular itself.
    pub embedding: Option<RegularEmbedding<FiniteGraph>>,
}

/// Runs every stage on a finite graph of maximum degree at most 3 with no
/// 4-clique and checks the guarantees of the construction on the result.
///
/// Inputs that are not 3-regular are first embedded in a 3-regular graph;
/// the coloring and `W` are pulled back along the embedding.
pub fn run_trace(g: &FiniteGraph) -> Result<TraceRun> {
    check_degree_bound(g, 3)?;
    if let Some(k) = find_clique(g, 4) {
        return Err(Error::ForbiddenClique(k));
    }
    let embedding = if g.is_regular(3) { None } else { Some(regularize(g, 3)?) };
    let base = embedding.as_ref().map_or(g, |e| e.target());
    let mut engine = StageEngine::new(base);
    engine.run(usize::MAX)?;
    check_final(&engine)?;
    audit_trace(base, &engine.trace())?;

    let mut colors = HashMap::new();
    for v in base.vertices() {
        if engine.is_removed(v) {
            colors.insert(v, 0);
        } else if !colors.contains_key(&v) {
            let comp = engine
                .settled_component(v)?
                .ok_or_else(|| Error::Invariant(format!("vertex {v} is unsettled after the last stage")))?;
            color_segment(&engine.view(), &comp, &mut colors)?;
        }
    }
    let pull = |t: Vertex| embedding.as_ref().map_or(t, |e| e.embed(t));
    let mut coloring = Coloring::new(3);
    for v in g.vertices() {
        coloring.set(v, colors[&pull(v)])?;
    }
    let w = g.vertices().filter(|&v| engine.is_removed(pull(v))).collect();
    Ok(TraceRun {
        w,
        trace: engine.trace(),
        coloring,
        embedding,
    })
}

fn check_final<G: Graph>(engine: &StageEngine<G>) -> Result<()> {
    let view = engine.view();
    for w in engine.removed_in_order() {
        for &u in engine.base.neighbors(*w)?.iter() {
            if engine.is_removed(u) {
                return Err(Error::Invariant(format!("removed vertices {w} and {u} are adjacent")));
            }
        }
    }
    if let Some(v) = engine.base.bound().and_then(|b| (0..b).find(|&v| !engine.is_removed(v) && !engine.low.contains_key(&v))) {
        return Err(Error::Invariant(format!("vertex {v} keeps degree 3 after the last stage")));
    }
    for &v in engine.low.keys() {
        if view.degree(v)? > 2 {
            return Err(Error::Invariant(format!("vertex {v} has degree above 2 in the remainder")));
        }
    }
    Ok(())
}

/// Claims checked by [`audit_trace`], with how often each was exercised.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub stages: usize,
    /// Largest number of vertices of degree below 3 at any stage.
    pub max_low: usize,
    /// Germ deadlines that were checked.
    pub germ_checks: usize,
    /// Stages after which the whole graph was searched for circle-tree
    /// components.
    pub circle_tree_checks: usize,
}

/// Replays `trace` on the 3-regular graph `g` and checks at every stage that
/// the recorded decision is the one the rule makes, that the chosen vertex
/// has degree 3, that at most `3i` vertices have lower degree, that no
/// component is a circle-tree, and that a germ chosen at stage `i` is gone
/// by stage `4i` (or the last stage, if earlier).
pub fn audit_trace(g: &FiniteGraph, trace: &DeletionTrace) -> Result<AuditReport> {
    if !g.is_regular(3) {
        let v = g.vertices().find(|&v| g.deg(v) != 3).unwrap_or(0);
        return Err(Error::NotRegular { d: 3, vertex: v, degree: g.deg(v) });
    }
    let last = trace.len();
    let mut report = AuditReport::default();
    let mut engine = StageEngine::new(g);
    let mut deadlines: BTreeMap<usize, Vec<(Vertex, Vertex, usize)>> = BTreeMap::new();
    for i in 0..=last {
        let fail = |msg: String| Err(Error::Invariant(format!("stage {i}: {msg}")));
        // germ deadlines falling due at this stage
        if let Some(due) = deadlines.remove(&i) {
            for (a, b, at) in due {
                report.germ_checks += 1;
                let view = engine.view();
                if view.contains(a) && view.contains(b) && germ_from(&view, a, b)?.is_some() {
                    return fail(format!("germ starting {a}, {b} chosen at stage {at} is still present"));
                }
            }
        }
        if engine.low.len() > 3 * i {
            return fail(format!("{} vertices of degree below 3", engine.low.len()));
        }
        report.max_low = report.max_low.max(engine.low.len());
        let twos: VertexSet = engine.low.iter().filter(|&(_, &d)| d == 2).map(|(&v, _)| v).collect();
        report.circle_tree_checks += 1;
        if let Some((t, _)) = least_circle_tree(&engine.view(), &twos)? {
            return fail(format!("component {:?} is a circle-tree", t));
        }
        if i == last {
            if engine.s()?.is_some() {
                return fail("the trace stops while a vertex of degree 3 remains".into());
            }
            break;
        }
        let recorded = &trace.decisions[i];
        let Some(s) = engine.s()? else {
            return fail("the trace continues after the last vertex of degree 3".into());
        };
        let expected = decide(&engine.view(), s)?;
        if &expected != recorded {
            return fail(format!("recorded {:?} but the rule gives {:?}", recorded.chosen, expected.chosen));
        }
        if recorded.fallback {
            return fail("the circle-tree branch fell back outside the component".into());
        }
        if let Evidence::Germ { germ, .. } = &recorded.evidence {
            deadlines
                .entry((4 * i).min(last).max(i + 1))
                .or_default()
                .push((germ.start(), germ.second(), i));
        }
        let deg = engine.view().degree(recorded.chosen)?;
        if deg != 3 {
            return fail(format!("chosen vertex {} has degree {deg}", recorded.chosen));
        }
        engine.step()?;
        report.stages += 1;
    }
    check_final(&engine)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::brute_chromatic;
    use crate::graph::is_proper_coloring;
    use crate::families;
    use crate::graph::OracleGraph;

    fn check_run(g: &FiniteGraph) -> TraceRun {
        let run = run_trace(g).unwrap();
        assert!(is_proper_coloring(g, &run.coloring).unwrap());
        assert!(run.coloring.iter().all(|(_, c)| c < 3));
        for &w in &run.w {
            assert!(g.adj(w).iter().all(|u| !run.w.contains(u)));
        }
        run
    }

    #[test]
    fn base_stage_takes_least_vertex() {
        let g = families::petersen();
        let state = StageState::from_removed(&g, &[]).unwrap();
        let d = next_w(&g, &state).unwrap().unwrap();
        assert_eq!((d.rule, d.chosen), (Rule::SItself, 0));
    }

    /// A germ 0-1-2 whose end 2 sees the square 3-4-5-6 through the edge 3-4.
    fn germ_into_circle() -> (FiniteGraph, Vec<Vertex>) {
        let edges = [
            (0, 1), (1, 2), (2, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 3), (7, 8),
            (9, 0), (9, 1), (9, 7), (10, 0), (10, 7), (10, 8), (11, 5), (11, 6), (11, 8),
        ];
        (FiniteGraph::from_edges(12, &edges).unwrap(), vec![9, 10, 11])
    }

    #[test]
    fn germ_into_circle_picks_circle_neighbor() {
        let (g, w) = germ_into_circle();
        assert!(g.is_regular(3) && find_clique(&g, 4).is_none());
        let state = StageState::from_removed(&g, &w).unwrap();
        assert_eq!(state.s, Some(2));
        let d = next_w(&g, &state).unwrap().unwrap();
        assert_eq!(d.rule, Rule::GermCircleTree);
        assert_eq!(d.chosen, 3);
        assert!(!d.fallback);
        let Evidence::Germ { germ, tree: Some((t, witness)) } = &d.evidence else {
            panic!("expected circle-tree evidence");
        };
        assert_eq!(germ.path(), &[0, 1, 2]);
        assert_eq!(t, &VertexSet::from([3, 4, 5, 6]));
        assert_eq!(witness.k(), 1);
    }

    #[test]
    fn germ_without_circle_tree_deletes_m() {
        let edges = [
            (0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (6, 7),
            (8, 0), (8, 3), (8, 6), (9, 0), (9, 3), (9, 7), (10, 1), (10, 5), (10, 6), (11, 4), (11, 5), (11, 7),
        ];
        let g = FiniteGraph::from_edges(12, &edges).unwrap();
        assert!(g.is_regular(3) && find_clique(&g, 4).is_none());
        let state = StageState::from_removed(&g, &[8, 9, 10, 11]).unwrap();
        let d = next_w(&g, &state).unwrap().unwrap();
        assert_eq!((d.rule, d.chosen), (Rule::GermDeleteM, 2));
    }

    #[test]
    fn circle_tree_search_examples() {
        // two triangles joined by an edge, cut off by removing m = 6
        let edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3)];
        let mut all = edges.to_vec();
        all.extend([(6, 1), (6, 2)]);
        let g = FiniteGraph::from_edges(7, &all).unwrap();
        let gone = HashSet::from([6]);
        let h = crate::graph::Residual::new(&g, &gone);
        let twos: VertexSet = [1, 2, 4, 5].into();
        let (t, w) = least_circle_tree(&h, &twos).unwrap().unwrap();
        assert_eq!(t, (0..6).collect());
        assert_eq!(w.k(), 2);

        // a degree-1 vertex rules the component out
        let p = families::path(4);
        let twos: VertexSet = [1, 2].into();
        assert!(least_circle_tree(&p, &twos).unwrap().is_none());

        // the size cutoff stops before the far end of a long path
        let long = families::path(100);
        let (explored, closed) = grow(&long, 0, 6).unwrap();
        assert!(!closed && explored.len() <= 8);
    }

    #[test]
    fn small_cubic_graphs() {
        for g in [families::petersen(), families::prism(), families::complete_bipartite(3, 3), families::hypercube(3)] {
            let run = check_run(&g);
            assert!(run.embedding.is_none());
            assert!(!run.w.is_empty());
        }
        assert_eq!(brute_chromatic(&families::prism(), 4).unwrap(), 3);
    }

    #[test]
    fn non_regular_inputs_are_embedded() {
        let g = families::k4_minus_edge();
        let run = check_run(&g);
        assert!(run.embedding.is_some());
        check_run(&families::path(5));
        check_run(&families::cycle(7));
        check_run(&FiniteGraph::empty(3));
    }

    #[test]
    fn rejects_hypothesis_violations() {
        assert!(matches!(run_trace(&families::complete(4)), Err(Error::ForbiddenClique(_))));
        assert!(matches!(run_trace(&families::complete_bipartite(1, 4)), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn lazy_answers_match_full_run() {
        let g = families::petersen();
        let run = check_run(&g);
        let mut lazy = LazyColorer::new(&g, g.n());
        for v in (0..g.n()).rev() {
            assert_eq!(Some(lazy.color(v).unwrap()), run.coloring.get(v));
        }
    }

    /// An infinite ladder `6 + 2k + side` capped at its start by `K_{3,3}`
    /// minus the edge 0-3 on vertices `0..6`.
    fn capped_ladder() -> OracleGraph {
        OracleGraph::new(None, |v| {
            let mut out: Vec<Vertex> = match v {
                0..=2 => (3..6).filter(|&u| !(v == 0 && u == 3)).chain((v == 0).then_some(6)).collect(),
                3..=5 => (0..3).filter(|&u| !(v == 3 && u == 0)).chain((v == 3).then_some(7)).collect(),
                _ => {
                    let t = v - 6;
                    let (k, side) = (t / 2, t % 2);
                    let prev = if k > 0 { 6 + 2 * (k - 1) + side } else { 3 * side };
                    vec![6 + (t ^ 1), 6 + 2 * (k + 1) + side, prev]
                }
            };
            out.sort_unstable();
            out
        })
    }

    #[test]
    fn lazy_on_infinite_ladder() {
        let ladder = capped_ladder();
        let mut lazy = LazyColorer::new(ladder.clone(), 10_000);
        let got: Vec<usize> = (0..60).map(|v| lazy.color(v).unwrap()).collect();
        for v in 0..60usize {
            assert_eq!(ladder.degree(v).unwrap(), 3);
            for &u in ladder.neighbors(v).unwrap().iter() {
                if u < 60 {
                    assert_ne!(got[u], got[v], "{u} {v}");
                }
            }
        }
        let mut again = LazyColorer::new(ladder, 10_000);
        for v in (0..60).rev() {
            assert_eq!(again.color(v).unwrap(), got[v]);
        }
    }

    #[test]
    fn audit_rejects_tampered_trace() {
        let g = families::petersen();
        let run = run_trace(&g).unwrap();
        let mut bad = run.trace.clone();
        bad.decisions[1].chosen = (bad.decisions[1].chosen + 1) % 10;
        assert!(matches!(audit_trace(&g, &bad), Err(Error::Invariant(_))));
        let report = audit_trace(&g, &run.trace).unwrap();
        assert_eq!(report.stages, run.trace.len());
    }
}
