//! Brute-force oracles shared by the integration tests. They only use the
//! adjacency lists of `FiniteGraph` and none of the library algorithms.

#![allow(dead_code)]

use brooks::FiniteGraph;

/// A graph minus a set of removed vertices.
pub struct Sub<'a> {
    pub g: &'a FiniteGraph,
    pub gone: Vec<bool>,
}

impl<'a> Sub<'a> {
    pub fn new(g: &'a FiniteGraph) -> Self {
        Self {
            g,
            gone: vec![false; g.n()],
        }
    }

    pub fn alive(&self, v: usize) -> bool {
        !self.gone[v]
    }

    pub fn adj(&self, v: usize) -> Vec<usize> {
        self.g.adj(v).iter().copied().filter(|&u| !self.gone[u]).collect()
    }

    pub fn deg(&self, v: usize) -> usize {
        self.g.adj(v).iter().filter(|&&u| !self.gone[u]).count()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.g.n();
        let mut seen = self.gone.clone();
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for u in self.adj(comp[i]) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

pub fn proper(g: &FiniteGraph, color: impl Fn(usize) -> Option<usize>, palette: usize) -> bool {
    g.vertices().all(|v| matches!(color(v), Some(c) if c < palette))
        && g.vertices().all(|v| g.adj(v).iter().all(|&u| color(u) != color(v)))
}

pub fn bipartite(g: &FiniteGraph) -> bool {
    let mut side = vec![None; g.n()];
    for s in g.vertices() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &u in g.adj(v) {
                match side[u] {
                    None => {
                        side[u] = Some(!side[v].unwrap());
                        stack.push(u);
                    }
                    Some(x) if x == side[v].unwrap() => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Whether `g` contains a clique on `size` vertices.
pub fn has_clique(g: &FiniteGraph, size: usize) -> bool {
    fn grow(g: &FiniteGraph, clique: &mut Vec<usize>, pool: &[usize], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        for (i, &v) in pool.iter().enumerate() {
            if clique.iter().all(|&c| g.adj(v).contains(&c)) {
                clique.push(v);
                if grow(g, clique, &pool[i + 1..], need - 1) {
                    return true;
                }
                clique.pop();
            }
        }
        false
    }
    if size == 0 {
        return true;
    }
    g.vertices().any(|v| {
        let higher: Vec<usize> = g.adj(v).iter().copied().filter(|&u| u > v).collect();
        grow(g, &mut vec![v], &higher, size - 1)
    })
}

pub fn max_degree(g: &FiniteGraph) -> usize {
    g.vertices().map(|v| g.adj(v).len()).max().unwrap_or(0)
}

/// Least `k` with a proper `k`-coloring, by trying every assignment.
pub fn naive_chromatic(g: &FiniteGraph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    (1..=n)
        .find(|&k| {
            let mut c = vec![0usize; n];
            loop {
                if g.edges().all(|(u, v)| c[u] != c[v]) {
                    return true;
                }
                let Some(i) = c.iter().rposition(|&x| x + 1 < k) else {
                    return false;
                };
                c[i] += 1;
                c[i + 1..].iter_mut().for_each(|x| *x = 0);
            }
        })
        .unwrap()
}

/// Biconnected blocks of the subgraph induced on `comp`, as
/// `(vertices, edge count)`.
pub fn blocks(s: &Sub, comp: &[usize]) -> Vec<(Vec<usize>, usize)> {
    struct St<'s, 'a> {
        s: &'s Sub<'a>,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        edges: Vec<(usize, usize)>,
        out: Vec<(Vec<usize>, usize)>,
    }
    fn dfs(st: &mut St, v: usize, parent: Option<usize>) {
        st.time += 1;
        st.disc[v] = st.time;
        st.low[v] = st.time;
        for u in st.s.adj(v) {
            if Some(u) == parent {
                continue;
            }
            if st.disc[u] == 0 {
                st.edges.push((v, u));
                dfs(st, u, Some(v));
                st.low[v] = st.low[v].min(st.low[u]);
                if st.low[u] >= st.disc[v] {
                    let mut vs = Vec::new();
                    let mut count = 0;
                    while let Some(e) = st.edges.pop() {
                        count += 1;
                        vs.push(e.0);
                        vs.push(e.1);
                        if e == (v, u) {
                            break;
                        }
                    }
                    vs.sort_unstable();
                    vs.dedup();
                    st.out.push((vs, count));
                }
            } else if st.disc[u] < st.disc[v] {
                st.edges.push((v, u));
                st.low[v] = st.low[v].min(st.disc[u]);
            }
        }
    }
    let n = s.g.n();
    let mut st = St {
        s,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        edges: Vec::new(),
        out: Vec::new(),
    };
    dfs(&mut st, comp[0], None);
    st.out
}

/// A connected component is a circle-tree iff its maximum degree is at most
/// 3, every block is a cycle or a single edge, and every vertex lies on
/// exactly one cycle block.
pub fn is_circle_tree(s: &Sub, comp: &[usize]) -> bool {
    if comp.iter().any(|&v| s.deg(v) > 3 || s.deg(v) < 2) {
        return false;
    }
    let mut on_cycle = vec![0usize; s.g.n()];
    for (vs, e) in blocks(s, comp) {
        if e == 1 {
            continue;
        }
        if e != vs.len() || vs.len() < 3 || vs.iter().any(|&v| s.adj(v).iter().filter(|u| vs.contains(u)).count() != 2) {
            return false;
        }
        for v in vs {
            on_cycle[v] += 1;
        }
    }
    comp.iter().all(|&v| on_cycle[v] == 1)
}

/// Whether some germ in `s` starts with `a, b`: a path whose vertices have
/// degree at most 2 except the last, which has degree 3, with at least three
/// vertices.
pub fn germ_starts_with(s: &Sub, a: usize, b: usize) -> bool {
    if !s.alive(a) || !s.alive(b) || !s.adj(a).contains(&b) || s.deg(a) > 2 {
        return false;
    }
    let (mut prev, mut cur) = (a, b);
    let mut len = 2;
    loop {
        match s.deg(cur) {
            3 => return len >= 3,
            2 => {
                let next = s.adj(cur).into_iter().find(|&u| u != prev).unwrap();
                if next == a {
                    return false;
                }
                prev = cur;
                cur = next;
                len += 1;
            }
            _ => return false,
        }
    }
}

/// Components of `s` that are line segments or single vertices.
pub fn all_segments(s: &Sub) -> bool {
    s.components().iter().all(|c| {
        let edges: usize = c.iter().map(|&v| s.deg(v)).sum::<usize>() / 2;
        edges + 1 == c.len() && c.iter().all(|&v| s.deg(v) <= 2)
    })
}

/// The subgraph on the vertices with at least one neighbor, relabelled in
/// increasing order, with the new-to-old map.
pub fn drop_isolated(g: &FiniteGraph) -> (FiniteGraph, Vec<usize>) {
    let keep: Vec<usize> = g.vertices().filter(|&v| !g.adj(v).is_empty()).collect();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (keep.binary_search(&u).unwrap(), keep.binary_search(&v).unwrap()))
        .collect();
    (FiniteGraph::from_edges(keep.len(), &edges).unwrap(), keep)
}

/// Every proper `k`-coloring of a small graph, by enumeration.
pub fn proper_colorings(g: &FiniteGraph, k: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut c = vec![0usize; n];
    loop {
        if g.edges().all(|(u, v)| c[u] != c[v]) {
            out.push(c.clone());
        }
        let Some(i) = c.iter().rposition(|&x| x + 1 < k) else {
            return out;
        };
        c[i] += 1;
        c[i + 1..].iter_mut().for_each(|x| *x = 0);
    }
}
