//! Worked examples across modules, checked against enumeration oracles.

mod common;

use brooks::circletree::{p_vertex_circles, recognize_circle_tree};
use brooks::color::{brute_chromatic, find_clique};
use brooks::descent::{brooks_color, descend_pipeline, phi};
use brooks::families;
use brooks::gadgets::{build_h2, build_hd, build_ladder, extract_separator, InjectionPair, Label};
use brooks::graph::{component_of_bounded, n_neighborhood, Coloring};
use brooks::regular::regularize;
use brooks::schmerl::{self, build_c};
use brooks::tverberg::{run_trace, LazyColorer};
use brooks::{FiniteGraph, VertexSet};
use common::*;

#[test]
fn neighborhoods_and_components() {
    let p = families::path(5);
    assert_eq!(n_neighborhood(&p, &VertexSet::from([2]), 1).unwrap(), VertexSet::from([1, 2, 3]));
    let c = build_c();
    let comp = component_of_bounded(&c, schmerl::c::A, 10).unwrap().component().unwrap();
    assert_eq!(comp.len(), 6);
    assert_eq!(max_degree(&c), 3);
    assert_eq!(c.adj(schmerl::c::X).len(), 1);
    assert!(!has_clique(&c, 4));
}

#[test]
fn chromatic_numbers_agree_with_enumeration() {
    for g in [
        families::petersen(),
        families::prism(),
        families::cycle(5),
        families::complete(4),
        families::hypercube(3),
        families::k4_minus_edge(),
        build_c(),
    ] {
        assert_eq!(brute_chromatic(&g, g.n()).unwrap(), naive_chromatic(&g));
    }
}

#[test]
fn cubic_runs_on_named_graphs() {
    for g in [
        families::complete_bipartite(3, 3),
        families::hypercube(3),
        families::prism(),
        families::petersen(),
        families::k4_minus_edge(),
    ] {
        let run = run_trace(&g).unwrap();
        assert!(proper(&g, |v| run.coloring.get(v), 3));
        assert!(naive_chromatic(&g) <= 3);
        let w: Vec<usize> = run.w.iter().copied().collect();
        assert!(w.iter().all(|&x| g.adj(x).iter().all(|u| !run.w.contains(u))));
    }
}

#[test]
fn lazy_queries_on_embedded_k4_minus_edge() {
    let g = families::k4_minus_edge();
    let emb = regularize(&g, 3).unwrap();
    let mut lc = LazyColorer::new(emb.target(), 10_000);
    let colors: Vec<usize> = g.vertices().map(|v| lc.color(emb.embed(v)).unwrap()).collect();
    assert!(proper(&g, |v| colors.get(v).copied(), 3));
    assert_eq!(naive_chromatic(&g), 3);
}

#[test]
fn circle_tree_shapes() {
    // two triangles joined by one edge
    let g = FiniteGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3)]).unwrap();
    let w = recognize_circle_tree(&g).unwrap();
    assert_eq!(w.k(), 2);
    assert_eq!(g.vertices().filter(|&v| g.deg(v) == 3).count(), 2);
    let s = Sub::new(&g);
    assert!(is_circle_tree(&s, &[0, 1, 2, 3, 4, 5]));
    // both anchors have disjoint circles
    let p = p_vertex_circles(&g, &g.vertices().collect()).unwrap();
    assert_eq!(p.keys().copied().collect::<Vec<_>>(), vec![0, 3]);
    let (c0, c3) = (&p[&0], &p[&3]);
    assert!(c0.iter().all(|v| !c3.contains(v)));
}

#[test]
fn descent_levels() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
    for n in [6, 8, 10] {
        let g = brooks::generate::random_regular(&mut rng, n, 4, false, 1_000_000).unwrap();
        let d = descend_pipeline(&g, 4).unwrap();
        assert_eq!(d.k.len(), 1);
        assert!(d.k[0].iter().all(|&v| g.adj(v).iter().all(|u| !d.k[0].contains(u))));
        assert!(max_degree(&d.g3) <= 3 && !has_clique(&d.g3, 4));
    }
    for n in [8, 10] {
        let g = brooks::generate::random_regular(&mut rng, n, 5, false, 1_000_000).unwrap();
        let d = descend_pipeline(&g, 5).unwrap();
        assert_eq!(d.k.len(), 2);
        for k in &d.k {
            assert!(k.iter().all(|&v| g.adj(v).iter().all(|u| !k.contains(u))));
        }
        assert!(max_degree(&d.g3) <= 3 && !has_clique(&d.g3, 4));
    }
}

#[test]
fn descent_on_named_graphs() {
    let c8 = families::circulant(8, &[1, 2]);
    let run = phi(&c8, 4).unwrap();
    assert!(max_degree(&run.remainder) <= 3 && find_clique(&run.remainder, 4).is_none());
    let col = brooks_color(&c8, 4).unwrap();
    assert!(proper(&c8, |v| col.get(v), 4));
    assert!(naive_chromatic(&c8) <= 4);
    let pet = families::petersen();
    let col = brooks_color(&pet, 3).unwrap();
    assert!(proper(&pet, |v| col.get(v), 3));
}

fn pair(f: &[usize], g: &[usize], n: usize) -> InjectionPair {
    InjectionPair::new(f.to_vec(), g.to_vec(), n).unwrap()
}

#[test]
fn h2_forcing_over_all_colorings() {
    let p = pair(&[2], &[5], 6);
    let gg = build_h2(&p);
    let (small, map) = drop_isolated(&gg.graph);
    let pos = |l| map.binary_search(&gg.vertex(l)).unwrap();
    let all = proper_colorings(&small, 2);
    assert!(!all.is_empty());
    for c in all {
        assert_eq!(c[pos(Label::A(2))], c[pos(Label::B(2))]);
        assert_ne!(c[pos(Label::A(5))], c[pos(Label::B(5))]);
        let mut full = vec![0; gg.graph.n()];
        for (i, &v) in map.iter().enumerate() {
            full[v] = c[i];
        }
        let x = extract_separator(&gg, &Coloring::from_vec(2, full).unwrap()).unwrap();
        assert!(x.contains(&2) && !x.contains(&5));
    }
}

#[test]
fn hd_shape_and_forcing() {
    let p = pair(&[1], &[0], 2);
    let gg = build_hd(&p, 3).unwrap();
    let g = &gg.graph;
    let v = |l| gg.vertex(l);
    // diamond on a_1, b_1 and G_0, missing the edge a_1 b_1
    let diamond = [v(Label::A(1)), v(Label::B(1)), v(Label::Clique { m: 0, j: 0 }), v(Label::Clique { m: 0, j: 1 })];
    let inner = diamond.iter().flat_map(|&x| diamond.iter().map(move |&y| (x, y))).filter(|&(x, y)| x < y && g.has_edge(x, y)).count();
    assert_eq!(inner, 5);
    assert!(!g.has_edge(v(Label::A(1)), v(Label::B(1))));
    // diamond on a_0, G'_0, e'_0 plus the pendant e'_0 b_0
    let e = v(Label::EPrime(0));
    assert_eq!(g.deg(e), 3);
    assert!(g.has_edge(e, v(Label::B(0))));
    assert!(!g.has_edge(e, v(Label::A(0))));
    assert_eq!(g.deg(v(Label::B(0))), 1);

    let (small, map) = drop_isolated(g);
    let pos = |l| map.binary_search(&gg.vertex(l)).unwrap();
    for c in proper_colorings(&small, 3) {
        assert_eq!(c[pos(Label::A(1))], c[pos(Label::B(1))]);
        assert_eq!(c[pos(Label::A(0))], c[pos(Label::EPrime(0))]);
        assert_ne!(c[pos(Label::A(0))], c[pos(Label::B(0))]);
    }
}

#[test]
fn ladder_columns() {
    // f(3) = 1 and g(2) = 2; column 0 is never hit
    let p = pair(&[3, 4, 5, 1], &[6, 7, 2], 8);
    let gg = build_ladder(&p);
    let g = &gg.graph;
    let s = Sub::new(g);
    let comp_of = |l| s.components().into_iter().find(|c| c.contains(&gg.vertex(l))).unwrap();
    // column 1: l_{1,0} .. l_{1,3} r_{1,3} .. r_{1,0}, an odd path
    let c1 = comp_of(Label::L { n: 1, k: 0 });
    assert_eq!(c1.len(), 8);
    assert!(c1.contains(&gg.vertex(Label::R { n: 1, k: 0 })));
    // column 2 passes through m_{2,2}: an even path
    let c2 = comp_of(Label::L { n: 2, k: 0 });
    assert_eq!(c2.len(), 7);
    assert!(c2.contains(&gg.vertex(Label::M { n: 2, k: 2 })));
    // column 0: two disjoint rails of length N
    let left = comp_of(Label::L { n: 0, k: 0 });
    let right = comp_of(Label::R { n: 0, k: 0 });
    assert_eq!((left.len(), right.len()), (8, 8));
    assert!(left.iter().all(|v| !right.contains(v)));

    let (small, map) = drop_isolated(g);
    let pos = |l| map.binary_search(&gg.vertex(l)).unwrap();
    // enumerate the two path components only
    let keep: Vec<usize> = c1.iter().chain(&c2).map(|&v| map.binary_search(&v).unwrap()).collect();
    let edges: Vec<(usize, usize)> = small
        .edges()
        .filter(|(u, v)| keep.contains(u) && keep.contains(v))
        .map(|(u, v)| (keep.iter().position(|&x| x == u).unwrap(), keep.iter().position(|&x| x == v).unwrap()))
        .collect();
    let sub = FiniteGraph::from_edges(keep.len(), &edges).unwrap();
    let at = |l| keep.iter().position(|&x| x == pos(l)).unwrap();
    for c in proper_colorings(&sub, 2) {
        assert_ne!(c[at(Label::L { n: 1, k: 0 })], c[at(Label::R { n: 1, k: 0 })]);
        assert_eq!(c[at(Label::L { n: 2, k: 0 })], c[at(Label::R { n: 2, k: 0 })]);
    }
}

#[test]
fn hd_separation_for_random_pairs() {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let n = rng.gen_range(2..10);
        let mut vals: Vec<usize> = (0..n).collect();
        vals.shuffle(&mut rng);
        let lf = rng.gen_range(0..=4.min(n));
        let lg = rng.gen_range(0..=4.min(n - lf));
        let p = pair(&vals[..lf], &vals[lf..lf + lg], n);
        let gg = build_hd(&p, 4).unwrap();
        let c = brooks_color(&gg.graph, 4).unwrap();
        let x = extract_separator(&gg, &c).unwrap();
        assert!(p.f().iter().all(|v| x.contains(v)) && p.g().iter().all(|v| !x.contains(v)));
    }
}

#[test]
fn property_a_of_k4_minus_edge_by_enumeration() {
    let g = families::k4_minus_edge();
    let low: Vec<usize> = g.vertices().filter(|&v| g.deg(v) == 2).collect();
    assert_eq!(low.len(), 2);
    assert!(!g.has_edge(low[0], low[1]));
    let all = proper_colorings(&g, 3);
    let extends = |a: usize, b: usize| all.iter().any(|c| c[low[0]] == a && c[low[1]] == b);
    let expect_holds = (0..3).all(|a| (0..3).all(|b| extends(a, b)));
    assert_eq!(schmerl::has_property_a(&g).holds(), expect_holds);
    assert!(extends(1, 1) && !extends(0, 1));
}
