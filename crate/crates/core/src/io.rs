//! Plain-text formats for graphs, colorings, injection pairs and deletion
//! traces. Blank lines and lines starting with `#` are ignored everywhere.
//!
//! ```text
//! graph 3 2        palette 3      f 2 0        trace direct
//! 0 1              0 0            g 5          stage 0 rule s chosen 4 evidence -
//! 1 2              1 1            n 6          stage 1 rule P chosen 7 evidence 7,8,9
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gadgets::InjectionPair;
use crate::graph::{Coloring, FiniteGraph, Vertex};
use crate::tverberg::{audit_trace, AuditReport, DeletionTrace, Rule, StageEngine};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("line {line}: {msg}"))
}

fn num<T: FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| bad(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| bad(line, format!("{what} {tok:?} is not a natural number")))
}

fn no_more<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<()> {
    match toks.next() {
        Some(t) => Err(bad(line, format!("unexpected {t:?}"))),
        None => Ok(()),
    }
}

pub fn parse_graph(text: &str) -> Result<FiniteGraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::Input("empty graph file".into()))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("graph") {
        return Err(bad(hl, "expected \"graph <n> <m>\""));
    }
    let n: usize = num(hl, toks.next(), "vertex count")?;
    let m: usize = num(hl, toks.next(), "edge count")?;
    no_more(hl, toks)?;
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut count = 0;
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        let u: Vertex = num(ln, toks.next(), "endpoint")?;
        let v: Vertex = num(ln, toks.next(), "endpoint")?;
        no_more(ln, toks)?;
        if u >= n || v >= n {
            return Err(bad(ln, format!("edge {u} {v} leaves 0..{n}")));
        }
        if u == v {
            return Err(bad(ln, format!("self-loop at {u}")));
        }
        if adj[u].contains(&v) {
            return Err(bad(ln, format!("duplicate edge {u} {v}")));
        }
        adj[u].push(v);
        adj[v].push(u);
        count += 1;
    }
    if count != m {
        return Err(bad(hl, format!("header announces {m} edges, found {count}")));
    }
    FiniteGraph::from_adjacency(adj)
}

pub fn write_graph(g: &FiniteGraph) -> String {
    let mut out = format!("graph {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::Input("empty coloring file".into()))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("palette") {
        return Err(bad(hl, "expected \"palette <k>\""));
    }
    let k: usize = num(hl, toks.next(), "palette size")?;
    no_more(hl, toks)?;
    let mut c = Coloring::new(k);
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        let v: Vertex = num(ln, toks.next(), "vertex")?;
        let col: usize = num(ln, toks.next(), "color")?;
        no_more(ln, toks)?;
        if c.get(v).is_some() {
            return Err(bad(ln, format!("vertex {v} is colored twice")));
        }
        c.set(v, col).map_err(|e| bad(ln, e))?;
    }
    Ok(c)
}

pub fn write_coloring(c: &Coloring) -> String {
    let mut out = format!("palette {}\n", c.palette());
    for (v, col) in c.iter() {
        writeln!(out, "{v} {col}").unwrap();
    }
    out
}

/// Lines `f <values>`, `g <values>` and `n <horizon>`; `f` and `g` may be
/// empty or absent.
pub fn parse_injection_pair(text: &str) -> Result<InjectionPair> {
    let (mut f, mut g, mut n) = (None, None, None);
    for (ln, l) in content_lines(text) {
        let mut toks = l.split_whitespace();
        let key = toks.next().unwrap();
        match key {
            "f" | "g" => {
                let vals = toks.map(|t| num(ln, Some(t), "value")).collect::<Result<Vec<usize>>>()?;
                let slot = if key == "f" { &mut f } else { &mut g };
                if slot.replace(vals).is_some() {
                    return Err(bad(ln, format!("{key} given twice")));
                }
            }
            "n" => {
                let h: usize = num(ln, toks.next(), "horizon")?;
                no_more(ln, toks)?;
                if n.replace(h).is_some() {
                    return Err(bad(ln, "horizon given twice"));
                }
            }
            other => return Err(bad(ln, format!("unknown key {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| Error::Input("missing horizon line \"n <N>\"".into()))?;
    InjectionPair::new(f.unwrap_or_default(), g.unwrap_or_default(), n)
}

pub fn write_injection_pair(p: &InjectionPair) -> String {
    let join = |s: &[usize]| s.iter().map(|v| format!(" {v}")).collect::<String>();
    format!("f{}\ng{}\nn {}\n", join(p.f()), join(p.g()), p.horizon())
}

/// One line of a trace file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub stage: usize,
    pub rule: Rule,
    pub chosen: Vertex,
    pub evidence: Vec<Vec<Vertex>>,
}

/// A parsed trace file. `regularized` is set when the stages ran on the
/// 3-regular embedding of the input rather than the input itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFile {
    pub regularized: bool,
    pub records: Vec<TraceRecord>,
}

pub fn trace_records(trace: &DeletionTrace) -> Vec<TraceRecord> {
    trace
        .decisions
        .iter()
        .enumerate()
        .map(|(i, d)| TraceRecord {
            stage: i,
            rule: d.rule,
            chosen: d.chosen,
            evidence: d.evidence.vertex_lists(),
        })
        .collect()
}

pub fn write_trace(trace: &DeletionTrace, regularized: bool) -> String {
    let mut out = format!("trace {}\n", if regularized { "regularized" } else { "direct" });
    for r in trace_records(trace) {
        let ev = if r.evidence.is_empty() {
            "-".to_string()
        } else {
            r.evidence
                .iter()
                .map(|l| l.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(out, "stage {} rule {} chosen {} evidence {ev}", r.stage, r.rule.tag(), r.chosen).unwrap();
    }
    out
}

pub fn parse_trace(text: &str) -> Result<TraceFile> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::Input("empty trace file".into()))?;
    let regularized = match header {
        "trace direct" => false,
        "trace regularized" => true,
        _ => return Err(bad(hl, "expected \"trace direct\" or \"trace regularized\"")),
    };
    let mut records = Vec::new();
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        let mut keyword = |k: &str| {
            if toks.next() == Some(k) {
                Ok(())
            } else {
                Err(bad(ln, format!("expected {k:?}")))
            }
        };
        keyword("stage")?;
        let stage: usize = num(ln, toks.next(), "stage")?;
        if stage != records.len() {
            return Err(bad(ln, format!("stage {stage} out of order")));
        }
        if toks.next() != Some("rule") {
            return Err(bad(ln, "expected \"rule\""));
        }
        let tag = toks.next().ok_or_else(|| bad(ln, "missing rule"))?;
        let rule = Rule::from_tag(tag).ok_or_else(|| bad(ln, format!("unknown rule {tag:?}")))?;
        if toks.next() != Some("chosen") {
            return Err(bad(ln, "expected \"chosen\""));
        }
        let chosen: Vertex = num(ln, toks.next(), "chosen vertex")?;
        if toks.next() != Some("evidence") {
            return Err(bad(ln, "expected \"evidence\""));
        }
        let rest: Vec<&str> = toks.collect();
        let evidence = if rest == ["-"] {
            Vec::new()
        } else {
            rest.iter()
                .map(|list| list.split(',').map(|t| num(ln, Some(t), "evidence vertex")).collect())
                .collect::<Result<Vec<Vec<Vertex>>>>()?
        };
        records.push(TraceRecord {
            stage,
            rule,
            chosen,
            evidence,
        });
    }
    Ok(TraceFile { regularized, records })
}

/// Replays the stages on the 3-regular graph `base`, checks that every
/// record matches the decision made there, and audits the replayed trace.
pub fn verify_trace_records(base: &FiniteGraph, records: &[TraceRecord]) -> Result<AuditReport> {
    let mut engine = StageEngine::new(base);
    for r in records {
        let d = engine
            .step()?
            .ok_or_else(|| Error::Input(format!("stage {}: the run ended before this record", r.stage)))?;
        let lists = d.evidence.vertex_lists();
        if d.rule != r.rule || d.chosen != r.chosen || lists != r.evidence {
            return Err(Error::Input(format!(
                "stage {}: recorded {} {} but the run gives {} {}",
                r.stage,
                r.rule.tag(),
                r.chosen,
                d.rule.tag(),
                d.chosen
            )));
        }
    }
    audit_trace(base, &engine.trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::tverberg::run_trace;

    #[test]
    fn graph_round_trip() {
        let g = families::petersen();
        let text = write_graph(&g);
        assert!(text.starts_with("graph 10 15\n"));
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert_eq!(parse_graph("# empty\ngraph 0 0\n").unwrap().n(), 0);
    }

    #[test]
    fn graph_errors_name_the_line() {
        let cases = [
            ("graph 3 1\n1 1\n", "line 2: self-loop"),
            ("graph 3 2\n0 1\n1 0\n", "line 3: duplicate"),
            ("graph 3 1\n0 3\n", "line 2: edge 0 3 leaves"),
            ("graph 3 2\n0 1\n", "line 1: header announces 2"),
            ("graf 3 0\n", "line 1: expected"),
            ("graph 3 1\n0 x\n", "line 2: endpoint \"x\""),
        ];
        for (text, want) in cases {
            let err = parse_graph(text).unwrap_err().to_string();
            assert!(err.contains(want), "{err:?} lacks {want:?}");
        }
    }

    #[test]
    fn coloring_round_trip() {
        let c = Coloring::from_vec(3, vec![0, 2, 1, 0]).unwrap();
        assert_eq!(parse_coloring(&write_coloring(&c)).unwrap(), c);
        assert!(parse_coloring("palette 2\n0 2\n").is_err());
        assert!(parse_coloring("palette 2\n0 1\n0 0\n").is_err());
    }

    #[test]
    fn injection_pair_files() {
        let p = parse_injection_pair("f 2\ng 5\nn 6\n").unwrap();
        assert_eq!((p.f(), p.g(), p.horizon()), (&[2][..], &[5][..], 6));
        assert_eq!(parse_injection_pair(&write_injection_pair(&p)).unwrap(), p);
        assert!(parse_injection_pair("f 1\ng 1\nn 3\n").is_err());
        assert!(parse_injection_pair("f 1\n").is_err());
        assert_eq!(parse_injection_pair("f\ng\nn 2\n").unwrap().f(), &[] as &[usize]);
    }

    #[test]
    fn trace_round_trip_and_replay() {
        let g = families::petersen();
        let run = run_trace(&g).unwrap();
        let text = write_trace(&run.trace, false);
        let file = parse_trace(&text).unwrap();
        assert!(!file.regularized);
        assert_eq!(file.records, trace_records(&run.trace));
        let report = verify_trace_records(&g, &file.records).unwrap();
        assert_eq!(report.stages, run.trace.len());

        let mut tampered = file.records.clone();
        tampered[0].chosen = (tampered[0].chosen + 1) % 10;
        assert!(verify_trace_records(&g, &tampered).is_err());
        assert!(verify_trace_records(&g, &file.records[..file.records.len() - 1]).is_err());
    }
}
