//! Decomposed-graph edge lists. Vertices are written as hyphen-joined node
//! ids. Header comments give the level and counts:
//!
//! ```text
//! # level 2
//! # nodes 3
//! # edges 2
//! # weighted
//! 1-2 1-3 2
//! 1-3 2-3 1
//! ```
//!
//! Weighted files carry a third column; a level-1 self-loop is written as
//! `a a <count>`. A line with a single vertex declares a vertex without edges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use super::{parse_error, read_text, write_atomic};
use crate::decompose::{DecomposedGraph, WeightedDecomposedGraph};
use crate::error::Result;
use crate::hypergraph::KSubset;

fn header(out: &mut String, level: usize, nodes: usize, edges: usize, weighted: bool) {
    writeln!(out, "# level {level}").unwrap();
    writeln!(out, "# nodes {nodes}").unwrap();
    writeln!(out, "# edges {edges}").unwrap();
    if weighted {
        out.push_str("# weighted\n");
    }
}

pub fn format_decomposed_graph(g: &DecomposedGraph) -> String {
    let mut out = String::new();
    header(&mut out, g.level(), g.node_count(), g.edge_count(), false);
    let nodes = g.nodes();
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", nodes[u as usize], nodes[v as usize]).unwrap();
    }
    for v in (0..g.node_count()).filter(|&v| g.degree(v) == 0) {
        writeln!(out, "{}", nodes[v]).unwrap();
    }
    out
}

pub fn write_decomposed_graph(g: &DecomposedGraph, path: &Path) -> Result<()> {
    write_atomic(path, format_decomposed_graph(g).as_bytes())
}

pub fn format_weighted_graph(g: &WeightedDecomposedGraph) -> String {
    let base = g.base();
    let mut out = String::new();
    header(&mut out, g.level(), base.node_count(), base.edge_count(), true);
    let nodes = base.nodes();
    for ((u, v), w) in g.weighted_edges() {
        writeln!(out, "{} {} {w}", nodes[u as usize], nodes[v as usize]).unwrap();
    }
    for (&v, &c) in g.self_loops() {
        writeln!(out, "{0} {0} {c}", nodes[v as usize]).unwrap();
    }
    for v in (0..base.node_count()).filter(|&v| base.degree(v) == 0 && !g.self_loops().contains_key(&(v as u32))) {
        writeln!(out, "{}", nodes[v]).unwrap();
    }
    out
}

pub fn write_weighted_graph(g: &WeightedDecomposedGraph, path: &Path) -> Result<()> {
    write_atomic(path, format_weighted_graph(g).as_bytes())
}

struct Parsed {
    level: usize,
    nodes: Vec<KSubset>,
    edges: Vec<((u32, u32), u32)>,
    self_loops: BTreeMap<u32, u32>,
}

fn parse(text: &str, path: &Path, need_weights: bool) -> Result<Parsed> {
    let mut level = None;
    let mut counts: [Option<usize>; 2] = [None, None];
    let mut weighted = false;
    let mut vertices = BTreeSet::new();
    let mut raw_edges: Vec<(KSubset, KSubset, Option<u32>, usize)> = Vec::new();
    let mut lone: Vec<(KSubset, usize)> = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            let parts: Vec<&str> = c.split_whitespace().collect();
            let num = |p: Option<&&str>| {
                p.and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| parse_error(path, lineno, format!("malformed header {line:?}")))
            };
            match parts.first().copied() {
                Some("level") => level = Some(num(parts.get(1))?),
                Some("nodes") => counts[0] = Some(num(parts.get(1))?),
                Some("edges") => counts[1] = Some(num(parts.get(1))?),
                Some("weighted") => weighted = true,
                _ => {}
            }
            continue;
        }
        let k = level.ok_or_else(|| parse_error(path, lineno, "`# level` header must come before the data"))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let vertex = |t: &str| -> Result<KSubset> {
            let s = KSubset::parse(t).map_err(|e| parse_error(path, lineno, e.to_string()))?;
            if s.k() != k {
                return Err(parse_error(path, lineno, format!("vertex {t} does not have {k} members")));
            }
            Ok(s)
        };
        match toks.len() {
            1 => lone.push((vertex(toks[0])?, lineno)),
            2 | 3 => {
                let (a, b) = (vertex(toks[0])?, vertex(toks[1])?);
                let w = match toks.get(2) {
                    Some(t) => Some(
                        t.parse::<u32>()
                            .ok()
                            .filter(|&w| w > 0)
                            .ok_or_else(|| parse_error(path, lineno, format!("bad weight {t:?}")))?,
                    ),
                    None if need_weights => return Err(parse_error(path, lineno, "missing weight column")),
                    None => None,
                };
                if a == b && (w.is_none() || k != 1) {
                    return Err(parse_error(path, lineno, "self-loops are only allowed as weighted level-1 lines"));
                }
                vertices.insert(a.clone());
                vertices.insert(b.clone());
                raw_edges.push((a, b, w, lineno));
            }
            _ => return Err(parse_error(path, lineno, format!("expected 1 to 3 columns, found {}", toks.len()))),
        }
    }
    if need_weights && !weighted && !raw_edges.is_empty() {
        return Err(parse_error(path, 0, "file lacks the `# weighted` header"));
    }
    let level = level.ok_or_else(|| parse_error(path, 0, "missing `# level` header"))?;
    vertices.extend(lone.into_iter().map(|(v, _)| v));
    let nodes: Vec<KSubset> = vertices.into_iter().collect();
    let index = |s: &KSubset| nodes.binary_search(s).expect("collected") as u32;

    let mut edges = Vec::new();
    let mut self_loops = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for (a, b, w, lineno) in raw_edges {
        let (u, v) = (index(&a), index(&b));
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(parse_error(path, lineno, format!("edge {a} {b} listed twice")));
        }
        if u == v {
            self_loops.insert(u, w.expect("checked"));
        } else {
            edges.push((key, w.unwrap_or(1)));
        }
    }
    if let Some(n) = counts[0].filter(|&n| n != nodes.len()) {
        return Err(parse_error(path, 0, format!("header says {n} nodes, found {}", nodes.len())));
    }
    if let Some(m) = counts[1].filter(|&m| m != edges.len()) {
        return Err(parse_error(path, 0, format!("header says {m} edges, found {}", edges.len())));
    }
    Ok(Parsed {
        level,
        nodes,
        edges,
        self_loops,
    })
}

pub fn parse_decomposed_graph(text: &str, path: &Path) -> Result<DecomposedGraph> {
    let p = parse(text, path, false)?;
    DecomposedGraph::from_edges(p.level, p.nodes, p.edges.into_iter().map(|(e, _)| e).collect())
}

pub fn parse_weighted_graph(text: &str, path: &Path) -> Result<WeightedDecomposedGraph> {
    let p = parse(text, path, true)?;
    WeightedDecomposedGraph::from_parts(p.level, p.nodes, p.edges, p.self_loops)
}

/// Weights and self-loops, if present, are ignored.
pub fn read_decomposed_graph(path: &Path) -> Result<DecomposedGraph> {
    parse_decomposed_graph(&read_text(path)?, path)
}

pub fn read_weighted_graph(path: &Path) -> Result<WeightedDecomposedGraph> {
    parse_weighted_graph(&read_text(path)?, path)
}
