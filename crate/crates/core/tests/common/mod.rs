#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use hyperdecomp::io::read_simplex_dir;
use hyperdecomp::{canonicalize, dedup, CanonicalizeOptions, DecomposedGraph, Hypergraph, WeightedDecomposedGraph};
use rand::seq::index::sample;
use rand::Rng;

/// Random multiset hypergraph on `n ≤ n_max` nodes with sizes `1..=size_max`.
/// Roughly a fifth of the hyperedges repeat an earlier one.
pub fn random_hypergraph<R: Rng>(rng: &mut R, n_max: usize, size_max: usize, m_max: usize) -> Hypergraph {
    let n = rng.random_range(1..=n_max);
    let m = rng.random_range(0..=m_max);
    let mut raw: Vec<Vec<i64>> = Vec::with_capacity(m);
    for _ in 0..m {
        if !raw.is_empty() && rng.random_bool(0.2) {
            let j = rng.random_range(0..raw.len());
            raw.push(raw[j].clone());
            continue;
        }
        let s = rng.random_range(1..=size_max.min(n));
        raw.push(sample(rng, n, s).into_iter().map(|v| v as i64).collect());
    }
    canonicalize(raw, CanonicalizeOptions { n: Some(n), dedup: false }).unwrap()
}

fn mask(members: &[u32]) -> u64 {
    members.iter().fold(0u64, |m, &v| m | 1 << v)
}

fn members(mask: u64) -> Vec<u32> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Vertices and edges of the k-level graph found by scanning every k-subset
/// and every subset pair of the node universe against every admissible
/// hyperedge. Needs `n ≤ 20`.
pub fn brute_force_graph(h: &Hypergraph, k: usize, cap: usize) -> (BTreeSet<Vec<u32>>, BTreeSet<(Vec<u32>, Vec<u32>)>) {
    let n = h.n();
    assert!(n <= 20);
    let edges: Vec<u64> = h
        .sorted_member_sets()
        .iter()
        .filter(|e| e.len() >= k && e.len() <= cap)
        .map(|e| mask(e))
        .collect();
    let subsets: Vec<u64> = (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k && edges.iter().any(|e| e & m == *m))
        .collect();
    let mut pairs = BTreeSet::new();
    for (i, &a) in subsets.iter().enumerate() {
        for &b in &subsets[i + 1..] {
            let u = a | b;
            if edges.iter().any(|e| e & u == u) {
                let (x, y) = (members(a), members(b));
                pairs.insert(if x < y { (x, y) } else { (y, x) });
            }
        }
    }
    (subsets.into_iter().map(members).collect(), pairs)
}

/// Pair weights (containing-hyperedge counts) and level-1 singleton counts
/// by direct scan.
pub fn brute_force_weights(h: &Hypergraph, k: usize) -> (BTreeSet<Vec<u32>>, BTreeMap<(Vec<u32>, Vec<u32>), u32>, BTreeMap<Vec<u32>, u32>) {
    let (vertices, pairs) = brute_force_graph(h, k, usize::MAX);
    let edges: Vec<u64> = h.sorted_member_sets().iter().map(|e| mask(e)).collect();
    let weights = pairs
        .into_iter()
        .map(|(a, b)| {
            let u = mask(&a) | mask(&b);
            let w = edges.iter().filter(|&&e| e & u == u).count() as u32;
            ((a, b), w)
        })
        .collect();
    let mut loops = BTreeMap::new();
    if k == 1 {
        for e in h.sorted_member_sets() {
            if e.len() == 1 {
                *loops.entry(e).or_insert(0) += 1;
            }
        }
    }
    (vertices, weights, loops)
}

pub fn label(g: &DecomposedGraph, v: u32) -> Vec<u32> {
    g.nodes()[v as usize].members().iter().map(|x| x.0).collect()
}

pub fn graph_sets(g: &DecomposedGraph) -> (BTreeSet<Vec<u32>>, BTreeSet<(Vec<u32>, Vec<u32>)>) {
    let vertices = (0..g.node_count() as u32).map(|v| label(g, v)).collect();
    let edges = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (label(g, u), label(g, v));
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    (vertices, edges)
}

pub fn weighted_sets(w: &WeightedDecomposedGraph) -> (BTreeSet<Vec<u32>>, BTreeMap<(Vec<u32>, Vec<u32>), u32>, BTreeMap<Vec<u32>, u32>) {
    let g = w.base();
    let vertices = (0..g.node_count() as u32).map(|v| label(g, v)).collect();
    let weights = w
        .weighted_edges()
        .map(|((u, v), c)| {
            let (a, b) = (label(g, u), label(g, v));
            (if a < b { (a, b) } else { (b, a) }, c)
        })
        .collect();
    let loops = w.self_loops().iter().map(|(&v, &c)| (label(g, v), c)).collect();
    (vertices, weights, loops)
}

/// `$HYPERGRAPH_DATA_DIR/<name>` holding the simplex files, deduplicated.
pub fn dataset(name: &str) -> Option<Result<Hypergraph, String>> {
    let root = PathBuf::from(std::env::var_os("HYPERGRAPH_DATA_DIR")?);
    let dir = root.join(name);
    if !dir.is_dir() {
        return None;
    }
    Some(read_simplex_dir(&dir).map(|d| dedup(&d.hypergraph)).map_err(|e| e.to_string()))
}
