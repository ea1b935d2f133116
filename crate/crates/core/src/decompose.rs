//! k-level decomposed graphs.
//!
//! The vertices of the k-level decomposed graph are the k-subsets that occur
//! inside some hyperedge; two of them are adjacent iff some hyperedge holds
//! their union. Vertices get dense indices in lexicographic order of their
//! subsets, so the adjacency output is reproducible byte for byte.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{for_each_combination, Hypergraph, KSubset, NodeId};

/// Size cap used for node-level graphs.
pub const NODE_LEVEL_CAP: usize = 25;
/// Size cap used for every level above the node level.
pub const HIGHER_LEVEL_CAP: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecomposeConfig {
    pub level: usize,
    /// Hyperedges with more members than this are skipped.
    pub max_edge_size: usize,
}

impl DecomposeConfig {
    pub fn new(level: usize, max_edge_size: usize) -> Result<Self> {
        let cfg = DecomposeConfig {
            level,
            max_edge_size,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// 25 at the node level, 7 above it.
    pub fn with_default_cap(level: usize) -> Result<Self> {
        Self::new(level, default_cap(level))
    }

    pub fn uncapped(level: usize) -> Result<Self> {
        Self::new(level, usize::MAX)
    }

    fn validate(&self) -> Result<()> {
        if self.level < 1 {
            return Err(Error::validation("decomposition level must be >= 1"));
        }
        if self.max_edge_size < self.level {
            return Err(Error::validation(format!(
                "max edge size {} below level {}",
                self.max_edge_size, self.level
            )));
        }
        Ok(())
    }
}

pub fn default_cap(level: usize) -> usize {
    if level <= 1 {
        NODE_LEVEL_CAP
    } else {
        HIGHER_LEVEL_CAP
    }
}

/// Simple undirected graph whose vertices are k-subsets, stored as CSR.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposedGraph {
    level: usize,
    nodes: Vec<KSubset>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl DecomposedGraph {
    /// Builds from vertex list and undirected edges. Parallel edges are
    /// collapsed; self-edges and out-of-range endpoints are rejected.
    pub fn from_edges(level: usize, nodes: Vec<KSubset>, mut edges: Vec<(u32, u32)>) -> Result<Self> {
        let n = nodes.len();
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::validation("decomposed-graph vertices must be strictly sorted"));
        }
        if nodes.iter().any(|s| s.k() != level) {
            return Err(Error::validation(format!("vertex size differs from level {level}")));
        }
        for e in edges.iter_mut() {
            if e.0 == e.1 {
                return Err(Error::validation(format!("self-edge on vertex {}", e.0)));
            }
            if e.0 as usize >= n || e.1 as usize >= n {
                return Err(Error::validation(format!("edge {e:?} out of range for {n} vertices")));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.par_sort_unstable();
        edges.dedup();
        Ok(Self::from_sorted_unique(level, nodes, &edges))
    }

    /// Plain graph on `n` vertices; vertex `i` is labelled by the singleton `{i}`.
    pub fn from_simple_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let nodes = (0..n as u32).map(|i| KSubset::from_sorted(&[NodeId(i)])).collect();
        Self::from_edges(1, nodes, edges.to_vec())
    }

    fn from_sorted_unique(level: usize, nodes: Vec<KSubset>, edges: &[(u32, u32)]) -> Self {
        let n = nodes.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; offsets[n]];
        for &(u, v) in edges {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for i in 0..n {
            neighbors[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        DecomposedGraph {
            level,
            nodes,
            offsets,
            neighbors,
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn nodes(&self) -> &[KSubset] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.nodes.len()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u as u32, v))
        })
    }

    pub fn index_of(&self, subset: &KSubset) -> Option<usize> {
        self.nodes.binary_search(subset).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }
}

/// Decomposed graph with ω weights (number of hyperedges containing the
/// endpoint union) and level-1 self-loop counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDecomposedGraph {
    base: DecomposedGraph,
    edges: Vec<(u32, u32)>,
    weights: Vec<u32>,
    self_loops: BTreeMap<u32, u32>,
}

impl WeightedDecomposedGraph {
    /// Assembles a weighted graph from parts, enforcing weights ≥ 1 and
    /// self-loops only at level 1.
    pub fn from_parts(
        level: usize,
        nodes: Vec<KSubset>,
        weighted_edges: Vec<((u32, u32), u32)>,
        self_loops: BTreeMap<u32, u32>,
    ) -> Result<Self> {
        if level < 1 {
            return Err(Error::validation("decomposition level must be >= 1"));
        }
        if level != 1 && !self_loops.is_empty() {
            return Err(Error::validation("self-loops are only defined at level 1"));
        }
        if let Some((&v, _)) = self_loops.iter().find(|(&v, &c)| v as usize >= nodes.len() || c == 0) {
            return Err(Error::validation(format!("bad self-loop on vertex {v}")));
        }
        let mut map: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for ((u, v), w) in weighted_edges {
            if w == 0 {
                return Err(Error::validation(format!("zero weight on edge ({u}, {v})")));
            }
            let key = if u < v { (u, v) } else { (v, u) };
            *map.entry(key).or_insert(0) += w;
        }
        let edges: Vec<(u32, u32)> = map.keys().copied().collect();
        let weights: Vec<u32> = map.values().copied().collect();
        let base = DecomposedGraph::from_edges(level, nodes, edges.clone())?;
        Ok(WeightedDecomposedGraph {
            base,
            edges,
            weights,
            self_loops,
        })
    }

    pub fn base(&self) -> &DecomposedGraph {
        &self.base
    }

    pub fn level(&self) -> usize {
        self.base.level
    }

    /// `((u, v), ω)` with `u < v` in lexicographic order.
    pub fn weighted_edges(&self) -> impl Iterator<Item = ((u32, u32), u32)> + '_ {
        self.edges.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u32> {
        let key = if u < v { (u as u32, v as u32) } else { (v as u32, u as u32) };
        self.edges.binary_search(&key).ok().map(|i| self.weights[i])
    }

    /// Vertex index → number of size-1 hyperedges equal to that vertex.
    pub fn self_loops(&self) -> &BTreeMap<u32, u32> {
        &self.self_loops
    }
}

fn admissible<'a>(h: &'a Hypergraph, cfg: &DecomposeConfig) -> Vec<&'a [NodeId]> {
    h.edges()
        .iter()
        .map(|e| e.members())
        .filter(|m| m.len() >= cfg.level && m.len() <= cfg.max_edge_size)
        .collect()
}

fn collect_subsets(edges: &[&[NodeId]], k: usize) -> Vec<KSubset> {
    let mut subsets: Vec<KSubset> = edges
        .par_iter()
        .flat_map_iter(|m| {
            let mut local = Vec::new();
            for_each_combination(m, k, |c| local.push(KSubset::from_sorted(c)));
            local
        })
        .collect();
    subsets.par_sort_unstable();
    subsets.dedup();
    subsets
}

/// Vertex indices of all k-subsets of one hyperedge, ascending.
fn subset_indices(nodes: &[KSubset], members: &[NodeId], k: usize) -> Vec<u32> {
    let mut ids = Vec::new();
    for_each_combination(members, k, |c| {
        let key = KSubset::from_sorted(c);
        let i = nodes.binary_search(&key).expect("subset was collected");
        ids.push(i as u32);
    });
    ids
}

/// Every unordered vertex pair inside each hyperedge's clique, with multiplicity.
fn clique_pairs(nodes: &[KSubset], edges: &[&[NodeId]], k: usize) -> Vec<(u32, u32)> {
    edges
        .par_iter()
        .flat_map_iter(|m| {
            let ids = subset_indices(nodes, m, k);
            let mut local = Vec::with_capacity(ids.len() * ids.len().saturating_sub(1) / 2);
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    local.push((a, b));
                }
            }
            local
        })
        .collect()
}

pub fn decompose(h: &Hypergraph, cfg: DecomposeConfig) -> Result<DecomposedGraph> {
    cfg.validate()?;
    let edges = admissible(h, &cfg);
    let nodes = collect_subsets(&edges, cfg.level);
    let mut pairs = clique_pairs(&nodes, &edges, cfg.level);
    pairs.par_sort_unstable();
    pairs.dedup();
    Ok(DecomposedGraph::from_sorted_unique(cfg.level, nodes, &pairs))
}

/// Uncapped weighted decomposition; multiset hyperedges count with multiplicity.
pub fn decompose_weighted(h: &Hypergraph, level: usize) -> Result<WeightedDecomposedGraph> {
    let cfg = DecomposeConfig::uncapped(level)?;
    let edges = admissible(h, &cfg);
    let nodes = collect_subsets(&edges, level);
    let mut pairs = clique_pairs(&nodes, &edges, level);
    pairs.par_sort_unstable();

    let mut unique: Vec<(u32, u32)> = Vec::new();
    let mut weights: Vec<u32> = Vec::new();
    for p in pairs {
        if unique.last() == Some(&p) {
            *weights.last_mut().unwrap() += 1;
        } else {
            unique.push(p);
            weights.push(1);
        }
    }

    let mut self_loops = BTreeMap::new();
    if level == 1 {
        for m in &edges {
            if m.len() == 1 {
                let i = nodes
                    .binary_search(&KSubset::from_sorted(m))
                    .expect("singleton was collected");
                *self_loops.entry(i as u32).or_insert(0) += 1;
            }
        }
    }

    let base = DecomposedGraph::from_sorted_unique(level, nodes, &unique);
    Ok(WeightedDecomposedGraph {
        base,
        edges: unique,
        weights,
        self_loops,
    })
}

/// Caps per level; `None` falls back to [`default_cap`].
#[derive(Clone, Debug, Default)]
pub struct LevelCaps {
    pub overrides: BTreeMap<usize, usize>,
}

impl LevelCaps {
    pub fn cap(&self, level: usize) -> usize {
        self.overrides.get(&level).copied().unwrap_or_else(|| default_cap(level))
    }
}

pub fn decompose_all(
    h: &Hypergraph,
    levels: &[usize],
    caps: &LevelCaps,
) -> Result<BTreeMap<usize, DecomposedGraph>> {
    let mut out = BTreeMap::new();
    for &k in levels {
        if out.contains_key(&k) {
            continue;
        }
        let g = decompose(h, DecomposeConfig::new(k, caps.cap(k))?)?;
        out.insert(k, g);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{canonicalize, CanonicalizeOptions};
    use std::collections::BTreeSet;

    fn hg(raw: &[&[i64]]) -> Hypergraph {
        canonicalize(raw.iter().map(|e| e.to_vec()), CanonicalizeOptions::default()).unwrap()
    }

    #[test]
    fn single_pair_node_level() {
        let g = decompose(&hg(&[&[1, 2]]), DecomposeConfig::uncapped(1).unwrap()).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
    }

    #[test]
    fn size_eight_triangle_level() {
        let h = hg(&[&[0, 1, 2, 3, 4, 5, 6, 7]]);
        let g = decompose(&h, DecomposeConfig::new(3, 8).unwrap()).unwrap();
        assert_eq!(g.node_count(), 56);
        assert_eq!(g.edge_count(), 1540);
        // the default cap of 7 drops it entirely
        let capped = decompose(&h, DecomposeConfig::with_default_cap(3).unwrap()).unwrap();
        assert_eq!(capped.node_count(), 0);
    }

    #[test]
    fn invalid_configs() {
        assert!(DecomposeConfig::new(0, 5).is_err());
        assert!(DecomposeConfig::new(3, 2).is_err());
        assert!(decompose_weighted(&hg(&[&[1]]), 0).is_err());
    }

    #[test]
    fn binomial_node_counts_across_levels() {
        let h = hg(&[&[0, 1, 2, 3, 4]]);
        let all = decompose_all(&h, &[1, 2, 3, 4], &LevelCaps::default()).unwrap();
        let counts: Vec<usize> = all.values().map(DecomposedGraph::node_count).collect();
        assert_eq!(counts, vec![5, 10, 10, 5]);
        assert!(decompose_all(&h, &[], &LevelCaps::default()).unwrap().is_empty());
    }

    #[test]
    fn weighted_counts_containing_hyperedges() {
        let h = hg(&[&[1, 2, 3], &[1, 2]]);
        let w = decompose_weighted(&h, 1).unwrap();
        let idx = |a: u32| w.base().index_of(&KSubset::from_ids(&[a]).unwrap()).unwrap();
        assert_eq!(w.weight(idx(1), idx(2)), Some(2));
        assert_eq!(w.weight(idx(1), idx(3)), Some(1));
        assert_eq!(w.weight(idx(2), idx(3)), Some(1));
        assert!(w.self_loops().is_empty());
    }

    #[test]
    fn singleton_becomes_self_loop() {
        let w = decompose_weighted(&hg(&[&[5]]), 1).unwrap();
        assert_eq!(w.base().node_count(), 1);
        assert_eq!(w.base().edge_count(), 0);
        assert_eq!(w.self_loops().get(&0), Some(&1));
        let w2 = decompose_weighted(&hg(&[&[5], &[5]]), 2).unwrap();
        assert_eq!(w2.base().node_count(), 0);
    }

    #[test]
    fn node_level_matches_pairwise_projection() {
        let h = hg(&[&[0, 1, 2], &[2, 3], &[3, 4, 5, 6], &[7]]);
        let g = decompose(&h, DecomposeConfig::uncapped(1).unwrap()).unwrap();
        let mut proj = BTreeSet::new();
        for e in h.edges() {
            let m = e.members();
            for i in 0..m.len() {
                for j in i + 1..m.len() {
                    proj.insert((m[i].0, m[j].0));
                }
            }
        }
        let got: BTreeSet<(u32, u32)> = g
            .edges()
            .map(|(u, v)| (g.nodes()[u as usize].members()[0].0, g.nodes()[v as usize].members()[0].0))
            .collect();
        assert_eq!(got, proj);
    }

    #[test]
    fn weighted_parts_validation() {
        let nodes = vec![KSubset::from_ids(&[0, 1]).unwrap(), KSubset::from_ids(&[0, 2]).unwrap()];
        let mut loops = BTreeMap::new();
        loops.insert(0, 1);
        assert!(WeightedDecomposedGraph::from_parts(2, nodes.clone(), vec![], loops).is_err());
        assert!(WeightedDecomposedGraph::from_parts(2, nodes.clone(), vec![((0, 1), 0)], BTreeMap::new()).is_err());
        assert!(WeightedDecomposedGraph::from_parts(2, nodes, vec![((1, 0), 2)], BTreeMap::new()).is_ok());
    }

    #[test]
    fn from_edges_collapses_parallel_and_rejects_loops() {
        let g = DecomposedGraph::from_simple_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(DecomposedGraph::from_simple_edges(3, &[(1, 1)]).is_err());
        assert!(DecomposedGraph::from_simple_edges(3, &[(1, 3)]).is_err());
    }
}
