//! Exact reconstruction of a hypergraph from its weighted decompositions.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decompose::WeightedDecomposedGraph;
use crate::error::{Error, Result};
use crate::hypergraph::{for_each_combination, Hyperedge, Hypergraph, KSubset, NodeId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecoverOptions {
    /// Largest hyperedge size; defaults to one more than the highest level.
    pub max_size: Option<usize>,
    /// Visit edges in a seeded random order instead of lexicographically.
    pub shuffle_seed: Option<u64>,
}

/// Working copy of one level's weights.
struct Level<'a> {
    graph: &'a WeightedDecomposedGraph,
    edges: Vec<(u32, u32)>,
    weights: Vec<u32>,
}

impl<'a> Level<'a> {
    fn new(graph: &'a WeightedDecomposedGraph) -> Self {
        let (edges, weights) = graph.weighted_edges().unzip();
        Level { graph, edges, weights }
    }

    fn k(&self) -> usize {
        self.graph.level()
    }

    /// Removes one copy of the clique that hyperedge `members` induces.
    fn subtract(&mut self, members: &[NodeId]) -> Result<()> {
        let k = self.k();
        let nodes = self.graph.base().nodes();
        let mut ids = Vec::new();
        let mut missing = None;
        for_each_combination(members, k, |c| match nodes.binary_search(&KSubset::from_sorted(c)) {
            Ok(i) => ids.push(i as u32),
            Err(_) => missing = Some(KSubset::from_sorted(c)),
        });
        if let Some(s) = missing {
            return Err(Error::Consistency {
                level: k,
                detail: format!("vertex {s} of a recovered hyperedge is absent"),
            });
        }
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let key = (a.min(b), a.max(b));
                let slot = self.edges.binary_search(&key).ok().filter(|&p| self.weights[p] > 0);
                let Some(p) = slot else {
                    return Err(Error::Consistency {
                        level: k,
                        detail: format!("weight underflow on edge {} {}", nodes[a as usize], nodes[b as usize]),
                    });
                };
                self.weights[p] -= 1;
            }
        }
        Ok(())
    }
}

pub fn recover(graphs: &BTreeMap<usize, WeightedDecomposedGraph>, opts: RecoverOptions) -> Result<Hypergraph> {
    let top = *graphs
        .keys()
        .next_back()
        .ok_or_else(|| Error::validation("recovery needs at least the level-1 graph"))?;
    if !graphs.contains_key(&1) {
        return Err(Error::validation("recovery needs the level-1 graph for its self-loops"));
    }
    let m = opts.max_size.unwrap_or(top + 1);
    if m < 1 {
        return Err(Error::validation("maximum hyperedge size must be >= 1"));
    }
    for k in 1..m.max(2) {
        match graphs.get(&k) {
            Some(g) if g.level() == k => {}
            Some(g) => {
                return Err(Error::validation(format!("graph stored under level {k} has level {}", g.level())))
            }
            None => return Err(Error::validation(format!("missing weighted graph for level {k}"))),
        }
    }
    let mut rng = opts.shuffle_seed.map(ChaCha8Rng::seed_from_u64);

    let mut recovered: Vec<Vec<NodeId>> = Vec::new();
    for size in (2..=m).rev() {
        let mut level = Level::new(&graphs[&(size - 1)]);
        for e in &recovered {
            level.subtract(e)?;
        }
        let nodes = level.graph.base().nodes();
        let mut order: Vec<usize> = (0..level.edges.len()).collect();
        if let Some(rng) = rng.as_mut() {
            order.shuffle(rng);
        }
        let start = recovered.len();
        for p in order {
            let (a, b) = level.edges[p];
            let union = nodes[a as usize].union(&nodes[b as usize]);
            if union.len() != size {
                continue;
            }
            while level.weights[p] > 0 {
                level.subtract(&union)?;
                recovered.push(union.clone());
            }
        }
        if let Some(p) = level.weights.iter().position(|&w| w > 0) {
            let (a, b) = level.edges[p];
            return Err(Error::Consistency {
                level: size - 1,
                detail: format!(
                    "residual weight {} on edge {} {} after recovering {} hyperedges of size {size}",
                    level.weights[p],
                    nodes[a as usize],
                    nodes[b as usize],
                    recovered.len() - start
                ),
            });
        }
    }

    let level1 = &graphs[&1];
    let nodes = level1.base().nodes();
    for (&v, &count) in level1.self_loops() {
        for _ in 0..count {
            recovered.push(nodes[v as usize].members().to_vec());
        }
    }
    if m == 1 && level1.base().edge_count() > 0 {
        return Err(Error::Consistency {
            level: 1,
            detail: "edges present although the maximum size is 1".into(),
        });
    }
    let edges = recovered
        .into_iter()
        .map(|m| Hyperedge::new(m, None))
        .collect::<Result<Vec<_>>>()?;
    Ok(Hypergraph::from_edges(edges))
}
