//! Hypergraph generators and the parameters they learn from real data.

mod group_index;
mod hyperpa;
mod naivepa;
mod null;
mod subset;

use std::collections::{BTreeMap, HashMap};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph, NodeId};

pub use group_index::GroupDegreeIndex;
pub use hyperpa::{hyperpa, hyperpa_tracked, HyperPaConfig};
pub use naivepa::naivepa;
pub use null::null_model;
pub use subset::{subset_sampling, SamplingRule, SubsetSamplingConfig, DEFAULT_P};

/// Inputs shared by the growth models.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    /// Hyperedge size → probability.
    pub sizes: BTreeMap<usize, f64>,
    /// New hyperedges per new node → probability.
    pub new_per_node: BTreeMap<usize, f64>,
    pub n: usize,
}

impl GenParams {
    pub fn new(sizes: BTreeMap<usize, f64>, new_per_node: BTreeMap<usize, f64>, n: usize) -> Result<Self> {
        let p = GenParams { sizes, new_per_node, n };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_distribution("S", &self.sizes)?;
        check_distribution("NP", &self.new_per_node)?;
        if self.sizes.contains_key(&0) {
            return Err(Error::validation("S has support at size 0"));
        }
        if self.n == 0 {
            return Err(Error::validation("n must be >= 1"));
        }
        Ok(())
    }

    /// Largest size with positive probability.
    pub fn max_size(&self) -> usize {
        self.sizes.iter().rev().find(|(_, &p)| p > 0.0).map_or(0, |(&s, _)| s)
    }
}

fn check_distribution(name: &str, d: &BTreeMap<usize, f64>) -> Result<()> {
    if d.values().any(|&p| !(p.is_finite() && p >= 0.0)) {
        return Err(Error::validation(format!("{name} has a negative or non-finite probability")));
    }
    // loose enough for probabilities read back from 6-digit reports
    let total: f64 = d.values().sum();
    if (total - 1.0).abs() > 1e-4 {
        return Err(Error::validation(format!("{name} sums to {total}, not 1")));
    }
    Ok(())
}

/// Sampler over the support of a validated distribution.
pub(crate) struct Discrete {
    values: Vec<usize>,
    index: WeightedIndex<f64>,
}

impl Discrete {
    pub(crate) fn new(d: &BTreeMap<usize, f64>) -> Result<Self> {
        let (values, weights): (Vec<usize>, Vec<f64>) = d.iter().filter(|(_, &p)| p > 0.0).map(|(&k, &p)| (k, p)).unzip();
        let index = WeightedIndex::new(weights).map_err(|e| Error::validation(format!("bad distribution: {e}")))?;
        Ok(Discrete { values, index })
    }

    pub(crate) fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        self.values[self.index.sample(rng)]
    }
}

/// Estimates generator inputs from a timestamped, duplicate-free hypergraph.
///
/// Nodes are renumbered by first appearance in timestamp order (stable for
/// ties). The NP count for new id `i` is the number of hyperedges whose
/// largest new id is `i`, so nodes that complete no hyperedge contribute a
/// zero. `n` counts the nodes that appear in some hyperedge.
pub fn learn_params(h: &Hypergraph) -> Result<GenParams> {
    if h.is_empty() {
        return Err(Error::validation("cannot learn parameters from an empty hypergraph"));
    }
    if !h.is_timestamped() {
        return Err(Error::validation("every hyperedge needs a timestamp to learn NP"));
    }
    let sets = h.sorted_member_sets();
    if sets.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::validation("hypergraph has duplicate hyperedges; deduplicate first"));
    }
    let mut order: Vec<&Hyperedge> = h.edges().iter().collect();
    order.sort_by_key(|e| e.timestamp());
    let mut new_id: HashMap<NodeId, usize> = HashMap::new();
    let mut completes = Vec::new();
    for e in &order {
        for v in e.members() {
            let next = new_id.len();
            new_id.entry(*v).or_insert(next);
        }
        completes.push(e.members().iter().map(|v| new_id[v]).max().unwrap());
    }
    let n = new_id.len();
    let mut per_node = vec![0usize; n];
    for c in completes {
        per_node[c] += 1;
    }
    let mut np_counts: BTreeMap<usize, usize> = BTreeMap::new();
    for c in per_node {
        *np_counts.entry(c).or_default() += 1;
    }
    let mut size_counts: BTreeMap<usize, usize> = BTreeMap::new();
    for e in h.edges() {
        *size_counts.entry(e.len()).or_default() += 1;
    }
    let normalize = |c: BTreeMap<usize, usize>| {
        let total: usize = c.values().sum();
        c.into_iter().map(|(k, v)| (k, v as f64 / total as f64)).collect()
    };
    GenParams::new(normalize(size_counts), normalize(np_counts), n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    HyperPa,
    NaivePa,
    SubsetSampling,
    Null,
}

/// Record of one generator run, written next to its output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub model: Model,
    pub seed: u64,
    pub params: Option<GenParams>,
    pub subset_cap: Option<usize>,
    pub p: Option<f64>,
    pub rule: Option<SamplingRule>,
    /// HyperPA: times no positive-degree group of the needed size existed.
    pub fallback_count: Option<usize>,
    /// HyperPA: new nodes whose batch hit the fallback at least once. Degrees
    /// only change between batches, so every such node needs a size at
    /// least two above the previous one and this stays within
    /// `⌊s̄/2 − 1⌋`; the raw count above can exceed it when one node draws
    /// several oversize hyperedges.
    pub fallback_nodes: Option<usize>,
    /// HyperPA: hyperedges filled by independent node choice because the
    /// group size exceeded `subset_cap`.
    pub capped_count: Option<usize>,
    pub init_edges: usize,
    pub edges: usize,
    pub nodes: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorRun {
    pub hypergraph: Hypergraph,
    pub manifest: RunManifest,
}

/// Growth-model state: committed hyperedges plus the node that each batch
/// introduces.
pub(crate) struct Growth {
    pub(crate) edges: Vec<Hyperedge>,
    pub(crate) next_node: u32,
}

impl Growth {
    /// `count` disjoint hyperedges of `size` on the first node ids.
    pub(crate) fn with_disjoint(count: usize, size: usize) -> Self {
        let mut edges = Vec::with_capacity(count);
        for c in 0..count {
            let base = (c * size) as u32;
            let members = (base..base + size as u32).map(NodeId).collect();
            edges.push(Hyperedge::new(members, Some(edges.len() as i64)).expect("nonempty"));
        }
        Growth {
            edges,
            next_node: (count * size) as u32,
        }
    }

    pub(crate) fn push(&mut self, members: Vec<NodeId>) {
        let t = self.edges.len() as i64;
        self.edges.push(Hyperedge::new(members, Some(t)).expect("generated hyperedges are nonempty"));
    }

    pub(crate) fn finish(self) -> Hypergraph {
        let n = self.next_node as usize;
        Hypergraph::new(n, self.edges).expect("generated ids are in range")
    }
}
