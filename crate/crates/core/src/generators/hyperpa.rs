use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Discrete, GenParams, GeneratorRun, GroupDegreeIndex, Growth, Model, RunManifest};
use crate::error::{Error, Result};
use crate::hypergraph::{binomial, KSubset, NodeId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperPaConfig {
    pub seed: u64,
    /// Group sizes above this are filled by independent degree-proportional
    /// node draws instead. `None` samples every group size exactly.
    pub subset_cap: Option<usize>,
}

/// Committed hyperedges bucketed by size, plus node incidences.
struct Committed {
    by_size: Vec<Vec<usize>>,
    incidence: Vec<NodeId>,
}

impl Committed {
    fn add(&mut self, idx: usize, members: &[NodeId]) {
        if self.by_size.len() <= members.len() {
            self.by_size.resize(members.len() + 1, Vec::new());
        }
        self.by_size[members.len()].push(idx);
        self.incidence.extend_from_slice(members);
    }

    /// Group of `size` nodes drawn with probability proportional to its
    /// degree. Choosing a hyperedge with weight `C(|e|, size)` and then a
    /// uniform `size`-subset of it gives each group `g` probability
    /// `deg(g) / Σ_e C(|e|, size)`.
    fn group<R: Rng>(&self, growth: &Growth, size: usize, rng: &mut R) -> Option<Vec<NodeId>> {
        let weights: Vec<u128> = (0..self.by_size.len())
            .map(|m| if m >= size { self.by_size[m].len() as u128 * binomial(m, size) } else { 0 })
            .collect();
        let total: u128 = weights.iter().sum();
        if total == 0 {
            return None;
        }
        let mut r = rng.random_range(0..total);
        let m = weights
            .iter()
            .position(|&w| {
                if r < w {
                    true
                } else {
                    r -= w;
                    false
                }
            })
            .expect("r < total");
        let bucket = &self.by_size[m];
        let e = &growth.edges[bucket[rng.random_range(0..bucket.len())]];
        Some(sample(rng, m, size).into_iter().map(|j| e.members()[j]).collect())
    }
}

/// `count` distinct nodes, each draw proportional to node degree.
pub(crate) fn degree_proportional_nodes<R: Rng>(incidence: &[NodeId], count: usize, rng: &mut R) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = Vec::with_capacity(count);
    while out.len() < count {
        let v = incidence[rng.random_range(0..incidence.len())];
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

pub fn hyperpa(params: &GenParams, cfg: &HyperPaConfig) -> Result<GeneratorRun> {
    run(params, cfg, None).map(|(r, _)| r)
}

/// Also maintains the group-degree index for groups up to `track`, and checks
/// at each step that the chosen group has positive indexed degree.
pub fn hyperpa_tracked(params: &GenParams, cfg: &HyperPaConfig, track: usize) -> Result<(GeneratorRun, GroupDegreeIndex)> {
    run(params, cfg, Some(GroupDegreeIndex::new(track))).map(|(r, i)| (r, i.expect("tracked")))
}

fn run(
    params: &GenParams,
    cfg: &HyperPaConfig,
    mut index: Option<GroupDegreeIndex>,
) -> Result<(GeneratorRun, Option<GroupDegreeIndex>)> {
    params.validate()?;
    if cfg.subset_cap == Some(0) {
        return Err(Error::validation("subset cap must be >= 1"));
    }
    let sizes = Discrete::new(&params.sizes)?;
    let per_node = Discrete::new(&params.new_per_node)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let init = params.max_size() / 2;
    let mut growth = Growth::with_disjoint(init, 2);
    let mut committed = Committed {
        by_size: Vec::new(),
        incidence: Vec::new(),
    };
    for (idx, e) in growth.edges.iter().enumerate() {
        committed.add(idx, e.members());
        if let Some(ix) = index.as_mut() {
            ix.add(e.members());
        }
    }
    let mut fallback = 0usize;
    let mut fallback_nodes = 0usize;
    let mut capped = 0usize;

    for _ in 0..params.n {
        let i = NodeId(growth.next_node);
        growth.next_node += 1;
        let batch_start = growth.edges.len();
        let fallback_before = fallback;
        for _ in 0..per_node.sample(&mut rng) {
            let s = sizes.sample(&mut rng);
            if s == 1 {
                growth.push(vec![i]);
                continue;
            }
            let need = s - 1;
            let mut members = if cfg.subset_cap.is_some_and(|c| need > c) {
                capped += 1;
                degree_proportional_nodes(&committed.incidence, need, &mut rng)
            } else {
                match committed.group(&growth, need, &mut rng) {
                    Some(g) => {
                        if let Some(ix) = index.as_ref().filter(|ix| need <= ix.cap()) {
                            let key = KSubset::new(g.iter().copied().collect())?;
                            if ix.degree(&key) == 0 {
                                return Err(Error::Consistency {
                                    level: need,
                                    detail: format!("chose group {key} with zero degree"),
                                });
                            }
                        }
                        g
                    }
                    None => {
                        fallback += 1;
                        sample(&mut rng, i.index(), need).into_iter().map(|v| NodeId(v as u32)).collect()
                    }
                }
            };
            members.push(i);
            growth.push(members);
        }
        if fallback > fallback_before {
            fallback_nodes += 1;
        }
        for idx in batch_start..growth.edges.len() {
            let m = growth.edges[idx].members().to_vec();
            committed.add(idx, &m);
            if let Some(ix) = index.as_mut() {
                ix.add(&m);
            }
        }
    }

    let hypergraph = growth.finish();
    let manifest = RunManifest {
        model: Model::HyperPa,
        seed: cfg.seed,
        params: Some(params.clone()),
        subset_cap: cfg.subset_cap,
        p: None,
        rule: None,
        fallback_count: Some(fallback),
        fallback_nodes: Some(fallback_nodes),
        capped_count: Some(capped),
        init_edges: init,
        edges: hypergraph.len(),
        nodes: hypergraph.n(),
    };
    Ok((GeneratorRun { hypergraph, manifest }, index))
}
