use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Discrete, GenParams, GeneratorRun, Growth, Model, RunManifest};
use crate::error::{Error, Result};
use crate::hypergraph::NodeId;

pub const DEFAULT_P: f64 = 0.8;

/// How a prior hyperedge is picked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "rule")]
pub enum SamplingRule {
    /// Uniform over all hyperedges so far.
    #[default]
    Random,
    /// The `j`-th hyperedge (1-based) with weight `j`.
    Recent,
    /// `Random` or `Recent` restricted to the last `k` hyperedges.
    MostRecent { k: usize, recent: bool },
}

impl SamplingRule {
    fn validate(&self) -> Result<()> {
        match self {
            SamplingRule::MostRecent { k: 0, .. } => Err(Error::validation("k-most-recent needs k >= 1")),
            _ => Ok(()),
        }
    }

    /// Index into a list of `len` hyperedges.
    fn pick<R: Rng>(&self, len: usize, rng: &mut R) -> usize {
        match *self {
            SamplingRule::Random => rng.random_range(0..len),
            SamplingRule::Recent => linear_weighted(len, rng),
            SamplingRule::MostRecent { k, recent } => {
                let w = k.min(len);
                let off = len - w;
                off + if recent { linear_weighted(w, rng) } else { rng.random_range(0..w) }
            }
        }
    }
}

/// `j` in `0..len` with probability `(j + 1) / (len (len + 1) / 2)`.
fn linear_weighted<R: Rng>(len: usize, rng: &mut R) -> usize {
    let total = len as u64 * (len as u64 + 1) / 2;
    let u = rng.random_range(0..total);
    // smallest j with (j + 1)(j + 2) / 2 > u
    let mut j = (((8.0 * u as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
    while j > 0 && j * (j + 1) / 2 > u {
        j -= 1;
    }
    while (j + 1) * (j + 2) / 2 <= u {
        j += 1;
    }
    j as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetSamplingConfig {
    pub p: f64,
    pub rule: SamplingRule,
    pub seed: u64,
}

impl Default for SubsetSamplingConfig {
    fn default() -> Self {
        SubsetSamplingConfig {
            p: DEFAULT_P,
            rule: SamplingRule::Random,
            seed: 42,
        }
    }
}

pub fn subset_sampling(params: &GenParams, cfg: &SubsetSamplingConfig) -> Result<GeneratorRun> {
    params.validate()?;
    cfg.rule.validate()?;
    if !(cfg.p > 0.0 && cfg.p <= 1.0) {
        return Err(Error::validation(format!("p must be in (0, 1], got {}", cfg.p)));
    }
    let sizes = Discrete::new(&params.sizes)?;
    let per_node = Discrete::new(&params.new_per_node)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let sbar = params.max_size();
    let mut growth = Growth::with_disjoint(2, sbar);
    let mut pool: Vec<NodeId> = Vec::new();

    for _ in 0..params.n {
        let i = NodeId(growth.next_node);
        growth.next_node += 1;
        for _ in 0..per_node.sample(&mut rng) {
            let s = sizes.sample(&mut rng);
            let mut b = vec![i];
            while b.len() < s {
                let mut rule = cfg.rule;
                if let SamplingRule::MostRecent { k, recent } = rule {
                    // a window holding only nodes already in B can never finish B
                    let window = &growth.edges[growth.edges.len().saturating_sub(k)..];
                    if window.iter().all(|e| e.members().iter().all(|v| b.contains(v))) {
                        rule = if recent { SamplingRule::Recent } else { SamplingRule::Random };
                    }
                }
                let e = &growth.edges[rule.pick(growth.edges.len(), &mut rng)];
                pool.clear();
                for &v in e.members() {
                    if rng.random_bool(cfg.p) && !b.contains(&v) {
                        pool.push(v);
                    }
                }
                let room = s - b.len();
                if pool.len() <= room {
                    b.extend_from_slice(&pool);
                } else {
                    for j in sample(&mut rng, pool.len(), room) {
                        b.push(pool[j]);
                    }
                }
            }
            growth.push(b);
        }
    }

    let hypergraph = growth.finish();
    let manifest = RunManifest {
        model: Model::SubsetSampling,
        seed: cfg.seed,
        params: Some(params.clone()),
        subset_cap: None,
        p: Some(cfg.p),
        rule: Some(cfg.rule),
        fallback_count: None,
        fallback_nodes: None,
        capped_count: None,
        init_edges: 2,
        edges: hypergraph.len(),
        nodes: hypergraph.n(),
    };
    Ok(GeneratorRun { hypergraph, manifest })
}
