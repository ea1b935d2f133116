use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{GeneratorRun, Model, RunManifest};
use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph, NodeId};

/// Replaces every hyperedge by a uniform random node set of the same size.
/// Timestamps and the node universe are kept.
pub fn null_model(h: &Hypergraph, seed: u64) -> Result<GeneratorRun> {
    let n = h.n();
    if let Some(e) = h.edges().iter().find(|e| e.len() > n) {
        return Err(Error::validation(format!("hyperedge of size {} exceeds n={n}", e.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            let members = sample(&mut rng, n, e.len()).into_iter().map(|v| NodeId(v as u32)).collect();
            Hyperedge::new(members, e.timestamp())
        })
        .collect::<Result<Vec<_>>>()?;
    let hypergraph = Hypergraph::new(n, edges)?;
    let manifest = RunManifest {
        model: Model::Null,
        seed,
        params: None,
        subset_cap: None,
        p: None,
        rule: None,
        fallback_count: None,
        fallback_nodes: None,
        capped_count: None,
        init_edges: 0,
        edges: hypergraph.len(),
        nodes: n,
    };
    Ok(GeneratorRun { hypergraph, manifest })
}
