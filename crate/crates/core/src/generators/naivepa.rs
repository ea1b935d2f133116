use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hyperpa::degree_proportional_nodes;
use super::{Discrete, GenParams, GeneratorRun, Growth, Model, RunManifest};
use crate::error::Result;
use crate::hypergraph::NodeId;

/// Preferential attachment on individual node degrees. Repeated draws
/// within one hyperedge are redrawn.
pub fn naivepa(params: &GenParams, seed: u64) -> Result<GeneratorRun> {
    params.validate()?;
    let sizes = Discrete::new(&params.sizes)?;
    let per_node = Discrete::new(&params.new_per_node)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let init = params.max_size() / 2;
    let mut growth = Growth::with_disjoint(init, 2);
    let mut incidence: Vec<NodeId> = growth.edges.iter().flat_map(|e| e.members().to_vec()).collect();

    for _ in 0..params.n {
        let i = NodeId(growth.next_node);
        growth.next_node += 1;
        let batch_start = growth.edges.len();
        for _ in 0..per_node.sample(&mut rng) {
            let s = sizes.sample(&mut rng);
            let mut members = if s == 1 {
                Vec::new()
            } else {
                degree_proportional_nodes(&incidence, s - 1, &mut rng)
            };
            members.push(i);
            growth.push(members);
        }
        for e in &growth.edges[batch_start..] {
            incidence.extend_from_slice(e.members());
        }
    }

    let hypergraph = growth.finish();
    let manifest = RunManifest {
        model: Model::NaivePa,
        seed,
        params: Some(params.clone()),
        subset_cap: None,
        p: None,
        rule: None,
        fallback_count: None,
        fallback_nodes: None,
        capped_count: None,
        init_edges: init,
        edges: hypergraph.len(),
        nodes: hypergraph.n(),
    };
    Ok(GeneratorRun { hypergraph, manifest })
}
