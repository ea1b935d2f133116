use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::decompose::DecomposedGraph;

/// Degree → number of vertices with that degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeHistogram(pub BTreeMap<usize, usize>);

impl DegreeHistogram {
    pub fn node_count(&self) -> usize {
        self.0.values().sum()
    }

    pub fn support_size(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&d, &c)| (d, c))
    }
}

pub fn degree_sequence(g: &DecomposedGraph) -> Vec<usize> {
    (0..g.node_count()).map(|v| g.degree(v)).collect()
}

pub fn degree_distribution(g: &DecomposedGraph) -> DegreeHistogram {
    let mut h = BTreeMap::new();
    for v in 0..g.node_count() {
        *h.entry(g.degree(v)).or_insert(0) += 1;
    }
    DegreeHistogram(h)
}
