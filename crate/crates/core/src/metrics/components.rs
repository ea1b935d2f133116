use serde::{Deserialize, Serialize};

use super::union_find::DisjointSet;
use crate::decompose::DecomposedGraph;

/// Minimum ratio between the largest and second-largest component fractions.
pub const GIANT_RATIO: f64 = 70.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    /// Component node counts, descending.
    pub sizes: Vec<usize>,
    pub largest_frac: f64,
    pub second_frac: f64,
    pub is_giant: bool,
}

impl ComponentReport {
    pub fn from_sizes(mut sizes: Vec<usize>) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let total: usize = sizes.iter().sum();
        if total == 0 {
            return ComponentReport {
                sizes,
                largest_frac: 0.0,
                second_frac: 0.0,
                is_giant: false,
            };
        }
        let t = total as f64;
        let largest_frac = sizes[0] as f64 / t;
        let second_frac = sizes.get(1).map_or(0.0, |&s| s as f64 / t);
        // a lone component is compared against a single node
        let denom = if sizes.len() > 1 { second_frac } else { 1.0 / t };
        ComponentReport {
            is_giant: largest_frac / denom >= GIANT_RATIO,
            sizes,
            largest_frac,
            second_frac,
        }
    }

    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }
}

/// Component id per vertex, numbered by smallest member vertex.
pub fn component_labels(g: &DecomposedGraph) -> (Vec<u32>, usize) {
    let n = g.node_count();
    let mut ds = DisjointSet::new(n);
    for (u, v) in g.edges() {
        ds.union(u as usize, v as usize);
    }
    let mut label = vec![u32::MAX; n];
    let mut root_label = vec![u32::MAX; n];
    let mut next = 0u32;
    for v in 0..n {
        let r = ds.find(v);
        if root_label[r] == u32::MAX {
            root_label[r] = next;
            next += 1;
        }
        label[v] = root_label[r];
    }
    (label, next as usize)
}

pub fn connected_components(g: &DecomposedGraph) -> ComponentReport {
    let (labels, count) = component_labels(g);
    let mut sizes = vec![0usize; count];
    for l in labels {
        sizes[l as usize] += 1;
    }
    ComponentReport::from_sizes(sizes)
}
