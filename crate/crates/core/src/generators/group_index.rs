use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::hypergraph::{for_each_combination, Hyperedge, KSubset, NodeId};

/// Degree of every node group of size `1..=cap`: the number of stored
/// hyperedges containing it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDegreeIndex {
    cap: usize,
    degrees: HashMap<KSubset, u64>,
}

impl GroupDegreeIndex {
    pub fn new(cap: usize) -> Self {
        GroupDegreeIndex {
            cap,
            degrees: HashMap::new(),
        }
    }

    pub fn from_edges<'a>(cap: usize, edges: impl IntoIterator<Item = &'a Hyperedge>) -> Self {
        let mut idx = GroupDegreeIndex::new(cap);
        for e in edges {
            idx.add(e.members());
        }
        idx
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Raises the degree of every tracked subset of `members` (sorted, distinct).
    pub fn add(&mut self, members: &[NodeId]) {
        for k in 1..=self.cap.min(members.len()) {
            for_each_combination(members, k, |g| {
                *self.degrees.entry(KSubset::from_sorted(g)).or_default() += 1;
            });
        }
    }

    pub fn degree(&self, group: &KSubset) -> u64 {
        self.degrees.get(group).copied().unwrap_or(0)
    }

    /// Groups of size `k` with positive degree.
    pub fn groups_of_size(&self, k: usize) -> impl Iterator<Item = (&KSubset, u64)> {
        self.degrees.iter().filter(move |(g, _)| g.k() == k).map(|(g, &d)| (g, d))
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// True when a containment recount over `edges` reproduces the index.
    pub fn matches_recount<'a>(&self, edges: impl IntoIterator<Item = &'a Hyperedge>) -> bool {
        let edges: Vec<&Hyperedge> = edges.into_iter().collect();
        self.degrees.iter().all(|(g, &d)| {
            edges.iter().filter(|e| e.contains_all(g.members())).count() as u64 == d
        }) && *self == GroupDegreeIndex::from_edges(self.cap, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_containing_edges() {
        let e = [Hyperedge::from_ids(&[0, 1, 2]).unwrap(), Hyperedge::from_ids(&[1, 2]).unwrap()];
        let idx = GroupDegreeIndex::from_edges(2, &e);
        assert_eq!(idx.degree(&KSubset::from_ids(&[1, 2]).unwrap()), 2);
        assert_eq!(idx.degree(&KSubset::from_ids(&[0, 2]).unwrap()), 1);
        assert_eq!(idx.degree(&KSubset::from_ids(&[0, 1, 2]).unwrap()), 0);
        assert_eq!(idx.len(), 3 + 3);
        assert!(idx.matches_recount(&e));
        assert!(!idx.matches_recount(&e[..1]));
    }
}
