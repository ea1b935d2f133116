//! Hypergraph domain types and validation.
//!
//! A [`Hypergraph`] is a node universe `0..n` plus a multiset of
//! [`Hyperedge`]s. Hyperedges are stored in canonical form (members strictly
//! increasing), which makes set equality a slice comparison and lets every
//! downstream module hash or order them directly.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for NodeId {
    fn from(v: u32) -> Self {
        NodeId(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperedge {
    members: Vec<NodeId>,
    timestamp: Option<i64>,
}

impl Hyperedge {
    /// Builds a hyperedge from members in any order; duplicates are merged.
    pub fn new(mut members: Vec<NodeId>, timestamp: Option<i64>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::validation("empty hyperedge"));
        }
        members.sort_unstable();
        members.dedup();
        Ok(Hyperedge { members, timestamp })
    }

    pub fn from_ids(ids: &[u32]) -> Result<Self> {
        Self::new(ids.iter().copied().map(NodeId).collect(), None)
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn timestamp(&self) -> Option<i64> {
        self.timestamp
    }

    pub fn with_timestamp(mut self, timestamp: Option<i64>) -> Self {
        self.timestamp = timestamp;
        self
    }

    /// Member-set containment; both sides are sorted so this is a merge scan.
    pub fn contains_all(&self, other: &[NodeId]) -> bool {
        let mut it = self.members.iter();
        'outer: for x in other {
            for y in it.by_ref() {
                if y == x {
                    continue 'outer;
                }
                if y > x {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn max_member(&self) -> NodeId {
        *self.members.last().expect("hyperedges are nonempty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Hyperedge>,
    deduplicated: bool,
}

impl Hypergraph {
    /// Validates that every member id lies in `0..n`.
    pub fn new(n: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        if let Some(e) = edges.iter().find(|e| e.max_member().index() >= n) {
            return Err(Error::validation(format!(
                "node id {} out of range for n={n}",
                e.max_member()
            )));
        }
        Ok(Hypergraph {
            n,
            edges,
            deduplicated: false,
        })
    }

    pub fn empty() -> Self {
        Hypergraph {
            n: 0,
            edges: Vec::new(),
            deduplicated: false,
        }
    }

    /// Node count implied by the edges: one past the largest id.
    pub fn from_edges(edges: Vec<Hyperedge>) -> Self {
        let n = edges.iter().map(|e| e.max_member().index() + 1).max().unwrap_or(0);
        Hypergraph {
            n,
            edges,
            deduplicated: false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_deduplicated(&self) -> bool {
        self.deduplicated
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Hyperedge::len).max().unwrap_or(0)
    }

    pub fn is_timestamped(&self) -> bool {
        self.edges.iter().all(|e| e.timestamp.is_some())
    }

    pub fn into_edges(self) -> Vec<Hyperedge> {
        self.edges
    }

    /// Hyperedge member sets sorted, the canonical multiset form used for
    /// comparisons that ignore edge order and timestamps.
    pub fn sorted_member_sets(&self) -> Vec<Vec<u32>> {
        let mut sets: Vec<Vec<u32>> = self
            .edges
            .iter()
            .map(|e| e.members.iter().map(|v| v.0).collect())
            .collect();
        sets.sort();
        sets
    }

    pub fn with_n(mut self, n: usize) -> Result<Self> {
        if n < self.n && self.edges.iter().any(|e| e.max_member().index() >= n) {
            return Err(Error::validation(format!("n={n} smaller than largest node id")));
        }
        self.n = n;
        Ok(self)
    }

    /// Per-node count of containing hyperedges.
    pub fn node_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            for v in &e.members {
                deg[v.index()] += 1;
            }
        }
        deg
    }
}

/// Options for [`canonicalize`].
#[derive(Clone, Copy, Debug, Default)]
pub struct CanonicalizeOptions {
    /// Explicit node universe size; defaults to one past the largest id.
    pub n: Option<usize>,
    pub dedup: bool,
}

/// Normalizes raw integer hyperedges into a [`Hypergraph`].
pub fn canonicalize<I, E>(raw: I, opts: CanonicalizeOptions) -> Result<Hypergraph>
where
    I: IntoIterator<Item = E>,
    E: AsRef<[i64]>,
{
    canonicalize_timed(raw.into_iter().map(|e| (e, None)), opts)
}

pub fn canonicalize_timed<I, E>(raw: I, opts: CanonicalizeOptions) -> Result<Hypergraph>
where
    I: IntoIterator<Item = (E, Option<i64>)>,
    E: AsRef<[i64]>,
{
    let mut edges = Vec::new();
    for (i, (members, ts)) in raw.into_iter().enumerate() {
        let members = members.as_ref();
        if members.is_empty() {
            return Err(Error::validation(format!("hyperedge {i} is empty")));
        }
        let mut ids = Vec::with_capacity(members.len());
        for &id in members {
            let id = u32::try_from(id).map_err(|_| {
                Error::validation(format!("hyperedge {i}: node id {id} is negative or too large"))
            })?;
            ids.push(NodeId(id));
        }
        edges.push(Hyperedge::new(ids, ts)?);
    }
    let h = Hypergraph::from_edges(edges);
    let h = match opts.n {
        Some(n) if n < h.n => {
            return Err(Error::validation(format!(
                "explicit n={n} is smaller than 1 + max id = {}",
                h.n
            )))
        }
        Some(n) => h.with_n(n)?,
        None => h,
    };
    Ok(if opts.dedup { dedup(&h) } else { h })
}

/// Keeps one copy of every member set, in order of first occurrence, with
/// the earliest timestamp seen for that set.
pub fn dedup(h: &Hypergraph) -> Hypergraph {
    let mut slot: HashMap<&[NodeId], usize> = HashMap::with_capacity(h.edges.len());
    let mut out: Vec<Hyperedge> = Vec::new();
    for e in &h.edges {
        match slot.entry(e.members()) {
            Entry::Occupied(o) => {
                let kept = &mut out[*o.get()];
                kept.timestamp = match (kept.timestamp, e.timestamp) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
            }
            Entry::Vacant(v) => {
                v.insert(out.len());
                out.push(e.clone());
            }
        }
    }
    Hypergraph {
        n: h.n,
        edges: out,
        deduplicated: true,
    }
}

/// A sorted, duplicate-free group of exactly `k` nodes; a vertex of the
/// k-level decomposed graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KSubset(SmallVec<[NodeId; 4]>);

impl KSubset {
    pub fn new(mut members: SmallVec<[NodeId; 4]>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::validation("empty k-subset"));
        }
        members.sort_unstable();
        let len = members.len();
        members.dedup();
        if members.len() != len {
            return Err(Error::validation("k-subset with repeated node"));
        }
        Ok(KSubset(members))
    }

    /// Caller guarantees `members` is strictly increasing.
    pub(crate) fn from_sorted(members: &[NodeId]) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        KSubset(SmallVec::from_slice(members))
    }

    pub fn from_ids(ids: &[u32]) -> Result<Self> {
        Self::new(ids.iter().copied().map(NodeId).collect())
    }

    pub fn members(&self) -> &[NodeId] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Sorted union of two subsets.
    pub fn union(&self, other: &KSubset) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.k() + other.k());
        let (a, b) = (self.members(), other.members());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }

    /// Parses the hyphen-joined rendering produced by `Display`.
    pub fn parse(s: &str) -> Result<Self> {
        let ids = s
            .split('-')
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::validation(format!("bad node id {t:?} in {s:?}")))
            })
            .collect::<Result<SmallVec<[u32; 4]>>>()?;
        KSubset::new(ids.into_iter().map(NodeId).collect())
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Visits every `k`-subset of the sorted slice `items` in lexicographic order.
pub(crate) fn for_each_combination<T: Copy>(items: &[T], k: usize, mut f: impl FnMut(&[T])) {
    let n = items.len();
    if k == 0 || k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in (i - 1)..k {
            buf[j] = items[idx[j]];
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sets(h: &Hypergraph) -> Vec<Vec<u32>> {
        h.edges()
            .iter()
            .map(|e| e.members().iter().map(|v| v.0).collect())
            .collect()
    }

    #[test]
    fn canonicalize_sorts_and_merges_repeats() {
        let h = canonicalize([vec![2, 1, 2], vec![0]], CanonicalizeOptions::default()).unwrap();
        assert_eq!(sets(&h), vec![vec![1, 2], vec![0]]);
        assert_eq!(h.n(), 3);
        assert!(!h.is_deduplicated());
    }

    #[test]
    fn canonicalize_keeps_multiset_unless_asked() {
        let raw = [vec![5, 7], vec![5, 7]];
        let h = canonicalize(raw.clone(), CanonicalizeOptions::default()).unwrap();
        assert_eq!(h.len(), 2);
        assert!(!h.is_deduplicated());
        let d = canonicalize(
            raw,
            CanonicalizeOptions {
                dedup: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(sets(&d), vec![vec![5, 7]]);
        assert!(d.is_deduplicated());
    }

    #[test]
    fn canonicalize_rejects_bad_input() {
        let empty: [Vec<i64>; 1] = [vec![]];
        assert!(matches!(
            canonicalize(empty, CanonicalizeOptions::default()),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            canonicalize([vec![1, -3]], CanonicalizeOptions::default()),
            Err(Error::Validation(_))
        ));
        let small_n = CanonicalizeOptions {
            n: Some(2),
            dedup: false,
        };
        assert!(canonicalize([vec![0, 5]], small_n).is_err());
    }

    #[test]
    fn explicit_n_adds_isolated_nodes() {
        let opts = CanonicalizeOptions {
            n: Some(10),
            dedup: false,
        };
        let h = canonicalize([vec![0, 1]], opts).unwrap();
        assert_eq!(h.n(), 10);
    }

    #[test]
    fn dedup_keeps_earliest_timestamp_in_first_occurrence_order() {
        let raw = vec![
            (vec![1i64, 2], Some(5)),
            (vec![1, 2], Some(3)),
            (vec![3], Some(4)),
        ];
        let h = canonicalize_timed(raw, CanonicalizeOptions::default()).unwrap();
        let d = dedup(&h);
        assert_eq!(sets(&d), vec![vec![1, 2], vec![3]]);
        let ts: Vec<_> = d.edges().iter().map(Hyperedge::timestamp).collect();
        assert_eq!(ts, vec![Some(3), Some(4)]);
    }

    #[test]
    fn dedup_of_unique_is_identity() {
        let h = canonicalize([vec![0, 1], vec![1, 2], vec![2]], CanonicalizeOptions::default())
            .unwrap();
        let d = dedup(&h);
        assert_eq!(d.edges(), h.edges());
    }

    #[test]
    fn ksubset_display_parse() {
        let s = KSubset::from_ids(&[7, 3, 11]).unwrap();
        assert_eq!(s.to_string(), "3-7-11");
        assert_eq!(KSubset::parse("3-7-11").unwrap(), s);
        assert!(KSubset::from_ids(&[1, 1]).is_err());
    }

    #[test]
    fn contains_all_merge_scan() {
        let e = Hyperedge::from_ids(&[1, 3, 5, 9]).unwrap();
        assert!(e.contains_all(&[NodeId(3), NodeId(9)]));
        assert!(!e.contains_all(&[NodeId(3), NodeId(4)]));
        assert!(!e.contains_all(&[NodeId(10)]));
        assert!(e.contains_all(&[]));
    }

    #[test]
    fn combinations_count_and_order() {
        let items: Vec<u32> = (0..6).collect();
        let mut seen = Vec::new();
        for_each_combination(&items, 3, |c| seen.push(c.to_vec()));
        assert_eq!(seen.len() as u128, binomial(6, 3));
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        assert_eq!(seen[0], vec![0, 1, 2]);
        assert_eq!(binomial(56, 2), 1540);
    }

    fn raw_edges() -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(0i64..15, 1..6), 0..20)
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent(raw in raw_edges(), dd in any::<bool>()) {
            let opts = CanonicalizeOptions { n: None, dedup: dd };
            let once = canonicalize(&raw, opts).unwrap();
            let again_raw: Vec<Vec<i64>> = once.edges().iter()
                .map(|e| e.members().iter().map(|v| v.0 as i64).collect())
                .collect();
            let twice = canonicalize(&again_raw, CanonicalizeOptions { n: Some(once.n()), dedup: dd })
                .unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn dedup_matches_hash_set_oracle(raw in raw_edges()) {
            let h = canonicalize(&raw, CanonicalizeOptions::default()).unwrap();
            let d = dedup(&h);
            prop_assert!(d.len() <= h.len());
            let dd = dedup(&d);
            prop_assert_eq!(dd.edges(), d.edges());

            let mut oracle: Vec<Vec<u32>> = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for e in &raw {
                let mut s: Vec<u32> = e.iter().map(|&x| x as u32).collect();
                s.sort_unstable();
                s.dedup();
                if seen.insert(s.clone()) {
                    oracle.push(s);
                }
            }
            prop_assert_eq!(sets(&d), oracle);
        }

        #[test]
        fn ksubset_order_is_total(mut subs in prop::collection::vec(prop::collection::btree_set(0u32..20, 3), 0..30)) {
            let mut a: Vec<KSubset> = subs.iter()
                .map(|s| KSubset::from_ids(&s.iter().copied().collect::<Vec<_>>()).unwrap())
                .collect();
            subs.reverse();
            let mut b: Vec<KSubset> = subs.iter()
                .map(|s| KSubset::from_ids(&s.iter().copied().collect::<Vec<_>>()).unwrap())
                .collect();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }
    }
}
