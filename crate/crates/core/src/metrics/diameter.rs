use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decompose::DecomposedGraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiameterConfig {
    /// Fraction of connected pairs that must be within the returned distance.
    pub quantile: f64,
    /// Graphs with at most this many vertices use every vertex as a BFS source.
    pub exact_threshold: usize,
    /// Number of uniformly sampled sources above the threshold.
    pub sampled_sources: usize,
    pub seed: u64,
}

impl Default for DiameterConfig {
    fn default() -> Self {
        DiameterConfig {
            quantile: 0.9,
            exact_threshold: 20_000,
            sampled_sources: 1_000,
            seed: 42,
        }
    }
}

/// `hist[d]` = number of ordered (source, target) pairs at distance `d`,
/// over the given sources. `hist[0]` is always zero; self pairs are excluded.
pub fn distance_histogram(g: &DecomposedGraph, sources: &[usize]) -> Vec<u64> {
    let n = g.node_count();
    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        if a.len() < b.len() {
            a.resize(b.len(), 0);
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    sources
        .par_iter()
        .fold(
            || (vec![u32::MAX; n], Vec::<u32>::with_capacity(n), vec![0u64]),
            |(mut dist, mut queue, mut hist), &s| {
                dist.fill(u32::MAX);
                queue.clear();
                dist[s] = 0;
                queue.push(s as u32);
                let mut head = 0;
                while head < queue.len() {
                    let x = queue[head] as usize;
                    head += 1;
                    let dx = dist[x] + 1;
                    for &y in g.neighbors(x) {
                        let y = y as usize;
                        if dist[y] == u32::MAX {
                            dist[y] = dx;
                            queue.push(y as u32);
                            if hist.len() <= dx as usize {
                                hist.resize(dx as usize + 1, 0);
                            }
                            hist[dx as usize] += 1;
                        }
                    }
                }
                (dist, queue, hist)
            },
        )
        .map(|(_, _, hist)| hist)
        .reduce(|| vec![0u64], merge)
}

/// Linearly interpolated distance at which the cumulative pair fraction
/// reaches `quantile`, with the fraction at distance zero taken as zero.
pub fn interpolate_effective_diameter(hist: &[u64], quantile: f64) -> Result<f64> {
    let total: u64 = hist.iter().skip(1).sum();
    if total == 0 {
        return Err(Error::validation("effective diameter needs at least one connected pair"));
    }
    let total = total as f64;
    let mut prev = 0.0;
    let mut cum = 0u64;
    for (d, &c) in hist.iter().enumerate().skip(1) {
        cum += c;
        let frac = cum as f64 / total;
        if frac >= quantile - 1e-12 {
            let step = frac - prev;
            let within = if step > 0.0 { (quantile - prev) / step } else { 1.0 };
            return Ok((d - 1) as f64 + within.clamp(0.0, 1.0));
        }
        prev = frac;
    }
    Ok((hist.len() - 1) as f64)
}

pub fn effective_diameter(g: &DecomposedGraph, cfg: &DiameterConfig) -> Result<f64> {
    if !(0.0..=1.0).contains(&cfg.quantile) || cfg.quantile == 0.0 {
        return Err(Error::validation(format!("quantile {} outside (0, 1]", cfg.quantile)));
    }
    if g.edge_count() == 0 {
        return Err(Error::validation("effective diameter of an edgeless graph"));
    }
    let n = g.node_count();
    let sources: Vec<usize> = if n <= cfg.exact_threshold || cfg.sampled_sources >= n {
        (0..n).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut s = rand::seq::index::sample(&mut rng, n, cfg.sampled_sources).into_vec();
        s.sort_unstable();
        s
    };
    let hist = distance_histogram(g, &sources);
    interpolate_effective_diameter(&hist, cfg.quantile)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u32) -> DecomposedGraph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        DecomposedGraph::from_simple_edges(n as usize, &e).unwrap()
    }

    #[test]
    fn complete_graph_is_point_nine() {
        let d = effective_diameter(&complete(10), &DiameterConfig::default()).unwrap();
        assert!((d - 0.9).abs() < 1e-12);
    }

    #[test]
    fn path_of_three() {
        let g = DecomposedGraph::from_simple_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let d = effective_diameter(&g, &DiameterConfig::default()).unwrap();
        assert!((d - 1.7).abs() < 1e-12, "{d}");
    }

    #[test]
    fn edgeless_is_error() {
        let g = DecomposedGraph::from_simple_edges(4, &[]).unwrap();
        assert!(effective_diameter(&g, &DiameterConfig::default()).is_err());
    }

    #[test]
    fn histogram_counts_ordered_pairs() {
        let g = DecomposedGraph::from_simple_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(distance_histogram(&g, &all), vec![0, 6, 4, 2]);
    }

    #[test]
    fn full_sample_equals_exact() {
        let mut e = Vec::new();
        for i in 0..200u32 {
            e.push((i, (i * 7 + 3) % 200));
            e.push((i, (i + 1) % 200));
        }
        e.retain(|(a, b)| a != b);
        let g = DecomposedGraph::from_simple_edges(200, &e).unwrap();
        let exact = effective_diameter(&g, &DiameterConfig::default()).unwrap();
        let sampled = effective_diameter(
            &g,
            &DiameterConfig {
                exact_threshold: 10,
                sampled_sources: 200,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(exact, sampled);
        let a = DiameterConfig {
            exact_threshold: 10,
            sampled_sources: 50,
            seed: 9,
            ..Default::default()
        };
        assert_eq!(effective_diameter(&g, &a).unwrap(), effective_diameter(&g, &a).unwrap());
    }
}
