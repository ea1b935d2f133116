use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::components::component_labels;
use super::lanczos::{largest_magnitude_eigenvalues, CsrOperator, LanczosConfig};
use crate::decompose::DecomposedGraph;
use crate::error::{Error, Result};

/// Default number of singular values computed per graph.
pub const DEFAULT_SPECTRUM_SIZE: usize = 500;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularSpectrum {
    /// Non-increasing, non-negative.
    pub values: Vec<f64>,
    pub requested: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumConfig {
    pub lanczos: LanczosConfig,
    /// Connected components up to this size are solved densely.
    pub dense_limit: usize,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig {
            lanczos: LanczosConfig::default(),
            dense_limit: 64,
        }
    }
}

impl SpectrumConfig {
    /// Every component goes through the iterative solver.
    pub fn iterative_only() -> Self {
        SpectrumConfig {
            dense_limit: 0,
            ..Default::default()
        }
    }
}

pub fn default_spectrum_size(g: &DecomposedGraph) -> usize {
    g.node_count().min(DEFAULT_SPECTRUM_SIZE)
}

pub fn singular_values(g: &DecomposedGraph, m: usize) -> Result<SingularSpectrum> {
    singular_values_with(g, m, &SpectrumConfig::default())
}

/// Top `m` singular values of the 0/1 adjacency matrix. The adjacency is
/// symmetric, so these are the largest absolute eigenvalues; the spectrum is
/// assembled per connected component.
pub fn singular_values_with(g: &DecomposedGraph, m: usize, cfg: &SpectrumConfig) -> Result<SingularSpectrum> {
    if m == 0 {
        return Err(Error::validation("number of singular values must be >= 1"));
    }
    let n = g.node_count();
    let (labels, count) = component_labels(g);
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); count];
    for (v, &l) in labels.iter().enumerate() {
        members[l as usize].push(v as u32);
    }
    let mut local = vec![0u32; n];
    let mut values: Vec<f64> = Vec::with_capacity(m.min(n));
    for comp in &members {
        let size = comp.len();
        let take = m.min(size);
        match size {
            1 => {
                values.push(0.0);
                continue;
            }
            2 => {
                values.extend([1.0, 1.0]);
                continue;
            }
            _ => {}
        }
        for (i, &v) in comp.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let mut offsets = Vec::with_capacity(size + 1);
        let mut neighbors = Vec::new();
        offsets.push(0);
        for &v in comp {
            neighbors.extend(g.neighbors(v as usize).iter().map(|&u| local[u as usize]));
            offsets.push(neighbors.len());
        }
        if size <= cfg.dense_limit {
            let mut a = DMatrix::<f64>::zeros(size, size);
            for i in 0..size {
                for &j in &neighbors[offsets[i]..offsets[i + 1]] {
                    a[(i, j as usize)] = 1.0;
                }
            }
            let mut eig: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().map(|x| x.abs()).collect();
            eig.sort_by(|a, b| b.total_cmp(a));
            values.extend(eig.into_iter().take(take));
        } else {
            let op = CsrOperator {
                offsets: &offsets,
                neighbors: &neighbors,
            };
            let eig = largest_magnitude_eigenvalues(&op, take, &cfg.lanczos)?;
            values.extend(eig.into_iter().map(f64::abs));
        }
    }
    values.sort_by(|a, b| b.total_cmp(a));
    values.truncate(m.min(n));
    Ok(SingularSpectrum { values, requested: m })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = DecomposedGraph::from_simple_edges(2, &[(0, 1)]).unwrap();
        let s = singular_values(&g, 5).unwrap();
        assert_eq!(s.values, vec![1.0, 1.0]);
    }

    #[test]
    fn star_closed_form_both_paths() {
        let g = DecomposedGraph::from_simple_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        for cfg in [SpectrumConfig::default(), SpectrumConfig::iterative_only()] {
            let s = singular_values_with(&g, 5, &cfg).unwrap();
            let want = [2.0, 2.0, 0.0, 0.0, 0.0];
            for (a, b) in s.values.iter().zip(want) {
                assert!((a - b).abs() < 1e-10, "{:?}", s.values);
            }
        }
    }

    #[test]
    fn zero_count_rejected() {
        let g = DecomposedGraph::from_simple_edges(2, &[(0, 1)]).unwrap();
        assert!(singular_values(&g, 0).is_err());
    }

    #[test]
    fn disjoint_cliques_keep_multiplicity() {
        let mut e = Vec::new();
        for c in 0..20u32 {
            let base = c * 5;
            for i in 0..5 {
                for j in i + 1..5 {
                    e.push((base + i, base + j));
                }
            }
        }
        let g = DecomposedGraph::from_simple_edges(100, &e).unwrap();
        let s = singular_values_with(&g, 25, &SpectrumConfig::iterative_only()).unwrap();
        assert_eq!(s.values.len(), 25);
        for v in &s.values[..20] {
            assert!((v - 4.0).abs() < 1e-8);
        }
        for v in &s.values[20..] {
            assert!((v - 1.0).abs() < 1e-8);
        }
    }
}
