use rayon::prelude::*;

use crate::decompose::DecomposedGraph;
use crate::error::{Error, Result};

/// Number of triangles through each vertex.
pub fn triangles_per_node(g: &DecomposedGraph) -> Vec<u64> {
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map_init(
            || vec![false; n],
            |mark, v| {
                let nv = g.neighbors(v);
                if nv.len() < 2 {
                    return 0;
                }
                for &u in nv {
                    mark[u as usize] = true;
                }
                let mut closed = 0u64;
                for &u in nv {
                    closed += g.neighbors(u as usize).iter().filter(|&&w| mark[w as usize]).count() as u64;
                }
                for &u in nv {
                    mark[u as usize] = false;
                }
                closed / 2
            },
        )
        .collect()
}

/// `2 t_v / (d_v (d_v - 1))`, zero for vertices of degree below two.
pub fn local_clustering(g: &DecomposedGraph) -> Vec<f64> {
    triangles_per_node(g)
        .into_iter()
        .enumerate()
        .map(|(v, t)| {
            let d = g.degree(v) as f64;
            if d < 2.0 {
                0.0
            } else {
                2.0 * t as f64 / (d * (d - 1.0))
            }
        })
        .collect()
}

/// Mean local clustering coefficient over all vertices, isolated ones included.
pub fn clustering_coefficient(g: &DecomposedGraph) -> Result<f64> {
    if g.node_count() == 0 {
        return Err(Error::validation("clustering coefficient of an empty graph"));
    }
    let local = local_clustering(g);
    Ok(local.iter().sum::<f64>() / local.len() as f64)
}

/// Global coefficient: closed triples over connected triples.
pub fn transitivity(g: &DecomposedGraph) -> Result<f64> {
    if g.node_count() == 0 {
        return Err(Error::validation("transitivity of an empty graph"));
    }
    let closed: u64 = triangles_per_node(g).iter().sum();
    let triples: u64 = (0..g.node_count())
        .map(|v| {
            let d = g.degree(v) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    Ok(if triples == 0 { 0.0 } else { closed as f64 / triples as f64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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
    fn triangle_and_star() {
        assert_eq!(clustering_coefficient(&complete(3)).unwrap(), 1.0);
        let star =
            DecomposedGraph::from_simple_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert_eq!(clustering_coefficient(&star).unwrap(), 0.0);
        assert_eq!(transitivity(&star).unwrap(), 0.0);
    }

    #[test]
    fn complete_graphs_are_one() {
        for n in 3..12 {
            assert!((clustering_coefficient(&complete(n)).unwrap() - 1.0).abs() < 1e-12);
            assert!((transitivity(&complete(n)).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn isolated_vertices_pull_mean_down() {
        let g = DecomposedGraph::from_simple_edges(6, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!((clustering_coefficient(&g).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn empty_graph_errors() {
        let g = DecomposedGraph::from_simple_edges(0, &[]).unwrap();
        assert!(clustering_coefficient(&g).is_err());
    }

    proptest! {
        #[test]
        fn triangles_match_brute_force(n in 3usize..25, raw in prop::collection::vec((0u32..25, 0u32..25), 0..90)) {
            let edges: Vec<(u32, u32)> = raw.into_iter()
                .map(|(a, b)| (a % n as u32, b % n as u32))
                .filter(|(a, b)| a != b)
                .collect();
            let g = DecomposedGraph::from_simple_edges(n, &edges).unwrap();
            let t = triangles_per_node(&g);
            for v in 0..n {
                let mut count = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if g.has_edge(v, a) && g.has_edge(v, b) && g.has_edge(a, b) {
                            count += 1;
                        }
                    }
                }
                prop_assert_eq!(t[v], count);
            }
        }

        #[test]
        fn bipartite_graphs_have_zero_clustering(a in 1usize..8, b in 1usize..8, raw in prop::collection::vec((0u32..8, 0u32..8), 0..40)) {
            let edges: Vec<(u32, u32)> = raw.into_iter()
                .map(|(x, y)| (x % a as u32, a as u32 + y % b as u32))
                .collect();
            let g = DecomposedGraph::from_simple_edges(a + b, &edges).unwrap();
            prop_assert_eq!(clustering_coefficient(&g).unwrap(), 0.0);
        }
    }
}
