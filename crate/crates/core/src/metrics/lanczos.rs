//! Thick-restart block Lanczos for the largest-magnitude eigenvalues of a
//! symmetric operator.
//!
//! The basis is kept fully reorthogonalized (two passes of classical
//! Gram–Schmidt). Vectors are split into a processed prefix, whose operator
//! images have been projected onto the basis, and an unprocessed frontier.
//! Writing `H[i][j] = v_i · A v_j`, every processed column satisfies
//! `A v_j = Σ_i H[i][j] v_i` exactly, so the Ritz pairs of the processed block
//! have residual `‖H[frontier, processed] y‖`. A restart keeps the wanted Ritz
//! vectors plus the frontier, which leaves that relation intact.
//!
//! Starting from a block of random vectors lets the iteration resolve
//! eigenvalues of multiplicity up to the block size; whenever the Krylov space
//! becomes invariant, a fresh random direction is injected.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub trait SymmetricOperator: Sync {
    fn dim(&self) -> usize;
    /// `y = A x`.
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

#[derive(Clone, Debug, PartialEq)]
pub struct LanczosConfig {
    /// Processed-basis size that triggers a restart. `None` picks
    /// roughly twice the number of wanted eigenvalues.
    pub krylov_dim: Option<usize>,
    pub block_size: usize,
    /// Ritz residual tolerance relative to the largest Ritz magnitude.
    pub rel_tol: f64,
    pub max_restarts: usize,
    pub seed: u64,
}

impl Default for LanczosConfig {
    fn default() -> Self {
        LanczosConfig {
            krylov_dim: None,
            block_size: 4,
            rel_tol: 1e-8,
            max_restarts: 500,
            seed: 0x5eed,
        }
    }
}

const PAR_THRESHOLD: usize = 1 << 16;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

struct Basis {
    n: usize,
    cap: usize,
    vectors: Vec<Vec<f64>>,
    /// Row-major `cap × cap` projected matrix.
    h: Vec<f64>,
}

impl Basis {
    fn new(n: usize, cap: usize) -> Self {
        Basis {
            n,
            cap,
            vectors: Vec::with_capacity(cap),
            h: vec![0.0; cap * cap],
        }
    }

    fn len(&self) -> usize {
        self.vectors.len()
    }

    fn set_h(&mut self, i: usize, j: usize, value: f64) {
        self.h[i * self.cap + j] = value;
        self.h[j * self.cap + i] = value;
    }

    fn get_h(&self, i: usize, j: usize) -> f64 {
        self.h[i * self.cap + j]
    }

    /// Two-pass Gram–Schmidt of `w` against the whole basis; returns the
    /// accumulated projection coefficients.
    fn orthogonalize(&self, w: &mut [f64]) -> Vec<f64> {
        let mut total = vec![0.0; self.len()];
        for _ in 0..2 {
            let coeffs: Vec<f64> = if self.n * self.len() >= PAR_THRESHOLD {
                self.vectors.par_iter().map(|v| dot(v, w)).collect()
            } else {
                self.vectors.iter().map(|v| dot(v, w)).collect()
            };
            for (c, v) in coeffs.iter().zip(&self.vectors) {
                if *c != 0.0 {
                    for (x, y) in w.iter_mut().zip(v) {
                        *x -= c * y;
                    }
                }
            }
            for (t, c) in total.iter_mut().zip(coeffs) {
                *t += c;
            }
        }
        total
    }

    /// Appends a random unit vector orthogonal to the basis. Returns false
    /// if the basis already spans the space numerically.
    fn push_random(&mut self, rng: &mut ChaCha8Rng) -> bool {
        if self.len() >= self.n {
            return false;
        }
        for _ in 0..8 {
            let mut w: Vec<f64> = (0..self.n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let before = norm(&w);
            self.orthogonalize(&mut w);
            let after = norm(&w);
            if after > 1e-8 * before {
                w.iter_mut().for_each(|x| *x /= after);
                self.vectors.push(w);
                return true;
            }
        }
        false
    }
}

/// Eigenvalues of largest magnitude, signed, ordered by decreasing `|λ|`.
pub fn largest_magnitude_eigenvalues<A: SymmetricOperator>(
    op: &A,
    count: usize,
    cfg: &LanczosConfig,
) -> Result<Vec<f64>> {
    let n = op.dim();
    let want = count.min(n);
    if want == 0 {
        return Ok(Vec::new());
    }
    let block = cfg.block_size.clamp(1, n);
    let kmax = cfg
        .krylov_dim
        .unwrap_or(want + want.max(20) + block)
        .max(want + 2)
        .min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut basis = Basis::new(n, kmax + block + 1);
    for _ in 0..block {
        basis.push_random(&mut rng);
    }

    let mut processed = 0usize;
    let mut w = vec![0.0; n];
    let mut op_norm: f64 = 0.0;

    for _restart in 0..=cfg.max_restarts {
        while processed < basis.len() && processed < kmax {
            let p = processed;
            op.apply(&basis.vectors[p], &mut w);
            op_norm = op_norm.max(norm(&w));
            let coeffs = basis.orthogonalize(&mut w);
            for (i, c) in coeffs.into_iter().enumerate() {
                basis.set_h(i, p, c);
            }
            processed += 1;
            let residual = norm(&w);
            if basis.len() < n && residual > 1e-12 * op_norm.max(f64::MIN_POSITIVE) {
                w.iter_mut().for_each(|x| *x /= residual);
                let idx = basis.len();
                basis.vectors.push(w.clone());
                basis.set_h(idx, p, residual);
            } else if processed == basis.len() && basis.len() < n {
                // invariant subspace: continue from a fresh direction
                basis.push_random(&mut rng);
            }
        }

        let p = processed;
        let hpp = DMatrix::from_fn(p, p, |i, j| basis.get_h(i, j));
        let eig = SymmetricEigen::new(hpp);
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .abs()
                .partial_cmp(&eig.eigenvalues[a].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        });

        let frontier: Vec<usize> = (p..basis.len()).collect();
        let coupling = |ritz: usize| -> Vec<f64> {
            frontier
                .iter()
                .map(|&f| (0..p).map(|j| basis.get_h(f, j) * eig.eigenvectors[(j, ritz)]).sum())
                .collect()
        };
        let scale = eig.eigenvalues[order[0]].abs();
        let converged = p == n
            || order
                .iter()
                .take(want)
                .all(|&r| norm(&coupling(r)) <= cfg.rel_tol * scale);
        if converged {
            let take = want.min(p);
            return Ok(order[..take].iter().map(|&r| eig.eigenvalues[r]).collect());
        }

        let keep = (want + (p - want) / 2).min(p - 1).max(want.min(p - 1));
        let kept: Vec<usize> = order[..keep].to_vec();
        let couplings: Vec<Vec<f64>> = kept.iter().map(|&r| coupling(r)).collect();
        let old = std::mem::take(&mut basis.vectors);
        let ritz_vectors: Vec<Vec<f64>> = kept
            .par_iter()
            .map(|&r| {
                let mut u = vec![0.0; n];
                for (j, v) in old.iter().take(p).enumerate() {
                    let c = eig.eigenvectors[(j, r)];
                    if c != 0.0 {
                        for (x, y) in u.iter_mut().zip(v) {
                            *x += c * y;
                        }
                    }
                }
                u
            })
            .collect();

        let mut fresh = Basis::new(n, basis.cap);
        fresh.vectors = ritz_vectors;
        fresh.vectors.extend(old.into_iter().skip(p));
        for (i, &r) in kept.iter().enumerate() {
            fresh.set_h(i, i, eig.eigenvalues[r]);
            for (f, c) in couplings[i].iter().enumerate() {
                fresh.set_h(keep + f, i, *c);
            }
        }
        basis = fresh;
        processed = keep;
        if processed == basis.len() {
            basis.push_random(&mut rng);
        }
    }

    Err(Error::Convergence {
        solver: "lanczos",
        iterations: cfg.max_restarts,
    })
}

/// Adjacency matrix of a simple graph in CSR form.
pub struct CsrOperator<'a> {
    pub offsets: &'a [usize],
    pub neighbors: &'a [u32],
}

impl SymmetricOperator for CsrOperator<'_> {
    fn dim(&self) -> usize {
        self.offsets.len() - 1
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let row = |v: usize| -> f64 {
            self.neighbors[self.offsets[v]..self.offsets[v + 1]]
                .iter()
                .map(|&u| x[u as usize])
                .sum()
        };
        if self.neighbors.len() >= PAR_THRESHOLD {
            y.par_iter_mut().enumerate().for_each(|(v, out)| *out = row(v));
        } else {
            y.iter_mut().enumerate().for_each(|(v, out)| *out = row(v));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Diag(Vec<f64>);

    impl SymmetricOperator for Diag {
        fn dim(&self) -> usize {
            self.0.len()
        }
        fn apply(&self, x: &[f64], y: &mut [f64]) {
            for i in 0..x.len() {
                y[i] = self.0[i] * x[i];
            }
        }
    }

    #[test]
    fn diagonal_with_repeats_and_restarts() {
        let mut d: Vec<f64> = (0..300).map(|i| (i as f64 * 0.37).sin() * 3.0).collect();
        d[10] = 7.0;
        d[20] = -7.0;
        d[30] = 7.0;
        let cfg = LanczosConfig {
            krylov_dim: Some(30),
            ..Default::default()
        };
        let got = largest_magnitude_eigenvalues(&Diag(d.clone()), 8, &cfg).unwrap();
        let mut want: Vec<f64> = d.iter().map(|x| x.abs()).collect();
        want.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (g, w) in got.iter().zip(&want) {
            assert!((g.abs() - w).abs() < 1e-7, "{got:?} vs {:?}", &want[..8]);
        }
    }

    #[test]
    fn zero_operator() {
        let got = largest_magnitude_eigenvalues(&Diag(vec![0.0; 5]), 3, &LanczosConfig::default()).unwrap();
        assert_eq!(got, vec![0.0; 3]);
    }

    #[test]
    fn empty_and_zero_count() {
        assert!(largest_magnitude_eigenvalues(&Diag(vec![]), 3, &LanczosConfig::default())
            .unwrap()
            .is_empty());
        assert!(largest_magnitude_eigenvalues(&Diag(vec![1.0]), 0, &LanczosConfig::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn restart_budget_exhaustion_is_reported() {
        let d: Vec<f64> = (0..400).map(|i| 1.0 + 1e-9 * i as f64).collect();
        let cfg = LanczosConfig {
            krylov_dim: Some(6),
            block_size: 1,
            rel_tol: 1e-15,
            max_restarts: 1,
            seed: 1,
        };
        assert!(matches!(
            largest_magnitude_eigenvalues(&Diag(d), 3, &cfg),
            Err(Error::Convergence { .. })
        ));
    }
}
