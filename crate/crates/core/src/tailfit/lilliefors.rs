use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ks::ks_one_sample;
use crate::error::{Error, Result};

pub const DEFAULT_SIGNIFICANCE: f64 = 0.025;
pub const DEFAULT_MC_REPS: usize = 1_000;
pub const MIN_SAMPLE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LillieforsConfig {
    pub significance: f64,
    pub mc_reps: usize,
    pub seed: u64,
}

impl Default for LillieforsConfig {
    fn default() -> Self {
        LillieforsConfig {
            significance: DEFAULT_SIGNIFICANCE,
            mc_reps: DEFAULT_MC_REPS,
            seed: 42,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LillieforsOutcome {
    pub rejected: bool,
    pub stat: f64,
    pub critical: f64,
}

/// KS distance between the sample and an exponential with the sample's mean.
fn exp_stat(sorted: &[f64]) -> f64 {
    let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
    ks_one_sample(sorted, |x| 1.0 - (-x / mean).exp())
}

type CacheKey = (usize, usize, u64, u64);

fn cache() -> &'static Mutex<HashMap<CacheKey, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, f64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Monte Carlo critical value for samples of size `n`. The statistic is
/// scale invariant, so unit-rate replicates suffice. Replicate `r` draws
/// from its own ChaCha stream, so the value does not depend on scheduling.
pub fn critical_value(n: usize, cfg: &LillieforsConfig) -> Result<f64> {
    if n < MIN_SAMPLE {
        return Err(Error::validation(format!("Lilliefors test needs n >= {MIN_SAMPLE}, got {n}")));
    }
    if cfg.mc_reps == 0 || !(cfg.significance > 0.0 && cfg.significance < 1.0) {
        return Err(Error::validation("Lilliefors needs mc_reps >= 1 and significance in (0, 1)"));
    }
    let key = (n, cfg.mc_reps, cfg.seed, cfg.significance.to_bits());
    if let Some(&c) = cache().lock().unwrap().get(&key) {
        return Ok(c);
    }
    let mut stats: Vec<f64> = (0..cfg.mc_reps as u64)
        .into_par_iter()
        .map_init(
            || vec![0.0; n],
            |buf, rep| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(rep);
                for x in buf.iter_mut() {
                    *x = -(1.0 - rng.random::<f64>()).ln();
                }
                buf.sort_by(f64::total_cmp);
                exp_stat(buf)
            },
        )
        .collect();
    stats.sort_by(f64::total_cmp);
    let idx = ((1.0 - cfg.significance) * cfg.mc_reps as f64).ceil() as usize;
    let c = stats[idx.clamp(1, cfg.mc_reps) - 1];
    cache().lock().unwrap().insert(key, c);
    Ok(c)
}

/// Lilliefors test of exponentiality; rejects when the statistic exceeds
/// the Monte Carlo critical value.
pub fn lilliefors_exp(data: &[f64], cfg: &LillieforsConfig) -> Result<LillieforsOutcome> {
    if data.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::validation("Lilliefors test needs positive finite data"));
    }
    let critical = critical_value(data.len(), cfg)?;
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let stat = exp_stat(&sorted);
    Ok(LillieforsOutcome {
        rejected: stat > critical,
        stat,
        critical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_data_is_rejected() {
        let out = lilliefors_exp(&[3.0; 20], &LillieforsConfig::default()).unwrap();
        assert!((out.stat - (1.0 - (-1.0f64).exp())).abs() < 1e-12);
        assert!(out.rejected);
    }

    #[test]
    fn tiny_or_invalid_samples_error() {
        let cfg = LillieforsConfig::default();
        assert!(lilliefors_exp(&[1.0, 2.0, 3.0, 4.0], &cfg).is_err());
        assert!(lilliefors_exp(&[1.0, 2.0, 3.0, 4.0, 0.0], &cfg).is_err());
    }

    #[test]
    fn critical_values_decrease_with_n() {
        let cfg = LillieforsConfig::default();
        let c: Vec<f64> = [50, 500, 5000].iter().map(|&n| critical_value(n, &cfg).unwrap()).collect();
        assert!(c[0] > c[1] && c[1] > c[2], "{c:?}");
        // asymptotic 2.5% point is close to 1.2 / sqrt(n)
        assert!((c[2] * 5000f64.sqrt() - 1.2).abs() < 0.15, "{c:?}");
    }

    #[test]
    fn reproducible() {
        let cfg = LillieforsConfig {
            mc_reps: 200,
            seed: 7,
            ..Default::default()
        };
        let a = critical_value(30, &cfg).unwrap();
        cache().lock().unwrap().clear();
        assert_eq!(a, critical_value(30, &cfg).unwrap());
    }
}
