//! Tail fitting for degree and singular-value distributions.
//!
//! Zeros are dropped before fitting, since every family here lives on
//! `x > 0`.

mod fit;
mod ks;
mod lilliefors;
mod optimize;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use fit::{fit, ln_truncated_powerlaw_normalizer, log_likelihood, loglik_ratio, Family, FitParams, FitResult};
pub use ks::ks_dstat;
pub use lilliefors::{
    critical_value, lilliefors_exp, LillieforsConfig, LillieforsOutcome, DEFAULT_MC_REPS, DEFAULT_SIGNIFICANCE,
    MIN_SAMPLE,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XminPolicy {
    /// Smallest positive value.
    #[default]
    Minimum,
    /// Candidate minimizing the KS distance between the tail and its
    /// power-law fit.
    Search,
    Fixed(f64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TailConfig {
    pub xmin: XminPolicy,
    pub lilliefors: LillieforsConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailVerdict {
    pub lilliefors_rejected: bool,
    pub lilliefors: LillieforsOutcome,
    /// `None` marks an unavailable ratio.
    pub ratios: BTreeMap<Family, Option<f64>>,
    pub heavy_tailed: bool,
    pub xmin: f64,
    pub tail_size: usize,
}

/// Strictly positive values; errors on NaN, infinities or negatives.
pub fn positive_part(data: &[f64]) -> Result<Vec<f64>> {
    if let Some(x) = data.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(Error::validation(format!("tail data must be finite and non-negative, got {x}")));
    }
    Ok(data.iter().copied().filter(|&x| x > 0.0).collect())
}

/// Clauset-style search; tails with fewer than `min_tail` points are skipped.
pub fn search_xmin(data: &[f64], min_tail: usize) -> Result<f64> {
    let mut xs = positive_part(data)?;
    if xs.is_empty() {
        return Err(Error::validation("no positive values to fit"));
    }
    xs.sort_by(f64::total_cmp);
    let mut candidates = xs.clone();
    candidates.dedup();
    let mut best = (f64::INFINITY, xs[0]);
    for &c in &candidates {
        let start = xs.partition_point(|&x| x < c);
        let tail = &xs[start..];
        if tail.len() < min_tail.max(2) {
            break;
        }
        let Ok(f) = fit(tail, Family::Powerlaw, c) else {
            continue;
        };
        let Some(FitParams::Powerlaw { alpha }) = f.params else {
            continue;
        };
        let d = ks::ks_one_sample(tail, |x| 1.0 - (x / c).powf(1.0 - alpha));
        if d < best.0 {
            best = (d, c);
        }
    }
    Ok(best.1)
}

fn resolve_xmin(positive: &[f64], policy: XminPolicy) -> Result<f64> {
    match policy {
        XminPolicy::Minimum => Ok(positive.iter().copied().fold(f64::INFINITY, f64::min)),
        XminPolicy::Search => search_xmin(positive, 10),
        XminPolicy::Fixed(x) => Ok(x),
    }
}

/// Heavy-tailed when the exponential is rejected or any heavy family wins
/// its likelihood ratio.
pub fn heavy_tail_verdict(data: &[f64], cfg: &TailConfig) -> Result<TailVerdict> {
    let positive = positive_part(data)?;
    if positive.is_empty() {
        return Err(Error::validation("no positive values to fit"));
    }
    let xmin = resolve_xmin(&positive, cfg.xmin)?;
    let tail: Vec<f64> = positive.into_iter().filter(|&x| x >= xmin).collect();
    if tail.is_empty() {
        return Err(Error::validation(format!("no values at or above xmin {xmin}")));
    }
    let lill = lilliefors_exp(&tail, &cfg.lilliefors)?;
    let mut ratios = BTreeMap::new();
    for fam in Family::HEAVY {
        // a sample without spread has no exponential fit to compare with
        let r = loglik_ratio(&tail, fam, xmin).unwrap_or(None);
        ratios.insert(fam, r);
    }
    let any_positive = ratios.values().any(|r| r.is_some_and(|r| r > 0.0));
    Ok(TailVerdict {
        lilliefors_rejected: lill.rejected,
        lilliefors: lill,
        heavy_tailed: lill.rejected || any_positive,
        ratios,
        xmin,
        tail_size: tail.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Pareto};

    #[test]
    fn zeros_are_dropped() {
        let v = heavy_tail_verdict(&[0.0, 0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 8.0], &TailConfig::default()).unwrap();
        assert_eq!(v.tail_size, 6);
        assert_eq!(v.xmin, 1.0);
        assert!(heavy_tail_verdict(&[0.0, 0.0], &TailConfig::default()).is_err());
        assert!(heavy_tail_verdict(&[-1.0, 2.0], &TailConfig::default()).is_err());
    }

    #[test]
    fn constant_sample_has_no_ratios() {
        let v = heavy_tail_verdict(&[4.0; 10], &TailConfig::default()).unwrap();
        assert!(v.ratios.values().all(Option::is_none));
        assert!(v.heavy_tailed);
    }

    #[test]
    fn search_finds_pareto_onset() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut data: Vec<f64> = (0..2000).map(|i| 1.0 + (i % 50) as f64 / 50.0).collect();
        let p = Pareto::new(5.0, 1.5).unwrap();
        data.extend((0..3000).map(|_| p.sample(&mut rng)));
        let x = search_xmin(&data, 10).unwrap();
        assert!((5.0..20.0).contains(&x), "{x}");
    }
}
