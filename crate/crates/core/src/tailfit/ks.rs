use crate::error::{Error, Result};

fn sorted(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Two-sample Kolmogorov–Smirnov statistic: sup-norm distance between the
/// empirical CDFs of `a` and `b`.
pub fn ks_dstat(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::validation("KS statistic needs two nonempty samples"));
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::validation("KS statistic of a sample containing NaN"));
    }
    let (a, b) = (sorted(a), sorted(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d.min(1.0))
}

/// One-sample statistic against a continuous CDF.
pub(crate) fn ks_one_sample(sorted_data: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted_data.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < sorted_data.len() {
        let x = sorted_data[i];
        let mut j = i;
        while j < sorted_data.len() && sorted_data[j] == x {
            j += 1;
        }
        let f = cdf(x);
        d = d.max((j as f64 / n - f).abs()).max((f - i as f64 / n).abs());
        i = j;
    }
    d
}
