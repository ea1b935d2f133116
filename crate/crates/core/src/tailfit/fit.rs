//! Continuous maximum-likelihood fits on the tail `x ≥ xmin`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::optimize::nelder_mead;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Exponential,
    Powerlaw,
    TruncatedPowerlaw,
    Lognormal,
}

impl Family {
    pub const HEAVY: [Family; 3] = [Family::Powerlaw, Family::TruncatedPowerlaw, Family::Lognormal];

    pub fn name(self) -> &'static str {
        match self {
            Family::Exponential => "exponential",
            Family::Powerlaw => "powerlaw",
            Family::TruncatedPowerlaw => "truncated-powerlaw",
            Family::Lognormal => "lognormal",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FitParams {
    Exponential { lambda: f64 },
    Powerlaw { alpha: f64 },
    TruncatedPowerlaw { alpha: f64, lambda: f64 },
    Lognormal { mu: f64, sigma: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub family: Family,
    pub params: Option<FitParams>,
    pub log_likelihood: Option<f64>,
    pub xmin: f64,
    /// False when the truncated power-law normalizer could not be evaluated.
    pub available: bool,
}

/// Sufficient statistics of the tail sample.
#[derive(Clone, Copy, Debug)]
struct Tail {
    n: f64,
    xmin: f64,
    sum: f64,
    sum_ln: f64,
    sum_ln_sq: f64,
    max: f64,
}

impl Tail {
    fn new(data: &[f64], xmin: f64) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::validation("cannot fit an empty sample"));
        }
        if !(xmin > 0.0 && xmin.is_finite()) {
            return Err(Error::validation(format!("xmin must be positive, got {xmin}")));
        }
        let mut t = Tail {
            n: data.len() as f64,
            xmin,
            sum: 0.0,
            sum_ln: 0.0,
            sum_ln_sq: 0.0,
            max: f64::NEG_INFINITY,
        };
        for &x in data {
            if !x.is_finite() || x < xmin {
                return Err(Error::validation(format!("value {x} below xmin {xmin}")));
            }
            let l = x.ln();
            t.sum += x;
            t.sum_ln += l;
            t.sum_ln_sq += l * l;
            t.max = t.max.max(x);
        }
        Ok(t)
    }

    fn degenerate(&self) -> Error {
        Error::validation(format!("sample has no spread above xmin {}", self.xmin))
    }
}

/// Natural log of `∫_xmin^∞ x^(-alpha) e^(-lambda x) dx` for `lambda > 0`.
///
/// Evaluated by substituting `x = xmin e^u` and integrating
/// `exp(-(alpha-1) u - lambda xmin e^u)` with panelled 8-point Gauss–Legendre,
/// accumulating relative to the integrand's peak so nothing underflows.
pub fn ln_truncated_powerlaw_normalizer(alpha: f64, lambda: f64, xmin: f64) -> Option<f64> {
    if !(lambda > 0.0 && xmin > 0.0 && alpha.is_finite() && lambda.is_finite()) {
        return None;
    }
    const NODES: [f64; 4] = [
        0.183_434_642_495_649_8,
        0.525_532_409_916_329,
        0.796_666_477_413_626_7,
        0.960_289_856_497_536_3,
    ];
    const WEIGHTS: [f64; 4] = [
        0.362_683_783_378_362,
        0.313_706_645_877_887_3,
        0.222_381_034_453_374_5,
        0.101_228_536_290_376_3,
    ];
    let a = alpha - 1.0;
    let c = lambda * xmin;
    let exponent = |u: f64| -a * u - c * u.exp();
    if a < 0.0 {
        // integrand rises before it falls; locate the peak of the exponent
        let peak = (-a / c).ln().max(0.0);
        return integrate_from(peak, exponent, a, c, &NODES, &WEIGHTS, true)
            .map(|v| v + (1.0 - alpha) * xmin.ln());
    }
    integrate_from(0.0, exponent, a, c, &NODES, &WEIGHTS, false).map(|v| v + (1.0 - alpha) * xmin.ln())
}

fn integrate_from(
    peak: f64,
    exponent: impl Fn(f64) -> f64,
    a: f64,
    c: f64,
    nodes: &[f64; 4],
    weights: &[f64; 4],
    two_sided: bool,
) -> Option<f64> {
    let top = exponent(peak);
    if !top.is_finite() {
        return None;
    }
    let slope = |u: f64| (a + c * u.exp()).abs().max(1e-3);
    let panel = |lo: f64, hi: f64| -> f64 {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let mut s = 0.0;
        for (x, w) in nodes.iter().zip(weights) {
            s += w * ((exponent(mid + half * x) - top).exp() + (exponent(mid - half * x) - top).exp());
        }
        s * half
    };
    let mut total = 0.0;
    // rightwards from the peak until the exponent drops 60 below it
    let mut u = peak;
    for _ in 0..100_000 {
        if exponent(u) - top < -60.0 {
            break;
        }
        let h = (0.5 / slope(u)).clamp(1e-4, 1.0);
        total += panel(u, u + h);
        u += h;
    }
    if two_sided {
        let mut u = peak;
        for _ in 0..100_000 {
            if u <= 0.0 || exponent(u) - top < -60.0 {
                break;
            }
            let h = (0.5 / slope(u)).clamp(1e-4, 1.0).min(u);
            total += panel(u - h, u);
            u -= h;
        }
    }
    let v = top + total.ln();
    v.is_finite().then_some(v)
}

fn tpl_log_likelihood(t: &Tail, alpha: f64, lambda: f64) -> Option<f64> {
    let ln_z = ln_truncated_powerlaw_normalizer(alpha, lambda, t.xmin)?;
    let ll = -alpha * t.sum_ln - lambda * t.sum - t.n * ln_z;
    ll.is_finite().then_some(ll)
}

/// Log-likelihood of `params` on `data` (all values ≥ `xmin`).
pub fn log_likelihood(data: &[f64], params: &FitParams, xmin: f64) -> Result<Option<f64>> {
    let t = Tail::new(data, xmin)?;
    Ok(log_likelihood_tail(&t, params))
}

fn log_likelihood_tail(t: &Tail, params: &FitParams) -> Option<f64> {
    let ll = match *params {
        FitParams::Exponential { lambda } => t.n * lambda.ln() - lambda * (t.sum - t.n * t.xmin),
        FitParams::Powerlaw { alpha } => {
            t.n * ((alpha - 1.0) / t.xmin).ln() - alpha * (t.sum_ln - t.n * t.xmin.ln())
        }
        FitParams::TruncatedPowerlaw { alpha, lambda } => return tpl_log_likelihood(t, alpha, lambda),
        FitParams::Lognormal { mu, sigma } => {
            let ss = t.sum_ln_sq - 2.0 * mu * t.sum_ln + t.n * mu * mu;
            -t.sum_ln - t.n * sigma.ln() - 0.5 * t.n * (2.0 * PI).ln() - ss / (2.0 * sigma * sigma)
        }
    };
    ll.is_finite().then_some(ll)
}

fn fit_tail(t: &Tail, family: Family) -> Result<FitResult> {
    let spread = t.sum / t.n - t.xmin;
    let params = match family {
        Family::Exponential => {
            if spread <= 0.0 {
                return Err(t.degenerate());
            }
            Some(FitParams::Exponential { lambda: 1.0 / spread })
        }
        Family::Powerlaw => {
            let s = t.sum_ln - t.n * t.xmin.ln();
            if s <= 0.0 {
                return Err(t.degenerate());
            }
            Some(FitParams::Powerlaw { alpha: 1.0 + t.n / s })
        }
        Family::Lognormal => {
            let mu = t.sum_ln / t.n;
            let var = (t.sum_ln_sq / t.n - mu * mu).max(0.0);
            if var <= 1e-300 {
                return Err(t.degenerate());
            }
            Some(FitParams::Lognormal { mu, sigma: var.sqrt() })
        }
        Family::TruncatedPowerlaw => {
            if spread <= 0.0 {
                return Err(t.degenerate());
            }
            fit_truncated_powerlaw(t)
        }
    };
    let log_likelihood = params.as_ref().and_then(|p| log_likelihood_tail(t, p));
    let available = params.is_some() && log_likelihood.is_some();
    Ok(FitResult {
        family,
        params: if available { params } else { None },
        log_likelihood: if available { log_likelihood } else { None },
        xmin: t.xmin,
        available,
    })
}

/// Direct search over `alpha = 1 + e^s`, `lambda = e^r / xmin`.
fn fit_truncated_powerlaw(t: &Tail) -> Option<FitParams> {
    let decode = |z: &[f64]| (1.0 + z[0].exp(), z[1].exp() / t.xmin);
    let objective = |z: &[f64]| {
        if z[0] > 5.0 || z[1] > 40.0 || z[0] < -40.0 || z[1] < -60.0 {
            return f64::INFINITY;
        }
        let (alpha, lambda) = decode(z);
        tpl_log_likelihood(t, alpha, lambda).map_or(f64::INFINITY, |ll| -ll)
    };
    let pl_alpha = {
        let s = t.sum_ln - t.n * t.xmin.ln();
        if s > 0.0 {
            1.0 + t.n / s
        } else {
            2.0
        }
    };
    let mean = t.sum / t.n;
    let starts = [
        ((pl_alpha - 1.0).max(1e-3), 1e-3 * t.xmin / mean),
        (0.5, t.xmin / mean),
        (1.0, 0.1 * t.xmin / mean),
        (0.05, 1e-6),
    ];
    let mut best: Option<(Vec<f64>, f64)> = None;
    for (s, r) in starts {
        let z0 = [s.ln(), r.max(1e-300).ln()];
        let (z, v) = nelder_mead(objective, &z0, &[0.5, 1.0], 1e-13, 4_000);
        if v.is_finite() && best.as_ref().is_none_or(|b| v < b.1) {
            best = Some((z, v));
        }
    }
    let (z, _) = best?;
    // polish from the best start
    let (z, v) = nelder_mead(objective, &z, &[0.05, 0.1], 1e-15, 4_000);
    if !v.is_finite() {
        return None;
    }
    let (alpha, lambda) = decode(&z);
    Some(FitParams::TruncatedPowerlaw { alpha, lambda })
}

pub fn fit(data: &[f64], family: Family, xmin: f64) -> Result<FitResult> {
    let t = Tail::new(data, xmin)?;
    fit_tail(&t, family)
}

/// `logLik(heavy) − logLik(exponential)` on the same tail; `None` when the
/// heavy-family fit is unavailable.
pub fn loglik_ratio(data: &[f64], heavy: Family, xmin: f64) -> Result<Option<f64>> {
    let t = Tail::new(data, xmin)?;
    let exp = fit_tail(&t, Family::Exponential)?;
    let other = fit_tail(&t, heavy)?;
    Ok(match (other.log_likelihood, exp.log_likelihood) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    })
}
