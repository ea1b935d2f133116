//! Scores a generated hypergraph against the real one, pattern by pattern.

use serde::{Deserialize, Serialize};

use crate::analysis::{analyze_unchecked, AnalysisConfig, LevelReport};
use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::metrics::DegreeHistogram;
use crate::tailfit::ks_dstat;

/// KS distance below which a distribution pattern scores.
pub const KS_THRESHOLD: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pattern {
    /// Giant connected component.
    P1,
    /// Degree distribution.
    P2,
    /// Effective diameter.
    P3,
    /// Clustering coefficient.
    P4,
    /// Singular-value distribution.
    P5,
}

impl Pattern {
    pub const ALL: [Pattern; 5] = [Pattern::P1, Pattern::P2, Pattern::P3, Pattern::P4, Pattern::P5];
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternScore {
    pub pattern: Pattern,
    pub applicable: bool,
    pub awarded: bool,
    pub real: Option<f64>,
    pub generated: Option<f64>,
    /// KS distance for P2 and P5.
    pub distance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelScore {
    pub level: usize,
    pub real_shattered: bool,
    pub patterns: Vec<PatternScore>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreCard {
    pub levels: Vec<LevelScore>,
    pub total: usize,
    pub applicable: usize,
}

/// `(2x/3, 4x/3)`.
pub fn in_diameter_range(real: f64, generated: f64) -> bool {
    generated > 2.0 * real / 3.0 && generated < 4.0 * real / 3.0
}

/// `(2c/3, min(4c/3, 1))`, with the upper end closed when it is 1 so that a
/// clustering of exactly 1 can match itself.
pub fn in_clustering_range(real: f64, generated: f64) -> bool {
    let hi = 4.0 * real / 3.0;
    generated > 2.0 * real / 3.0 && if hi >= 1.0 { generated <= 1.0 } else { generated < hi }
}

fn degree_sample(h: &DegreeHistogram) -> Vec<f64> {
    h.iter().flat_map(|(d, c)| std::iter::repeat_n(d as f64, c)).collect()
}

fn ks(a: &[f64], b: &[f64]) -> Option<f64> {
    ks_dstat(a, b).ok()
}

pub fn score_level(real: &LevelReport, gen: &LevelReport) -> LevelScore {
    let applicable = !real.is_shattered();
    let mut patterns = Vec::new();
    let na = |pattern| PatternScore {
        pattern,
        applicable: false,
        awarded: false,
        real: None,
        generated: None,
        distance: None,
    };
    for pattern in Pattern::ALL {
        if !applicable {
            patterns.push(na(pattern));
            continue;
        }
        let s = match pattern {
            Pattern::P1 => PatternScore {
                pattern,
                applicable: true,
                awarded: gen.components.is_giant,
                real: Some(real.components.largest_frac),
                generated: Some(gen.components.largest_frac),
                distance: None,
            },
            Pattern::P2 | Pattern::P5 => {
                let (a, b) = if pattern == Pattern::P2 {
                    (degree_sample(&real.degrees), degree_sample(&gen.degrees))
                } else {
                    match (&real.spectrum, &gen.spectrum) {
                        (Some(r), Some(g)) => (r.values.clone(), g.values.clone()),
                        (Some(r), None) => (r.values.clone(), Vec::new()),
                        _ => (Vec::new(), Vec::new()),
                    }
                };
                if a.is_empty() {
                    na(pattern)
                } else {
                    let d = ks(&a, &b);
                    PatternScore {
                        pattern,
                        applicable: true,
                        awarded: d.is_some_and(|d| d < KS_THRESHOLD),
                        real: None,
                        generated: None,
                        distance: d,
                    }
                }
            }
            Pattern::P3 | Pattern::P4 => {
                let (r, g, ok): (_, _, fn(f64, f64) -> bool) = if pattern == Pattern::P3 {
                    (real.effective_diameter, gen.effective_diameter, in_diameter_range)
                } else {
                    (real.clustering, gen.clustering, in_clustering_range)
                };
                match r {
                    None => na(pattern),
                    Some(r) => PatternScore {
                        pattern,
                        applicable: true,
                        awarded: g.is_some_and(|g| ok(r, g)),
                        real: Some(r),
                        generated: g,
                        distance: None,
                    },
                }
            }
        };
        patterns.push(s);
    }
    LevelScore {
        level: real.level,
        real_shattered: !applicable,
        patterns,
    }
}

pub fn score(real: &[LevelReport], gen: &[LevelReport]) -> ScoreCard {
    let levels: Vec<LevelScore> = real
        .iter()
        .filter_map(|r| gen.iter().find(|g| g.level == r.level).map(|g| score_level(r, g)))
        .collect();
    let total = levels.iter().flat_map(|l| &l.patterns).filter(|p| p.awarded).count();
    let applicable = levels.iter().flat_map(|l| &l.patterns).filter(|p| p.applicable).count();
    ScoreCard {
        levels,
        total,
        applicable,
    }
}

/// Analyzes both hypergraphs at `levels` and scores them. Tail verdicts are
/// not needed for scoring and are skipped.
pub fn evaluate(real: &Hypergraph, gen: &Hypergraph, levels: &[usize], cfg: &AnalysisConfig) -> Result<ScoreCard> {
    let mut cfg = cfg.clone();
    cfg.fit_tails = false;
    let real_reports = analyze_unchecked(real, levels, &cfg)?;
    cfg.skip_shattered = false;
    let gen_reports = analyze_unchecked(gen, levels, &cfg)?;
    Ok(score(&real_reports, &gen_reports))
}
