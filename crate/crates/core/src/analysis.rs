//! Per-level pattern statistics of a hypergraph.

use serde::{Deserialize, Serialize};

use crate::decompose::{decompose, DecomposeConfig, DecomposedGraph, LevelCaps};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::metrics::{
    clustering_coefficient, connected_components, default_spectrum_size, degree_distribution, degree_sequence,
    effective_diameter, singular_values_with, transitivity, ComponentReport, DegreeHistogram, DiameterConfig,
    SingularSpectrum, SpectrumConfig,
};
use crate::tailfit::{heavy_tail_verdict, TailConfig, TailVerdict};

/// Levels reported by default: node, edge, triangle and 4-clique.
pub const DEFAULT_LEVELS: [usize; 4] = [1, 2, 3, 4];

#[derive(Clone, Debug)]
pub struct AnalysisConfig {
    pub caps: LevelCaps,
    pub diameter: DiameterConfig,
    pub spectrum: SpectrumConfig,
    /// `None` uses `min(vertices, 500)`.
    pub spectrum_size: Option<usize>,
    pub tail: TailConfig,
    /// Skip diameter and clustering on levels without a giant component.
    pub skip_shattered: bool,
    /// Counts never-appearing nodes of the universe as singleton components
    /// at the node level.
    pub count_isolated_nodes: bool,
    pub compute_spectrum: bool,
    pub fit_tails: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            caps: LevelCaps::default(),
            diameter: DiameterConfig::default(),
            spectrum: SpectrumConfig::default(),
            spectrum_size: None,
            tail: TailConfig::default(),
            skip_shattered: true,
            count_isolated_nodes: false,
            compute_spectrum: true,
            fit_tails: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: usize,
    pub max_edge_size: usize,
    pub nodes: usize,
    pub edges: usize,
    pub components: ComponentReport,
    pub degrees: DegreeHistogram,
    pub degree_tail: Option<TailVerdict>,
    pub effective_diameter: Option<f64>,
    pub clustering: Option<f64>,
    pub transitivity: Option<f64>,
    pub spectrum: Option<SingularSpectrum>,
    pub spectrum_tail: Option<TailVerdict>,
    /// Reasons for statistics left out.
    pub notes: Vec<String>,
}

impl LevelReport {
    pub fn is_shattered(&self) -> bool {
        !self.components.is_giant
    }
}

pub fn analyze(h: &Hypergraph, levels: &[usize], cfg: &AnalysisConfig) -> Result<Vec<LevelReport>> {
    if !h.is_deduplicated() {
        return Err(Error::validation(
            "pattern analysis needs a deduplicated hypergraph; run dedup first",
        ));
    }
    analyze_unchecked(h, levels, cfg)
}

/// As [`analyze`] without the deduplication requirement.
pub fn analyze_unchecked(h: &Hypergraph, levels: &[usize], cfg: &AnalysisConfig) -> Result<Vec<LevelReport>> {
    let mut sorted = levels.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted
        .into_iter()
        .map(|k| {
            let cap = cfg.caps.cap(k);
            let g = decompose(h, DecomposeConfig::new(k, cap)?)?;
            let isolated = if cfg.count_isolated_nodes && k == 1 { h.n() - g.node_count() } else { 0 };
            analyze_level(&g, cap, isolated, cfg)
        })
        .collect()
}

pub fn analyze_level(g: &DecomposedGraph, max_edge_size: usize, isolated: usize, cfg: &AnalysisConfig) -> Result<LevelReport> {
    let mut notes = Vec::new();
    let mut components = connected_components(g);
    if isolated > 0 {
        let mut sizes = components.sizes.clone();
        sizes.extend(std::iter::repeat_n(1, isolated));
        components = ComponentReport::from_sizes(sizes);
    }
    let degrees = degree_distribution(g);

    let tail = |name: &str, data: &[f64], notes: &mut Vec<String>| -> Option<TailVerdict> {
        if !cfg.fit_tails {
            return None;
        }
        match heavy_tail_verdict(data, &cfg.tail) {
            Ok(v) => Some(v),
            Err(e) => {
                notes.push(format!("{name} tail: {e}"));
                None
            }
        }
    };

    let degree_sample: Vec<f64> = degree_sequence(g).into_iter().map(|d| d as f64).collect();
    let degree_tail = tail("degree", &degree_sample, &mut notes);

    let shattered = !components.is_giant;
    let (mut diameter, mut clustering, mut trans) = (None, None, None);
    if shattered && cfg.skip_shattered {
        notes.push("no giant component; diameter and clustering not applicable".into());
    } else if g.node_count() > 0 {
        match effective_diameter(g, &cfg.diameter) {
            Ok(d) => diameter = Some(d),
            Err(e) => notes.push(format!("diameter: {e}")),
        }
        clustering = Some(clustering_coefficient(g)?);
        trans = Some(transitivity(g)?);
    }

    let (mut spectrum, mut spectrum_tail) = (None, None);
    if cfg.compute_spectrum && g.node_count() > 0 {
        let m = cfg.spectrum_size.unwrap_or_else(|| default_spectrum_size(g));
        let s = singular_values_with(g, m, &cfg.spectrum)?;
        spectrum_tail = tail("singular value", &s.values, &mut notes);
        spectrum = Some(s);
    }

    Ok(LevelReport {
        level: g.level(),
        max_edge_size,
        nodes: g.node_count(),
        edges: g.edge_count(),
        components,
        degrees,
        degree_tail,
        effective_diameter: diameter,
        clustering,
        transitivity: trans,
        spectrum,
        spectrum_tail,
        notes,
    })
}
