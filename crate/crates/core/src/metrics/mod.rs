//! Statistics over a single decomposed graph: component structure,
//! degrees, effective diameter, clustering and the singular-value spectrum.

mod clustering;
mod components;
mod degree;
mod diameter;
pub mod lanczos;
mod spectrum;
mod union_find;

pub use clustering::{clustering_coefficient, local_clustering, transitivity, triangles_per_node};
pub use components::{component_labels, connected_components, ComponentReport, GIANT_RATIO};
pub use degree::{degree_distribution, degree_sequence, DegreeHistogram};
pub use diameter::{
    distance_histogram, effective_diameter, interpolate_effective_diameter, DiameterConfig,
};
pub use spectrum::{
    default_spectrum_size, singular_values, singular_values_with, SingularSpectrum, SpectrumConfig,
    DEFAULT_SPECTRUM_SIZE,
};
pub use union_find::DisjointSet;
