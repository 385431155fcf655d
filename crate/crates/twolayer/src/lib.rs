//! Estimate nodal characteristics of a hard-to-sample target graph through
//! a two-layered network: the target graph, an easier auxiliary graph, and
//! the bipartite bridge connecting them.
//!
//! The crate provides the network model and generators, weighted
//! vertex samplers (uniform and region zoom-in), the indirect-jump walkers
//! and their ratio estimators, exact transition-matrix oracles for
//! verification, and a multi-trial NRMSE evaluation harness.

pub mod error;
pub mod estimate;
pub mod evaluate;
pub mod generate;
pub mod graph;
pub mod ingest;
pub mod vertex_sampler;
pub mod walk;

pub use error::{Error, Result};
pub use estimate::{CharacteristicFn, DegreeCurve, EstimateReport};
pub use generate::SyntheticSpec;
pub use graph::{BipartiteGraph, Graph, TwoLayerNetwork, ValidationReport};
pub use vertex_sampler::{
    GeoVenue, Region, RrziSampler, UniformVertexSampler, VertexSampler, WeightedVertexSample,
};
pub use walk::{RwtRwaStarts, RwtRwaWeights, SamplePath, VsaIISampleGroup};
