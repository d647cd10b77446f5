//! Temporal-graph characterization through edge-disjoint temporal motif
//! extraction.
//!
//! The pipeline: load a directed timestamped edge list, enumerate
//! overlapping instances of a small motif catalog in temporal-arrival
//! order, select a maximal edge-disjoint subset per motif via the overlap
//! graph, and derive independence metrics, importance-sampled windowed
//! distributions, and fixed-length feature vectors for graph similarity
//! and burst detection.

pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod features;
pub mod graph;
pub mod independence;
pub mod report;
pub mod sampling;
pub mod synthgen;

pub use catalog::{default_catalog, AtomicMotifType, MotifCatalog, MotifKind, TemporalMotifType};
pub use enumerate::{
    brute_force_instances, find_fringe, find_instances, EnumerationConfig, FringeKind,
    MotifInstance,
};
pub use error::{ItemError, Result};
pub use graph::{
    BirthTimes, GraphStats, LoadOptions, TemporalEdge, TemporalGraph, TimeUnit, WindowGraph,
    WindowSpec,
};
pub use independence::{
    build_overlap_graph, extract_items, instance_structural_contribution, orbit_occupancy,
    select_independent, ItemResult, MotifOutcome, OverlapGraph, SelectionMode,
};
pub use features::{
    distance, feature_vector, feature_vector_sampled, normalize, pairwise_and_gap_aggregate,
    series_anomaly, FeatureVector, SimilarityMatrix,
};
pub use report::{catalog_hash, feature_csv, AnalyzeReport, MotifReport};
pub use sampling::{
    estimate_distribution, select_windows, EstimatorForm, SampledDistribution, SamplingPlan,
};
pub use synthgen::{generate_base, inject_burst, stretch_perturb, GenSpec, SECONDS_PER_DAY};
