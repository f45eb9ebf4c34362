//! Community detection in graphs enriched with attitudinal knowledge.
//!
//! Given an undirected weighted graph and per-node membership degrees
//! toward two opposite poles, this crate builds normalized pairwise
//! conflict ("risk") and dialogue matrices, the 2-additive fuzzy measures
//! they induce, and their Shapley summaries, then detects communities with
//! a Louvain variant that scores moves on a blend `gamma*A + (1-gamma)*F`
//! of the adjacency and the measure's associated graph. Partitions are
//! compared with a size-weighted per-community conflict score.
//!
//! Start with the runnable examples:
//!
//! ```bash
//! cargo run --example fuzzy_measures
//! cargo run --example shapley_summary
//! cargo run --example blended_detection
//! cargo run --example gamma_sweep
//! cargo run --example edge_list_io
//! ```
//!
//! The same functionality is scriptable through the thin `polarlouvain`
//! binary (`detect`, `sweep`, `score`, `synth`, `shapley`, `export`).

pub mod capacity;
pub mod cli;
pub mod community;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod operators;
pub mod polarization;
pub mod synth;

pub use capacity::{
    associated_graph, shapley_brute_force, shapley_brute_force_all, shapley_closed_form,
    shapley_restricted, AssociatedGraphMatrix, ShapleyVector,
};
pub use community::{
    blend, gamma_sweep, louvain, modularity, polarization_louvain, BlendSpec, LouvainState,
    LouvainTrace, Partition, PassRecord, SweepReport, SweepRow,
};
pub use error::{Error, Result};
pub use graph::{
    load_edge_list, load_edge_list_from_reader, ComponentDecomposition, LoadOptions,
    WeightedGraph, WeightedMatrix,
};
pub use operators::{Grouping, Negation, OperatorConfig, Overlap, Symmetrizer};
pub use polarization::{
    build_dialogue_matrix, build_risk_matrix, convex_combine, jdj_pol, load_membership,
    load_membership_from_reader, pair_dialogue, pair_risk, partition_cohesion, CohesionReport,
    CommunityCohesion, MatrixKind, MembershipProfile, NormMode, PairwiseCapacityMatrix,
    TwoAdditiveFuzzyMeasure,
};
pub use synth::{generate, SyntheticInstance, SyntheticSpec};
