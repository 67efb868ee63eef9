//! Layout engine for drawings with few segments.
//!
//! The crate is `no_std` (it needs `alloc`). It contains the graph and
//! geometry primitives, three grid layouts for rooted trees (tidy, angular
//! "quad", and the heavy-path based few-segments layout with its
//! area-reduction heuristics), the Fruchterman–Reingold spring embedder and
//! its path-constrained variant, random stimulus generators, and drawing
//! metrics. File formats, rendering and the command-line tool live in the
//! `fewseg` crate.
#![no_std]

extern crate alloc;

pub mod drawing;
pub mod error;
pub mod force;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod heavy;
pub mod metrics;
pub mod paths;
pub mod tree_layout;

pub use drawing::{
    count_crossings, count_segments, is_planar_drawing, odd_degree_bound, Drawing, Positions,
    Segment,
};
pub use error::Error;
pub use force::{layout_fdfewseg, layout_force_directed, ForceParams};
pub use graph::{Graph, RootedTree};
pub use heavy::{heavy_path_decomposition, HeavyPathDecomposition};
pub use metrics::{evaluate, MetricsRecord};
pub use paths::{select_paths, validate_path_set, PathSet, PathValidation};
pub use tree_layout::{
    layout_fewsegments, layout_quad, layout_tidier, FewSegParams, QuadParams,
};

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
