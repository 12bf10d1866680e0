//! Origami flip graphs of flat-foldable single-vertex crease patterns.
//!
//! The equal-angle vertex `A_2n` has a flip graph whose vertices are the
//! mountain-valley assignments with Maekawa sum ±2; two assignments are
//! adjacent when they differ by flipping the two creases around one face.
//! This crate enumerates those graphs, finds flip paths between
//! assignments, counts vertices, edges and degrees both by brute force and
//! in closed form, and handles general (non-equal-angle) vertices through
//! crimp reduction.

pub mod cli;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod general;
pub mod graph;
pub mod limits;
pub mod mv;
pub mod path;
pub mod pattern;

pub use enumerate::{enumerate_valid, MajorityFilter};
pub use error::{OfgError, Result};
pub use general::{
    build_ofg_general, count_rotational_copies, embed_into_uniform, is_valid_general, CopyCount,
    EmbeddingMap, ValidityPlan,
};
pub use graph::{build_ofg_uniform, BfsMetrics, BfsSources, Edge, ExportFormat, FlipGraph};
pub use limits::Limits;
pub use mv::{CreaseSet, FaceSet, Majority, MvAssignment};
pub use path::{fea_halves, fea_shwoop, FlipPath, PathAlgorithm, PathViolation};
pub use pattern::CreasePattern;
