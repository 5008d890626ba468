//! Cardinal and word metrics on generated groups.
//!
//! A generated group pairs a group with an ordered generating sequence `S`
//! that excludes the identity. The cardinal norm of `g` is the least number
//! of generators whose generated subgroup contains `g`; the word norm is the
//! usual shortest-word length over `S ∪ S⁻¹`. This crate computes both,
//! builds Cayley color digraphs, enumerates the maps that preserve the
//! metrics, and checks the relationships between them by exhaustive search
//! on small groups.

pub mod cayley;
mod error;
pub mod fixtures;
pub mod geometry;
pub mod group;
pub mod groupspec;
pub mod isometry;
mod map;
pub mod metrics;
pub mod notation;

pub use cayley::{build_color_digraph, ColorDigraph, TruncationRequest};
pub use error::{Error, Result};
pub use group::{Backend, Element, GeneratedGroup, IntVector, IntegerMatrix, Permutation};
pub use map::GroupMap;
pub use metrics::{BallSpec, MetricKind, MetricTable};
