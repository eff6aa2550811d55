//! Terminal-set-enhanced community detection.
//!
//! A community structure with few crossing edges can be recovered
//! efficiently once one representative node per community is known. This
//! crate builds that idea out into three detectors plus their measurement
//! kit:
//!
//! - [`tsecd`]: enumerate small terminal candidate sets from a pool of
//!   high-degree (or high-centrality) nodes, expand each terminal to its
//!   local area, separate the areas with two-terminal minimum cuts, and
//!   keep the partition with the smallest conductance.
//! - [`contraction`]: repeatedly merge uniformly random supernode pairs
//!   down to k supernodes; with enough independent runs the minimum-cut
//!   partition appears with a provable probability, which extends to
//!   detection under feasibility constraints.
//! - [`equal_size`]: equal-sized communities via weight shifting, random
//!   terminal sampling and an exact min-star assignment.
//!
//! [`flow`] provides the max-flow/min-cut primitive, [`terminal_cut`] the
//! 2-approximate k-terminal cuts, [`metrics`] the six partition-quality
//! scores, [`bench_data`] generators, loaders and the karate club fixture,
//! and [`oracle`] exact brute-force references for validation on tiny
//! inputs.

pub mod bench_data;
pub mod contraction;
pub mod equal_size;
mod error;
pub mod flow;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod terminal_cut;
pub mod tsecd;

pub use error::{Error, Result};
pub use graph::{CutSet, LocalArea, NodeId, Partition, WeightedGraph};
pub use metrics::{AggregateRule, CommunityStats, MetricSuite, QualityReport};
pub use terminal_cut::TerminalSpec;
pub use tsecd::{SettingPreset, TsecdConfig};
