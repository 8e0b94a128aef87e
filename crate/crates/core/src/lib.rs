//! Weighted edge coloring of multigraphs, online and offline.
//!
//! Edge weights lie in `(0, 1]`; a coloring is proper when, at every vertex,
//! the edges of any one color weigh at most 1 in total. The colorers here
//! reduce the problem to bounded-space bin packing at each vertex:
//!
//! - [`online`]: edges arrive one by one and are colored irrevocably, with
//!   NEXT-FIT or HARMONIC_M palettes per neighbouring pair.
//! - [`offline`]: BFS colorers for multigraph forests and for simple graphs
//!   whose cycles are edge-disjoint.
//! - [`binpack`]: the packing subroutines and an exact bin-packing solver.
//! - [`oracle`]: the properness verifier and exhaustive minimum-color search.
//! - [`adversary`]: worst-case streams with exact predictions of what the
//!   deterministic algorithms will do on them.
//!
//! All arithmetic on weights is exact; see [`weight`].

pub mod adversary;
pub mod binpack;
pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod generate;
pub mod instance;
pub mod offline;
pub mod online;
pub mod oracle;
pub mod report;
pub mod weight;

pub use coloring::{Color, Coloring, ColoringFile, Step};
pub use error::Error;
pub use instance::{compute_stats, parse_instance, Instance, InstanceStats, WeightedEdge};
pub use weight::{Load, Weight};
