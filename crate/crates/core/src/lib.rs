//! Solvers for combinatorial problems whose objective is the Shannon entropy
//! of the part sizes of a solution: set cover, graph orientation and graph
//! coloring, together with exact exponential-time oracles for small instances,
//! graph entropy over the stable set polytope, and instance builders for
//! haplotype phasing and coding with side information.

pub mod apps;
pub mod coloring;
pub mod entropy;
pub mod error;
pub mod gen;
pub mod graph;
pub mod graphent;
pub mod interval;
pub mod io;
pub mod orientation;
pub mod setcover;
pub mod setsystem;

pub use entropy::{counts_to_distribution, dominates, dominates_counts, entropy, Distribution};
pub use error::{Error, Result};
pub use graph::Graph;
pub use interval::{interval_graph, Interval, IntervalSet};
pub use setsystem::SetSystem;
