//! Community Guided Attachment (CGA) random graphs and (alpha, beta)-clusters.
//!
//! Leaves of a complete `b`-ary tree of height `H` are the vertices; two
//! leaves whose smallest common subtree has height `h` are joined with
//! probability `c^-h`.
//!
//! ```
//! use cga::cluster::{is_cluster, ClusterSpec, EdgeMode};
//! use cga::generator::sample_graph;
//! use cga::tree::{TreeParams, VertexSet};
//!
//! let p = TreeParams::new(2, 8, 2.0)?;
//! let g = sample_graph(&p, 42, false)?;
//! let spec = ClusterSpec::parse("0.5", "0.5", EdgeMode::Undirected)?;
//! let block = VertexSet::complete(0, 2, &p)?;
//! println!("{:?} is a cluster: {}", block.members(), is_cluster(&block, &g, &spec));
//! # Ok::<(), cga::error::CgaError>(())
//! ```

pub mod bounds;
pub mod cli;
pub mod cluster;
pub mod error;
pub mod experiments;
pub mod fraction;
pub mod generator;
pub mod graph;
pub mod rng;
pub mod search;
pub mod tree;
