//! Uniform sampling of connected k-node induced subgraphs.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the algorithmic
//! parts: the host [`Graph`], the k-state graph machinery in [`state`] and
//! [`enumerate`], the four samplers in [`sampler`], the closed-form mixing-time
//! bounds in [`bounds`], and the small pieces of evaluation that do not need a
//! clock or a filesystem ([`loss`], [`motif`]). Parsing, reports, timing and the
//! CLI live in the `ksub` crate.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod bounds;
pub mod enumerate;
mod error;
pub mod generators;
pub mod graph;
pub mod loss;
pub mod motif;
pub mod sampler;
pub mod signed;
pub mod state;

pub use bounds::{Bound, BoundInputs};
pub use enumerate::{enumerate_states, StateGraph};
pub use error::Error;
pub use graph::{Graph, NodeId};
pub use sampler::{Method, Sample, Sampler, SamplerConfig, StepPlan};
pub use signed::{Sign, SignedGraph};
pub use state::{SubgraphState, MAX_K};

pub type Result<T, E = Error> = core::result::Result<T, E>;
