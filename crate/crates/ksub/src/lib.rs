//! File formats, experiment harness and command-line front end for
//! [`ksub_core`].

pub mod cli;
pub mod dataset;
mod error;
pub mod experiment;
pub mod io;
pub mod report;

pub use error::{Error, Result};
pub use ksub_core as core;
