//! File formats, SVG rendering, metric reports and the command-line front
//! end for `fewseg-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod render;
pub mod report;
pub mod stimulus;

pub use error::{CliError, Result};
