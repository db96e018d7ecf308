//! Manifest-driven runner for the `dzk-core` experiments.

pub mod error;
pub mod manifest;
pub mod report;
pub mod results;
pub mod runner;
pub mod schema;

pub use error::{CliError, ManifestError};
pub use manifest::{load_manifest, parse_manifest, ExperimentKind, Manifest};
pub use report::{report, Report};
pub use results::{ResultRow, Verdict};
pub use runner::{execute, run_manifest, RunArtifacts, RunOutput};
