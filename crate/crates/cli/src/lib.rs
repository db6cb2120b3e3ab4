//! Scenario runner behind the `casimir` binary.

pub mod emit;
pub mod error;
pub mod presets;
pub mod run;
pub mod scenario;
pub mod verify;

pub use casimir_core::lifshitz::extract_alpha;
pub use emit::Format;
pub use error::{CliError, Result};
pub use run::{run, RunReport};
pub use scenario::Scenario;
