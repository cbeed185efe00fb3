//! Figure-data driver: configuration, presets, sweeps and CSV export.

pub mod config;
pub mod error;
pub mod presets;
pub mod run;
pub mod table;

pub use config::{Mode, RunConfig};
pub use error::CliError;
pub use presets::{figure_manifest, manifest_text, oracle_preset, preset, Preset};
pub use run::run;
pub use table::Table;
