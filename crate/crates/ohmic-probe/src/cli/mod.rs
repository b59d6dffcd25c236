//! Command-line surface: argument parsing, config-file merging, figure
//! presets and deterministic CSV/JSON emission.

pub mod configfile;
pub mod grid;
pub mod output;
pub mod presets;
pub mod run;

pub use configfile::parse_config_str;
pub use grid::GridSpec;
pub use run::{run, ExitStatus};
