//! Spec files, catalog runs and the `lockit` command line over
//! [`lockit_core`].

pub mod cli;
pub mod error;
pub mod output;
pub mod spec;
pub mod workspace;

pub use error::CliError;
pub use spec::{parse_spec, serialize, SpecDocument};
