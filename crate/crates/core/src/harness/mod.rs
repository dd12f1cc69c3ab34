//! Request dispatch, bispinor reconstruction, configuration, parameter
//! sweeps and the validation suite.

mod bispinor;
pub mod config;
mod request;
pub mod sweep;
pub mod validation;

pub use bispinor::{reconstruct_bispinor, BispinorSample, Chirality};
pub use config::{load_config, parse_config, RunConfig};
pub use request::{evolve, Controls, EvolutionRequest, EvolutionResult, Method};
pub use sweep::{run_sweep, thread_pool};
pub use validation::{run_validation_suite, CriterionReport, Profile, ValidationReport};
