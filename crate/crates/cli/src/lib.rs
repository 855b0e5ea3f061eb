//! Command-line front end: problem documents in JSON, rankings, matrices,
//! propositional bounds and axiom checks out.

pub mod app;
pub mod evaluate;
pub mod formula;
pub mod output;
pub mod spec;

pub use app::{run, EXIT_CHECK_FAILED, EXIT_INTERNAL, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION};
