//! Executable checks of the approximation inequalities, with machine-readable
//! verdicts.

mod checks;
pub mod families;
mod majorant;
mod suite;
mod verdict;

pub use checks::*;
pub use majorant::MajorantSpec;
pub use suite::{run_suite, SuiteConfig};
pub use verdict::{verdicts_to_csv, verdicts_to_json, Param, Verdict, SCHEMA_VERSION};
