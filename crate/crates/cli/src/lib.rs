//! Analysis reports, batch processing, word generation and identity checks
//! behind the `braidvol` command.

pub mod batch;
pub mod generate;
pub mod report;
pub mod verify;

pub use generate::{generate, GenError, GeneratorSpec};
pub use report::{analyze, analyze_text, AnalysisReport, AnalyzeError, Options, SCHEMA};
pub use verify::{verify, Verification};
