//! Seeded set generation, the exhaustive lemma suite, theorem experiments
//! and report emission.

pub mod config;
pub mod experiment;
pub mod generate;
pub mod lemmas;
pub mod pointfile;
pub mod report;
pub mod thresholds;

pub use config::{ExperimentConfig, ExperimentKind, SetSource, SetSpec};
pub use experiment::run_theorem_experiment;
pub use generate::generate_set;
pub use lemmas::run_lemma_suite;
pub use pointfile::{parse_base_set, parse_point_set, write_point_set};
pub use report::{write_report, CheckStatus, LemmaCheck, Report, ReportFormat, TrialRecord};
