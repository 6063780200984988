//! Scenario ingestion, experiment drivers and the oracle suite behind the
//! `pld` binary.

pub mod commands;
pub mod scenario_file;
pub mod validate;

pub use commands::{
    error_table, optimize_alpha, sweep_receiver, to_csv_string, write_csv, AlphaRow, ErrorRow, ReceiverRow,
    SnrRange,
};
pub use scenario_file::{CodebookToken, ScenarioFile, ScenarioFileError};
pub use validate::{validate, validate_with, GateResult, GateStatus, ValidationOptions, ValidationReport};
