//! Command-line front end: problem/report file formats, command
//! implementations, and the exit-code contract.

mod commands;
mod format;

pub use commands::{
    cmd_classical_check, cmd_quantum_analyze, cmd_verify, named_example_document, OutputFormat,
    QuantumOptions, EXIT_ASSERTION_FAILED, EXIT_INPUT_ERROR, EXIT_OK, EXIT_POSTULATE_FAILED,
    SEED_ENV_VAR,
};
pub use format::{
    complex_matrix_from_json, complex_matrix_to_json, ClassicalProblem, ComplexEntry,
    ComplexMatrixJson, ObservableField, ProblemDocument, ProblemKind, QuantumProblem,
    RecipeDocument, ReportDocument, ToleranceOverrides, FORMAT_VERSION,
};
