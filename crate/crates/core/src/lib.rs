//! Search and verification of codeword-stabilized quantum codes for
//! amplitude-damping and dephasing error models.

pub mod canon;
pub mod clifford;
pub mod clique;
pub mod code;
pub mod engine;
pub mod equivalence;
pub mod error;
pub mod error_model;
pub mod gf2;
pub mod graph;
pub mod orbits;
pub mod pauli;
pub mod report;
pub mod search;
pub mod stabilizer;
pub mod standard_form;
pub mod verifier;

pub use clifford::{AxisLabel, AxisPerm, LocalClifford, SingleQubitClifford};
pub use clique::{max_clique, Budget, CliqueGraph, CliqueOutcome};
pub use code::{CodeFile, CwsCode};
pub use error::{CwsError, Result};
pub use error_model::{ErrorSet, ErrorSetKind};
pub use graph::Graph;
pub use pauli::{Letter, PauliOperator};
pub use stabilizer::StabilizerGroup;
pub use verifier::{centralizer_check, verify_detection};

/// Double-precision amplitude type used by the CLI and tests.
pub type Amplitude = num_complex::Complex<f64>;
pub type DetectionReport = verifier::DetectionReport<f64>;
pub type Violation = verifier::Violation<f64>;
