use thiserror::Error;

#[derive(Debug, Error)]
pub enum CwsError {
    #[error("length mismatch: {0} qubits vs {1} qubits")]
    LengthMismatch(usize, usize),

    #[error("invalid Pauli string {input:?}: {reason}")]
    ParsePauli { input: String, reason: String },

    #[error("qubit count {n} outside supported range {min}..={max}")]
    QubitCount { n: usize, min: usize, max: usize },

    #[error("vertex {vertex} out of range for a {n}-vertex graph")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid graph6 line {line:?}: {reason}")]
    Graph6 { line: String, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid stabilizer: {0}")]
    InvalidStabilizer(String),

    #[error("codewords do not form a clique: {0}")]
    NotAClique(String),

    #[error("code defect: {0}")]
    CodeDefect(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CwsError>;
