use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("{0} is not a prime modulus in [2, 2^31)")]
    NotPrime(u64),
    #[error("N-fold composition does not vanish starting at degree {0}")]
    AxiomViolation(i64),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("not a chain map: commutation fails at degree {0}")]
    NotChainMap(i64),
    #[error("complexes do not match: {0}")]
    Mismatch(String),
    #[error("not an object of the split-mono sequence category: {0}")]
    NotSplitMono(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot access {path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
