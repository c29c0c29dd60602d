use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("twist is incompatible with the root datum: {0}")]
    TwistIncompatible(String),
    #[error("group order exceeds the enumeration bound {bound}")]
    GroupTooLarge { bound: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("dimension self-check failed: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },
    #[error("no irreducible character for highest weight {0} in the library")]
    MissingIrreducible(String),
    #[error("negative multiplicity at weight {0} while subtracting L({1})")]
    NegativeMultiplicity(String, String),
    #[error("library already holds a different character labelled {0}")]
    LibraryConflict(String),
    #[error("wrong datum or characteristic: {0}")]
    WrongType(String),
    #[error("equation matrix is singular")]
    SingularEquation,
    #[error("Weyl element does not map F(t) to t")]
    NotStabilized,
    #[error("torus element has order divisible by p = {p}")]
    BadOrder { p: u64 },
    #[error("Galois exponent {k} is not coprime to conductor {n}")]
    NotCoprime { k: i64, n: u64 },
    #[error("invalid q = {q} for p = {p}")]
    BadPrimePower { q: u64, p: u64 },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("inconsistent power map: {0}")]
    InconsistentPowerMap(String),
    #[error("no class identification satisfies the constraints")]
    NoIdentification,
    #[error("identification cap {cap} exceeded ({found} found so far)")]
    CapExceeded { cap: usize, found: usize },
    #[error("Brauer matrix is singular")]
    SingularBrauerMatrix,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("recursion depth cap reached")]
    DepthExceeded,
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
