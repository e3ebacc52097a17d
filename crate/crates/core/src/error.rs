use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input: no generator rows and no declared length")]
    EmptyInput,
    #[error("line {line}: non-binary character {ch:?}")]
    NonBinaryCharacter { line: usize, ch: char },
    #[error("line {line}: row has length {found}, expected {expected}")]
    RaggedRows {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("code length {0} exceeds the supported maximum of 32")]
    LengthTooLarge(usize),
    #[error("code length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("dimension {k} exceeds the enumeration limit {limit}")]
    KTooLarge { k: usize, limit: usize },
    #[error("generator index {index} out of range for k = {k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("empty generator subset")]
    EmptySubset,
    #[error("generator rows are linearly dependent")]
    DependentRows,
    #[error("private-column normalization did not converge within {cap} steps")]
    NormalizationDiverged { cap: u64 },
    #[error("length must be positive")]
    NonPositiveN,
    #[error("exact permutation search supports length <= {limit}, got {len}")]
    NTooLargeForExactSearch { len: usize, limit: usize },
    #[error("invalid code: {0}")]
    CodeInvalid(String),
    #[error("n = {n} exceeds the limit {limit}")]
    NTooLarge { n: usize, limit: usize },
    #[error("graph has {vertices} vertices, limit is {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("eigenvalue {value} is farther than {tol} from an even integer")]
    ResidualTooLarge { value: f64, tol: f64 },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("word {0} is not orthogonal to the code")]
    NotInDual(String),
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("eigenvalue product is not divisible by the vertex count")]
    InexactDivision,
    #[error("{what} = {value} is outside {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("bound must be positive")]
    NonPositiveBound,
    #[error("temperature must be non-negative, got {0}")]
    NegativeTemperature(f64),
    #[error("quadrilateral colors must differ (both {0})")]
    SameColor(usize),
    #[error("color {color} out of range for length {len}")]
    ColorOutOfRange { color: usize, len: usize },
    #[error("({u}, {v}, color {color}) is not an edge of the graph")]
    NotAnEdge { u: usize, v: usize, color: usize },
    #[error("dashing is incomplete: {missing} edges unassigned")]
    IncompleteAssignment { missing: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
