use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("column `{0}` already exists")]
    DuplicateColumn(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("too few rows: need at least {needed}, have {have}")]
    TooFewRows { needed: usize, have: usize },

    #[error("column `{0}` has zero variance")]
    ZeroVariance(String),

    #[error("value {value} lies outside [{lo}, {hi}] by more than rounding allows")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("cofactor of the target entry vanishes; predictors are perfectly collinear")]
    DegenerateCofactor,

    #[error("singular design (condition estimate {condition:e})")]
    SingularDesign { condition: f64 },

    #[error("predictors `{0}` and `{1}` are proportional")]
    CollinearPredictors(String, String),

    #[error("row is missing a value for predictor `{0}`")]
    MissingPredictorValue(String),

    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("predictor transform is singular")]
    SingularTransform,

    #[error("direction is degenerate at gamma = {gamma:?}: the constructed column is constant")]
    DegenerateDirection { gamma: Vec<f64> },

    #[error("slope of the leading predictor is zero; the second root is undefined")]
    ZeroLeadSlope,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("row {row} belongs to a subset predictor but is not the canonical unit row")]
    NonCanonicalSubsetRows { row: usize },

    #[error("claim `{claim}` failed to evaluate: {source}")]
    Claim {
        claim: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },

    #[error("missing value at row {row}, column `{column}`")]
    MissingValue { row: usize, column: String },

    #[error("non-numeric cell `{value}` at row {row}, column `{column}`")]
    NonNumericCell {
        row: usize,
        column: String,
        value: String,
    },

    #[error("duplicate header `{0}`")]
    DuplicateHeader(String),

    #[error("row {row} has {found} cells, header has {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Stable identifier used in machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownColumn(_) => "UnknownColumn",
            Error::DuplicateColumn(_) => "DuplicateColumn",
            Error::InvalidDataset(_) => "InvalidDataset",
            Error::TooFewRows { .. } => "TooFewRows",
            Error::ZeroVariance(_) => "ZeroVariance",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::DegenerateCofactor => "DegenerateCofactor",
            Error::SingularDesign { .. } => "SingularDesign",
            Error::CollinearPredictors(..) => "CollinearPredictors",
            Error::MissingPredictorValue(_) => "MissingPredictorValue",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::SingularTransform => "SingularTransform",
            Error::DegenerateDirection { .. } => "DegenerateDirection",
            Error::ZeroLeadSlope => "ZeroLeadSlope",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NonCanonicalSubsetRows { .. } => "NonCanonicalSubsetRows",
            Error::Claim { source, .. } => source.kind(),
            Error::Io(_) => "IoError",
            Error::Parse { .. } => "ParseError",
            Error::MissingValue { .. } => "MissingValue",
            Error::NonNumericCell { .. } => "NonNumericCell",
            Error::DuplicateHeader(_) => "DuplicateHeader",
            Error::RaggedRow { .. } => "RaggedRow",
            Error::Usage(_) => "UsageError",
        }
    }

    pub(crate) fn in_claim(self, claim: &'static str) -> Error {
        match self {
            e @ Error::Claim { .. } => e,
            e => Error::Claim {
                claim,
                source: Box::new(e),
            },
        }
    }
}
