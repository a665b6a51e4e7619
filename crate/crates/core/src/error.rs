use thiserror::Error;

use crate::compat::Witness;
use crate::validate::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("ragged rows: line {line} has {found} cells, expected {expected}")]
    RaggedRows {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("array has {cells} cells, expected {rows}x{cols}")]
    NotRectangular {
        rows: usize,
        cols: usize,
        cells: usize,
    },

    #[error("invalid PDA: {0}")]
    InvalidPda(Box<ValidationReport>),

    #[error("mapping has no image for label {0}")]
    IncompleteMapping(u32),

    #[error("mapping is not injective: label {0} is hit twice")]
    NonInjectiveMapping(u32),

    #[error("labels are not the dense range 0..{0}")]
    NonCanonical(usize),

    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },

    #[error("label {0} is used more than once")]
    DuplicateLabel(u32),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("missing reference for pair ({0},{1})")]
    MissingRef(usize, usize),

    #[error("star positions differ between members {0} and {1}")]
    StarPositionMismatch(usize, usize),

    #[error("condition C* violated: {0}")]
    CstarViolation(Witness),

    #[error("members {pair:?} are not compatible: {witness}")]
    CompatibilityFailure {
        pair: (usize, usize),
        witness: Witness,
    },

    #[error("base label {label} occurs {needed} times but only {available} members were given")]
    TooFewMembers {
        label: u32,
        needed: usize,
        available: usize,
    },

    #[error("column block {block} would hold {found} stars per column, expected {expected}")]
    ZMismatch {
        block: usize,
        expected: usize,
        found: usize,
    },

    #[error("label {0} appears in more than one reference, or in a reference and a member")]
    LabelOverlap(u32),

    #[error("lifted array is invalid; pair ({}, {}) is not right-compatible", pair.0, pair.1)]
    LiftValidation {
        pair: (usize, usize),
        report: Box<ValidationReport>,
    },

    #[error("inconsistent parameter tuple: {0}")]
    InconsistentTuple(String),

    #[error("library is split into {library} subfiles but the PDA has {pda} rows")]
    SubpacketizationMismatch { pda: usize, library: usize },

    #[error("demand {demand} of user {user} is outside 0..{files}")]
    DemandOutOfRange {
        user: usize,
        demand: usize,
        files: usize,
    },

    #[error("user {user} cannot decode label {label}: peer subfile W[{file}][{row}] is not cached")]
    MissingPeerSubfile {
        user: usize,
        label: u32,
        file: usize,
        row: usize,
    },
}
