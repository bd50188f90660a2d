use thiserror::Error;

/// Errors shared across the crate. Mathematical preconditions and malformed
/// input are kept apart so callers can map them to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table entry out of range at ({row},{col}): {value} not in 0..{size}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("self-distributivity fails at ({x},{y},{z}): ({x}<{y})<{z} = {lhs} but ({x}<{z})<({y}<{z}) = {rhs}")]
    NotSelfDistributive {
        x: usize,
        y: usize,
        z: usize,
        lhs: usize,
        rhs: usize,
    },
    #[error("X-set axiom fails at (s={s},y={y},z={z}): (s<|{y})<|{z} = {lhs} but (s<|{z})<|({y}<{z}) = {rhs}")]
    XSetAxiomFails {
        s: usize,
        y: usize,
        z: usize,
        lhs: usize,
        rhs: usize,
    },
    #[error("operation `{op}` requires a rack: column {column} of the table is not a permutation")]
    RackRequired { op: &'static str, column: usize },
    #[error("operation `{op}` requires a spindle: {x}<{x} = {image} != {x}")]
    SpindleRequired {
        op: &'static str,
        x: usize,
        image: usize,
    },
    #[error("not a permutation of 0..{size}: value {value} seen twice or out of range")]
    NotAPermutation { size: usize, value: usize },
    #[error("not a group table: {reason}")]
    NotAGroup { reason: String },
    #[error("matrix dimension mismatch: {context}")]
    DimensionMismatch { context: String },
    #[error("boundary composition is nonzero on basis column {column}")]
    CompositionNonzero { column: usize },
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("operation `{op}` is not defined in degree {degree}")]
    DegreeUnsupported { op: &'static str, degree: usize },
    #[error("coefficient system unsupported for `{op}`: {reason}")]
    CoefficientUnsupported { op: &'static str, reason: &'static str },
    #[error("resource cap exceeded in degree {degree}: basis has {size} elements, cap is {cap}")]
    ResourceCap {
        degree: usize,
        size: usize,
        cap: usize,
    },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
