use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("empty complex")]
    EmptyComplex,
    #[error("facet {0:?} repeats a vertex")]
    DuplicateVertex(Vec<u32>),
    #[error("vertex labels must be positive integers")]
    ZeroLabel,
    #[error("vertex sets overlap at {0}")]
    OverlappingVertices(u32),
    #[error("invalid PS-sphere factor: {0}")]
    SphereFactor(String),
    #[error("ear {ear} references vertex {vertex} outside the complex")]
    EarVertex { ear: usize, vertex: u32 },

    #[error("matroid needs at least one element")]
    NoElements,
    #[error("ground set too large for subset bitmasks ({0} > 64)")]
    GroundTooLarge(usize),
    #[error("invalid basis list: {0}")]
    InvalidBases(String),
    #[error("basis exchange fails for B1={b1:?}, B2={b2:?}, e={e}")]
    ExchangeAxiom { b1: Vec<u32>, b2: Vec<u32>, e: u32 },
    #[error("{0:?} is not a subset of the ground set")]
    NotASubset(Vec<u32>),
    #[error("exhaustive check infeasible: {0} vertices (limit 20)")]
    ExhaustiveInfeasible(usize),
    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("{0}")]
    Macaulay(String),

    #[error("invalid monomial set: {0}")]
    Monomials(String),
    #[error("degree out of range: {0}")]
    DegreeRange(String),
    #[error("generator index {0} out of range")]
    GeneratorIndex(usize),
    #[error("search beyond desk-scale bounds: {0}")]
    SearchBounds(String),

    #[error("complex is not pure")]
    NotPure,
    #[error("could not draw independent forms after {0} attempts")]
    DependentForms(usize),
    #[error("l.s.o.p. not found after {0} draws")]
    LsopNotFound(usize),
    #[error("expected {expected} linear forms, got {got}")]
    FormCount { expected: usize, got: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
