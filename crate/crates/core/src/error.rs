use thiserror::Error;

/// A numeric literal that is neither an integer nor `p/q`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid numeric value `{0}`")]
pub struct ParseValueError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count must be at least 1")]
    NoVariables,
    #[error("variable count {0} is too large for a dense table")]
    TooManyVariables(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("empty subset in complex")]
    EmptySubset,
    #[error("complex has no facets")]
    NoFacets,
    #[error("dimension mismatch: expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("table expects {expected} entries, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("table entry at cell {cell} violates the {flavor} flavor")]
    FlavorViolation { cell: usize, flavor: &'static str },
    #[error("margin key ({facet:?}, {assignment}) does not belong to the model")]
    UnknownMarginKey {
        facet: Vec<usize>,
        assignment: String,
    },
    #[error("duplicate margin key ({facet:?}, {assignment})")]
    DuplicateMarginKey {
        facet: Vec<usize>,
        assignment: String,
    },
    #[error("margin key ({facet:?}, {assignment}) is missing")]
    MissingMarginKey {
        facet: Vec<usize>,
        assignment: String,
    },
    #[error("margins must be integers for this operation")]
    NonIntegerMargins,
    #[error("parameter n = {n} is below the minimum {min}")]
    ParameterTooSmall { n: usize, min: usize },
    #[error("warm start is not integer-feasible")]
    InfeasibleWarmStart,
    #[error("problem is infeasible")]
    Infeasible,
    #[error("fiber enumeration exceeded its limit of {0} elements")]
    EnumerationLimit(usize),
    #[error("search space of {size} candidates exceeds the ceiling {ceiling}")]
    SearchCeiling { size: u128, ceiling: u128 },
    #[error("table is not in the kernel of the margin operator")]
    NotInKernel,
    #[error("simplex exceeded its pivot ceiling of {0}")]
    PivotLimit(u64),
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("consistency check `{0}` failed")]
    CheckFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
