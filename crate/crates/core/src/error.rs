use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent on `{0}`")]
    NegativeExponent(String),
    #[error("polynomial is zero after merging terms")]
    ZeroPolynomial,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the two terms have identical exponents")]
    IdenticalExponents,
    #[error("term index {index} out of range for {len} terms")]
    TermIndex { index: usize, len: usize },
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("subset must have exactly {expected} elements, found {found}")]
    SubsetSize { expected: usize, found: usize },
    #[error("polynomial has a constant term")]
    ConstantTerm,
    #[error("variable {variable} occurs in terms {first} and {second}")]
    OverlappingSupports {
        variable: usize,
        first: usize,
        second: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("matrix has rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("solution set is unbounded")]
    Unbounded,
    #[error("expected a 2-dimensional body, found dimension {0}")]
    NotPlanar(usize),
    #[error("generators do not span a pointed cone")]
    NotPointed,
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownVariable(_) => "unknown_variable",
            Error::NegativeExponent(_) => "negative_exponent",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::Malformed(_) => "malformed",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::IdenticalExponents => "identical_exponents",
            Error::TermIndex { .. } => "term_index",
            Error::EmptySubset => "empty_subset",
            Error::SubsetSize { .. } => "subset_size",
            Error::ConstantTerm => "constant_term",
            Error::OverlappingSupports { .. } => "overlapping_supports",
            Error::Precondition(_) => "precondition",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::InvalidGrading(_) => "invalid_grading",
            Error::Unbounded => "unbounded",
            Error::NotPlanar(_) => "not_planar",
            Error::NotPointed => "not_pointed",
        }
    }

    /// Input was well-formed but violates a mathematical precondition of the operation.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::ConstantTerm
                | Error::OverlappingSupports { .. }
                | Error::Precondition(_)
                | Error::RankDeficient { .. }
                | Error::InvalidGrading(_)
                | Error::Unbounded
                | Error::NotPlanar(_)
                | Error::NotPointed
        )
    }
}
