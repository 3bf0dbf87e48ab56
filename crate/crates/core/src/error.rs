use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("encoding length {found} does not match dimensions (expected {expected})")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid character {found:?} at position {position}")]
    InvalidCharacter { position: usize, found: char },
    #[error("cannot infer square dimensions from length {0}")]
    NotSquare(usize),
    #[error("malformed dimensions {0:?}")]
    BadDimensions(String),
    #[error("mosaic is not suitably connected")]
    NotSuitablyConnected,
    #[error("mosaic is not a knot mosaic")]
    NotAKnot,
    #[error("({tb}, {rot}) is not a Legendrian unknot pair")]
    NotAnUnknotPair { tb: i64, rot: i64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("diagram has {crossings} crossings, above the limit of {limit}")]
    ComplexityLimit { crossings: usize, limit: usize },
    #[error("barn tile at ({0}, {1}) is occupied")]
    OccupiedBarnTile(usize, usize),
    #[error("move hypothesis violated: {0}")]
    MoveHypothesisViolated(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::InvalidCharacter { .. } => "invalid_character",
            Error::NotSquare(_) => "not_square",
            Error::BadDimensions(_) => "bad_dimensions",
            Error::NotSuitablyConnected => "not_suitably_connected",
            Error::NotAKnot => "not_a_knot",
            Error::NotAnUnknotPair { .. } => "not_an_unknot_pair",
            Error::Domain(_) => "domain_error",
            Error::ResourceLimit(_) => "resource_limit",
            Error::ComplexityLimit { .. } => "complexity_limit",
            Error::OccupiedBarnTile(..) => "occupied_barn_tile",
            Error::MoveHypothesisViolated(_) => "move_hypothesis_violated",
            Error::Io(_) => "io_error",
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit(_) | Error::ComplexityLimit { .. })
    }

    pub fn is_encoding_error(&self) -> bool {
        matches!(
            self,
            Error::LengthMismatch { .. } | Error::InvalidCharacter { .. } | Error::NotSquare(_) | Error::BadDimensions(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
