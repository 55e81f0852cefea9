use thiserror::Error;

/// Failures while reading the two-line permutation format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("expected exactly two non-empty lines, found {0}")]
    LineCount(usize),
    #[error("need at least 2 letters, found {0}")]
    TooFewLetters(usize),
    #[error("alphabet too large: {0} letters (at most 255 supported)")]
    TooManyLetters(usize),
    #[error("duplicate token `{token}` on the {row} line")]
    DuplicateToken { token: String, row: &'static str },
    #[error("token `{0}` appears on one line only")]
    MismatchedTokens(String),
    #[error("rows have different lengths ({top} vs {bottom})")]
    LengthMismatch { top: usize, bottom: usize },
    #[error("token `{0}` is not in the alphabet")]
    UnknownToken(String),
    #[error("invalid token `{0}`")]
    InvalidToken(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("permutation is reducible")]
    Reducible,
    #[error("permutation is not in the image of the {0} move")]
    NotInImage(crate::permutation::MoveKind),
    #[error("renumbering is not a bijection of the alphabet")]
    NotBijective,
    #[error("permutations are over different alphabets")]
    AlphabetMismatch,
    #[error("class enumeration exceeded the guard of {limit} vertices")]
    GuardExceeded { limit: usize },
    #[error("diagram is malformed: {0}")]
    Structure(String),
    #[error("marking construction failed: {0}")]
    Marking(String),
    #[error("candidate group of order {0} is too large to enumerate")]
    GroupTooLarge(u128),
    #[error("relabeling does not lie in the candidate group")]
    NotInCandidateGroup,
    #[error("group computation failed: {0}")]
    Group(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
