use thiserror::Error;

/// Errors raised by the automata workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("state {index} out of range for degree {degree}")]
    StateOutOfRange { index: usize, degree: usize },

    #[error("degree must be positive")]
    ZeroDegree,

    #[error("invalid range {lo}..={hi}")]
    InvalidRange { lo: usize, hi: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch { left: String, right: String },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),

    #[error("letter mapping is not a bijection on the alphabet: {0}")]
    NotBijective(String),

    #[error("line {line}: {cause}")]
    Parse { line: usize, cause: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid witness: {0}")]
    Witness(String),

    #[error("unknown operation {0:?}")]
    UnknownOperation(String),

    #[error("no known bound for {0}")]
    NoKnownBound(String),

    #[error("bound for {0} overflows 128-bit arithmetic")]
    BoundOverflow(String),

    #[error("subset construction exceeded the cap of {cap} subsets")]
    CapExceeded { cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
