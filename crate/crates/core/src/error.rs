use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A word grew past the configured length guard.
    #[error("word length {len} exceeds the limit of {limit} letters")]
    LengthLimit { len: usize, limit: usize },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("letter {letter} is not in the alphabet {alphabet}")]
    Alphabet { letter: String, alphabet: String },

    #[error("invalid group or subgroup specification: {0}")]
    Spec(String),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("element is not in the subgroup: {0}")]
    NotMember(String),

    #[error("membership undecided: {0}")]
    Undecided(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("resource limit: {0}")]
    Resource(String),

    /// A certificate failed to re-expand to the element it claims to represent.
    #[error("certificate check failed: {0}")]
    Certificate(String),
}

impl Error {
    /// True for errors caused by a size or time bound rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::LengthLimit { .. } | Error::Overflow(_) | Error::Resource(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
