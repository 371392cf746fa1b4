use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two families. Input errors (bad syntax, preconditions
/// not met) are the caller's fault. Theory violations mean a computed object
/// contradicts a structural property that holds for every episturmian
/// morphism; they point at a bug or at input outside the supported class.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("parse error in rule {rule:?}: {reason}")]
    Parse { rule: String, reason: String },

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("empty pattern")]
    EmptyPattern,

    #[error("morphism is not primitive")]
    NotPrimitive,

    #[error("no growing periodic seed found within {bound} iterations")]
    NoPeriodicSeed { bound: usize },

    #[error("morphism is not episturmian (failed at stripping step {step}: {reason})")]
    NotEpisturmian { step: usize, reason: String },

    #[error("{0:?} is not in the image of Pal")]
    NotInPalImage(String),

    #[error("word {0:?} is not in the language of the shift")]
    NotInLanguage(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("length cap exceeded: {0}")]
    CapExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("theory violation: {0}")]
    TheoryViolation(String),
}

impl Error {
    /// Whether this error signals a contradiction with the theory (as opposed
    /// to bad input).
    pub fn is_theory_violation(&self) -> bool {
        matches!(self, Error::TheoryViolation(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
