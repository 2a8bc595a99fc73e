use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("generator {generator} at position {position} is out of range for {strands} strands")]
    GeneratorOutOfRange {
        generator: i32,
        strands: usize,
        position: usize,
    },
    #[error("syllable {position} has exponent zero")]
    ZeroExponent { position: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreconditionError {
    #[error("the Main Lemma conditions do not hold")]
    MainLemmaFailed,
    #[error("at least two twist regions are required, found {0}")]
    TooFewTwistRegions(usize),
    #[error("expected a 3-braid, got {0} strands")]
    NotThreeStrands(usize),
    #[error("word must be cyclically reduced into syllables")]
    NotReduced,
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Precondition(#[from] PreconditionError),
    #[error("s must be at least 1, got {0}")]
    InvalidS(i64),
    #[error("identity violated: {0}")]
    Identity(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchreierError {
    #[error(transparent)]
    Precondition(#[from] PreconditionError),
    #[error("residual x/y word matches no normal-form pattern: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{crossings} crossings exceed the cap of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
    #[error("diagram is not A-adequate")]
    NotAdequate,
    #[error("oracle inconsistency: {0}")]
    Inconsistent(String),
}
