use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unstable moduli index (g={g}, n={n}): need 2g - 2 + n > 0")]
    UnstableIndex { g: u32, n: u32 },

    #[error("{what} is only defined for {requirement}, got (g={g}, n={n})")]
    OutOfRange {
        what: &'static str,
        requirement: &'static str,
        g: u32,
        n: u32,
    },

    #[error("delta_{genus}_{markings} is not a boundary divisor of M_{g},{n}")]
    InvalidBoundary {
        genus: u32,
        markings: String,
        g: u32,
        n: u32,
    },

    #[error("marking {marking} is out of range 1..={n}")]
    MarkingOutOfRange { marking: u32, n: u32 },

    #[error("full-basis classes are limited to n <= {max} markings, got n={n}; use the symmetric representation")]
    TooManyMarkings { n: u32, max: u32 },

    #[error("index mismatch: expected {expected}, found {found}")]
    IndexMismatch { expected: String, found: String },

    #[error("class is not S_n-symmetric: {first} and {second} have different coefficients")]
    NotSymmetric { first: String, second: String },

    #[error("invalid forgetful map: {0}")]
    InvalidForgetfulMap(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("operation needs genus {expected}, got genus {found}")]
    WrongGenus { expected: u32, found: u32 },

    #[error("{0} is not covered by curves of class gamma")]
    NotGammaCovered(String),

    #[error("invalid cyclic action: {0}")]
    InvalidAction(String),

    #[error("power {l} is out of range 1..={max}")]
    PowerOutOfRange { l: u32, max: u32 },

    #[error("the action has quasi-reflections (e.g. power {power}); reduce it first")]
    HasQuasiReflections { power: u32 },

    #[error("eigenvalue pattern {0} is not an elliptic-tail pattern")]
    UnknownTailPattern(String),

    #[error("invalid node orbit: {0}")]
    InvalidNodeOrbit(String),

    #[error("bigness computation needs n >= {min}, got n={n}")]
    BignessRange { n: u32, min: u32 },

    #[error("unknown {kind} '{name}' (known: {known})")]
    UnknownName {
        kind: &'static str,
        name: String,
        known: String,
    },

    #[error("missing parameter '{0}'")]
    MissingParameter(&'static str),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
